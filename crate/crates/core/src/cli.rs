//! Command-line front end. `run_cli` does all the work and returns the exit
//! status with the captured output, so it can be tested in-process.

use std::fmt::Write as _;

use clap::{Parser, Subcommand};
use serde_json::json;

use crate::aomoto::{beta_1p, nonconstant_solution};
use crate::corpus::{self, resolve_arrangement, MainClass};
use crate::elimination::{degenerate_zero, verify_lemma14, SideConstraint};
use crate::error::Error;
use crate::io::format_arrangement;
use crate::latin::{enumerate_latin_squares, main_class_code};
use crate::lattice::{lattice_isomorphic, Lattice};
use crate::monodromy::{format_classes, monodromy_verdict};
use crate::nets::{find_nets_in, latin_square};
use crate::pencil::pencil_check;
use crate::report::{analyze, net_info, to_json};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_DATA: i32 = 65;

#[derive(Parser, Debug)]
#[command(name = "linarr", version, about = "Exact combinatorics of projective line arrangements")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Count multiple points by multiplicity.
    Census { arrangement: String },
    /// Aomoto–Betti number over F_p.
    Betti {
        #[arg(short)]
        p: u64,
        arrangement: String,
    },
    /// Find all nets with k classes.
    Nets {
        #[arg(short, value_parser = clap::value_parser!(u8).range(3..=4))]
        k: u8,
        arrangement: String,
    },
    /// Latin squares of the 3-nets, or enumerate all squares of an order.
    Latin {
        #[arg(long, value_name = "Q", conflicts_with = "arrangement")]
        enumerate: Option<usize>,
        #[arg(required_unless_present = "enumerate")]
        arrangement: Option<String>,
    },
    /// Pencil relation among the class products of each 3-net.
    Pencil { arrangement: String },
    /// Monodromy verdict and bounds.
    Monodromy { arrangement: String },
    /// Decide lattice isomorphism.
    Isomorphic { a: String, b: String },
    /// Run a verification.
    Verify {
        #[command(subcommand)]
        what: Verify,
    },
    /// Inspect the built-in corpus.
    Corpus {
        #[command(subcommand)]
        what: CorpusCmd,
    },
    /// Full report.
    Analyze { arrangement: String },
}

#[derive(Subcommand, Debug)]
enum Verify {
    /// Elimination certificate for the 14-line quadruple-point system.
    Lemma14,
    /// Re-check every corpus entry against its expected data.
    Corpus,
}

#[derive(Subcommand, Debug)]
enum CorpusCmd {
    List,
    Show { name: String },
}

#[derive(Debug, Default)]
pub struct CliOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NotPrime(_) | Error::OrderOutOfRange(_) => EXIT_USAGE,
        _ => EXIT_DATA,
    }
}

pub fn run_cli<I, T>(argv: I) -> CliOutput
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                CliOutput {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                CliOutput {
                    code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let mut out = CliOutput::default();
    match run(&cli, &mut out.stdout) {
        Ok(code) => out.code = code,
        Err(e) => {
            out.code = exit_code(&e);
            out.stderr = format!("error: {e}\n");
        }
    }
    out
}

fn run(cli: &Cli, out: &mut String) -> crate::Result<i32> {
    let json = cli.json;
    match &cli.command {
        Command::Census { arrangement } => {
            let a = resolve_arrangement(arrangement)?;
            let c = Lattice::new(&a).census();
            if json {
                emit(out, &json!({ "arrangement": a.name(), "census": c }));
            } else {
                line(out, &c.to_string());
            }
        }
        Command::Betti { p, arrangement } => {
            let a = resolve_arrangement(arrangement)?;
            let r = beta_1p(&a, *p)?;
            if json {
                emit(
                    out,
                    &json!({ "arrangement": a.name(), "p": p, "beta": r.beta,
                             "nonconstant_solution": nonconstant_solution(&r) }),
                );
            } else {
                line(out, &format!("beta_1{p}={}", r.beta));
            }
        }
        Command::Nets { k, arrangement } => {
            let a = resolve_arrangement(arrangement)?;
            let lat = Lattice::new(&a);
            let nets = find_nets_in(&lat, *k as usize)?;
            if json {
                let infos = nets.iter().map(|n| net_info(&lat, n)).collect::<crate::Result<Vec<_>>>()?;
                emit(out, &json!({ "arrangement": a.name(), "nets": infos }));
            } else {
                line(out, &format!("{} net(s) with {k} classes", nets.len()));
                for n in &nets {
                    line(out, &format!("({},{}): {}", n.k, n.q, format_classes(&n.classes)));
                }
            }
        }
        Command::Latin { enumerate: Some(q), .. } => {
            let groups = enumerate_latin_squares(*q)?;
            let total: usize = groups.iter().map(|g| g.squares.len()).sum();
            if json {
                let classes: Vec<_> = groups
                    .iter()
                    .map(|g| json!({ "code": g.code.to_string(), "squares": g.squares.len() }))
                    .collect();
                emit(out, &json!({ "q": q, "squares": total, "main_classes": classes }));
            } else {
                line(out, &format!("q={q}: {total} squares, {} main class(es)", groups.len()));
                for g in &groups {
                    line(out, &format!("{}: {} squares", g.code, g.squares.len()));
                }
            }
        }
        Command::Latin { arrangement, .. } => {
            let a = resolve_arrangement(arrangement.as_deref().expect("required by clap"))?;
            let lat = Lattice::new(&a);
            let nets = find_nets_in(&lat, 3)?;
            let mut items = Vec::new();
            for n in &nets {
                let s = latin_square(n)?;
                let code = main_class_code(&s)?;
                let label = MainClass::of(&code).map(|m| format!("{m:?}"));
                if json {
                    items.push(json!({ "classes": n.classes.iter().map(|c| c.iter().map(|i| i + 1).collect::<Vec<_>>()).collect::<Vec<_>>(),
                                       "square": s.rows(), "main_class_code": code.to_string(), "main_class": label }));
                } else {
                    line(out, &format!("net {}", format_classes(&n.classes)));
                    line(out, &s.to_string());
                    let suffix = label.map(|l| format!(" ({l})")).unwrap_or_default();
                    line(out, &format!("main class {code}{suffix}"));
                }
            }
            if json {
                emit(out, &json!({ "arrangement": a.name(), "squares": items }));
            } else if nets.is_empty() {
                line(out, "no 3-net");
            }
        }
        Command::Pencil { arrangement } => {
            let a = resolve_arrangement(arrangement)?;
            let nets = find_nets_in(&Lattice::new(&a), 3)?;
            let mut items = Vec::new();
            for n in &nets {
                let l = pencil_check(&a, n);
                if json {
                    items.push(json!({ "classes": format_classes(&n.classes),
                                       "lambdas": l.as_ref().map(|l| l.iter().map(|x| x.to_string()).collect::<Vec<_>>()) }));
                } else {
                    let rel = match &l {
                        Some([x, y, z]) => format!("lambda = ({x}, {y}, {z})"),
                        None => "no pencil relation".into(),
                    };
                    line(out, &format!("net {}: {rel}", format_classes(&n.classes)));
                }
            }
            if json {
                emit(out, &json!({ "arrangement": a.name(), "pencil": items }));
            } else if nets.is_empty() {
                line(out, "no 3-net");
            }
        }
        Command::Monodromy { arrangement } => {
            let a = resolve_arrangement(arrangement)?;
            let r = monodromy_verdict(&a)?;
            if json {
                emit(out, &json!({ "arrangement": a.name(), "monodromy": r }));
            } else {
                line(out, &r.to_string());
            }
        }
        Command::Isomorphic { a, b } => {
            let (x, y) = (resolve_arrangement(a)?, resolve_arrangement(b)?);
            let w = lattice_isomorphic(&x, &y);
            if json {
                let w1 = w.as_ref().map(|w| w.iter().map(|i| i + 1).collect::<Vec<_>>());
                emit(out, &json!({ "a": x.name(), "b": y.name(), "isomorphic": w.is_some(), "witness": w1 }));
            } else {
                match w {
                    Some(w) => {
                        line(out, "isomorphic: yes");
                        let pairs: Vec<String> = w.iter().enumerate().map(|(i, j)| format!("{}->{}", i + 1, j + 1)).collect();
                        line(out, &format!("witness: {}", pairs.join(" ")));
                    }
                    None => line(out, "isomorphic: no"),
                }
            }
        }
        Command::Verify { what: Verify::Lemma14 } => {
            let cert = verify_lemma14()?;
            let zeros: Vec<_> = SideConstraint::ALL
                .iter()
                .filter_map(|&c| degenerate_zero(&cert, c, 3))
                .collect();
            if json {
                emit(out, &json!({ "certificate": cert, "conclusion": cert.conclusion(), "degenerate_zeros": zeros }));
            } else {
                line(out, &cert.to_string());
                for z in &zeros {
                    line(
                        out,
                        &format!("without {}: degenerate zero (a,b,c,d)={:?} on factor {}", z.dropped, z.point, z.vanishing_factor),
                    );
                }
            }
            return Ok(if cert.admissible_solution { EXIT_VERIFY } else { EXIT_OK });
        }
        Command::Verify { what: Verify::Corpus } => {
            let results = corpus::verify_all();
            let failed = results.iter().filter(|(_, r)| r.is_err()).count();
            if json {
                let items: Vec<_> = results
                    .iter()
                    .map(|(n, r)| json!({ "name": n, "ok": r.is_ok(), "error": r.as_ref().err().map(|e| e.to_string()) }))
                    .collect();
                emit(out, &json!({ "entries": items, "failed": failed }));
            } else {
                for (n, r) in &results {
                    match r {
                        Ok(()) => line(out, &format!("ok   {n}")),
                        Err(e) => line(out, &format!("FAIL {n}: {e}")),
                    }
                }
                line(out, &format!("{} entries, {failed} failed", results.len()));
            }
            return Ok(if failed == 0 { EXIT_OK } else { EXIT_VERIFY });
        }
        Command::Corpus { what: CorpusCmd::List } => {
            let entries = corpus::corpus()?;
            if json {
                emit(out, &json!({ "entries": entries }));
            } else {
                for e in entries {
                    line(out, &format!("{:<24} d={:<3} {:<10} {}", e.name, e.arrangement.len(), e.arrangement.field(), e.note));
                }
            }
        }
        Command::Corpus { what: CorpusCmd::Show { name } } => {
            let e = corpus::entry(name)?;
            if json {
                emit(out, &json!({ "entry": e, "arrangement": crate::report::ArrangementInfo::from(&e.arrangement) }));
            } else {
                line(out, &format!("# {}", e.note));
                line(out, &format!("# expected census: {}", e.expected_census));
                out.push_str(&format_arrangement(&e.arrangement));
            }
        }
        Command::Analyze { arrangement } => {
            let a = resolve_arrangement(arrangement)?;
            let r = analyze(&a)?;
            if json {
                out.push_str(&to_json(&r));
                out.push('\n');
            } else {
                line(out, &format!("{} (d={}, {})", a.name(), a.len(), a.field()));
                line(out, &format!("census: {}", Lattice::new(&a).census()));
                for (p, b) in &r.betti {
                    line(out, &format!("beta_1{p}={}", b.beta));
                }
                for n in &r.nets {
                    let cls: Vec<Vec<usize>> = n.classes.iter().map(|c| c.lines.iter().map(|i| i - 1).collect()).collect();
                    let code = n.main_class_code.as_ref().map(|c| format!(", main class {c}")).unwrap_or_default();
                    line(out, &format!("net ({},{}): {}{code}", n.k, n.q, format_classes(&cls)));
                }
                for p in &r.pencil {
                    if let Some([x, y, z]) = &p.lambdas {
                        line(out, &format!("pencil relation for net {}: ({x}, {y}, {z})", p.net + 1));
                    }
                }
                match &r.monodromy {
                    Some(m) => line(out, &format!("monodromy: {} ({}); dim H1(F) in {}", m.verdict, m.reason, m.h1)),
                    None => line(out, "monodromy: not essential"),
                }
            }
        }
    }
    Ok(EXIT_OK)
}

fn line(out: &mut String, s: &str) {
    let _ = writeln!(out, "{s}");
}

fn emit(out: &mut String, v: &serde_json::Value) {
    line(out, &serde_json::to_string_pretty(v).expect("json"));
}
