//! Elimination certificate showing that the four quadruple-point equations
//! in a, b, c, d have no solution off the degenerate loci.
//!
//! Strategy: e1 is linear in a, so a = N/b with N = d(bc − c + 1); substitute
//! into e2..e4 and clear b; divide out factors that a side constraint forbids
//! from vanishing; take resultants in c, strip again, then resultants in b.
//! A nonzero constant at the end is the contradiction.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::{resultant, MultiPoly};
use crate::scalar::Scalar;

fn v(s: &str) -> MultiPoly {
    MultiPoly::var(s)
}

fn k(n: i64) -> MultiPoly {
    MultiPoly::int(n)
}

/// Inequations the parameters must satisfy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum SideConstraint {
    ANonzero,
    BNonzero,
    BNotOne,
    CNonzero,
    DNonzero,
    DNotOne,
    ANotC,
    DNotA,
    DNotC,
}

impl SideConstraint {
    pub const ALL: [SideConstraint; 9] = [
        SideConstraint::ANonzero,
        SideConstraint::BNonzero,
        SideConstraint::BNotOne,
        SideConstraint::CNonzero,
        SideConstraint::DNonzero,
        SideConstraint::DNotOne,
        SideConstraint::ANotC,
        SideConstraint::DNotA,
        SideConstraint::DNotC,
    ];

    pub fn label(self) -> &'static str {
        match self {
            SideConstraint::ANonzero => "a != 0",
            SideConstraint::BNonzero => "b != 0",
            SideConstraint::BNotOne => "b != 1",
            SideConstraint::CNonzero => "c != 0",
            SideConstraint::DNonzero => "d != 0",
            SideConstraint::DNotOne => "d != 1",
            SideConstraint::ANotC => "a != c",
            SideConstraint::DNotA => "d != a",
            SideConstraint::DNotC => "d != c",
        }
    }

    /// The polynomial this constraint keeps away from zero.
    pub fn poly(self) -> MultiPoly {
        match self {
            SideConstraint::ANonzero => v("a"),
            SideConstraint::BNonzero => v("b"),
            SideConstraint::BNotOne => v("b") - k(1),
            SideConstraint::CNonzero => v("c"),
            SideConstraint::DNonzero => v("d"),
            SideConstraint::DNotOne => v("d") - k(1),
            SideConstraint::ANotC => v("a") - v("c"),
            SideConstraint::DNotA => v("d") - v("a"),
            SideConstraint::DNotC => v("d") - v("c"),
        }
    }

    pub fn holds_at(self, p: &[i64; 4]) -> bool {
        !eval_at(&self.poly(), p).is_zero()
    }
}

impl fmt::Display for SideConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

fn eval_at(p: &MultiPoly, pt: &[i64; 4]) -> Scalar {
    let at: HashMap<String, Scalar> = ["a", "b", "c", "d"]
        .iter()
        .zip(pt)
        .map(|(n, &x)| (n.to_string(), Scalar::from_int(x)))
        .collect();
    p.eval(&at).expect("polynomial in a, b, c, d")
}

#[derive(Clone, Debug)]
pub struct EliminationSystem {
    pub equations: [MultiPoly; 4],
    pub constraints: Vec<SideConstraint>,
}

impl EliminationSystem {
    pub fn standard() -> EliminationSystem {
        let (a, b, c, d) = (v("a"), v("b"), v("c"), v("d"));
        let e1 = &a * &b - &b * &d * &c + &d * &c - &d;
        let e2 = (&a * &b * &c - &c * &d) * (k(1) - &b) - &b * &c + &d;
        let e3 = &a * &d - &a * &b * &d + &b * &c - &d;
        let e4 = &a * &b * &d - &a * &d - &a * b.pow(2) * &c - &a * &b + &d + &a * &b * &c;
        EliminationSystem {
            equations: [e1, e2, e3, e4],
            constraints: SideConstraint::ALL.to_vec(),
        }
    }

    pub fn is_zero_at(&self, p: &[i64; 4]) -> bool {
        self.equations.iter().all(|e| eval_at(e, p).is_zero())
    }

    pub fn admissible_at(&self, p: &[i64; 4]) -> bool {
        self.constraints.iter().all(|c| c.holds_at(p))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ExcludedFactor {
    #[serde(serialize_with = "as_string")]
    pub factor: MultiPoly,
    pub multiplicity: u32,
    pub constraint: SideConstraint,
}

#[derive(Clone, Debug, Serialize)]
pub struct StepEntry {
    pub label: String,
    #[serde(serialize_with = "as_string")]
    pub poly: MultiPoly,
    pub excluded: Vec<ExcludedFactor>,
    #[serde(serialize_with = "as_string")]
    pub remainder: MultiPoly,
}

#[derive(Clone, Debug, Serialize)]
pub struct Step {
    pub title: String,
    pub entries: Vec<StepEntry>,
    /// Pairs whose resultant vanished identically (common factor) and were skipped.
    pub skipped: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    #[serde(serialize_with = "as_string")]
    pub a_numerator: MultiPoly,
    pub steps: Vec<Step>,
    pub final_label: String,
    pub final_constant: Scalar,
    pub admissible_solution: bool,
}

fn as_string<S: serde::Serializer>(p: &MultiPoly, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&p.to_string())
}

impl Certificate {
    /// Every factor divided out anywhere in the certificate.
    pub fn excluded_factors(&self) -> impl Iterator<Item = &ExcludedFactor> {
        self.steps.iter().flat_map(|s| s.entries.iter()).flat_map(|e| e.excluded.iter())
    }

    pub fn conclusion(&self) -> &'static str {
        if self.admissible_solution {
            "admissible solution may exist"
        } else {
            "no admissible solution"
        }
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sys = EliminationSystem::standard();
        writeln!(f, "system:")?;
        for (i, e) in sys.equations.iter().enumerate() {
            writeln!(f, "  e{} = {e}", i + 1)?;
        }
        let labels: Vec<&str> = sys.constraints.iter().map(|c| c.label()).collect();
        writeln!(f, "side constraints: {}", labels.join(", "))?;
        writeln!(f, "step 0: e1 is linear in a; with b != 0, a = ({})/b", self.a_numerator)?;
        for (n, step) in self.steps.iter().enumerate() {
            writeln!(f, "step {}: {}", n + 1, step.title)?;
            for e in &step.entries {
                writeln!(f, "  {} = {}", e.label, e.poly)?;
                for x in &e.excluded {
                    writeln!(f, "    excluded factor ({})^{} by {}", x.factor, x.multiplicity, x.constraint)?;
                }
                if !e.excluded.is_empty() {
                    writeln!(f, "    remaining: {}", e.remainder)?;
                }
            }
            for s in &step.skipped {
                writeln!(f, "  skipped {s}: identically zero (common factor)")?;
            }
        }
        writeln!(f, "final: {} = {}", self.final_label, self.final_constant)?;
        write!(f, "conclusion: {}", self.conclusion())
    }
}

/// Factors that are nonzero on the admissible set, in terms of the
/// variables still present at each stage. The a-constraints are carried
/// through a = N/b.
fn strippable(n: &MultiPoly) -> Vec<(MultiPoly, SideConstraint)> {
    let (b, c, d) = (v("b"), v("c"), v("d"));
    vec![
        (b.clone(), SideConstraint::BNonzero),
        (&b - &k(1), SideConstraint::BNotOne),
        (c.clone(), SideConstraint::CNonzero),
        (d.clone(), SideConstraint::DNonzero),
        (&d - &k(1), SideConstraint::DNotOne),
        (&d - &c, SideConstraint::DNotC),
        (n.clone(), SideConstraint::ANonzero),
        (n - &(&b * &c), SideConstraint::ANotC),
        (&(&b * &d) - n, SideConstraint::DNotA),
    ]
}

fn strip(label: String, p: MultiPoly, factors: &[(MultiPoly, SideConstraint)]) -> StepEntry {
    let mut rest = p.clone();
    let mut excluded = Vec::new();
    for (f, why) in factors {
        let (r, m) = rest.strip_factor(f);
        if m > 0 {
            excluded.push(ExcludedFactor {
                factor: f.primitive(),
                multiplicity: m,
                constraint: *why,
            });
            rest = r;
        }
    }
    StepEntry {
        label,
        poly: p,
        excluded,
        remainder: rest.primitive(),
    }
}

/// One elimination round: pairwise resultants in `var` (polynomials free of
/// `var` pass through), each stripped of excluded factors.
fn eliminate(
    layer: &[(String, MultiPoly)],
    var: &str,
    factors: &[(MultiPoly, SideConstraint)],
) -> Result<Step> {
    let mut entries = Vec::new();
    let mut skipped = Vec::new();
    for (i, (li, pi)) in layer.iter().enumerate() {
        if pi.degree_in(var) == 0 {
            entries.push(strip(li.clone(), pi.clone(), factors));
            continue;
        }
        for (lj, pj) in &layer[i + 1..] {
            if pj.degree_in(var) == 0 {
                continue;
            }
            let r = resultant(pi, pj, var)?;
            let label = format!("res_{var}({li}, {lj})");
            if r.is_zero() {
                skipped.push(label);
            } else {
                entries.push(strip(label, r, factors));
            }
        }
    }
    Ok(Step {
        title: format!("eliminate {var} by pairwise resultants"),
        entries,
        skipped,
    })
}

fn next_layer(step: &Step) -> Vec<(String, MultiPoly)> {
    let mut out: Vec<(String, MultiPoly)> = Vec::new();
    for e in &step.entries {
        if !out.iter().any(|(_, p)| p.associated(&e.remainder)) {
            out.push((format!("[{}]", e.label), e.remainder.clone()));
        }
    }
    out
}

fn find_constant(step: &Step) -> Option<(String, Scalar)> {
    step.entries
        .iter()
        .find(|e| e.remainder.is_constant() && !e.remainder.is_zero())
        .map(|e| (format!("[{}]", e.label), e.remainder.constant_value().expect("constant")))
}

/// The numerator N with a = N/b, read off the linear equation e1 = b·a + B.
pub fn solve_e1_for_a() -> (MultiPoly, MultiPoly) {
    let e1 = &EliminationSystem::standard().equations[0];
    (-e1.coeff_in("a", 0), e1.coeff_in("a", 1))
}

/// b^deg_a(e) · e(a = N/b), a polynomial in b, c, d.
pub fn substitute_a(e: &MultiPoly, n: &MultiPoly) -> MultiPoly {
    let deg = e.degree_in("a");
    (0..=deg).fold(MultiPoly::zero(), |acc, j| {
        acc + e.coeff_in("a", j) * n.pow(j) * v("b").pow(deg - j)
    })
}

pub fn verify_lemma14() -> Result<Certificate> {
    let sys = EliminationSystem::standard();
    let (n, lead) = solve_e1_for_a();
    if lead != v("b") {
        return Err(Error::EliminationFailed(format!("e1 has leading coefficient {lead} in a")));
    }
    let factors = strippable(&n);

    let substituted = Step {
        title: "substitute a = N/b into e2, e3, e4 and clear b".into(),
        entries: sys.equations[1..]
            .iter()
            .enumerate()
            .map(|(i, e)| strip(format!("f{}", i + 2), substitute_a(e, &n), &factors))
            .collect(),
        skipped: Vec::new(),
    };
    if let Some(e) = substituted.entries.iter().find(|e| e.remainder.is_zero()) {
        return Err(Error::EliminationFailed(format!("{} vanished identically", e.label)));
    }
    let mut steps = vec![substituted];
    let mut done = find_constant(&steps[0]);
    for var in ["c", "b"] {
        if done.is_some() {
            break;
        }
        let layer = next_layer(steps.last().expect("nonempty"));
        let step = eliminate(&layer, var, &factors)?;
        done = find_constant(&step);
        steps.push(step);
    }
    let Some((final_label, final_constant)) = done else {
        return Err(Error::EliminationFailed("no constant eliminant after removing c and b".into()));
    };
    Ok(Certificate {
        a_numerator: n,
        steps,
        final_label,
        final_constant,
        admissible_solution: false,
    })
}

/// A zero of e1..e4 that violates `dropped` and lies on an excluded factor.
#[derive(Clone, Debug, Serialize)]
pub struct DegenerateZero {
    pub dropped: SideConstraint,
    /// (a, b, c, d)
    pub point: [i64; 4],
    pub violated: Vec<SideConstraint>,
    #[serde(serialize_with = "as_string")]
    pub vanishing_factor: MultiPoly,
}

/// Searches the integer box [-r, r]^4 for a degenerate zero exposed by
/// removing `dropped` from the side constraints.
pub fn degenerate_zero(cert: &Certificate, dropped: SideConstraint, r: i64) -> Option<DegenerateZero> {
    let sys = EliminationSystem::standard();
    let range = -r..=r;
    for a in range.clone() {
        for b in range.clone() {
            for c in range.clone() {
                for d in range.clone() {
                    let p = [a, b, c, d];
                    if dropped.holds_at(&p) || !sys.is_zero_at(&p) {
                        continue;
                    }
                    let hit = cert.excluded_factors().find(|x| eval_at(&x.factor, &p).is_zero());
                    if let Some(x) = hit {
                        return Some(DegenerateZero {
                            dropped,
                            point: p,
                            violated: SideConstraint::ALL.into_iter().filter(|s| !s.holds_at(&p)).collect(),
                            vanishing_factor: x.factor.clone(),
                        });
                    }
                }
            }
        }
    }
    None
}
