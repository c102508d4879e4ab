//! Monodromy verdicts across the corpus.

use linarr::corpus::corpus;
use linarr::monodromy::{crosscheck_theorem, monodromy_verdict};
use linarr::Lattice;

fn main() -> linarr::Result<()> {
    for e in corpus()? {
        let a = &e.arrangement;
        if !Lattice::new(a).is_essential() {
            println!("{:<24} not essential", e.name);
            continue;
        }
        let r = monodromy_verdict(a)?;
        let check = match crosscheck_theorem(a) {
            Ok(c) => format!("beta_12={} beta_13={} consistent={}", c.beta_12, c.beta_13, c.consistent()),
            Err(_) => "outside hypotheses".into(),
        };
        println!("{:<24} {:<12} H1 in {:<9} {check}", e.name, r.verdict.to_string(), r.h1.to_string());
    }
    println!();
    println!("{}", monodromy_verdict(&linarr::corpus::entry("ceva3")?.arrangement)?);
    Ok(())
}
