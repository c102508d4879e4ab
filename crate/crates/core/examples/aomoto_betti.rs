//! Aomoto–Betti numbers over F_2, F_3, F_5 and a non-constant weight vector.

use linarr::aomoto::{beta_1p, build_system, nonconstant_solution};
use linarr::corpus::entry;

fn main() -> linarr::Result<()> {
    for name in ["generic-6", "braid-a3", "ceva3", "hesse9", "hesse12", "example-2.6-3"] {
        let a = &entry(name)?.arrangement;
        let betas: Vec<String> = [2, 3, 5]
            .iter()
            .map(|&p| beta_1p(a, p).map(|r| format!("beta_1{p}={}", r.beta)))
            .collect::<linarr::Result<_>>()?;
        println!("{name:<14} {}", betas.join(" "));
    }

    let ceva = &entry("ceva3")?.arrangement;
    let sys = build_system(ceva, 3)?;
    println!("\nceva3 over F_3: {} equations in {} unknowns", sys.equations.len(), sys.variables);
    let r = beta_1p(ceva, 3)?;
    for v in &r.basis {
        println!("  basis vector {v:?}");
    }
    if let Some(w) = nonconstant_solution(&r) {
        println!("  non-constant weights {w:?}");
    }
    Ok(())
}
