//! Prints the elimination certificate for the quadruple-point system and the
//! degenerate zeros that appear once a side constraint is dropped.

use linarr::elimination::{degenerate_zero, verify_lemma14, SideConstraint};

fn main() -> linarr::Result<()> {
    let cert = verify_lemma14()?;
    println!("{cert}");
    println!();
    for c in SideConstraint::ALL {
        match degenerate_zero(&cert, c, 3) {
            Some(z) => println!(
                "without {c}: zero (a,b,c,d) = {:?} on excluded factor {}",
                z.point, z.vanishing_factor
            ),
            None => println!("without {c}: no zero in the search box"),
        }
    }
    Ok(())
}
