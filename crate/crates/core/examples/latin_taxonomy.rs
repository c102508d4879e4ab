//! Latin squares of order up to 4, grouped into main classes.

use linarr::latin::enumerate_latin_squares;

fn main() -> linarr::Result<()> {
    for q in 1..=4 {
        let groups = enumerate_latin_squares(q)?;
        let total: usize = groups.iter().map(|g| g.squares.len()).sum();
        println!("order {q}: {total} squares in {} main class(es)", groups.len());
        for g in &groups {
            println!("  {} x{}", g.code, g.squares.len());
        }
    }
    Ok(())
}
