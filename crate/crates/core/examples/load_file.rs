//! Writes an arrangement to a text file, reads it back and analyzes it.

use linarr::corpus::entry;
use linarr::io::{format_arrangement, load_arrangement, save_arrangement};
use linarr::report::{analyze, to_json};

fn main() -> linarr::Result<()> {
    let a = &entry("hesse9")?.arrangement;
    let path = std::env::temp_dir().join("linarr-hesse9.txt");
    save_arrangement(a, &path)?;
    print!("{}", format_arrangement(a));
    let b = load_arrangement(&path)?;
    println!("round trip equal: {}", *a == b);
    println!("{}", to_json(&analyze(&b)?));
    Ok(())
}
