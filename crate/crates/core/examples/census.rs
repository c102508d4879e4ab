//! Multiple points of a few corpus arrangements, and the pair-counting check.

use linarr::corpus::entry;
use linarr::Lattice;

fn main() -> linarr::Result<()> {
    for name in ["triangle", "ceva3", "hesse9", "pappus-b2", "example-2.6-1", "example-2.6-2", "grid-14"] {
        let a = &entry(name)?.arrangement;
        let lat = Lattice::new(a);
        let c = lat.census();
        println!(
            "{name:<16} d={:<3} {c:<22} essential={} pairs ok={}",
            a.len(),
            lat.is_essential(),
            c.satisfies_pair_identity(a.len())
        );
    }

    // flats of the smallest interesting case
    let a = &entry("braid-a3")?.arrangement;
    for f in Lattice::new(a).flats() {
        let lines: Vec<usize> = f.lines.iter().map(|i| i + 1).collect();
        println!("{} on lines {lines:?}", f.point);
    }
    Ok(())
}
