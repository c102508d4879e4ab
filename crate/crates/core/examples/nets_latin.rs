//! Nets of the twelve-line corpus arrangements, their Latin squares and the
//! triple points inside each class.

use linarr::corpus::{entry, MainClass};
use linarr::latin::main_class_code;
use linarr::nets::{find_nets, latin_square, mixed_census};

fn main() -> linarr::Result<()> {
    for i in 1..=6 {
        let name = format!("example-2.6-{i}");
        let a = &entry(&name)?.arrangement;
        for net in find_nets(a, 3)? {
            let square = latin_square(&net)?;
            let code = main_class_code(&square)?;
            let kinds: Vec<String> = mixed_census(a, &net)
                .iter()
                .map(|c| format!("{} ({:?})", c.census, c.kind.expect("q = 4")))
                .collect();
            println!("{name}: {} mixed points, main class {:?}", net.mixed_points.len(), MainClass::of(&code));
            println!("  classes: {}", kinds.join(" | "));
            for row in square.to_string().lines() {
                println!("  {row}");
            }
        }
    }
    Ok(())
}
