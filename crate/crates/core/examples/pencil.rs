//! Each 3-net's class products satisfy a linear relation.

use linarr::corpus::entry;
use linarr::nets::find_nets;
use linarr::pencil::{class_product, pencil_check};

fn main() -> linarr::Result<()> {
    for name in ["ceva3", "pappus-b2", "example-2.6-2", "example-2.6-4"] {
        let a = &entry(name)?.arrangement;
        for net in find_nets(a, 3)? {
            println!("{name}");
            for c in &net.classes {
                println!("  Q = {}", class_product(a, c));
            }
            match pencil_check(a, &net) {
                Some([l1, l2, l3]) => println!("  ({l1})*Q1 + ({l2})*Q2 + ({l3})*Q3 = 0"),
                None => println!("  no relation"),
            }
        }
    }
    Ok(())
}
