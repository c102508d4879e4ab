//! Lattice isomorphism between corpus members, a shuffled copy and a
//! projective image.

use linarr::corpus::{entry, instantiate_family};
use linarr::lattice::lattice_isomorphic;
use linarr::Matrix3;
use num_rational::BigRational;

fn main() -> linarr::Result<()> {
    let names = ["example-2.6-1", "example-2.6-2", "example-2.6-3", "example-2.6-4", "example-2.6-5", "example-2.6-6"];
    for (i, x) in names.iter().enumerate() {
        for y in &names[i + 1..] {
            let iso = lattice_isomorphic(&entry(x)?.arrangement, &entry(y)?.arrangement).is_some();
            println!("{x} ~ {y}: {iso}");
        }
    }

    let a = &entry("example-2.6-2")?.arrangement;
    let shuffled = a.permute_lines(&[11, 3, 7, 0, 9, 1, 5, 10, 2, 8, 4, 6]);
    let w = lattice_isomorphic(a, &shuffled).expect("same lattice");
    println!("shuffled copy: witness {:?}", w.iter().map(|i| i + 1).collect::<Vec<_>>());

    let m = Matrix3::from_ints([[2, 1, 0], [0, 1, 3], [1, 0, 1]]);
    let image = a.apply_projectivity(&m)?;
    println!("projective image isomorphic: {}", lattice_isomorphic(a, &image).is_some());

    let b2 = &entry("pappus-b2")?.arrangement;
    let b3 = instantiate_family("pappus", &[BigRational::from_integer(3.into())])?;
    println!("pappus b=2 ~ b=3: {}", lattice_isomorphic(b2, &b3.arrangement).is_some());
    Ok(())
}
