//! Checks that the three classes of a 3-net are members of one pencil of
//! curves: λ₁Q₁ + λ₂Q₂ + λ₃Q₃ = 0 with Q_i the product of the class's forms.

use std::collections::BTreeSet;

use crate::geometry::Arrangement;
use crate::nets::NetStructure;
use crate::poly::{Monomial, MultiPoly};
use crate::scalar::Scalar;

const XYZ: [&str; 3] = ["x", "y", "z"];

/// Product of the linear forms of the given lines, scaled to leading
/// coefficient 1.
pub fn class_product(a: &Arrangement, class: &[usize]) -> MultiPoly {
    let p = class.iter().fold(MultiPoly::int(1), |acc, &i| {
        acc * MultiPoly::linear(a.lines()[i].coeffs(), &XYZ)
    });
    let lc = p.leading_coeff().cloned().unwrap_or_else(Scalar::one);
    p.scale(&lc.inv().expect("nonzero product"))
}

/// Unique solution of `m x = b` over the scalars, if the system is
/// consistent and determined.
pub fn solve_exact(mut m: Vec<Vec<Scalar>>, mut b: Vec<Scalar>) -> Option<Vec<Scalar>> {
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let src = (r..m.len()).find(|&i| !m[i][c].is_zero())?;
        m.swap(r, src);
        b.swap(r, src);
        let inv = m[r][c].inv().expect("nonzero pivot");
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        b[r] = &b[r] * &inv;
        let (pivot, pivot_b) = (m[r].clone(), b[r].clone());
        for (i, (row, bi)) in m.iter_mut().zip(b.iter_mut()).enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x = &*x - &(&f * y);
                }
                *bi = &*bi - &(&f * &pivot_b);
            }
        }
        r += 1;
    }
    if b[r..].iter().any(|x| !x.is_zero()) {
        return None;
    }
    Some(b[..cols].to_vec())
}

/// Nonzero (λ₁, λ₂, λ₃), with λ₁ = 1, making the normalized class products
/// linearly dependent; `None` if no such relation exists.
pub fn pencil_check(a: &Arrangement, n: &NetStructure) -> Option<[Scalar; 3]> {
    if n.k != 3 {
        return None;
    }
    // written over x, y, z so exponent vectors compare directly
    let q: Vec<MultiPoly> = n.classes.iter().map(|c| class_product(a, c).over(&XYZ)).collect();
    let monomials: BTreeSet<Monomial> = q.iter().flat_map(|p| p.terms().map(|(m, _)| m.clone())).collect();
    let rows: Vec<Vec<Scalar>> = monomials
        .iter()
        .map(|m| vec![q[1].coefficient(m), q[2].coefficient(m)])
        .collect();
    let rhs: Vec<Scalar> = monomials.iter().map(|m| -q[0].coefficient(m)).collect();
    let sol = solve_exact(rows, rhs)?;
    let lambdas = [Scalar::one(), sol[0].clone(), sol[1].clone()];
    if lambdas.iter().any(Scalar::is_zero) {
        return None;
    }
    debug_assert!(verify_pencil(a, n, &lambdas));
    Some(lambdas)
}

/// Re-expands λ₁Q₁ + λ₂Q₂ + λ₃Q₃ and checks that it vanishes.
pub fn verify_pencil(a: &Arrangement, n: &NetStructure, lambdas: &[Scalar; 3]) -> bool {
    n.classes
        .iter()
        .zip(lambdas)
        .fold(MultiPoly::zero(), |acc, (c, l)| acc + class_product(a, c).scale(l))
        .is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Line;
    use crate::lattice::Lattice;
    use crate::nets::{find_nets, verify_net};
    use crate::scalar::FieldSpec;

    fn ceva() -> Arrangement {
        let w = Scalar::omega();
        let mut lines = Vec::new();
        for (i, j) in [(0, 1), (1, 2), (0, 2)] {
            for e in 0..3 {
                let mut t = [Scalar::zero(), Scalar::zero(), Scalar::zero()];
                t[i] = Scalar::one();
                t[j] = -w.pow(e);
                lines.push(Line::new(t).unwrap());
            }
        }
        Arrangement::new("ceva", FieldSpec::Eisenstein, lines).unwrap()
    }

    #[test]
    fn ceva_classes_telescope() {
        let a = ceva();
        let n = verify_net(&Lattice::new(&a), &[vec![0, 1, 2], vec![3, 4, 5], vec![6, 7, 8]]).unwrap();
        let l = pencil_check(&a, &n).unwrap();
        assert_eq!(l, [Scalar::one(), Scalar::one(), Scalar::from_int(-1)]);
        let x = MultiPoly::var("x");
        let y = MultiPoly::var("y");
        assert_eq!(class_product(&a, &[0, 1, 2]), x.pow(3) - y.pow(3));
    }

    #[test]
    fn every_ceva_net_is_a_pencil() {
        let a = ceva();
        let nets = find_nets(&a, 3).unwrap();
        assert_eq!(nets.len(), 4);
        for n in &nets {
            let l = pencil_check(&a, n).expect("pencil");
            assert!(verify_pencil(&a, n, &l));
        }
    }

    #[test]
    fn solve_exact_detects_inconsistency() {
        let one = Scalar::one;
        let m = vec![vec![one()], vec![one()]];
        assert!(solve_exact(m.clone(), vec![one(), Scalar::from_int(2)]).is_none());
        assert_eq!(solve_exact(m, vec![one(), one()]), Some(vec![one()]));
    }
}
