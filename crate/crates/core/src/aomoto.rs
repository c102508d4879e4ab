//! The cocycle system over F_p attached to an arrangement and its
//! Aomoto–Betti number.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::Arrangement;
use crate::lattice::Lattice;

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut i = 2u64;
    while i * i <= p {
        if p.is_multiple_of(i) {
            return false;
        }
        i += 1;
    }
    true
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EquationKind {
    /// p divides the multiplicity: the weights through the point sum to zero.
    Sum,
    /// p does not divide it: two consecutive lines through the point get equal weights.
    Equal,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Equation {
    pub flat: usize,
    pub kind: EquationKind,
    /// Dense row over F_p, one entry per line.
    pub coeffs: Vec<u64>,
}

impl Equation {
    pub fn eval(&self, w: &[u64], p: u64) -> u64 {
        self.coeffs
            .iter()
            .zip(w)
            .fold(0, |acc, (&c, &x)| (acc + c * x) % p)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ModularSystem {
    pub p: u64,
    pub variables: usize,
    pub equations: Vec<Equation>,
}

impl ModularSystem {
    pub fn is_solution(&self, w: &[u64]) -> bool {
        w.len() == self.variables && self.equations.iter().all(|e| e.eval(w, self.p) == 0)
    }

    fn rows(&self) -> Vec<Vec<u64>> {
        self.equations.iter().map(|e| e.coeffs.clone()).collect()
    }
}

pub fn build_system(a: &Arrangement, p: u64) -> Result<ModularSystem> {
    build_system_from(&Lattice::new(a), p)
}

pub fn build_system_from(lat: &Lattice, p: u64) -> Result<ModularSystem> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let d = lat.line_count();
    let mut equations = Vec::new();
    for (idx, f) in lat.flats().iter().enumerate() {
        if (f.multiplicity() as u64).is_multiple_of(p) {
            let mut coeffs = vec![0; d];
            for &i in &f.lines {
                coeffs[i] = 1;
            }
            equations.push(Equation {
                flat: idx,
                kind: EquationKind::Sum,
                coeffs,
            });
        } else {
            for w in f.lines.windows(2) {
                let mut coeffs = vec![0; d];
                coeffs[w[0]] = 1;
                coeffs[w[1]] = p - 1;
                equations.push(Equation {
                    flat: idx,
                    kind: EquationKind::Equal,
                    coeffs,
                });
            }
        }
    }
    Ok(ModularSystem {
        p,
        variables: d,
        equations,
    })
}

fn inv_mod(x: u64, p: u64) -> u64 {
    // Fermat; p is prime and small
    let (mut base, mut e, mut acc) = (x % p, p - 2, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

/// Reduced row echelon form in place, pivoting on the lowest column first.
/// Returns the pivot columns.
pub fn rref_mod(rows: &mut Vec<Vec<u64>>, cols: usize, p: u64) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(src) = (r..rows.len()).find(|&i| !rows[i][c].is_multiple_of(p)) else {
            continue;
        };
        rows.swap(r, src);
        let inv = inv_mod(rows[r][c], p);
        for x in rows[r].iter_mut() {
            *x = *x * inv % p;
        }
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let f = row[c];
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x = (*x + (p - f) * y) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// Kernel basis read off the reduced echelon form, one vector per free column.
pub fn kernel_mod(rows: &[Vec<u64>], cols: usize, p: u64) -> Vec<Vec<u64>> {
    let mut m = rows.to_vec();
    let pivots = rref_mod(&mut m, cols, p);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0; cols];
            v[f] = 1;
            for (row, &pc) in m.iter().zip(&pivots) {
                v[pc] = (p - row[f] % p) % p;
            }
            v
        })
        .collect()
}

pub fn rank_mod(rows: &[Vec<u64>], cols: usize, p: u64) -> usize {
    let mut m = rows.to_vec();
    rref_mod(&mut m, cols, p).len()
}

#[derive(Clone, Debug, Serialize)]
pub struct BettiResult {
    pub p: u64,
    pub beta: usize,
    /// Solution space basis; the all-ones vector comes first.
    pub basis: Vec<Vec<u64>>,
}

pub fn beta_1p(a: &Arrangement, p: u64) -> Result<BettiResult> {
    solve(&build_system(a, p)?)
}

pub fn beta_1p_from(lat: &Lattice, p: u64) -> Result<BettiResult> {
    solve(&build_system_from(lat, p)?)
}

pub fn solve(sys: &ModularSystem) -> Result<BettiResult> {
    let n = sys.variables;
    let p = sys.p;
    let kernel = kernel_mod(&sys.rows(), n, p);
    let mut basis = vec![vec![1; n]];
    for v in kernel {
        basis.push(v);
        if rank_mod(&basis, n, p) < basis.len() {
            basis.pop();
        }
    }
    debug_assert!(basis.iter().all(|v| sys.is_solution(v)));
    Ok(BettiResult {
        p,
        beta: basis.len() - 1,
        basis,
    })
}

/// A solution that is not a multiple of the all-ones vector, when beta ≥ 1.
pub fn nonconstant_solution(r: &BettiResult) -> Option<&[u64]> {
    r.basis.get(1).map(Vec::as_slice)
}
