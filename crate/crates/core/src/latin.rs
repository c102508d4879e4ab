//! Latin squares, main-class canonical forms and small-order enumeration.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::Serialize;

use crate::error::{Error, Result};

/// Squares of order above this are refused by the brute-force canonizer.
pub const MAX_CANON_ORDER: usize = 5;
/// Largest order for full enumeration.
pub const MAX_ENUM_ORDER: usize = 4;

/// A q×q square over the symbols 1..=q.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct LatinSquare {
    q: usize,
    entries: Vec<Vec<usize>>,
}

impl LatinSquare {
    pub fn new(entries: Vec<Vec<usize>>) -> Result<LatinSquare> {
        let q = entries.len();
        if q == 0 {
            return Err(Error::NotLatinSquare("empty square".into()));
        }
        if entries.iter().any(|r| r.len() != q) {
            return Err(Error::NotLatinSquare("rows of unequal length".into()));
        }
        if entries.iter().flatten().any(|&s| s == 0 || s > q) {
            return Err(Error::NotLatinSquare(format!("symbols must lie in 1..={q}")));
        }
        for (i, row) in entries.iter().enumerate() {
            if row.iter().all_unique() && entries.iter().map(|r| r[i]).all_unique() {
                continue;
            }
            return Err(Error::NotLatinSquare(format!("repeat in row or column {}", i + 1)));
        }
        Ok(LatinSquare { q, entries })
    }

    pub fn order(&self) -> usize {
        self.q
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.entries
    }

    pub fn get(&self, r: usize, c: usize) -> usize {
        self.entries[r][c]
    }

    pub fn transpose(&self) -> LatinSquare {
        let q = self.q;
        LatinSquare {
            q,
            entries: (0..q).map(|c| (0..q).map(|r| self.entries[r][c]).collect()).collect(),
        }
    }

    /// Relabels rows, columns and symbols: entry (rp[r], cp[c]) becomes sp[s].
    /// Permutations are 0-based.
    pub fn permuted(&self, rp: &[usize], cp: &[usize], sp: &[usize]) -> LatinSquare {
        let q = self.q;
        let mut entries = vec![vec![0; q]; q];
        for r in 0..q {
            for c in 0..q {
                entries[rp[r]][cp[c]] = sp[self.entries[r][c] - 1] + 1;
            }
        }
        LatinSquare { q, entries }
    }

    /// Conjugate obtained by reading each (row, column, symbol) triple with
    /// its roles reordered by `roles`.
    pub fn conjugate(&self, roles: [usize; 3]) -> LatinSquare {
        let q = self.q;
        let mut entries = vec![vec![0; q]; q];
        for r in 0..q {
            for c in 0..q {
                let t = [r, c, self.entries[r][c] - 1];
                entries[t[roles[0]]][t[roles[1]]] = t[roles[2]] + 1;
            }
        }
        LatinSquare { q, entries }
    }
}

impl fmt::Display for LatinSquare {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.entries.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{}", row.iter().join(" "))?;
        }
        Ok(())
    }
}

impl FromStr for LatinSquare {
    type Err = Error;

    fn from_str(s: &str) -> Result<LatinSquare> {
        let rows = s
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(|l| {
                l.split_whitespace()
                    .map(|t| t.parse::<usize>().map_err(|e| Error::NotLatinSquare(format!("`{t}`: {e}"))))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        LatinSquare::new(rows)
    }
}

/// Lexicographically least row-major image of a square over its main class,
/// with symbols written 0-based.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct MainClassCode {
    pub q: usize,
    pub cells: Vec<usize>,
}

impl MainClassCode {
    pub fn representative(&self) -> LatinSquare {
        let q = self.q;
        LatinSquare {
            q,
            entries: self.cells.chunks(q).map(|r| r.iter().map(|s| s + 1).collect()).collect(),
        }
    }
}

impl fmt::Display for MainClassCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.cells.chunks(self.q).map(|r| r.iter().join("")).join("/"))
    }
}

const ROLES: [[usize; 3]; 6] = [[0, 1, 2], [1, 0, 2], [0, 2, 1], [2, 0, 1], [1, 2, 0], [2, 1, 0]];

pub fn main_class_code(s: &LatinSquare) -> Result<MainClassCode> {
    let q = s.order();
    if q > MAX_CANON_ORDER {
        return Err(Error::OrderOutOfRange(q));
    }
    let mut best: Option<Vec<usize>> = None;
    let mut cells = vec![0; q * q];
    for roles in ROLES {
        let conj = s.conjugate(roles);
        for rp in (0..q).permutations(q) {
            for cp in (0..q).permutations(q) {
                // the lex-least symbol relabeling names symbols by first appearance
                let mut name = vec![usize::MAX; q];
                let mut next = 0;
                for r in 0..q {
                    for c in 0..q {
                        let sym = conj.entries[rp[r]][cp[c]] - 1;
                        if name[sym] == usize::MAX {
                            name[sym] = next;
                            next += 1;
                        }
                        cells[r * q + c] = name[sym];
                    }
                }
                if best.as_ref().is_none_or(|b| cells < *b) {
                    best = Some(cells.clone());
                }
            }
        }
    }
    Ok(MainClassCode {
        q,
        cells: best.expect("at least one image"),
    })
}

/// All Latin squares of order q, row by row.
pub fn all_latin_squares(q: usize) -> Result<Vec<LatinSquare>> {
    if q == 0 || q > MAX_ENUM_ORDER {
        return Err(Error::OrderOutOfRange(q));
    }
    let mut out = Vec::new();
    let mut grid = vec![vec![0; q]; q];
    fill(&mut grid, 0, q, &mut out);
    Ok(out)
}

fn fill(grid: &mut Vec<Vec<usize>>, cell: usize, q: usize, out: &mut Vec<LatinSquare>) {
    if cell == q * q {
        out.push(LatinSquare {
            q,
            entries: grid.clone(),
        });
        return;
    }
    let (r, c) = (cell / q, cell % q);
    for s in 1..=q {
        if grid[r][..c].contains(&s) || (0..r).any(|i| grid[i][c] == s) {
            continue;
        }
        grid[r][c] = s;
        fill(grid, cell + 1, q, out);
    }
    grid[r][c] = 0;
}

#[derive(Clone, Debug, Serialize)]
pub struct MainClassGroup {
    pub code: MainClassCode,
    pub squares: Vec<LatinSquare>,
}

/// Every square of order q, grouped by main class (groups ordered by code).
pub fn enumerate_latin_squares(q: usize) -> Result<Vec<MainClassGroup>> {
    let mut groups: BTreeMap<MainClassCode, Vec<LatinSquare>> = BTreeMap::new();
    for s in all_latin_squares(q)? {
        groups.entry(main_class_code(&s)?).or_default().push(s);
    }
    Ok(groups
        .into_iter()
        .map(|(code, squares)| MainClassGroup { code, squares })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sq(rows: &[&[usize]]) -> LatinSquare {
        LatinSquare::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    fn m1() -> LatinSquare {
        sq(&[&[1, 2, 3, 4], &[2, 1, 4, 3], &[3, 4, 2, 1], &[4, 3, 1, 2]])
    }

    fn m2() -> LatinSquare {
        sq(&[&[1, 2, 3, 4], &[2, 1, 4, 3], &[3, 4, 1, 2], &[4, 3, 2, 1]])
    }

    #[test]
    fn rejects_repeats() {
        assert!(LatinSquare::new(vec![vec![1, 1], vec![2, 2]]).is_err());
        assert!(LatinSquare::new(vec![vec![1, 2], vec![1, 2]]).is_err());
        assert!(LatinSquare::new(vec![vec![1, 3], vec![3, 1]]).is_err());
    }

    #[test]
    fn text_round_trip() {
        let s = m1();
        assert_eq!(s.to_string().parse::<LatinSquare>().unwrap(), s);
        assert_eq!(s.to_string().lines().next(), Some("1 2 3 4"));
    }

    #[test]
    fn transpose_shares_main_class() {
        assert_eq!(main_class_code(&m1()).unwrap(), main_class_code(&m1().transpose()).unwrap());
    }

    #[test]
    fn two_classes_at_order_four() {
        assert_ne!(main_class_code(&m1()).unwrap(), main_class_code(&m2()).unwrap());
        assert_eq!(main_class_code(&m1()).unwrap().cells, vec![0, 1, 2, 3, 1, 0, 3, 2, 2, 3, 1, 0, 3, 2, 0, 1]);
        assert_eq!(main_class_code(&m2()).unwrap().cells, vec![0, 1, 2, 3, 1, 0, 3, 2, 2, 3, 0, 1, 3, 2, 1, 0]);
    }

    #[test]
    fn conjugates_are_latin() {
        for roles in ROLES {
            let c = m1().conjugate(roles);
            assert!(LatinSquare::new(c.rows().to_vec()).is_ok());
        }
    }

    #[test]
    fn small_counts() {
        assert_eq!(all_latin_squares(1).unwrap().len(), 1);
        assert_eq!(all_latin_squares(2).unwrap().len(), 2);
        assert_eq!(all_latin_squares(3).unwrap().len(), 12);
        assert_eq!(enumerate_latin_squares(3).unwrap().len(), 1);
        assert!(all_latin_squares(5).is_err());
    }
}
