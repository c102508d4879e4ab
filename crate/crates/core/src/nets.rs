//! (k,q)-net search over the line set, mixed points and the Latin square of a
//! 3-net.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::Arrangement;
use crate::lattice::{Census, Flat, Lattice};
use crate::latin::LatinSquare;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NetStructure {
    pub k: usize,
    pub q: usize,
    /// Sorted classes, ordered by their smallest line.
    pub classes: Vec<Vec<usize>>,
    /// The q² points where lines of distinct classes meet.
    pub mixed_points: Vec<Flat>,
}

impl NetStructure {
    /// Class index of every line.
    pub fn labels(&self) -> Vec<usize> {
        let d = self.k * self.q;
        let mut label = vec![usize::MAX; d];
        for (c, class) in self.classes.iter().enumerate() {
            for &i in class {
                label[i] = c;
            }
        }
        label
    }
}

/// Checks the net axioms for a full partition and returns the normalized net.
pub fn verify_net(lat: &Lattice, classes: &[Vec<usize>]) -> Result<NetStructure> {
    let d = lat.line_count();
    let k = classes.len();
    if k < 2 {
        return Err(Error::InvalidNet("need at least two classes".into()));
    }
    let q = classes[0].len();
    if classes.iter().any(|c| c.len() != q) || k * q != d {
        return Err(Error::InvalidNet(format!("classes do not split {d} lines evenly")));
    }
    let mut label = vec![usize::MAX; d];
    for (c, class) in classes.iter().enumerate() {
        for &i in class {
            if i >= d || label[i] != usize::MAX {
                return Err(Error::InvalidNet(format!("line {} is missing or repeated", i + 1)));
            }
            label[i] = c;
        }
    }
    let mut mixed = Vec::new();
    for f in lat.flats() {
        let mut seen = vec![0usize; k];
        for &i in &f.lines {
            seen[label[i]] += 1;
        }
        let present = seen.iter().filter(|&&n| n > 0).count();
        if present == 1 {
            continue;
        }
        if seen.iter().any(|&n| n != 1) {
            return Err(Error::InvalidNet(format!(
                "point {} on lines {:?} is not a transversal of the classes",
                f.point,
                f.lines.iter().map(|i| i + 1).collect::<Vec<_>>()
            )));
        }
        mixed.push(f.clone());
    }
    if mixed.len() != q * q {
        return Err(Error::InvalidNet(format!("{} mixed points, expected {}", mixed.len(), q * q)));
    }
    let mut classes: Vec<Vec<usize>> = classes
        .iter()
        .map(|c| {
            let mut c = c.clone();
            c.sort_unstable();
            c
        })
        .collect();
    classes.sort();
    Ok(NetStructure {
        k,
        q,
        classes,
        mixed_points: mixed,
    })
}

struct Search<'a> {
    lat: &'a Lattice,
    k: usize,
    q: usize,
    label: Vec<usize>,
    sizes: Vec<usize>,
    found: Vec<Vec<Vec<usize>>>,
}

impl Search<'_> {
    /// Partial net condition on every flat through `line`: the assigned lines
    /// are all in one class, or the flat has exactly k lines, all assigned to
    /// distinct classes so far.
    fn consistent(&self, line: usize) -> bool {
        let k = self.k;
        self.lat.flats_through(line).iter().all(|&fi| {
            let f = &self.lat.flats()[fi];
            let assigned: Vec<usize> = f
                .lines
                .iter()
                .map(|&i| self.label[i])
                .filter(|&c| c != usize::MAX)
                .collect();
            if assigned.iter().all(|&c| c == assigned[0]) {
                return true;
            }
            if f.multiplicity() != k {
                return false;
            }
            let mut seen = vec![false; k];
            assigned.iter().all(|&c| !std::mem::replace(&mut seen[c], true))
        })
    }

    fn run(&mut self, line: usize, opened: usize) {
        if line == self.label.len() {
            let mut classes = vec![Vec::new(); self.k];
            for (i, &c) in self.label.iter().enumerate() {
                classes[c].push(i);
            }
            self.found.push(classes);
            return;
        }
        let limit = (opened + 1).min(self.k);
        for c in 0..limit {
            if self.sizes[c] == self.q {
                continue;
            }
            self.label[line] = c;
            self.sizes[c] += 1;
            if self.consistent(line) {
                self.run(line + 1, opened.max(c + 1));
            }
            self.sizes[c] -= 1;
            self.label[line] = usize::MAX;
        }
    }
}

/// All partitions of the lines into k classes forming a net, each reported
/// once (up to class order) and sorted.
pub fn find_nets(a: &Arrangement, k: usize) -> Result<Vec<NetStructure>> {
    find_nets_in(&Lattice::new(a), k)
}

pub fn find_nets_in(lat: &Lattice, k: usize) -> Result<Vec<NetStructure>> {
    let d = lat.line_count();
    if k < 3 || !d.is_multiple_of(k) {
        return Err(Error::NetArity { d, k });
    }
    let q = d / k;
    if q < 2 {
        return Ok(Vec::new());
    }
    let mut s = Search {
        lat,
        k,
        q,
        label: vec![usize::MAX; d],
        sizes: vec![0; k],
        found: Vec::new(),
    };
    s.run(0, 0);
    let mut nets = s
        .found
        .iter()
        .map(|classes| verify_net(lat, classes))
        .collect::<Result<Vec<_>>>()?;
    nets.sort_by(|x, y| x.classes.cmp(&y.classes));
    Ok(nets)
}

/// The square whose (r, c) entry is the position, within the third class, of
/// the line through the r-th line of the first class and the c-th of the second.
pub fn latin_square(n: &NetStructure) -> Result<LatinSquare> {
    if n.k != 3 {
        return Err(Error::InvalidNet(format!("Latin squares need 3 classes, net has {}", n.k)));
    }
    let q = n.q;
    let pos = |class: &Vec<usize>, line: usize| class.iter().position(|&i| i == line);
    let mut entries = vec![vec![0; q]; q];
    for f in &n.mixed_points {
        let mut rcs = [None; 3];
        for &i in &f.lines {
            for (c, class) in n.classes.iter().enumerate() {
                if let Some(p) = pos(class, i) {
                    rcs[c] = Some(p);
                }
            }
        }
        match rcs {
            [Some(r), Some(c), Some(s)] => entries[r][c] = s + 1,
            _ => return Err(Error::InvalidNet(format!("mixed point {} misses a class", f.point))),
        }
    }
    LatinSquare::new(entries)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ClassType {
    /// The class has an internal triple point.
    #[serde(rename = "i")]
    I,
    #[serde(rename = "ii")]
    II,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassCensus {
    pub class: usize,
    /// Multiple points of the class's own lines.
    pub census: Census,
    /// Only assigned for q = 4 when no point has multiplicity above 3.
    pub kind: Option<ClassType>,
}

pub fn mixed_census(a: &Arrangement, n: &NetStructure) -> Vec<ClassCensus> {
    mixed_census_in(&Lattice::new(a), n)
}

pub fn mixed_census_in(lat: &Lattice, n: &NetStructure) -> Vec<ClassCensus> {
    let typed = n.q == 4 && lat.max_multiplicity() <= 3;
    n.classes
        .iter()
        .enumerate()
        .map(|(ci, class)| {
            let mut counts = std::collections::BTreeMap::new();
            for f in lat.flats() {
                let m = f.lines.iter().filter(|i| class.contains(i)).count();
                if m >= 2 {
                    *counts.entry(m).or_insert(0) += 1;
                }
            }
            let census = Census::from_counts(counts);
            let kind = typed.then(|| if census.get(3) > 0 { ClassType::I } else { ClassType::II });
            ClassCensus {
                class: ci,
                census,
                kind,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn braid() -> Arrangement {
        Arrangement::from_int_rows(
            "a3",
            &[[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, -1, 0], [1, 0, -1], [0, 1, -1]],
        )
        .unwrap()
    }

    #[test]
    fn braid_has_a_unique_three_net() {
        let nets = find_nets(&braid(), 3).unwrap();
        assert_eq!(nets.len(), 1);
        let n = &nets[0];
        assert_eq!(n.q, 2);
        assert_eq!(n.mixed_points.len(), 4);
        // opposite edges of the complete quadrilateral
        assert_eq!(n.classes, vec![vec![0, 5], vec![1, 4], vec![2, 3]]);
        let s = latin_square(n).unwrap();
        assert_eq!(s.order(), 2);
    }

    #[test]
    fn generic_lines_have_no_net() {
        let rows: Vec<[i64; 3]> = (0..6).map(|i| [1, i, i * i]).collect();
        let a = Arrangement::from_int_rows("g6", &rows).unwrap();
        assert!(find_nets(&a, 3).unwrap().is_empty());
    }

    #[test]
    fn arity_is_checked() {
        assert!(matches!(find_nets(&braid(), 4), Err(Error::NetArity { d: 6, k: 4 })));
        assert!(find_nets(&braid(), 2).is_err());
    }

    #[test]
    fn verify_rejects_bad_partition() {
        let lat = Lattice::new(&braid());
        assert!(verify_net(&lat, &[vec![0, 1], vec![2, 3], vec![4, 5]]).is_err());
        assert!(verify_net(&lat, &[vec![0, 5], vec![1, 4], vec![2, 3]]).is_ok());
    }

    #[test]
    fn class_census_of_braid_net() {
        let n = &find_nets(&braid(), 3).unwrap()[0];
        let cc = mixed_census(&braid(), n);
        assert_eq!(cc.len(), 3);
        assert!(cc.iter().all(|c| c.census.get(2) == 1 && c.kind.is_none()));
    }
}
