//! Rank-2 flats (multiple points), multiplicity census, essentiality and
//! lattice isomorphism.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use serde::Serialize;

use crate::geometry::{intersect, Arrangement, Point};

/// A multiple point with the sorted indices of every line through it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Flat {
    pub point: Point,
    pub lines: Vec<usize>,
}

impl Flat {
    pub fn multiplicity(&self) -> usize {
        self.lines.len()
    }

    pub fn contains(&self, line: usize) -> bool {
        self.lines.binary_search(&line).is_ok()
    }
}

/// Number of flats of each multiplicity.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct Census(BTreeMap<usize, usize>);

impl Census {
    pub fn from_counts(counts: impl IntoIterator<Item = (usize, usize)>) -> Census {
        Census(counts.into_iter().filter(|&(_, n)| n > 0).collect())
    }

    /// `t_k`, zero when absent.
    pub fn get(&self, k: usize) -> usize {
        self.0.get(&k).copied().unwrap_or(0)
    }

    pub fn max_multiplicity(&self) -> usize {
        self.0.keys().next_back().copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.0.iter().map(|(&k, &n)| (k, n))
    }

    /// Sum of `t_k * C(k, 2)`.
    pub fn pair_count(&self) -> usize {
        self.iter().map(|(k, n)| n * k * (k - 1) / 2).sum()
    }

    /// Every pair of lines meets exactly once.
    pub fn satisfies_pair_identity(&self, d: usize) -> bool {
        self.pair_count() == d * (d.saturating_sub(1)) / 2
    }
}

impl fmt::Display for Census {
    /// `t3=12 t2=0`, from the top multiplicity down to 2.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let top = self.max_multiplicity().max(2);
        let parts: Vec<String> = (2..=top).rev().map(|k| format!("t{k}={}", self.get(k))).collect();
        f.write_str(&parts.join(" "))
    }
}

/// Flats of an arrangement with a pair-to-flat lookup table.
#[derive(Clone, Debug)]
pub struct Lattice {
    d: usize,
    flats: Vec<Flat>,
    meet: Vec<Vec<usize>>,
    through: Vec<Vec<usize>>,
}

impl Lattice {
    pub fn new(a: &Arrangement) -> Lattice {
        let lines = a.lines();
        let d = lines.len();
        let mut by_point: HashMap<Point, Vec<usize>> = HashMap::new();
        for i in 0..d {
            for j in i + 1..d {
                let p = intersect(&lines[i], &lines[j]).expect("arrangement lines are distinct");
                let entry = by_point.entry(p).or_default();
                for k in [i, j] {
                    if !entry.contains(&k) {
                        entry.push(k);
                    }
                }
            }
        }
        let mut flats: Vec<Flat> = by_point
            .into_iter()
            .map(|(point, mut lines)| {
                lines.sort_unstable();
                Flat { point, lines }
            })
            .collect();
        flats.sort_by(|x, y| x.lines.cmp(&y.lines));
        Lattice::from_flats(d, flats)
    }

    fn from_flats(d: usize, flats: Vec<Flat>) -> Lattice {
        let mut meet = vec![vec![usize::MAX; d]; d];
        let mut through = vec![Vec::new(); d];
        for (idx, f) in flats.iter().enumerate() {
            for (a, &i) in f.lines.iter().enumerate() {
                through[i].push(idx);
                for &j in &f.lines[a + 1..] {
                    meet[i][j] = idx;
                    meet[j][i] = idx;
                }
            }
        }
        Lattice {
            d,
            flats,
            meet,
            through,
        }
    }

    pub fn line_count(&self) -> usize {
        self.d
    }

    pub fn flats(&self) -> &[Flat] {
        &self.flats
    }

    /// Index of the flat through lines `i != j`.
    pub fn meet(&self, i: usize, j: usize) -> usize {
        self.meet[i][j]
    }

    pub fn meet_flat(&self, i: usize, j: usize) -> &Flat {
        &self.flats[self.meet[i][j]]
    }

    /// Indices of the flats on line `i`.
    pub fn flats_through(&self, i: usize) -> &[usize] {
        &self.through[i]
    }

    pub fn census(&self) -> Census {
        let mut t = BTreeMap::new();
        for f in &self.flats {
            *t.entry(f.multiplicity()).or_insert(0) += 1;
        }
        Census(t)
    }

    pub fn max_multiplicity(&self) -> usize {
        self.flats.iter().map(Flat::multiplicity).max().unwrap_or(0)
    }

    pub fn is_essential(&self) -> bool {
        self.d >= 3 && self.flats.iter().all(|f| f.multiplicity() < self.d)
    }

    /// Flats with multiplicity at least 3, as sorted line sets.
    pub fn higher_flats(&self) -> Vec<Vec<usize>> {
        self.flats
            .iter()
            .filter(|f| f.multiplicity() >= 3)
            .map(|f| f.lines.clone())
            .collect()
    }
}

pub fn compute_flats(a: &Arrangement) -> Vec<Flat> {
    Lattice::new(a).flats
}

pub fn census(a: &Arrangement) -> Census {
    Lattice::new(a).census()
}

/// True iff the lines are not all concurrent (and there are at least 3).
pub fn is_essential(a: &Arrangement) -> bool {
    Lattice::new(a).is_essential()
}

/// Canonical form of the line/flat incidence structure restricted to flats of
/// multiplicity at least 3.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct IncidenceCode {
    pub lines: usize,
    pub flats: Vec<Vec<usize>>,
}

impl IncidenceCode {
    pub fn of(a: &Arrangement) -> IncidenceCode {
        canonical_labeling(&Lattice::new(a)).0
    }
}

/// Applies a labeling (`label[line]`) to a flat list and sorts.
fn relabel(flats: &[Vec<usize>], label: &[usize]) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = flats
        .iter()
        .map(|f| {
            let mut g: Vec<usize> = f.iter().map(|&i| label[i]).collect();
            g.sort_unstable();
            g
        })
        .collect();
    out.sort();
    out
}

/// Ranks signatures so colors are consistent across isomorphic inputs.
fn rank<K: Ord + Clone>(keys: &[K]) -> Vec<usize> {
    let mut sorted: Vec<K> = keys.to_vec();
    sorted.sort();
    sorted.dedup();
    keys.iter()
        .map(|k| sorted.binary_search(k).expect("key present"))
        .collect()
}

struct Canonizer<'a> {
    n: usize,
    flats: &'a [Vec<usize>],
    on_line: Vec<Vec<usize>>,
    twin: Vec<usize>,
    best: Option<(Vec<Vec<usize>>, Vec<usize>)>,
}

impl Canonizer<'_> {
    /// Equitable refinement of line colors against the flats.
    fn refine(&self, mut colors: Vec<usize>) -> Vec<usize> {
        let mut classes = colors.iter().collect::<HashSet<_>>().len();
        loop {
            let flat_keys: Vec<(usize, Vec<usize>)> = self
                .flats
                .iter()
                .map(|f| {
                    let mut c: Vec<usize> = f.iter().map(|&i| colors[i]).collect();
                    c.sort_unstable();
                    (f.len(), c)
                })
                .collect();
            let flat_colors = rank(&flat_keys);
            let line_keys: Vec<(usize, Vec<usize>)> = (0..self.n)
                .map(|i| {
                    let mut c: Vec<usize> = self.on_line[i].iter().map(|&f| flat_colors[f]).collect();
                    c.sort_unstable();
                    (colors[i], c)
                })
                .collect();
            colors = rank(&line_keys);
            let next = colors.iter().collect::<HashSet<_>>().len();
            if next == classes {
                return colors;
            }
            classes = next;
        }
    }

    fn search(&mut self, colors: Vec<usize>) {
        let colors = self.refine(colors);
        let mut cells: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (i, &c) in colors.iter().enumerate() {
            cells.entry(c).or_default().push(i);
        }
        let Some(cell) = cells.values().find(|c| c.len() > 1).cloned() else {
            let code = relabel(self.flats, &colors);
            if self.best.as_ref().is_none_or(|(b, _)| code < *b) {
                self.best = Some((code, colors));
            }
            return;
        };
        let mut tried = HashSet::new();
        for &v in &cell {
            if !tried.insert(self.twin[v]) {
                continue;
            }
            let keys: Vec<(usize, bool)> = (0..self.n).map(|i| (colors[i], i != v)).collect();
            self.search(rank(&keys));
        }
    }
}

/// Canonical code plus the labeling (`label[line]`) that realizes it.
pub fn canonical_labeling(lat: &Lattice) -> (IncidenceCode, Vec<usize>) {
    let n = lat.line_count();
    let flats = lat.higher_flats();
    let mut on_line = vec![Vec::new(); n];
    for (fi, f) in flats.iter().enumerate() {
        for &i in f {
            on_line[i].push(fi);
        }
    }
    // lines with identical flat membership are interchangeable
    let twin = rank(&on_line);
    let mut c = Canonizer {
        n,
        flats: &flats,
        on_line,
        twin,
        best: None,
    };
    c.search(vec![0; n]);
    let (code, label) = c.best.unwrap_or_default();
    (IncidenceCode { lines: n, flats: code }, label)
}

/// Checks that `map` (line of `a` to line of `b`) carries the higher flats of
/// `a` bijectively onto those of `b`.
pub fn is_lattice_isomorphism(a: &Lattice, b: &Lattice, map: &[usize]) -> bool {
    if a.line_count() != b.line_count() || map.len() != a.line_count() {
        return false;
    }
    let mut seen = vec![false; map.len()];
    for &m in map {
        if m >= seen.len() || std::mem::replace(&mut seen[m], true) {
            return false;
        }
    }
    relabel(&a.higher_flats(), map) == relabel(&b.higher_flats(), &(0..b.line_count()).collect::<Vec<_>>())
}

/// Lattice isomorphism test; on success returns `witness[i]`, the line of `b`
/// that line `i` of `a` maps to.
pub fn lattice_isomorphic(a: &Arrangement, b: &Arrangement) -> Option<Vec<usize>> {
    let (la, lb) = (Lattice::new(a), Lattice::new(b));
    if la.line_count() != lb.line_count() || la.census() != lb.census() {
        return None;
    }
    let (ca, label_a) = canonical_labeling(&la);
    let (cb, label_b) = canonical_labeling(&lb);
    if ca != cb {
        return None;
    }
    let mut inv_b = vec![0; label_b.len()];
    for (line, &l) in label_b.iter().enumerate() {
        inv_b[l] = line;
    }
    let witness: Vec<usize> = label_a.iter().map(|&l| inv_b[l]).collect();
    debug_assert!(is_lattice_isomorphism(&la, &lb, &witness));
    Some(witness)
}
