//! Combinatorial monodromy report: which eigenvalue orders can occur, the
//! modular upper bounds on their exponents, net certificates and a verdict.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::aomoto::{beta_1p_from, is_prime};
use crate::error::{Error, Result};
use crate::geometry::Arrangement;
use crate::lattice::Lattice;
use crate::nets::{find_nets_in, NetStructure};

/// Range where nets decide the verdict: at most this many lines ...
pub const MAX_LINES: usize = 14;
/// ... and no point of multiplicity above this.
pub const MAX_MULT: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Trivial,
    Nontrivial,
    Undetermined,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Trivial => "trivial",
            Verdict::Nontrivial => "nontrivial",
            Verdict::Undetermined => "undetermined",
        })
    }
}

pub fn euler_phi(m: u64) -> u64 {
    let (mut n, mut phi, mut p) = (m, m, 2);
    while p * p <= n {
        if n % p == 0 {
            while n.is_multiple_of(p) {
                n /= p;
            }
            phi -= phi / p;
        }
        p += 1;
    }
    if n > 1 {
        phi -= phi / n;
    }
    phi
}

/// The prime p if m = p^s with s ≥ 1.
pub fn prime_power_base(m: u64) -> Option<u64> {
    let p = (2..=m).find(|p| m.is_multiple_of(*p))?;
    let mut n = m;
    while n.is_multiple_of(p) {
        n /= p;
    }
    (n == 1 && is_prime(p)).then_some(p)
}

/// Interval for an exponent b_m; `upper` is absent when no bound applies.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrderBound {
    pub m: u64,
    pub phi: u64,
    pub lower: u64,
    pub upper: Option<u64>,
    /// Prime whose Aomoto–Betti number bounds b_m.
    pub via_prime: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NetCertificate {
    pub k: usize,
    pub q: usize,
    /// 0-based; serialized 1-based like every other report.
    #[serde(serialize_with = "one_based")]
    pub classes: Vec<Vec<usize>>,
}

fn one_based<S: serde::Serializer>(classes: &[Vec<usize>], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(classes.len()))?;
    for c in classes {
        seq.serialize_element(&c.iter().map(|i| i + 1).collect::<Vec<_>>())?;
    }
    seq.end()
}

impl From<&NetStructure> for NetCertificate {
    fn from(n: &NetStructure) -> Self {
        NetCertificate {
            k: n.k,
            q: n.q,
            classes: n.classes.clone(),
        }
    }
}

impl NetCertificate {
    /// (3,q) with q ≤ 4 or (4,3).
    pub fn qualifies(&self) -> bool {
        (self.k == 3 && (2..=4).contains(&self.q)) || (self.k == 4 && self.q == 3)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Interval {
    pub lower: u64,
    pub upper: Option<u64>,
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.upper {
            Some(u) if u == self.lower => write!(f, "{u}"),
            Some(u) => write!(f, "[{}, {u}]", self.lower),
            None => write!(f, "[{}, inf)", self.lower),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MonodromyReport {
    pub d: usize,
    pub max_mult: usize,
    pub admissible: Vec<u64>,
    pub betti: BTreeMap<u64, usize>,
    pub bounds: Vec<OrderBound>,
    pub nets_found: Vec<NetCertificate>,
    pub hypotheses: bool,
    pub verdict: Verdict,
    pub reason: String,
    /// dim H¹(F), counting d − 1 for the eigenvalue 1 by convention.
    pub h1: Interval,
}

impl MonodromyReport {
    pub fn bound(&self, m: u64) -> Option<&OrderBound> {
        self.bounds.iter().find(|b| b.m == m)
    }
}

impl fmt::Display for MonodromyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "verdict: {} ({})", self.verdict, self.reason)?;
        writeln!(f, "d={} max_mult={}", self.d, self.max_mult)?;
        let orders: Vec<String> = self.admissible.iter().map(u64::to_string).collect();
        writeln!(f, "admissible orders: {{{}}}", orders.join(","))?;
        for (p, b) in &self.betti {
            writeln!(f, "beta_1{p}={b}")?;
        }
        for b in &self.bounds {
            let iv = Interval {
                lower: b.lower,
                upper: b.upper,
            };
            writeln!(f, "b_{} in {iv} (phi={})", b.m, b.phi)?;
        }
        for n in &self.nets_found {
            writeln!(f, "net ({},{}): {}", n.k, n.q, format_classes(&n.classes))?;
        }
        write!(f, "dim H1(F) in {} (eigenvalue-1 part d-1 by convention)", self.h1)
    }
}

/// Classes as 1-based line numbers: `{1,2,3} {4,5,6}`.
pub fn format_classes(classes: &[Vec<usize>]) -> String {
    classes
        .iter()
        .map(|c| {
            let s: Vec<String> = c.iter().map(|i| (i + 1).to_string()).collect();
            format!("{{{}}}", s.join(","))
        })
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn admissible_orders(a: &Arrangement) -> Vec<u64> {
    admissible_orders_in(&Lattice::new(a))
}

pub fn admissible_orders_in(lat: &Lattice) -> Vec<u64> {
    let d = lat.line_count() as u64;
    let low_mult = lat.max_multiplicity() <= MAX_MULT;
    (2..=d)
        .filter(|m| d.is_multiple_of(*m))
        .filter(|m| lat.flats().iter().any(|f| (f.multiplicity() as u64).is_multiple_of(*m)))
        .filter(|m| !low_mult || (2..=4).contains(m))
        .collect()
}

fn within_hypotheses(lat: &Lattice) -> bool {
    lat.line_count() <= MAX_LINES && lat.max_multiplicity() <= MAX_MULT
}

/// Nets with 3 or 4 classes covering all lines.
fn small_nets(lat: &Lattice) -> Result<Vec<NetCertificate>> {
    let d = lat.line_count();
    let mut out = Vec::new();
    for k in [3, 4] {
        if d.is_multiple_of(k) && d / k >= 2 {
            out.extend(find_nets_in(lat, k)?.iter().map(NetCertificate::from));
        }
    }
    Ok(out)
}

pub fn monodromy_verdict(a: &Arrangement) -> Result<MonodromyReport> {
    monodromy_verdict_in(&Lattice::new(a))
}

pub fn monodromy_verdict_in(lat: &Lattice) -> Result<MonodromyReport> {
    if !lat.is_essential() {
        return Err(Error::NonEssential);
    }
    let d = lat.line_count();
    let max_mult = lat.max_multiplicity();
    let admissible = admissible_orders_in(lat);
    let mut betti = BTreeMap::new();
    for &m in &admissible {
        if let Some(p) = prime_power_base(m) {
            if let std::collections::btree_map::Entry::Vacant(e) = betti.entry(p) {
                e.insert(beta_1p_from(lat, p)?.beta);
            }
        }
    }
    let nets_found = small_nets(lat)?;
    let three_net = nets_found.iter().any(|n| n.k == 3);
    let mut bounds: Vec<OrderBound> = admissible
        .iter()
        .map(|&m| {
            let via_prime = prime_power_base(m);
            OrderBound {
                m,
                phi: euler_phi(m),
                lower: u64::from(m == 3 && three_net),
                upper: via_prime.map(|p| betti[&p] as u64),
                via_prime,
            }
        })
        .collect();

    let hypotheses = within_hypotheses(lat);
    let qualifying = nets_found.iter().find(|n| n.qualifies());
    let (verdict, reason) = if admissible.is_empty() {
        let why = if is_prime(d as u64) {
            format!("d={d} is prime")
        } else {
            "no admissible order".to_string()
        };
        (Verdict::Trivial, why)
    } else if bounds.iter().all(|b| b.upper == Some(0)) {
        (Verdict::Trivial, "all modular bounds vanish".to_string())
    } else if hypotheses {
        match qualifying {
            Some(n) => (Verdict::Nontrivial, format!("({},{})-net", n.k, n.q)),
            None => (Verdict::Trivial, format!("no net with d<={MAX_LINES}, mult<={MAX_MULT}")),
        }
    } else {
        (Verdict::Undetermined, format!("outside d <= {MAX_LINES}, multiplicity <= {MAX_MULT}"))
    };

    if verdict == Verdict::Trivial {
        for b in &mut bounds {
            b.lower = 0;
            b.upper = Some(0);
        }
    }
    let base = d as u64 - 1;
    let mut lower = base + bounds.iter().map(|b| b.lower * b.phi).sum::<u64>();
    if verdict == Verdict::Nontrivial && bounds.iter().all(|b| b.lower == 0) {
        lower += bounds.iter().map(|b| b.phi).min().unwrap_or(0);
    }
    let upper = bounds
        .iter()
        .map(|b| b.upper.map(|u| u * b.phi))
        .sum::<Option<u64>>()
        .map(|s| base + s);
    Ok(MonodromyReport {
        d,
        max_mult,
        admissible,
        betti,
        bounds,
        nets_found,
        hypotheses,
        verdict,
        reason,
        h1: Interval { lower, upper },
    })
}

/// Both sides of the modular/net correspondence for one arrangement.
#[derive(Clone, Debug, Serialize)]
pub struct CrossCheck {
    pub beta_12: usize,
    pub beta_13: usize,
    pub qualifying_nets: Vec<NetCertificate>,
    pub has_three_net: bool,
    /// (β₁₂ > 0 or β₁₃ > 0) implies a qualifying net.
    pub forward: bool,
    /// A 3-net implies β₁₃ ≥ 1.
    pub three_net_bound: bool,
    /// (β₁₂ > 0 or β₁₃ > 0) iff a qualifying net.
    pub equivalent: bool,
}

impl CrossCheck {
    pub fn consistent(&self) -> bool {
        self.forward && self.three_net_bound
    }
}

pub fn crosscheck_theorem(a: &Arrangement) -> Result<CrossCheck> {
    let lat = Lattice::new(a);
    if !lat.is_essential() {
        return Err(Error::NonEssential);
    }
    if !within_hypotheses(&lat) {
        return Err(Error::HypothesesNotMet(format!(
            "need d<={MAX_LINES} and multiplicities <={MAX_MULT}, have d={} and max {}",
            lat.line_count(),
            lat.max_multiplicity()
        )));
    }
    let beta_12 = beta_1p_from(&lat, 2)?.beta;
    let beta_13 = beta_1p_from(&lat, 3)?.beta;
    let nets = small_nets(&lat)?;
    let has_three_net = nets.iter().any(|n| n.k == 3);
    let qualifying_nets: Vec<NetCertificate> = nets.into_iter().filter(NetCertificate::qualifies).collect();
    let positive = beta_12 > 0 || beta_13 > 0;
    Ok(CrossCheck {
        beta_12,
        beta_13,
        forward: !positive || !qualifying_nets.is_empty(),
        three_net_bound: !has_three_net || beta_13 >= 1,
        equivalent: positive == !qualifying_nets.is_empty(),
        qualifying_nets,
        has_three_net,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn generic(n: i64) -> Arrangement {
        let rows: Vec<[i64; 3]> = (0..n).map(|i| [1, i, i * i]).collect();
        Arrangement::from_int_rows(format!("g{n}"), &rows).unwrap()
    }

    #[test]
    fn totient_and_prime_powers() {
        assert_eq!([2, 3, 4, 6, 12].map(euler_phi), [1, 2, 2, 2, 4]);
        assert_eq!(prime_power_base(8), Some(2));
        assert_eq!(prime_power_base(9), Some(3));
        assert_eq!(prime_power_base(6), None);
        assert_eq!(prime_power_base(1), None);
    }

    #[test]
    fn prime_degree_is_trivial() {
        let r = monodromy_verdict(&generic(7)).unwrap();
        assert!(r.admissible.is_empty());
        assert_eq!(r.verdict, Verdict::Trivial);
        assert_eq!(r.h1, Interval { lower: 6, upper: Some(6) });
    }

    #[test]
    fn generic_six_is_trivial_by_bounds() {
        let r = monodromy_verdict(&generic(6)).unwrap();
        assert_eq!(r.admissible, vec![2]);
        assert_eq!(r.verdict, Verdict::Trivial);
        assert_eq!(r.reason, "all modular bounds vanish");
    }

    #[test]
    fn braid_is_nontrivial() {
        let a = Arrangement::from_int_rows(
            "a3",
            &[[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, -1, 0], [1, 0, -1], [0, 1, -1]],
        )
        .unwrap();
        let r = monodromy_verdict(&a).unwrap();
        assert_eq!(r.admissible, vec![2, 3]);
        assert_eq!(r.verdict, Verdict::Nontrivial);
        let b3 = r.bound(3).unwrap();
        assert_eq!((b3.lower, b3.upper), (1, Some(1)));
        let c = crosscheck_theorem(&a).unwrap();
        assert!(c.consistent() && c.equivalent);
    }

    #[test]
    fn pencil_is_rejected() {
        let a = Arrangement::from_int_rows("p", &[[1, 0, 0], [0, 1, 0], [1, 1, 0]]).unwrap();
        assert!(matches!(monodromy_verdict(&a), Err(Error::NonEssential)));
    }
}
