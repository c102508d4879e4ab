//! Machine-readable analysis reports. Lines and classes are numbered from 1,
//! exact values are strings.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::aomoto::{beta_1p_from, nonconstant_solution};
use crate::error::Result;
use crate::geometry::Arrangement;
use crate::latin::main_class_code;
use crate::lattice::Lattice;
use crate::monodromy::{monodromy_verdict_in, MonodromyReport};
use crate::nets::{find_nets_in, latin_square, mixed_census_in, ClassType, NetStructure};
use crate::pencil::pencil_check;

pub const REPORT_PRIMES: [u64; 3] = [2, 3, 5];

#[derive(Clone, Debug, Serialize)]
pub struct ArrangementInfo {
    pub name: String,
    pub field: String,
    pub d: usize,
    pub lines: Vec<[String; 3]>,
}

impl From<&Arrangement> for ArrangementInfo {
    fn from(a: &Arrangement) -> Self {
        ArrangementInfo {
            name: a.name().to_string(),
            field: a.field().to_string(),
            d: a.len(),
            lines: a
                .lines()
                .iter()
                .map(|l| {
                    let c = l.coeffs();
                    [c[0].to_string(), c[1].to_string(), c[2].to_string()]
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BettiInfo {
    pub beta: usize,
    pub nonconstant_solution: Option<Vec<u64>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassInfo {
    pub lines: Vec<usize>,
    pub census: BTreeMap<usize, usize>,
    #[serde(rename = "type", skip_serializing_if = "Option::is_none")]
    pub kind: Option<ClassType>,
}

#[derive(Clone, Debug, Serialize)]
pub struct NetInfo {
    pub k: usize,
    pub q: usize,
    pub classes: Vec<ClassInfo>,
    pub mixed_points: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub latin_square: Option<Vec<Vec<usize>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub main_class_code: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PencilInfo {
    pub net: usize,
    pub lambdas: Option<[String; 3]>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AnalysisReport {
    pub arrangement: ArrangementInfo,
    pub census: BTreeMap<usize, usize>,
    pub betti: BTreeMap<u64, BettiInfo>,
    pub nets: Vec<NetInfo>,
    pub pencil: Vec<PencilInfo>,
    /// Absent for arrangements that are not essential.
    pub monodromy: Option<MonodromyReport>,
}

pub fn net_info(lat: &Lattice, n: &NetStructure) -> Result<NetInfo> {
    let census = mixed_census_in(lat, n);
    let (square, code) = if n.k == 3 {
        let s = latin_square(n)?;
        let code = main_class_code(&s).ok().map(|c| c.to_string());
        (Some(s.rows().to_vec()), code)
    } else {
        (None, None)
    };
    Ok(NetInfo {
        k: n.k,
        q: n.q,
        classes: n
            .classes
            .iter()
            .zip(census)
            .map(|(c, cc)| ClassInfo {
                lines: c.iter().map(|i| i + 1).collect(),
                census: cc.census.iter().collect(),
                kind: cc.kind,
            })
            .collect(),
        mixed_points: n.mixed_points.len(),
        latin_square: square,
        main_class_code: code,
    })
}

/// Nets with three and with four classes, whichever divide the line count.
pub fn all_nets(lat: &Lattice) -> Result<Vec<NetStructure>> {
    let d = lat.line_count();
    let mut out = Vec::new();
    for k in [3, 4] {
        if d.is_multiple_of(k) && d / k >= 2 {
            out.extend(find_nets_in(lat, k)?);
        }
    }
    Ok(out)
}

pub fn analyze(a: &Arrangement) -> Result<AnalysisReport> {
    let lat = Lattice::new(a);
    let mut betti = BTreeMap::new();
    for p in REPORT_PRIMES {
        let r = beta_1p_from(&lat, p)?;
        betti.insert(
            p,
            BettiInfo {
                beta: r.beta,
                nonconstant_solution: nonconstant_solution(&r).map(<[u64]>::to_vec),
            },
        );
    }
    let nets = all_nets(&lat)?;
    let pencil = nets
        .iter()
        .enumerate()
        .filter(|(_, n)| n.k == 3)
        .map(|(i, n)| PencilInfo {
            net: i,
            lambdas: pencil_check(a, n).map(|l| l.map(|x| x.to_string())),
        })
        .collect();
    let monodromy = if lat.is_essential() {
        Some(monodromy_verdict_in(&lat)?)
    } else {
        None
    };
    Ok(AnalysisReport {
        arrangement: a.into(),
        census: lat.census().iter().collect(),
        betti,
        nets: nets.iter().map(|n| net_info(&lat, n)).collect::<Result<_>>()?,
        pencil,
        monodromy,
    })
}

pub fn to_json(r: &impl Serialize) -> String {
    serde_json::to_string_pretty(r).expect("reports serialize")
}
