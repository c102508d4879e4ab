//! Named arrangements with their expected invariants, plus parametrized
//! families. Every entry is checked against its expected data the first time
//! the corpus is loaded.

use std::path::Path;
use std::sync::OnceLock;

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{Arrangement, Line};
use crate::latin::{main_class_code, LatinSquare, MainClassCode};
use crate::lattice::{Census, Lattice};
use crate::nets::{find_nets_in, latin_square, mixed_census_in, ClassType};
use crate::scalar::{FieldSpec, Scalar};

/// Representatives of the two main classes of order 4.
pub fn m1() -> LatinSquare {
    LatinSquare::new(vec![vec![1, 2, 3, 4], vec![2, 1, 4, 3], vec![3, 4, 2, 1], vec![4, 3, 1, 2]])
        .expect("latin")
}

pub fn m2() -> LatinSquare {
    LatinSquare::new(vec![vec![1, 2, 3, 4], vec![2, 1, 4, 3], vec![3, 4, 1, 2], vec![4, 3, 2, 1]])
        .expect("latin")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum MainClass {
    M1,
    M2,
}

impl MainClass {
    pub fn code(self) -> MainClassCode {
        let s = match self {
            MainClass::M1 => m1(),
            MainClass::M2 => m2(),
        };
        main_class_code(&s).expect("order 4")
    }

    /// Which of the two order-4 classes a code belongs to.
    pub fn of(code: &MainClassCode) -> Option<MainClass> {
        [MainClass::M1, MainClass::M2].into_iter().find(|c| c.code() == *code)
    }
}

/// Net data an entry must reproduce.
#[derive(Clone, Debug, Serialize)]
pub struct ExpectedNets {
    pub k: usize,
    pub count: usize,
    /// A partition that must be among the nets found, with its main class
    /// and per-class type when given.
    pub classes: Option<Vec<Vec<usize>>>,
    pub main_class: Option<MainClass>,
    pub class_types: Option<Vec<ClassType>>,
}

impl ExpectedNets {
    fn count(k: usize, count: usize) -> ExpectedNets {
        ExpectedNets {
            k,
            count,
            classes: None,
            main_class: None,
            class_types: None,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CorpusEntry {
    pub name: String,
    pub note: String,
    #[serde(skip)]
    pub arrangement: Arrangement,
    pub expected_census: Census,
    pub expected_nets: Vec<ExpectedNets>,
}

fn s(n: i64) -> Scalar {
    Scalar::from_int(n)
}

fn rows(name: &str, r: &[[i64; 3]]) -> Arrangement {
    Arrangement::from_int_rows(name, r).expect("corpus rows are valid")
}

fn eis(name: &str, lines: Vec<[Scalar; 3]>) -> Arrangement {
    let lines = lines.into_iter().map(|t| Line::new(t).expect("nonzero")).collect();
    Arrangement::new(name, FieldSpec::Eisenstein, lines).expect("corpus lines are valid")
}

pub fn generic(n: usize) -> Result<Arrangement> {
    if n == 0 {
        return Err(Error::FamilyParams {
            family: "generic".into(),
            reason: "need at least one line".into(),
        });
    }
    // tangents to a conic: no three concurrent
    let r: Vec<[i64; 3]> = (0..n as i64).map(|i| [1, i, i * i]).collect();
    Arrangement::from_int_rows(format!("generic-{n}"), &r)
}

pub fn pencil(n: usize) -> Result<Arrangement> {
    if n == 0 {
        return Err(Error::FamilyParams {
            family: "pencil".into(),
            reason: "need at least one line".into(),
        });
    }
    let r: Vec<[i64; 3]> = (0..n as i64).map(|i| [1, i, 0]).collect();
    Arrangement::from_int_rows(format!("pencil-{n}"), &r)
}

pub fn near_pencil(n: usize) -> Result<Arrangement> {
    if n < 3 {
        return Err(Error::FamilyParams {
            family: "near-pencil".into(),
            reason: "need at least three lines".into(),
        });
    }
    let r: Vec<[i64; 3]> = (0..n as i64 - 1).map(|i| [1, i, 0]).chain([[0, 0, 1]]).collect();
    Arrangement::from_int_rows(format!("near-pencil-{n}"), &r)
}

/// Nine lines with ten triple points, parametrized by b ∉ {0, 1}.
pub fn pappus(b: &BigRational) -> Result<Arrangement> {
    if b.is_zero() || b.is_one() {
        return Err(Error::ExcludedParameter {
            family: "pappus".into(),
            value: b.to_string(),
        });
    }
    let one = BigRational::one();
    let r = |x: BigRational| Scalar::rational(x);
    let q = |n: i64| Scalar::from_int(n);
    let lines = vec![
        [q(0), q(1), q(0)],
        [r(&one / b), q(1), q(1)],
        [r(b / (b - &one)), q(0), q(1)],
        [q(1), q(0), q(0)],
        [q(1), r(b.clone()), q(1)],
        [q(0), r(b.clone()), q(1)],
        [q(1), r(b * (&one - b)), q(0)],
        [q(1), q(1), q(1)],
        [q(0), q(0), q(1)],
    ];
    let lines = lines.into_iter().map(Line::new).collect::<Result<Vec<_>>>()?;
    Arrangement::new(format!("pappus:{b}"), FieldSpec::Rational, lines)
}

fn omega_pow(e: u32) -> Scalar {
    Scalar::omega().pow(e % 3)
}

fn ceva3() -> Arrangement {
    let mut lines = Vec::new();
    for (i, j) in [(0, 1), (1, 2), (0, 2)] {
        for e in 0..3 {
            let mut t = [s(0), s(0), s(0)];
            t[i] = s(1);
            t[j] = -omega_pow(e);
            lines.push(t);
        }
    }
    eis("ceva3", lines)
}

/// The triangle x + w^a y + w^b z with a + b ≡ c (mod 3).
fn hesse_triangle(c: u32) -> Vec<[Scalar; 3]> {
    (0..3).map(|a| [s(1), omega_pow(a), omega_pow(c + 3 - a)]).collect()
}

fn hesse9() -> Arrangement {
    let mut lines = vec![[s(1), s(0), s(0)], [s(0), s(1), s(0)], [s(0), s(0), s(1)]];
    lines.extend(hesse_triangle(0));
    lines.extend(hesse_triangle(1));
    eis("hesse9", lines)
}

/// The three triangle fibers without xyz; same combinatorics as `hesse9`.
pub fn hesse9_triangles() -> Arrangement {
    eis("hesse9-triangles", (0..3).flat_map(hesse_triangle).collect())
}

fn hesse12() -> Arrangement {
    let mut lines = vec![[s(1), s(0), s(0)], [s(0), s(1), s(0)], [s(0), s(0), s(1)]];
    lines.extend((0..3).flat_map(hesse_triangle));
    eis("hesse12", lines)
}

const EX1: [[i64; 3]; 12] = [
    [0, 1, 0], [10, 1, 1], [10, 4, 7], [5, 0, 1], [1, 0, 0], [5, 2, 5],
    [50, 5, 14], [0, 2, 1], [10, -1, 0], [1, 1, 1], [25, 4, 7], [0, 0, 1],
];
const EX1_PRINTED: [[i64; 3]; 12] = [
    [0, 1, 0], [10, 1, 1], [10, 76, 43], [5, 0, 1], [1, 0, 0], [40, 19, 40],
    [175, 10, 43], [0, 2, 1], [10, -1, 0], [1, 1, 1], [175, 76, 43], [0, 0, 1],
];
const EX2: [[i64; 3]; 12] = [
    [0, 1, 0], [-1, 1, 1], [2, 4, 3], [-1, 0, 1], [1, 0, 0], [1, 2, 1],
    [-1, 1, 3], [0, 2, 1], [-1, -1, 0], [1, 1, 1], [-1, 4, 3], [0, 0, 1],
];
const EX2_PRINTED: [[i64; 3]; 12] = [
    [0, 1, 0], [-1, 1, 1], [2, 4, 3], [-1, 0, 1], [1, 0, 0], [1, 2, 1],
    [-1, 1, 3], [0, 2, 1], [-1, -1, 0], [1, 1, 1], [-1, 4, 1], [0, 0, 1],
];
const EX3: [[i64; 3]; 12] = [
    [0, 1, 0], [-2, 1, 1], [4, -10, -3], [6, 0, 1], [1, 0, 0], [2, -5, 2],
    [4, -2, -1], [0, 2, 1], [10, 5, 0], [1, 1, 1], [12, -10, -3], [0, 0, 1],
];
const EX3_PRINTED: [[i64; 3]; 12] = [
    [0, 1, 0], [-2, 1, 1], [-2, 4, 1], [5, 0, 1], [1, 0, 0], [8, -25, 8],
    [13, -2, 1], [0, 2, 1], [10, 5, 0], [1, 1, 1], [13, 4, 1], [0, 0, 1],
];
const EX4: [[i64; 3]; 12] = [
    [0, 1, 0], [2, 1, 1], [12, 15, 13], [12, 0, 1], [1, 0, 0], [4, 5, 4],
    [24, 12, 13], [0, 3, 1], [12, -3, 0], [1, 1, 1], [24, 15, 13], [0, 0, 1],
];
const EX5: [[i64; 3]; 12] = [
    [0, 1, 0], [2, 5, 5], [-2, -8, 1], [2, 0, 5], [1, 0, 0], [1, 4, 1],
    [4, 10, -5], [0, -2, 1], [2, 10, 0], [1, 1, 1], [4, 40, -5], [0, 0, 1],
];
const EX5_PRINTED: [[i64; 3]; 12] = [
    [0, 1, 0], [1, 5, 5], [-2, -8, 1], [2, 0, 5], [1, 0, 0], [1, 4, 1],
    [4, 10, -5], [0, -2, 1], [2, 10, 0], [1, 1, 1], [4, 40, -5], [0, 0, 1],
];
const EX6: [[i64; 3]; 12] = [
    [0, 1, 0], [3, 1, 1], [3, -1, 5], [3, 0, 1], [1, 0, 0], [3, -1, 3],
    [9, 3, 5], [0, -2, 1], [3, 2, 0], [1, 1, 1], [9, -1, 5], [0, 0, 1],
];

fn grid14() -> Arrangement {
    let mut r: Vec<[i64; 3]> = Vec::new();
    r.extend((0..4).map(|i| [1, 0, -i]));
    r.extend((0..4).map(|j| [0, 1, -j]));
    r.extend((-1..=1).map(|k| [1, -1, -k]));
    r.extend([[0, 0, 1], [1, 1, -3], [1, 1, -2]]);
    rows("grid-14", &r)
}

fn census(c: &[(usize, usize)]) -> Census {
    Census::from_counts(c.iter().copied())
}

fn twelve_line(
    name: &str,
    note: &str,
    r: &[[i64; 3]; 12],
    c: &[(usize, usize)],
    main: MainClass,
    types: [ClassType; 3],
) -> CorpusEntry {
    CorpusEntry {
        name: name.into(),
        note: note.into(),
        arrangement: rows(name, r),
        expected_census: census(c),
        expected_nets: vec![
            ExpectedNets {
                k: 3,
                count: 1,
                classes: Some(vec![(0..4).collect(), (4..8).collect(), (8..12).collect()]),
                main_class: Some(main),
                class_types: Some(types.to_vec()),
            },
            ExpectedNets::count(4, 0),
        ],
    }
}

fn printed(name: &str, note: &str, r: &[[i64; 3]; 12], c: &[(usize, usize)]) -> CorpusEntry {
    CorpusEntry {
        name: name.into(),
        note: note.into(),
        arrangement: rows(name, r),
        expected_census: census(c),
        expected_nets: vec![ExpectedNets::count(3, 0), ExpectedNets::count(4, 0)],
    }
}

fn simple(name: &str, note: &str, a: Arrangement, c: &[(usize, usize)], nets: Vec<ExpectedNets>) -> CorpusEntry {
    CorpusEntry {
        name: name.into(),
        note: note.into(),
        arrangement: a.with_name(name),
        expected_census: census(c),
        expected_nets: nets,
    }
}

fn build() -> Vec<CorpusEntry> {
    use ClassType::{I, II};
    let two = BigRational::from_integer(2.into());
    vec![
        simple("triangle", "three lines in general position", generic(3).expect("n>0"), &[(2, 3)], vec![]),
        simple("generic-6", "tangent lines to a conic, i = 0..5", generic(6).expect("n>0"), &[(2, 15)], vec![ExpectedNets::count(3, 0)]),
        simple("generic-9", "tangent lines to a conic, i = 0..8", generic(9).expect("n>0"), &[(2, 36)], vec![ExpectedNets::count(3, 0)]),
        simple("generic-14", "tangent lines to a conic, i = 0..13", generic(14).expect("n>0"), &[(2, 91)], vec![]),
        simple("pencil-4", "four concurrent lines (not essential)", pencil(4).expect("n>0"), &[(4, 1)], vec![]),
        simple("near-pencil-5", "four concurrent lines and one general line", near_pencil(5).expect("n>=3"), &[(4, 1), (2, 4)], vec![]),
        simple(
            "braid-a3",
            "reflection arrangement A3: x, y, z, x-y, x-z, y-z",
            rows("", &[[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, -1, 0], [1, 0, -1], [0, 1, -1]]),
            &[(3, 4), (2, 3)],
            vec![ExpectedNets::count(3, 1)],
        ),
        simple(
            "b3",
            "reflection arrangement B3: x, y, z, x+-y, x+-z, y+-z",
            rows(
                "",
                &[[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 0], [1, -1, 0], [1, 0, 1], [1, 0, -1], [0, 1, 1], [0, 1, -1]],
            ),
            &[(4, 3), (3, 4), (2, 6)],
            vec![ExpectedNets::count(3, 0)],
        ),
        simple(
            "ceva3",
            "(x^3-y^3)(y^3-z^3)(x^3-z^3) = 0 over Q(w); equations not printed in the source, standard choice",
            ceva3(),
            &[(3, 12)],
            vec![ExpectedNets::count(3, 4)],
        ),
        simple(
            "hesse9",
            "xyz and two triangle fibers x^3+y^3+z^3-3w^c xyz (c = 0, 1) of the Hesse pencil",
            hesse9(),
            &[(3, 9), (2, 9)],
            vec![ExpectedNets::count(3, 1)],
        ),
        simple(
            "hesse12",
            "all four singular fibers of the Hesse pencil",
            hesse12(),
            &[(4, 9), (2, 12)],
            vec![ExpectedNets::count(3, 0), ExpectedNets::count(4, 1)],
        ),
        simple(
            "pappus-b2",
            "nine-line family with ten triple points at b = 2 (family id `pappus`)",
            pappus(&two).expect("b=2 allowed"),
            &[(3, 10), (2, 6)],
            vec![ExpectedNets::count(3, 1)],
        ),
        simple(
            "grid-14",
            "x-iz, y-jz (i,j = 0..3), x-y-kz (k = -1..1), z, x+y-3z, x+y-2z",
            grid14(),
            &[(5, 2), (4, 4), (3, 12), (2, 11)],
            vec![],
        ),
        twelve_line(
            "example-2.6-1",
            "(3,4)-net of type M1, no triple point inside a class; L3, L6, L7, L11 rebuilt (printed rows give t3=10)",
            &EX1,
            &[(3, 16), (2, 18)],
            MainClass::M1,
            [II, II, II],
        ),
        twelve_line(
            "example-2.6-2",
            "(3,4)-net of type M1, one triple point in each class; L11 = -x+4y+3z (printed -x+4y+z)",
            &EX2,
            &[(3, 19), (2, 9)],
            MainClass::M1,
            [I, I, I],
        ),
        twelve_line(
            "example-2.6-3",
            "(3,4)-net of type M1, triple point L5L7L8 in the second class; L3, L4, L6, L7, L11 rebuilt",
            &EX3,
            &[(3, 17), (2, 15)],
            MainClass::M1,
            [II, I, II],
        ),
        twelve_line(
            "example-2.6-4",
            "(3,4)-net of type M2, no triple point inside a class; rows as printed",
            &EX4,
            &[(3, 16), (2, 18)],
            MainClass::M2,
            [II, II, II],
        ),
        twelve_line(
            "example-2.6-5",
            "(3,4)-net of type M2, one triple point in each class; L2 = 2x+5y+5z (printed x+5y+5z)",
            &EX5,
            &[(3, 19), (2, 9)],
            MainClass::M2,
            [I, I, I],
        ),
        twelve_line(
            "example-2.6-6",
            "(3,4)-net of type M2, triple point in the first class; rows as printed",
            &EX6,
            &[(3, 17), (2, 15)],
            MainClass::M2,
            [I, II, II],
        ),
        printed("example-2.6-1-printed", "rows exactly as printed; not a net", &EX1_PRINTED, &[(3, 10), (2, 36)]),
        printed(
            "example-2.6-2-printed",
            "rows exactly as printed; L11 breaks the net",
            &EX2_PRINTED,
            &[(4, 1), (3, 14), (2, 18)],
        ),
        printed("example-2.6-3-printed", "rows exactly as printed; not a net", &EX3_PRINTED, &[(3, 12), (2, 30)]),
        printed(
            "example-2.6-5-printed",
            "rows exactly as printed; L2 breaks the net",
            &EX5_PRINTED,
            &[(3, 16), (2, 18)],
        ),
    ]
}

/// Re-derives an entry's census and net data.
pub fn self_test(e: &CorpusEntry) -> Result<()> {
    let fail = |reason: String| Error::CorpusMismatch {
        name: e.name.clone(),
        reason,
    };
    let lat = Lattice::new(&e.arrangement);
    let c = lat.census();
    if c != e.expected_census {
        return Err(fail(format!("census {c}, expected {}", e.expected_census)));
    }
    if !c.satisfies_pair_identity(lat.line_count()) {
        return Err(fail("pair identity fails".into()));
    }
    for x in &e.expected_nets {
        let nets = find_nets_in(&lat, x.k)?;
        if nets.len() != x.count {
            return Err(fail(format!("{} nets with {} classes, expected {}", nets.len(), x.k, x.count)));
        }
        let Some(classes) = &x.classes else { continue };
        let net = nets
            .iter()
            .find(|n| n.classes == *classes)
            .ok_or_else(|| fail(format!("expected partition {classes:?} is not a net")))?;
        if let Some(m) = x.main_class {
            let code = main_class_code(&latin_square(net)?)?;
            if MainClass::of(&code) != Some(m) {
                return Err(fail(format!("main class {code}, expected {m:?}")));
            }
        }
        if let Some(types) = &x.class_types {
            let got: Vec<Option<ClassType>> = mixed_census_in(&lat, net).iter().map(|c| c.kind).collect();
            let want: Vec<Option<ClassType>> = types.iter().map(|&t| Some(t)).collect();
            if got != want {
                return Err(fail(format!("class types {got:?}, expected {want:?}")));
            }
        }
    }
    Ok(())
}

/// Self-test of every entry, without caching, for reporting.
pub fn verify_all() -> Vec<(String, Result<()>)> {
    build().iter().map(|e| (e.name.clone(), self_test(e))).collect()
}

static CORPUS: OnceLock<std::result::Result<Vec<CorpusEntry>, String>> = OnceLock::new();

/// The verified corpus. Fails if any entry no longer matches its expected data.
pub fn corpus() -> Result<&'static [CorpusEntry]> {
    let loaded = CORPUS.get_or_init(|| {
        let entries = build();
        for e in &entries {
            self_test(e).map_err(|err| err.to_string())?;
        }
        Ok(entries)
    });
    match loaded {
        Ok(v) => Ok(v),
        Err(msg) => Err(Error::CorpusMismatch {
            name: "corpus".into(),
            reason: msg.clone(),
        }),
    }
}

pub fn entry(name: &str) -> Result<&'static CorpusEntry> {
    corpus()?
        .iter()
        .find(|e| e.name == name)
        .ok_or_else(|| Error::UnknownEntry(name.to_string()))
}

pub fn names() -> Result<Vec<&'static str>> {
    Ok(corpus()?.iter().map(|e| e.name.as_str()).collect())
}

/// Family instance with the genericity guard's verdict.
#[derive(Clone, Debug)]
pub struct Instance {
    pub arrangement: Arrangement,
    /// Set when the requested parameter gives a different census than
    /// randomly sampled parameters.
    pub warning: Option<String>,
}

pub const FAMILIES: [&str; 4] = ["pappus", "generic", "pencil", "near-pencil"];

fn count_param(family: &str, params: &[BigRational]) -> Result<usize> {
    match params {
        [n] if n.is_integer() && *n.numer() > 0.into() => {
            n.to_integer().try_into().map_err(|_| Error::FamilyParams {
                family: family.into(),
                reason: "line count too large".into(),
            })
        }
        _ => Err(Error::FamilyParams {
            family: family.into(),
            reason: "expects one positive integer".into(),
        }),
    }
}

fn random_parameter(rng: &mut ChaCha8Rng) -> BigRational {
    loop {
        let num: i64 = rng.gen_range(-97..=97);
        let den: i64 = rng.gen_range(1..=31);
        let b = BigRational::new(num.into(), den.into());
        if !b.is_zero() && !b.is_one() {
            return b;
        }
    }
}

pub fn instantiate_family(name: &str, params: &[BigRational]) -> Result<Instance> {
    match name {
        "generic" => Ok(Instance {
            arrangement: generic(count_param(name, params)?)?,
            warning: None,
        }),
        "pencil" => Ok(Instance {
            arrangement: pencil(count_param(name, params)?)?,
            warning: None,
        }),
        "near-pencil" => Ok(Instance {
            arrangement: near_pencil(count_param(name, params)?)?,
            warning: None,
        }),
        "pappus" => {
            let [b] = params else {
                return Err(Error::FamilyParams {
                    family: name.into(),
                    reason: "expects one rational parameter b".into(),
                });
            };
            let arrangement = pappus(b)?;
            let want = Lattice::new(&arrangement).census();
            let mut rng = ChaCha8Rng::seed_from_u64(0x9a99_05b2);
            let mut warning = None;
            let mut checked = 0;
            while checked < 2 {
                let Ok(other) = pappus(&random_parameter(&mut rng)) else { continue };
                checked += 1;
                let got = Lattice::new(&other).census();
                if got != want {
                    warning = Some(format!(
                        "b = {b} is a special value: census {want} differs from the generic {got}"
                    ));
                }
            }
            Ok(Instance { arrangement, warning })
        }
        _ => Err(Error::UnknownFamily(name.to_string())),
    }
}

/// Parses `family:p1,p2,...` into a family instance.
pub fn parse_family_spec(spec: &str) -> Result<Instance> {
    let (fam, args) = spec.split_once(':').ok_or_else(|| Error::UnknownFamily(spec.to_string()))?;
    let params = args
        .split(',')
        .map(|t| Scalar::parse(t.trim(), FieldSpec::Rational).map(|s| s.re().clone()))
        .collect::<Result<Vec<_>>>()?;
    instantiate_family(fam, &params)
}

/// Resolves a command-line argument: corpus name, family spec, or file path.
pub fn resolve_arrangement(arg: &str) -> Result<Arrangement> {
    if let Ok(e) = entry(arg) {
        return Ok(e.arrangement.clone());
    }
    if let Some((fam, _)) = arg.split_once(':') {
        if FAMILIES.contains(&fam) {
            return parse_family_spec(arg).map(|i| i.arrangement);
        }
    }
    let path = Path::new(arg);
    if path.exists() {
        return crate::io::load_arrangement(path);
    }
    Err(Error::UnknownEntry(arg.to_string()))
}
