use std::collections::HashMap;

use proptest::prelude::*;
use proptest::sample::subsequence;

use linarr::aomoto::beta_1p_from;
use linarr::corpus::entry;
use linarr::geometry::intersect;
use linarr::latin::{all_latin_squares, main_class_code};
use linarr::lattice::{is_lattice_isomorphism, lattice_isomorphic};
use linarr::corpus::corpus;
use linarr::nets::find_nets;
use linarr::pencil::{class_product, pencil_check};
use linarr::poly::{resultant, MultiPoly};
use linarr::{Arrangement, FieldSpec, Lattice, Line, Matrix3, Point, Scalar};

fn scalar() -> impl Strategy<Value = Scalar> {
    (-6i64..=6, 1i64..=4, -3i64..=3).prop_map(|(n, d, w)| &Scalar::from_frac(n, d) + &(&Scalar::from_int(w) * &Scalar::omega()))
}

fn triple() -> impl Strategy<Value = [Scalar; 3]> {
    [scalar(), scalar(), scalar()].prop_filter("nonzero", |t| t.iter().any(|x| !x.is_zero()))
}

fn int_line() -> impl Strategy<Value = [i64; 3]> {
    [-3i64..=3, -3i64..=3, -3i64..=3].prop_filter("nonzero", |t| t != &[0, 0, 0])
}

fn matrix() -> impl Strategy<Value = Matrix3> {
    [[-3i64..=3, -3i64..=3, -3i64..=3], [-3i64..=3, -3i64..=3, -3i64..=3], [-3i64..=3, -3i64..=3, -3i64..=3]]
        .prop_map(Matrix3::from_ints)
        .prop_filter("invertible", |m| !m.det().is_zero())
}

/// Rational arrangements on 4..=10 distinct lines with small coefficients.
fn arrangement() -> impl Strategy<Value = Arrangement> {
    prop::collection::vec(int_line(), 4..=14).prop_filter_map("need 4 distinct lines", |rows| {
        let mut lines: Vec<Line> = Vec::new();
        for r in rows {
            let l = Line::from_ints(r[0], r[1], r[2]).unwrap();
            if !lines.contains(&l) && lines.len() < 10 {
                lines.push(l);
            }
        }
        (lines.len() >= 4).then(|| Arrangement::new("random", FieldSpec::Rational, lines).unwrap())
    })
}

fn poly() -> impl Strategy<Value = MultiPoly> {
    let term = (-4i64..=4, 0u32..=2, 0u32..=2);
    prop::collection::vec(term, 0..4).prop_map(|ts| {
        let (x, y) = (MultiPoly::var("x"), MultiPoly::var("y"));
        ts.into_iter().fold(MultiPoly::zero(), |acc, (c, i, j)| &acc + &(&MultiPoly::int(c) * &(&x.pow(i) * &y.pow(j))))
    })
}

fn at(pairs: &[(&str, i64)]) -> HashMap<String, Scalar> {
    pairs.iter().map(|(n, v)| (n.to_string(), Scalar::from_int(*v))).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn normalization_ignores_scaling(t in triple(), c in scalar().prop_filter("nonzero", |c| !c.is_zero())) {
        let l = Line::new(t.clone()).unwrap();
        let scaled = Line::new([&t[0] * &c, &t[1] * &c, &t[2] * &c]).unwrap();
        prop_assert_eq!(&l, &scaled);
        prop_assert!(l.coeffs().iter().find(|x| !x.is_zero()).unwrap().is_one());
        prop_assert_eq!(&Line::new(l.coeffs().clone()).unwrap(), &l);
    }

    #[test]
    fn intersection_is_symmetric_and_incident(a in triple(), b in triple()) {
        let (l1, l2) = (Line::new(a).unwrap(), Line::new(b).unwrap());
        prop_assume!(l1 != l2);
        let p = intersect(&l1, &l2).unwrap();
        prop_assert_eq!(&p, &intersect(&l2, &l1).unwrap());
        prop_assert!(l1.contains(&p) && l2.contains(&p));
    }

    #[test]
    fn projectivities_preserve_incidence(a in int_line(), b in int_line(), m in matrix()) {
        let (l1, l2) = (Line::from_ints(a[0], a[1], a[2]).unwrap(), Line::from_ints(b[0], b[1], b[2]).unwrap());
        prop_assume!(l1 != l2);
        let p = intersect(&l1, &l2).unwrap();
        let image = Arrangement::new("pair", FieldSpec::Rational, vec![l1, l2]).unwrap().apply_projectivity(&m).unwrap();
        let q: Point = m.transform_point(&p).unwrap();
        prop_assert!(image.lines().iter().all(|l| l.contains(&q)));
    }

    #[test]
    fn polynomial_ring_axioms(p in poly(), q in poly(), r in poly()) {
        prop_assert_eq!(&(&p + &q), &(&q + &p));
        prop_assert_eq!(&(&p * &q), &(&q * &p));
        prop_assert_eq!(&(&(&p * &q) * &r), &(&p * &(&q * &r)));
        prop_assert_eq!(&(&p * &(&q + &r)), &(&(&p * &q) + &(&p * &r)));
        prop_assert!((&p - &p).is_zero());
        prop_assert_eq!(&(&p * &MultiPoly::int(1)), &p);
    }

    #[test]
    fn resultant_vanishes_at_a_common_root(x0 in -3i64..=3, y0 in -3i64..=3, f in poly(), g in poly()) {
        // force x0 to be a root of both for y = y0: multiply by (x - x0 + (y - y0))
        let (x, y) = (MultiPoly::var("x"), MultiPoly::var("y"));
        let shift = &(&x - &MultiPoly::int(x0)) + &(&y - &MultiPoly::int(y0));
        let p = &shift * &(&f + &x);
        let q = &shift * &(&g + &(&x * &x));
        prop_assume!(!p.is_zero() && !q.is_zero());
        let r = resultant(&p, &q, "x").unwrap();
        prop_assert_eq!(r.eval(&at(&[("y", y0)])).unwrap(), Scalar::zero());
    }

    #[test]
    fn main_class_is_a_paratopy_invariant(
        idx in 0usize..576,
        rp in Just((0..4).collect::<Vec<usize>>()).prop_shuffle(),
        cp in Just((0..4).collect::<Vec<usize>>()).prop_shuffle(),
        sp in Just((0..4).collect::<Vec<usize>>()).prop_shuffle(),
        roles in Just(vec![0usize, 1, 2]).prop_shuffle(),
    ) {
        let squares = all_latin_squares(4).unwrap();
        let s = &squares[idx];
        let t = s.permuted(&rp, &cp, &sp).conjugate([roles[0], roles[1], roles[2]]);
        prop_assert_eq!(main_class_code(s).unwrap(), main_class_code(&t).unwrap());
    }

    #[test]
    fn census_counts_every_pair_once(a in arrangement()) {
        prop_assert!(Lattice::new(&a).census().satisfies_pair_identity(a.len()));
    }

    #[test]
    fn relabelled_copies_are_isomorphic(a in arrangement(), seed in any::<u64>()) {
        use rand::{seq::SliceRandom, SeedableRng};
        let mut perm: Vec<usize> = (0..a.len()).collect();
        perm.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
        let b = a.permute_lines(&perm);
        let w = lattice_isomorphic(&a, &b).expect("a relabelling is an isomorphism");
        prop_assert!(is_lattice_isomorphism(&Lattice::new(&a), &Lattice::new(&b), &w));
    }

    #[test]
    fn dropping_lines_never_raises_multiplicity(a in arrangement(), keep in subsequence((0..4).collect::<Vec<usize>>(), 3)) {
        // dropping a line can only lower multiplicities
        let rest: Vec<Line> = keep.iter().map(|&i| a.lines()[i].clone()).collect();
        let b = Arrangement::new("sub", FieldSpec::Rational, rest).unwrap();
        prop_assert!(Lattice::new(&b).max_multiplicity() <= Lattice::new(&a).max_multiplicity());
    }
}

/// All vectors in the F_2 span of `basis`.
fn span_f2(basis: &[Vec<u64>]) -> Vec<Vec<u64>> {
    (0u32..1 << basis.len())
        .map(|mask| {
            let mut v = vec![0; basis[0].len()];
            for (k, b) in basis.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    v.iter_mut().zip(b).for_each(|(x, y)| *x = (*x + y) % 2);
                }
            }
            v
        })
        .collect()
}

#[test]
fn twelve_lines_with_f2_resonance_split_six_six() {
    let a = &entry("hesse12").unwrap().arrangement;
    let lat = Lattice::new(a);
    let r = beta_1p_from(&lat, 2).unwrap();
    assert!(r.beta >= 1);
    let quads: Vec<&linarr::Flat> = lat.flats().iter().filter(|f| f.multiplicity() == 4).collect();
    for w in span_f2(&r.basis).into_iter().filter(|w| w.iter().any(|&x| x != w[0])) {
        let ones = w.iter().filter(|&&x| x == 1).count();
        assert_eq!(ones, 6, "{w:?}");
        for line in 0..12 {
            let through: Vec<_> = quads.iter().filter(|f| f.contains(line)).collect();
            assert_eq!(through.len(), 3);
            for f in through {
                let ones = f.lines.iter().filter(|&&i| w[i] == 1).count();
                assert_eq!(ones, 2, "pattern (a,a,b,b) at {:?}", f.lines);
            }
        }
    }
}

#[test]
fn ceva_weights_are_constant_on_net_classes() {
    let a = &entry("ceva3").unwrap().arrangement;
    let r = beta_1p_from(&Lattice::new(a), 3).unwrap();
    let w = linarr::aomoto::nonconstant_solution(&r).unwrap();
    let nets = linarr::nets::find_nets(a, 3).unwrap();
    assert!(nets.iter().any(|n| n.classes.iter().all(|c| c.iter().all(|&i| w[i] == w[c[0]]))));
}

#[test]
fn every_corpus_three_net_is_a_pencil() {
    for e in corpus().unwrap() {
        let a = &e.arrangement;
        if a.len() % 3 != 0 || a.len() < 6 {
            continue;
        }
        for net in find_nets(a, 3).unwrap() {
            let l = pencil_check(a, &net).unwrap_or_else(|| panic!("{}: {:?}", e.name, net.classes));
            assert!(l.iter().all(|x| !x.is_zero()));
            // re-expand λ1·Q1 + λ2·Q2 + λ3·Q3 from fresh products
            let sum = net
                .classes
                .iter()
                .zip(&l)
                .fold(MultiPoly::zero(), |acc, (c, li)| &acc + &class_product(a, c).scale(li));
            assert!(sum.is_zero(), "{}", e.name);
        }
    }
}
