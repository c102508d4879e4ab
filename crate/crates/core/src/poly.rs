//! Sparse multivariate polynomials with exact coefficients.
//!
//! Variables are kept in alphabetical order and the universe grows as
//! polynomials are combined. Terms are ordered graded-lexicographically.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Exponent vector, compared by total degree then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Default)]
pub struct MultiPoly {
    vars: Vec<String>,
    terms: BTreeMap<Monomial, Scalar>,
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = MultiPoly::unify(self, other);
        a.terms == b.terms
    }
}

impl Eq for MultiPoly {}

impl MultiPoly {
    pub fn zero() -> MultiPoly {
        MultiPoly::default()
    }

    pub fn constant(c: Scalar) -> MultiPoly {
        let mut p = MultiPoly::zero();
        if !c.is_zero() {
            p.terms.insert(Monomial(Vec::new()), c);
        }
        p
    }

    pub fn int(n: i64) -> MultiPoly {
        MultiPoly::constant(Scalar::from_int(n))
    }

    pub fn var(name: &str) -> MultiPoly {
        let mut p = MultiPoly {
            vars: vec![name.to_string()],
            terms: BTreeMap::new(),
        };
        p.terms.insert(Monomial(vec![1]), Scalar::one());
        p
    }

    /// Linear form `c0*v0 + c1*v1 + ...`.
    pub fn linear(coeffs: &[Scalar], vars: &[&str]) -> MultiPoly {
        coeffs
            .iter()
            .zip(vars)
            .fold(MultiPoly::zero(), |acc, (c, v)| acc + MultiPoly::var(v).scale(c))
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    pub fn constant_value(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 if self.is_constant() => self.terms.values().next().cloned(),
            _ => None,
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn leading(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> Option<&Scalar> {
        self.leading().map(|(_, c)| c)
    }

    fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// Rewrites the exponents over a larger sorted variable list.
    fn lift(&self, vars: &[String]) -> MultiPoly {
        if self.vars == vars {
            return self.clone();
        }
        let map: Vec<usize> = self
            .vars
            .iter()
            .map(|v| vars.iter().position(|w| w == v).expect("superset"))
            .collect();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = vec![0; vars.len()];
                for (i, &x) in m.0.iter().enumerate() {
                    e[map[i]] = x;
                }
                (Monomial(e), c.clone())
            })
            .collect();
        MultiPoly {
            vars: vars.to_vec(),
            terms,
        }
    }

    /// Same polynomial written over `vars`, which must include every variable
    /// in use (in alphabetical order).
    pub fn over(&self, vars: &[&str]) -> MultiPoly {
        let vars: Vec<String> = vars.iter().map(|v| v.to_string()).collect();
        self.trimmed().lift(&vars)
    }

    /// Coefficient of a monomial, zero when absent.
    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    fn unify(a: &MultiPoly, b: &MultiPoly) -> (MultiPoly, MultiPoly) {
        if a.vars == b.vars {
            return (a.clone(), b.clone());
        }
        let mut vars: Vec<String> = a.vars.iter().chain(&b.vars).cloned().collect();
        vars.sort();
        vars.dedup();
        (a.lift(&vars), b.lift(&vars))
    }

    fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn scale(&self, c: &Scalar) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly {
                vars: self.vars.clone(),
                terms: BTreeMap::new(),
            };
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        (0..e).fold(MultiPoly::int(1), |acc, _| &acc * self)
    }

    pub fn degree_in(&self, var: &str) -> u32 {
        match self.var_index(var) {
            Some(i) => self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0),
            None => 0,
        }
    }

    /// Coefficient of `var^k`, as a polynomial in the remaining variables.
    pub fn coeff_in(&self, var: &str, k: u32) -> MultiPoly {
        let Some(i) = self.var_index(var) else {
            return if k == 0 { self.clone() } else { MultiPoly::zero() };
        };
        let mut out = MultiPoly {
            vars: self.vars.clone(),
            terms: BTreeMap::new(),
        };
        for (m, c) in &self.terms {
            if m.0[i] == k {
                let mut e = m.0.clone();
                e[i] = 0;
                out.add_term(Monomial(e), c.clone());
            }
        }
        out.trimmed()
    }

    /// Drops variables that no longer occur.
    pub fn trimmed(&self) -> MultiPoly {
        let keep: Vec<usize> = (0..self.vars.len())
            .filter(|&i| self.terms.keys().any(|m| m.0[i] > 0))
            .collect();
        if keep.len() == self.vars.len() {
            return self.clone();
        }
        MultiPoly {
            vars: keep.iter().map(|&i| self.vars[i].clone()).collect(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (Monomial(keep.iter().map(|&i| m.0[i]).collect()), c.clone()))
                .collect(),
        }
    }

    /// Replaces `var` by `value` everywhere.
    pub fn substitute(&self, var: &str, value: &MultiPoly) -> MultiPoly {
        let deg = self.degree_in(var);
        if deg == 0 {
            return self.clone();
        }
        let mut powers = vec![MultiPoly::int(1)];
        for _ in 0..deg {
            let next = powers.last().expect("nonempty") * value;
            powers.push(next);
        }
        let mut out = MultiPoly::zero();
        for k in 0..=deg {
            let c = self.coeff_in(var, k);
            if !c.is_zero() {
                out = out + &c * &powers[k as usize];
            }
        }
        out.trimmed()
    }

    /// Value at a point; every variable must be bound.
    pub fn eval(&self, at: &HashMap<String, Scalar>) -> Option<Scalar> {
        let vals: Vec<&Scalar> = self.vars.iter().map(|v| at.get(v)).collect::<Option<_>>()?;
        let mut acc = Scalar::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                t = t * vals[i].pow(e);
            }
            acc = acc + t;
        }
        Some(acc)
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &MultiPoly) -> Option<MultiPoly> {
        if d.is_zero() {
            return None;
        }
        let (mut rem, d) = MultiPoly::unify(self, d);
        let (lm, lc) = {
            let (m, c) = d.leading().expect("nonzero");
            (m.clone(), c.clone())
        };
        let lc_inv = lc.inv().expect("nonzero");
        let mut quot = MultiPoly {
            vars: rem.vars.clone(),
            terms: BTreeMap::new(),
        };
        while let Some((m, c)) = rem.leading() {
            // the leading term must always be divisible for an exact quotient
            if !lm.divides(m) {
                return None;
            }
            let e: Vec<u32> = m.0.iter().zip(&lm.0).map(|(a, b)| a - b).collect();
            let t = MultiPoly {
                vars: rem.vars.clone(),
                terms: BTreeMap::from([(Monomial(e), c * &lc_inv)]),
            };
            rem = rem - &t * &d;
            quot = quot + t;
        }
        Some(quot.trimmed())
    }

    /// Divides out `f` as many times as it goes.
    pub fn strip_factor(&self, f: &MultiPoly) -> (MultiPoly, u32) {
        let mut p = self.clone();
        let mut n = 0;
        if f.is_constant() || p.is_zero() {
            return (p, 0);
        }
        while let Some(q) = p.div_exact(f) {
            p = q;
            n += 1;
        }
        (p, n)
    }

    /// For rational polynomials: integer coefficients with gcd 1 and a
    /// positive leading coefficient. Other polynomials are made monic.
    pub fn primitive(&self) -> MultiPoly {
        let Some(lc) = self.leading_coeff() else {
            return self.clone();
        };
        if !self.terms.values().all(Scalar::is_rational) {
            return self.scale(&lc.inv().expect("nonzero"));
        }
        let mut den = BigInt::one();
        let mut num = BigInt::zero();
        for c in self.terms.values() {
            den = den.lcm(c.re().denom());
        }
        for c in self.terms.values() {
            num = num.gcd(&(c.re().numer() * &den / c.re().denom()));
        }
        let mut factor = BigRational::new(den, num);
        if lc.re().is_negative() {
            factor = -factor;
        }
        self.scale(&Scalar::rational(factor))
    }

    /// Same polynomial up to a nonzero constant factor.
    pub fn associated(&self, other: &MultiPoly) -> bool {
        self.primitive() == other.primitive()
    }
}

/// Sylvester resultant eliminating `var`.
pub fn resultant(p: &MultiPoly, q: &MultiPoly, var: &str) -> Result<MultiPoly> {
    let (m, n) = (p.degree_in(var), q.degree_in(var));
    if m == 0 {
        return Err(Error::DegreeZero { var: var.to_string() });
    }
    if n == 0 {
        return Err(Error::DegreeZero { var: var.to_string() });
    }
    let (m, n) = (m as usize, n as usize);
    let pc: Vec<MultiPoly> = (0..=m).rev().map(|k| p.coeff_in(var, k as u32)).collect();
    let qc: Vec<MultiPoly> = (0..=n).rev().map(|k| q.coeff_in(var, k as u32)).collect();
    let size = m + n;
    let mut rows = vec![vec![MultiPoly::zero(); size]; size];
    for i in 0..n {
        for (j, c) in pc.iter().enumerate() {
            rows[i][i + j] = c.clone();
        }
    }
    for i in 0..m {
        for (j, c) in qc.iter().enumerate() {
            rows[n + i][i + j] = c.clone();
        }
    }
    Ok(determinant(rows).trimmed())
}

/// Fraction-free (Bareiss) determinant.
pub fn determinant(mut a: Vec<Vec<MultiPoly>>) -> MultiPoly {
    let n = a.len();
    if n == 0 {
        return MultiPoly::int(1);
    }
    let mut sign = false;
    let mut prev = MultiPoly::int(1);
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = !sign;
                }
                None => return MultiPoly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if sign {
        -det
    } else {
        det
    }
}

impl Add<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let (mut a, b) = MultiPoly::unify(self, rhs);
        for (m, c) in b.terms {
            a.add_term(m, c);
        }
        a
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&Scalar::from_int(-1))
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

impl Sub<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self + &(-rhs)
    }
}

impl Mul<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    // exponents add when monomials multiply
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        let (a, b) = MultiPoly::unify(self, rhs);
        let mut out = MultiPoly {
            vars: a.vars.clone(),
            terms: BTreeMap::new(),
        };
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                let e = ma.0.iter().zip(&mb.0).map(|(x, y)| x + y).collect();
                out.add_term(Monomial(e), ca * cb);
            }
        }
        out
    }
}

macro_rules! owned_ops {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $f(self, rhs: MultiPoly) -> MultiPoly { (&self).$f(&rhs) }
        }
        impl $tr<&MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $f(self, rhs: &MultiPoly) -> MultiPoly { (&self).$f(rhs) }
        }
        impl $tr<MultiPoly> for &MultiPoly {
            type Output = MultiPoly;
            fn $f(self, rhs: MultiPoly) -> MultiPoly { self.$f(&rhs) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (m, c)) in self.terms.iter().rev().enumerate() {
            let mono: Vec<String> = m
                .0
                .iter()
                .zip(&self.vars)
                .filter(|(e, _)| **e > 0)
                .map(|(e, v)| if *e == 1 { v.clone() } else { format!("{v}^{e}") })
                .collect();
            let (neg, mag) = if c.is_rational() && c.re().is_negative() {
                (true, -c)
            } else {
                (false, c.clone())
            };
            let coeff = if mag.is_rational() { mag.to_string() } else { format!("({mag})") };
            match (n, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if mono.is_empty() {
                f.write_str(&coeff)?;
            } else if mag.is_one() {
                f.write_str(&mono.join("*"))?;
            } else {
                write!(f, "{coeff}*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly({self})")
    }
}
