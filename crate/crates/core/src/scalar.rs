//! Exact scalars over Q and the Eisenstein field Q(w), w^2 + w + 1 = 0.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FieldSpec {
    Rational,
    Eisenstein,
}

impl FieldSpec {
    pub fn name(self) -> &'static str {
        match self {
            FieldSpec::Rational => "rational",
            FieldSpec::Eisenstein => "eisenstein",
        }
    }

    /// The smallest field containing both.
    pub fn join(self, other: FieldSpec) -> FieldSpec {
        if self == FieldSpec::Eisenstein || other == FieldSpec::Eisenstein {
            FieldSpec::Eisenstein
        } else {
            FieldSpec::Rational
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FieldSpec {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "rational" => Ok(FieldSpec::Rational),
            "eisenstein" => Ok(FieldSpec::Eisenstein),
            other => Err(format!("unknown field `{other}`")),
        }
    }
}

/// `re + om * w`. Rational scalars have `om == 0`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Scalar {
    re: BigRational,
    om: BigRational,
}

impl Scalar {
    pub fn new(re: BigRational, om: BigRational) -> Self {
        Scalar { re, om }
    }

    pub fn rational(re: BigRational) -> Self {
        Scalar {
            re,
            om: BigRational::zero(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_frac(n: i64, d: i64) -> Self {
        Scalar::rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn zero() -> Self {
        Scalar::from_int(0)
    }

    pub fn one() -> Self {
        Scalar::from_int(1)
    }

    /// The primitive cube root of unity w.
    pub fn omega() -> Self {
        Scalar::new(BigRational::zero(), BigRational::one())
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn om(&self) -> &BigRational {
        &self.om
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.om.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.om.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.om.is_zero()
    }

    pub fn field(&self) -> FieldSpec {
        if self.is_rational() {
            FieldSpec::Rational
        } else {
            FieldSpec::Eisenstein
        }
    }

    /// Galois conjugate, w -> w^2 = -1 - w.
    pub fn conj(&self) -> Scalar {
        Scalar::new(&self.re - &self.om, -&self.om)
    }

    /// Field norm `re^2 - re*om + om^2`; zero only for the zero scalar.
    pub fn norm(&self) -> BigRational {
        &self.re * &self.re - &self.re * &self.om + &self.om * &self.om
    }

    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        let c = self.conj();
        Some(Scalar::new(c.re / &n, c.om / n))
    }

    pub fn div(&self, other: &Scalar) -> Option<Scalar> {
        other.inv().map(|i| self * &i)
    }

    pub fn pow(&self, e: u32) -> Scalar {
        let mut acc = Scalar::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Parses a literal and checks it belongs to `field`.
    pub fn parse(text: &str, field: FieldSpec) -> Result<Scalar> {
        let s = parse_literal(text)?;
        if field == FieldSpec::Rational && !s.is_rational() {
            return Err(Error::OmegaInRationalField {
                literal: text.to_string(),
            });
        }
        Ok(s)
    }
}

fn malformed(text: &str, reason: &str) -> Error {
    Error::ScalarParse {
        literal: text.to_string(),
        reason: reason.to_string(),
    }
}

/// `[+-]INT` or `[+-]INT/POSINT`.
fn parse_rat(part: &str, whole: &str) -> Result<BigRational> {
    let (neg, body) = match part.as_bytes().first() {
        Some(b'-') => (true, &part[1..]),
        Some(b'+') => (false, &part[1..]),
        _ => (false, part),
    };
    let (num, den) = match body.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (body, None),
    };
    let digits = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
    if !digits(num) {
        return Err(malformed(whole, "expected an integer"));
    }
    let n: BigInt = num.parse().map_err(|_| malformed(whole, "bad integer"))?;
    let d: BigInt = match den {
        Some(d) if digits(d) => d.parse().map_err(|_| malformed(whole, "bad denominator"))?,
        Some(_) => return Err(malformed(whole, "denominator must be a positive integer")),
        None => BigInt::one(),
    };
    if d.is_zero() {
        return Err(malformed(whole, "zero denominator"));
    }
    let r = BigRational::new(n, d);
    Ok(if neg { -r } else { r })
}

fn parse_literal(text: &str) -> Result<Scalar> {
    let s = text.trim();
    if s.is_empty() {
        return Err(malformed(text, "empty literal"));
    }
    let Some(body) = s.strip_suffix('w') else {
        return Ok(Scalar::rational(parse_rat(s, text)?));
    };
    // `body` now ends in the w-coefficient (possibly implicit) followed by `*`.
    let (head, implicit) = match body.strip_suffix('*') {
        Some(h) => (h, false),
        None => (body, true),
    };
    // split at the last sign that is not the leading one
    let split = head
        .char_indices()
        .skip(1)
        .filter(|&(i, c)| (c == '+' || c == '-') && !head[..i].ends_with('/'))
        .map(|(i, _)| i)
        .last();
    let (re_part, om_part) = match split {
        Some(i) => (&head[..i], &head[i..]),
        None => ("", head),
    };
    let re = if re_part.is_empty() {
        BigRational::zero()
    } else {
        parse_rat(re_part, text)?
    };
    let om = if implicit {
        match om_part {
            "" | "+" => BigRational::one(),
            "-" => -BigRational::one(),
            _ => return Err(malformed(text, "expected `*w`")),
        }
    } else {
        if om_part.is_empty() || om_part == "+" || om_part == "-" {
            return Err(malformed(text, "missing coefficient before `*w`"));
        }
        parse_rat(om_part, text)?
    };
    Ok(Scalar::new(re, om))
}

impl FromStr for Scalar {
    type Err = Error;

    /// Parses under the Eisenstein field (accepts every literal).
    fn from_str(s: &str) -> Result<Self> {
        parse_literal(s)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.om.is_zero() {
            return write!(f, "{}", self.re);
        }
        if self.re.is_zero() {
            return write!(f, "{}*w", self.om);
        }
        if self.om.is_negative() {
            write!(f, "{}-{}*w", self.re, -&self.om)
        } else {
            write!(f, "{}+{}*w", self.re, self.om)
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar::new(&self.re + &rhs.re, &self.om + &rhs.om)
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        Scalar::new(&self.re - &rhs.re, &self.om - &rhs.om)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    // (a + bw)(c + dw) = (ac - bd) + (ad + bc - bd)w
    fn mul(self, rhs: &Scalar) -> Scalar {
        let bd = &self.om * &rhs.om;
        Scalar::new(
            &self.re * &rhs.re - &bd,
            &self.re * &rhs.om + &self.om * &rhs.re - bd,
        )
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::new(-&self.re, -&self.om)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(r: BigRational) -> Self {
        Scalar::rational(r)
    }
}
