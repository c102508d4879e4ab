//! Projective lines and points over a [`Scalar`] field, and arrangements of lines.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::{FieldSpec, Scalar};

pub type Triple = [Scalar; 3];

/// Scales a nonzero triple so its first nonzero entry is 1.
pub fn normalize(t: &Triple) -> Option<Triple> {
    let lead = t.iter().find(|c| !c.is_zero())?;
    let inv = lead.inv()?;
    Some([&t[0] * &inv, &t[1] * &inv, &t[2] * &inv])
}

pub fn cross(u: &Triple, v: &Triple) -> Triple {
    [
        &(&u[1] * &v[2]) - &(&u[2] * &v[1]),
        &(&u[2] * &v[0]) - &(&u[0] * &v[2]),
        &(&u[0] * &v[1]) - &(&u[1] * &v[0]),
    ]
}

pub fn dot(u: &Triple, v: &Triple) -> Scalar {
    &(&(&u[0] * &v[0]) + &(&u[1] * &v[1])) + &(&u[2] * &v[2])
}

fn triple_field(t: &Triple) -> FieldSpec {
    t.iter()
        .map(Scalar::field)
        .fold(FieldSpec::Rational, FieldSpec::join)
}

/// The line `a x + b y + c z = 0`, normalized.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Line(Triple);

/// A point `[x : y : z]`, normalized.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point(Triple);

impl Line {
    pub fn new(coeffs: Triple) -> Result<Line> {
        normalize(&coeffs).map(Line).ok_or(Error::ZeroTriple)
    }

    pub fn from_ints(a: i64, b: i64, c: i64) -> Result<Line> {
        Line::new([a.into(), b.into(), c.into()])
    }

    pub fn coeffs(&self) -> &Triple {
        &self.0
    }

    pub fn contains(&self, p: &Point) -> bool {
        dot(&self.0, &p.0).is_zero()
    }

    /// The line through two distinct points.
    pub fn through(p: &Point, q: &Point) -> Result<Line> {
        Line::new(cross(&p.0, &q.0)).map_err(|_| Error::IdenticalLines)
    }

    pub fn field(&self) -> FieldSpec {
        triple_field(&self.0)
    }
}

impl Point {
    pub fn new(coords: Triple) -> Result<Point> {
        normalize(&coords).map(Point).ok_or(Error::ZeroTriple)
    }

    pub fn from_ints(x: i64, y: i64, z: i64) -> Result<Point> {
        Point::new([x.into(), y.into(), z.into()])
    }

    pub fn coords(&self) -> &Triple {
        &self.0
    }
}

/// The unique common point of two distinct lines.
pub fn intersect(l1: &Line, l2: &Line) -> Result<Point> {
    Point::new(cross(&l1.0, &l2.0)).map_err(|_| Error::IdenticalLines)
}

fn fmt_triple(t: &Triple, f: &mut fmt::Formatter<'_>, open: &str, close: &str) -> fmt::Result {
    write!(f, "{open}{} : {} : {}{close}", t[0], t[1], t[2])
}

impl fmt::Display for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_triple(&self.0, f, "(", ")")
    }
}

impl fmt::Debug for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Line{self}")
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_triple(&self.0, f, "[", "]")
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Point{self}")
    }
}

impl Serialize for Line {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl Serialize for Point {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

/// 3x3 matrix acting on point coordinates by `p -> M p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix3(pub [[Scalar; 3]; 3]);

impl Matrix3 {
    pub fn identity() -> Self {
        let e = |i: usize, j: usize| if i == j { Scalar::one() } else { Scalar::zero() };
        Matrix3(std::array::from_fn(|i| std::array::from_fn(|j| e(i, j))))
    }

    pub fn from_ints(rows: [[i64; 3]; 3]) -> Self {
        Matrix3(rows.map(|r| r.map(Scalar::from_int)))
    }

    pub fn det(&self) -> Scalar {
        let m = &self.0;
        let rows = [m[0].clone(), m[1].clone(), m[2].clone()];
        dot(&rows[0], &cross(&rows[1], &rows[2]))
    }

    pub fn transpose(&self) -> Matrix3 {
        Matrix3(std::array::from_fn(|i| {
            std::array::from_fn(|j| self.0[j][i].clone())
        }))
    }

    /// Inverse via the adjugate.
    pub fn inverse(&self) -> Result<Matrix3> {
        let det_inv = self.det().inv().ok_or(Error::SingularMatrix)?;
        let m = &self.0;
        // columns of the inverse are cross products of rows, scaled
        let r = [m[0].clone(), m[1].clone(), m[2].clone()];
        let c0 = cross(&r[1], &r[2]);
        let c1 = cross(&r[2], &r[0]);
        let c2 = cross(&r[0], &r[1]);
        let cols = [c0, c1, c2];
        Ok(Matrix3(std::array::from_fn(|i| {
            std::array::from_fn(|j| &cols[j][i] * &det_inv)
        })))
    }

    pub fn apply(&self, v: &Triple) -> Triple {
        std::array::from_fn(|i| dot(&self.0[i], v))
    }

    pub fn mul(&self, other: &Matrix3) -> Matrix3 {
        let t = other.transpose();
        Matrix3(std::array::from_fn(|i| {
            std::array::from_fn(|j| dot(&self.0[i], &t.0[j]))
        }))
    }

    pub fn field(&self) -> FieldSpec {
        self.0
            .iter()
            .map(triple_field)
            .fold(FieldSpec::Rational, FieldSpec::join)
    }

    pub fn transform_point(&self, p: &Point) -> Result<Point> {
        Point::new(self.apply(&p.0))
    }
}

/// An ordered list of pairwise distinct lines.
///
/// Equality compares the field and the line list; the name is a label only.
#[derive(Clone)]
pub struct Arrangement {
    name: String,
    field: FieldSpec,
    lines: Vec<Line>,
}

impl Arrangement {
    pub fn new(name: impl Into<String>, field: FieldSpec, lines: Vec<Line>) -> Result<Self> {
        if lines.is_empty() {
            return Err(Error::EmptyArrangement);
        }
        for (j, l) in lines.iter().enumerate() {
            if let Some(i) = lines[..j].iter().position(|m| m == l) {
                return Err(Error::DuplicateLine {
                    first: i,
                    second: j,
                });
            }
            if field == FieldSpec::Rational && l.field() != FieldSpec::Rational {
                return Err(Error::OmegaInRationalField {
                    literal: l.to_string(),
                });
            }
        }
        Ok(Arrangement {
            name: name.into(),
            field,
            lines,
        })
    }

    /// Rational arrangement from integer coefficient rows.
    pub fn from_int_rows(name: impl Into<String>, rows: &[[i64; 3]]) -> Result<Self> {
        let lines = rows
            .iter()
            .map(|r| Line::from_ints(r[0], r[1], r[2]))
            .collect::<Result<Vec<_>>>()?;
        Arrangement::new(name, FieldSpec::Rational, lines)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn lines(&self) -> &[Line] {
        &self.lines
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Transforms by a projectivity acting on points as `p -> M p`; lines map by
    /// the inverse transpose so incidences are preserved.
    pub fn apply_projectivity(&self, m: &Matrix3) -> Result<Arrangement> {
        let dual = m.inverse()?.transpose();
        let lines = self
            .lines
            .iter()
            .map(|l| Line::new(dual.apply(&l.0)))
            .collect::<Result<Vec<_>>>()?;
        let field = self.field.join(m.field());
        Arrangement::new(format!("{}~proj", self.name), field, lines)
    }

    /// `perm[i]` is the old index of the line placed at position `i`.
    pub fn permute_lines(&self, perm: &[usize]) -> Arrangement {
        assert_eq!(perm.len(), self.len(), "permutation length");
        Arrangement {
            name: format!("{}~perm", self.name),
            field: self.field,
            lines: perm.iter().map(|&i| self.lines[i].clone()).collect(),
        }
    }

    /// A new arrangement with extra lines appended.
    pub fn extended(&self, name: impl Into<String>, extra: &[Line]) -> Result<Arrangement> {
        let mut lines = self.lines.clone();
        lines.extend_from_slice(extra);
        let field = extra
            .iter()
            .map(Line::field)
            .fold(self.field, FieldSpec::join);
        Arrangement::new(name, field, lines)
    }
}

impl PartialEq for Arrangement {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.lines == other.lines
    }
}

impl Eq for Arrangement {}

impl fmt::Debug for Arrangement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Arrangement")
            .field("name", &self.name)
            .field("field", &self.field)
            .field("lines", &self.lines)
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn axes_meet_at_origin() {
        let x = Line::from_ints(1, 0, 0).unwrap();
        let y = Line::from_ints(0, 1, 0).unwrap();
        assert_eq!(intersect(&x, &y).unwrap(), Point::from_ints(0, 0, 1).unwrap());
    }

    #[test]
    fn intersection_lands_on_third_line() {
        // y, -x+y+z and -x+z are concurrent
        let l1 = Line::from_ints(0, 1, 0).unwrap();
        let l2 = Line::from_ints(-1, 1, 1).unwrap();
        let l4 = Line::from_ints(-1, 0, 1).unwrap();
        let p = intersect(&l1, &l2).unwrap();
        assert_eq!(p, Point::from_ints(1, 0, 1).unwrap());
        assert!(l4.contains(&p));
    }

    #[test]
    fn identical_lines_do_not_intersect() {
        let l = Line::from_ints(2, 4, 6).unwrap();
        let m = Line::from_ints(1, 2, 3).unwrap();
        assert_eq!(l, m);
        assert!(matches!(intersect(&l, &m), Err(Error::IdenticalLines)));
    }

    #[test]
    fn normalization_fixes_first_nonzero() {
        let l = Line::from_ints(0, -3, 6).unwrap();
        assert!(l.coeffs()[0].is_zero());
        assert!(l.coeffs()[1].is_one());
        assert_eq!(l.coeffs()[2], Scalar::from_int(-2));
        assert!(matches!(Line::from_ints(0, 0, 0), Err(Error::ZeroTriple)));
    }

    #[test]
    fn duplicate_lines_are_rejected() {
        let err = Arrangement::from_int_rows("dup", &[[1, 0, 0], [0, 1, 0], [2, 0, 0]]).unwrap_err();
        assert!(matches!(err, Error::DuplicateLine { first: 0, second: 2 }));
        assert!(matches!(
            Arrangement::new("e", FieldSpec::Rational, vec![]),
            Err(Error::EmptyArrangement)
        ));
    }

    #[test]
    fn omega_lines_need_eisenstein() {
        let l = Line::new([Scalar::one(), Scalar::omega(), Scalar::zero()]).unwrap();
        assert!(Arrangement::new("r", FieldSpec::Rational, vec![l.clone()]).is_err());
        assert!(Arrangement::new("e", FieldSpec::Eisenstein, vec![l]).is_ok());
    }

    #[test]
    fn identity_and_swap_projectivities() {
        let a = Arrangement::from_int_rows("xy", &[[1, 0, 0], [0, 1, 0]]).unwrap();
        assert_eq!(a.apply_projectivity(&Matrix3::identity()).unwrap(), a);
        let swap = Matrix3::from_ints([[0, 1, 0], [1, 0, 0], [0, 0, 1]]);
        let b = a.apply_projectivity(&swap).unwrap();
        assert_eq!(b.lines()[0], a.lines()[1]);
        assert_eq!(b.lines()[1], a.lines()[0]);
    }

    #[test]
    fn singular_matrix_is_rejected() {
        let a = Arrangement::from_int_rows("x", &[[1, 0, 0]]).unwrap();
        let m = Matrix3::from_ints([[1, 2, 3], [2, 4, 6], [0, 0, 1]]);
        assert!(matches!(a.apply_projectivity(&m), Err(Error::SingularMatrix)));
    }

    #[test]
    fn inverse_is_inverse() {
        let m = Matrix3::from_ints([[2, 1, 0], [-1, 3, 4], [0, 5, -2]]);
        assert_eq!(m.mul(&m.inverse().unwrap()), Matrix3::identity());
    }
}
