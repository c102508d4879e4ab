//! Exact combinatorics of line arrangements in the projective plane.
//!
//! Lines live over Q or Q(w), w² + w + 1 = 0, and every computation is exact:
//! intersection lattices ([`lattice`]), the Aomoto–Betti numbers over F_p
//! ([`aomoto`]), nets and their Latin squares ([`nets`], [`latin`]), pencil
//! relations and the quadruple-point elimination certificate ([`pencil`],
//! [`elimination`]), and monodromy verdicts ([`monodromy`]).

pub mod aomoto;
pub mod cli;
pub mod corpus;
pub mod elimination;
pub mod error;
pub mod geometry;
pub mod io;
pub mod latin;
pub mod lattice;
pub mod monodromy;
pub mod nets;
pub mod pencil;
pub mod poly;
pub mod report;
pub mod scalar;

pub use error::{Error, Result};
pub use geometry::{Arrangement, Line, Matrix3, Point};
pub use lattice::{Census, Flat, Lattice};
pub use scalar::{FieldSpec, Scalar};
