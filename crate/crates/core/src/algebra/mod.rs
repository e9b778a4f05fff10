//! Exact coefficient rings, Laurent polynomials, matrices over them,
//! multivariate gcd and integer Smith normal form.

mod coeff;
mod gcd;
mod matrix;
mod parse;
mod poly;

pub use coeff::{check_square_free, omega, Coeff, Quadratic, Ring};
pub use gcd::{gcd_pair, poly_gcd};
pub use matrix::{
    abelian_invariants, format_abelian, int_ring_matrix, smith_normal_form, IntMatrix, RingMatrix,
};
pub use parse::{parse_poly, parse_poly_in, DEFAULT_FIELD};
pub use poly::{Exponents, LaurentPoly, Vars};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("cannot mix Q(√{0}) with Q(√{1})")]
    MixedFields(i64, i64),
    #[error("{0} does not define a quadratic field (need square-free d ≠ 0, 1)")]
    BadField(i64),
    #[error("unknown variable '{0}'")]
    UnknownVariable(String),
    #[error("polynomial parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("determinant of a non-square {0}x{1} matrix")]
    NotSquare(usize, usize),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("matrix is not invertible over the Laurent ring (determinant {0})")]
    NotInvertible(String),
}
