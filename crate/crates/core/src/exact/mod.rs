//! Exact arithmetic substrate: arbitrary-precision rationals, sparse
//! multivariate polynomials, quadratic-extension elements, polynomial
//! matrices, fraction-free determinants, and exact rational linear algebra.
//!
//! # Design Notes
//!
//! Everything in this module is exact; no floating point enters except
//! through the explicit `*_f64` evaluation entry points. Values are
//! immutable after construction and all operations are pure functions.

mod linalg;
mod matrix;
mod poly;
mod quadext;
pub mod sample;

pub use linalg::{kernel_basis, rank_exact, solve_exact, SolveOutcome};
pub use matrix::{det_laplace_generic, matrix_times_column, row_times_matrix, PolyMatrix, RingOps};
pub use poly::{Assignment, AssignmentF64, MultiPoly, Monomial, Sym};
pub use quadext::QuadExtElem;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Exact rational number: arbitrary-precision, always reduced, positive
/// denominator, zero represented as 0/1.
pub type Rational = num_rational::BigRational;

/// Shorthand for an integer-valued rational.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for the rational n/d. Panics if d = 0.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Exact square root of a rational, if it is a perfect square.
pub fn exact_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    if r.is_zero() {
        return Some(Rational::zero());
    }
    let num_root = r.numer().sqrt();
    let den_root = r.denom().sqrt();
    if &(&num_root * &num_root) == r.numer() && &(&den_root * &den_root) == r.denom() {
        Some(Rational::new(num_root, den_root))
    } else {
        None
    }
}

/// Exact binomial coefficient C(n, k).
pub fn binomial(n: u64, k: u64) -> Rational {
    if k > n {
        return Rational::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k.min(n - k) {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    Rational::from_integer(acc)
}

/// Errors raised by the exact-arithmetic layer.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExactError {
    /// A polynomial variable was missing from an evaluation assignment.
    #[error("unbound variable `{0}` in evaluation assignment")]
    UnboundVariable(String),
    /// A square-matrix operation was applied to a non-square matrix.
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },
    /// Vector/matrix dimensions do not conform.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    /// rank_at_points was called with no sample assignments.
    #[error("empty sample list")]
    EmptySampleList,
}
