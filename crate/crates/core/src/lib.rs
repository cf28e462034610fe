//! Exact computational algebra for ultradifferentiable analysis: weight
//! sequence classifiers, sparse rational polynomials, finite matrix group
//! invariants, symmetric-function rewriting with divided-difference
//! operators, coinvariant Cramer decompositions, and equivariant map
//! decompositions.
//!
//! Everything algebraic is computed over arbitrary-precision rationals;
//! the only floating arithmetic lives in [`real`], which provides directed
//! rounding intervals for the few genuinely transcendental comparisons
//! (log-power sequences) and for certified sum-versus-bound checks.

pub mod coinvariant;
pub mod equivariant;
pub mod invariant;
pub mod poly;
pub mod real;
pub mod sample;
pub mod symmetric;
pub mod weights;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

/// Shorthand used throughout: exact rational from an integer.
pub fn qi(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Exact rational `p/q`. Panics when `q == 0`.
pub fn q(p: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(den))
}
