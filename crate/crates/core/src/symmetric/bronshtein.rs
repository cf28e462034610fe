//! Divided-difference operators realized exactly on polynomials.
//!
//! `A_j` integrates the difference of two neighbouring partials along the
//! straight path from a point to its `j <-> j+1` transposition. On
//! polynomials the integrand is a polynomial in the path parameter, so the
//! integral is an exact antiderivative evaluation, and the operator identity
//! for the partial derivatives of the rewritten symmetric polynomial becomes
//! a decidable statement.

use super::{elementary_on, symmetry_witness, SymmetricError};
use crate::poly::{Monomial, Polynomial};
use num_rational::BigRational;
use num_traits::One;

/// Apply `A_j` along the listed variables: `(A_j h)(x) = int_0^1
/// [(d_j - d_{j+1}) h](x + t (P_{j,j+1} x - x)) dt` with `j` counted 1-based
/// inside `axis`.
pub fn bronshtein_a(h: &Polynomial, axis: &[usize], j: usize) -> Result<Polynomial, SymmetricError> {
    let n = axis.len();
    if j < 1 || j >= n {
        return Err(SymmetricError::IndexOutOfRange { index: j, n });
    }
    let nv = h.nvars();
    assert!(axis.iter().all(|&v| v < nv));
    let a = axis[j - 1];
    let b = axis[j];
    let g = h.partial_derivative(a).sub(&h.partial_derivative(b));

    // Substitute the path, with t adjoined as an extra last variable.
    let subs: Vec<Polynomial> = (0..nv)
        .map(|i| {
            if i == a {
                segment(nv, a, b)
            } else if i == b {
                segment(nv, b, a)
            } else {
                Polynomial::var(nv + 1, i)
            }
        })
        .collect();
    let integrand = g.compose(&subs).expect("arity matches");

    let mut out = Polynomial::zero(nv);
    for (mon, c) in integrand.terms() {
        let e = mon.0[nv];
        let mut exps = mon.0.clone();
        exps.truncate(nv);
        let weight = BigRational::new(1.into(), (i64::from(e) + 1).into());
        out.add_term(Monomial(exps), c * weight);
    }
    Ok(out)
}

/// `x_a + t (x_b - x_a)` in `nv + 1` variables, `t` last.
fn segment(nv: usize, a: usize, b: usize) -> Polynomial {
    let mut p = Polynomial::zero(nv + 1);
    let one = BigRational::from_integer(1.into());
    let mut e = vec![0u32; nv + 1];
    e[a] = 1;
    p.add_term(Monomial(e.clone()), one.clone());
    e[nv] = 1;
    p.add_term(Monomial(e.clone()), -one.clone());
    e[a] = 0;
    e[b] = 1;
    p.add_term(Monomial(e), one);
    p
}

/// The partial derivative of the Newton-coordinate rewriting of `f`,
/// computed without rewriting: `(d/du_k F) o nu = A_1 ... A_{n-1} g_k` with
/// `g_k = ((-1)^{k+1} / k) e_{n-k}(x_1..x_{n-1}) d_{x_n} f`. The operators
/// apply right to left: `A_{n-1}` first, `A_1` last (the convention the
/// identity tests validate).
pub fn bronshtein_partial(f: &Polynomial, k: usize) -> Result<Polynomial, SymmetricError> {
    let n = f.nvars();
    if k < 1 || k > n {
        return Err(SymmetricError::IndexOutOfRange { index: k, n });
    }
    if let Some((i, j)) = symmetry_witness(f) {
        return Err(SymmetricError::NotSymmetric { i, j });
    }
    let omit_last: Vec<usize> = (0..n - 1).collect();
    let sigma = elementary_on(n, &omit_last, n - k);
    let sign = if k % 2 == 1 { 1 } else { -1 };
    let scalar = BigRational::new(sign.into(), (k as i64).into());
    let mut g = f.partial_derivative(n - 1).mul(&sigma).scale(&scalar);
    let axis: Vec<usize> = (0..n).collect();
    for j in (1..n).rev() {
        g = bronshtein_a(&g, &axis, j)?;
    }
    Ok(g)
}

/// Independent form of the same derivative: rewrite f over the power sums,
/// take the partial in the k-th coordinate, compose back. Equality with
/// `bronshtein_partial` is the operator identity in checkable form.
pub fn partial_oracle(f: &Polynomial, k: usize) -> Result<Polynomial, SymmetricError> {
    let n = f.nvars();
    if k < 1 || k > n {
        return Err(SymmetricError::IndexOutOfRange { index: k, n });
    }
    let coords = super::SymmetricCoordinates::newton(n);
    let big_f = super::rewrite_symmetric(f, coords)?;
    Ok(big_f.partial_derivative(k - 1).compose(&coords.generators())?)
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct BronshteinMismatch {
    pub exponents: Vec<u32>,
    pub k: usize,
}

/// Sweep of the operator identity over every distinct monomial
/// symmetrization (one per exponent partition) up to a degree, for all
/// coordinates k. The recorded convention is the one that validates:
/// A_{n-1} is applied first and A_1 last.
#[derive(Debug, Clone, serde::Serialize)]
pub struct BronshteinCheck {
    pub n: usize,
    pub max_degree: u32,
    pub convention: String,
    pub cases: usize,
    pub mismatches: Vec<BronshteinMismatch>,
}

impl BronshteinCheck {
    pub fn pass(&self) -> bool {
        self.mismatches.is_empty()
    }
}

pub fn bronshtein_check(n: usize, max_degree: u32) -> Result<BronshteinCheck, SymmetricError> {
    if n < 2 {
        return Err(SymmetricError::DimensionTooSmall { n });
    }
    let group = crate::invariant::FiniteMatrixGroup::symmetric(n);
    let mut cases = 0;
    let mut mismatches = Vec::new();
    for d in 0..=max_degree {
        for mono in crate::poly::monomials_of_degree(n, d) {
            // one representative per orbit: weakly decreasing exponents
            if mono.0.windows(2).any(|w| w[0] < w[1]) {
                continue;
            }
            let f = crate::invariant::reynolds(
                &Polynomial::monomial(n, mono.0.clone(), BigRational::one()),
                &group,
            )
            .expect("permutation action matches the variable count");
            for k in 1..=n {
                cases += 1;
                if bronshtein_partial(&f, k)? != partial_oracle(&f, k)? {
                    mismatches.push(BronshteinMismatch { exponents: mono.0.clone(), k });
                }
            }
        }
    }
    Ok(BronshteinCheck {
        n,
        max_degree,
        convention: "A_{n-1} first, A_1 last".into(),
        cases,
        mismatches,
    })
}
