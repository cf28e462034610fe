//! Symmetric polynomials done concretely: elementary and power-sum
//! generators, the leading-monomial rewriting algorithm, basis changes via
//! Newton's identities, block-symmetric rewriting, and the divided-difference
//! operators with their derivative-blowup series.

mod bronshtein;
mod necessity;

pub use bronshtein::{
    bronshtein_a, bronshtein_check, bronshtein_partial, partial_oracle, BronshteinCheck,
    BronshteinMismatch,
};
pub use necessity::{necessity_report, NecessityReport, NecessityRow, DEFAULT_TRUNCATION};

use crate::poly::{Monomial, PolyError, Polynomial};
use itertools::Itertools;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SymmetricError {
    #[error("index {index} out of range for n = {n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("polynomial is not symmetric: swapping x{i} and x{j} changes it")]
    NotSymmetric { i: usize, j: usize },
    #[error("polynomial is not invariant within block {block}")]
    NotBlockSymmetric { block: usize },
    #[error("weight sequence is not log-convex")]
    NotLogConvex,
    #[error("necessity series needs at least 3 variables, got {n}")]
    DimensionTooSmall { n: usize },
    #[error(transparent)]
    Weight(#[from] crate::weights::WeightError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Which generator tuple the coordinates of a rewritten polynomial refer to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SymmetricBasis {
    Elementary,
    Newton,
}

/// A choice of `n` symmetric coordinates on `Q[x_1..x_n]^{S_n}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SymmetricCoordinates {
    pub n: usize,
    pub basis: SymmetricBasis,
}

impl SymmetricCoordinates {
    pub fn elementary(n: usize) -> Self {
        assert!(n >= 1);
        SymmetricCoordinates { n, basis: SymmetricBasis::Elementary }
    }

    pub fn newton(n: usize) -> Self {
        assert!(n >= 1);
        SymmetricCoordinates { n, basis: SymmetricBasis::Newton }
    }

    /// The generator polynomials in the x variables, degree 1 through n.
    pub fn generators(&self) -> Vec<Polynomial> {
        (1..=self.n)
            .map(|i| match self.basis {
                SymmetricBasis::Elementary => elementary_symmetric(self.n, i),
                SymmetricBasis::Newton => newton_power_sum(self.n, i),
            })
            .map(|r| r.expect("index in range"))
            .collect()
    }
}

/// Degree-`i` elementary symmetric polynomial in `n` variables.
pub fn elementary_symmetric(n: usize, i: usize) -> Result<Polynomial, SymmetricError> {
    if i < 1 || i > n {
        return Err(SymmetricError::IndexOutOfRange { index: i, n });
    }
    let vars: Vec<usize> = (0..n).collect();
    Ok(elementary_on(n, &vars, i))
}

/// Elementary symmetric polynomial of degree `d` in the listed variables,
/// as an element of the full `nvars`-variable ring. `d = 0` gives 1.
fn elementary_on(nvars: usize, vars: &[usize], d: usize) -> Polynomial {
    let mut out = Polynomial::zero(nvars);
    for chosen in vars.iter().combinations(d) {
        let mut exps = vec![0u32; nvars];
        for &v in chosen {
            exps[v] = 1;
        }
        out.add_term(Monomial(exps), BigRational::from_integer(1.into()));
    }
    out
}

/// `i`-th power sum `x_1^i + ... + x_n^i`.
pub fn newton_power_sum(n: usize, i: usize) -> Result<Polynomial, SymmetricError> {
    if i < 1 {
        return Err(SymmetricError::IndexOutOfRange { index: i, n });
    }
    let mut out = Polynomial::zero(n);
    for j in 0..n {
        let mut exps = vec![0u32; n];
        exps[j] = i as u32;
        out.add_term(Monomial(exps), BigRational::from_integer(1.into()));
    }
    Ok(out)
}

/// Exact invariance check under every adjacent transposition.
pub fn is_symmetric(f: &Polynomial) -> bool {
    symmetry_witness(f).is_none()
}

fn symmetry_witness(f: &Polynomial) -> Option<(usize, usize)> {
    let n = f.nvars();
    for j in 0..n.saturating_sub(1) {
        let mut map: Vec<usize> = (0..n).collect();
        map.swap(j, j + 1);
        if f.map_vars(n, &map) != *f {
            return Some((j + 1, j + 2));
        }
    }
    None
}

/// Write a symmetric polynomial as a polynomial in the chosen generators.
///
/// Runs the classical algorithm: the graded-lex leading exponent of a
/// symmetric polynomial is weakly decreasing, so subtracting the matching
/// product of elementary symmetric polynomials cancels it and only smaller
/// monomials of the same degree appear. A Newton-basis request converts the
/// elementary result afterwards.
pub fn rewrite_symmetric(
    f: &Polynomial,
    coords: SymmetricCoordinates,
) -> Result<Polynomial, SymmetricError> {
    if f.nvars() != coords.n {
        return Err(PolyError::ArityMismatch(coords.n, f.nvars()).into());
    }
    if let Some((i, j)) = symmetry_witness(f) {
        return Err(SymmetricError::NotSymmetric { i, j });
    }
    let n = coords.n;
    let gens: Vec<Polynomial> = SymmetricCoordinates::elementary(n).generators();
    let mut rest = f.clone();
    let mut out = Polynomial::zero(n);
    while let Some((lm, lc)) = rest.leading() {
        let lambda = lm.0.clone();
        let c = lc.clone();
        let mut sexp = vec![0u32; n];
        for i in 0..n {
            let next = if i + 1 < n { lambda[i + 1] } else { 0 };
            debug_assert!(lambda[i] >= next);
            sexp[i] = lambda[i] - next;
        }
        let mut prod = Polynomial::one(n);
        for (i, &e) in sexp.iter().enumerate() {
            if e > 0 {
                prod = prod.mul(&gens[i].pow(e));
            }
        }
        rest = rest.sub(&prod.scale(&c));
        out.add_term(Monomial(sexp), c);
    }
    Ok(match coords.basis {
        SymmetricBasis::Elementary => out,
        SymmetricBasis::Newton => change_basis(&out, SymmetricBasis::Elementary, SymmetricBasis::Newton),
    })
}

/// Re-express `f`, read as a polynomial in one generator tuple, in the other
/// tuple. Newton's identities give each source generator as a polynomial in
/// the target generators; the change is their composition.
pub fn change_basis(f: &Polynomial, from: SymmetricBasis, to: SymmetricBasis) -> Polynomial {
    if from == to {
        return f.clone();
    }
    let n = f.nvars();
    let subs = match from {
        SymmetricBasis::Elementary => elementary_in_newton(n),
        SymmetricBasis::Newton => newton_in_elementary(n),
    };
    f.compose(&subs).expect("arity matches")
}

/// e_k as polynomials in the power sums: k e_k = sum_{i=1}^{k} (-1)^{i-1} e_{k-i} p_i.
fn elementary_in_newton(n: usize) -> Vec<Polynomial> {
    let mut e: Vec<Polynomial> = vec![Polynomial::one(n)];
    for k in 1..=n {
        let mut acc = Polynomial::zero(n);
        for i in 1..=k {
            let term = e[k - i].mul(&Polynomial::var(n, i - 1));
            acc = if i % 2 == 1 { acc.add(&term) } else { acc.sub(&term) };
        }
        e.push(acc.scale(&BigRational::new(1.into(), (k as i64).into())));
    }
    e.remove(0);
    e
}

/// p_k as polynomials in the elementary generators:
/// p_k = sum_{i=1}^{k-1} (-1)^{i-1} e_i p_{k-i} + (-1)^{k-1} k e_k.
fn newton_in_elementary(n: usize) -> Vec<Polynomial> {
    let mut p: Vec<Polynomial> = Vec::with_capacity(n);
    for k in 1..=n {
        let mut acc = Polynomial::zero(n);
        for i in 1..k {
            let term = Polynomial::var(n, i - 1).mul(&p[k - i - 1]);
            acc = if i % 2 == 1 { acc.add(&term) } else { acc.sub(&term) };
        }
        let lead = Polynomial::var(n, k - 1)
            .scale(&BigRational::from_integer((k as i64).into()));
        acc = if k % 2 == 1 { acc.add(&lead) } else { acc.sub(&lead) };
        p.push(acc);
    }
    p
}

/// Concatenated elementary generators for a product of symmetric groups
/// acting in consecutive blocks, as polynomials on all sum(block_sizes)
/// variables. Block `b`'s generators occupy output slots
/// `offset(b)..offset(b) + m_b` in degree order.
pub fn block_generators(block_sizes: &[usize]) -> Vec<Polynomial> {
    assert!(block_sizes.iter().all(|&m| m >= 1));
    let total: usize = block_sizes.iter().sum();
    let mut gens = Vec::with_capacity(total);
    let mut offset = 0;
    for &m in block_sizes {
        let vars: Vec<usize> = (offset..offset + m).collect();
        for d in 1..=m {
            gens.push(elementary_on(total, &vars, d));
        }
        offset += m;
    }
    gens
}

/// Rewrite a polynomial invariant under `S_{m_1} x ... x S_{m_n}` (acting in
/// consecutive blocks) over the concatenated per-block elementary
/// generators. Same subtraction algorithm as [`rewrite_symmetric`]: the
/// leading exponent is weakly decreasing inside every block.
pub fn block_rewrite(f: &Polynomial, block_sizes: &[usize]) -> Result<Polynomial, SymmetricError> {
    let total: usize = block_sizes.iter().sum();
    if f.nvars() != total {
        return Err(PolyError::ArityMismatch(total, f.nvars()).into());
    }
    let mut offset = 0;
    for (b, &m) in block_sizes.iter().enumerate() {
        for j in 0..m.saturating_sub(1) {
            let mut map: Vec<usize> = (0..total).collect();
            map.swap(offset + j, offset + j + 1);
            if f.map_vars(total, &map) != *f {
                return Err(SymmetricError::NotBlockSymmetric { block: b + 1 });
            }
        }
        offset += m;
    }
    let gens = block_generators(block_sizes);
    let mut rest = f.clone();
    let mut out = Polynomial::zero(total);
    while let Some((lm, lc)) = rest.leading() {
        let lambda = lm.0.clone();
        let c = lc.clone();
        let mut sexp = vec![0u32; total];
        let mut offset = 0;
        for &m in block_sizes {
            for i in 0..m {
                let next = if i + 1 < m { lambda[offset + i + 1] } else { 0 };
                debug_assert!(lambda[offset + i] >= next);
                sexp[offset + i] = lambda[offset + i] - next;
            }
            offset += m;
        }
        let mut prod = Polynomial::one(total);
        for (i, &e) in sexp.iter().enumerate() {
            if e > 0 {
                prod = prod.mul(&gens[i].pow(e));
            }
        }
        rest = rest.sub(&prod.scale(&c));
        out.add_term(Monomial(sexp), c);
    }
    Ok(out)
}
