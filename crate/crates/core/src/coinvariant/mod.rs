//! The coinvariant side of the story for W = S_{m_1} x ... x S_{m_n} acting
//! in blocks: the Artin monomial basis of the graded complement H, the
//! determinant Delta = det(h_j(w_i.v)) and its factorization into coordinate
//! differences, the Cramer decomposition f = sum_j h_j f_j with W-invariant
//! coefficients, and the G-invariant sub-basis for subgroups G of W.

use crate::invariant::FiniteMatrixGroup;
use crate::poly::{LinearForm, Monomial, PolyError, Polynomial, QMatrix, SpanSolver};
use itertools::Itertools;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

pub const DEFAULT_SIZE_BOUND: usize = 720;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CoinvariantError {
    #[error("group order {order} exceeds the size bound {cap}")]
    SizeBoundExceeded { order: usize, cap: usize },
    #[error("Delta does not divide a Cramer determinant; this is a bug")]
    DeltaDivisionFailed,
    #[error("the group is not a subgroup of the block permutation group")]
    NotASubgroup,
    #[error("polynomial is not invariant under the subgroup")]
    NotInvariant,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// The Artin monomial basis of the coinvariant space, together with the
/// fixed element enumeration of W and the cached determinant Delta.
///
/// Both enumerations are canonical and permanent: basis monomials follow the
/// mixed-radix count of their exponent tuples (first block outermost, within
/// a block the j-th variable's exponent ranges over 0..j), and group
/// elements follow lexicographic order on the concatenated permutation
/// words. Cofactor signs, and hence every downstream decomposition, depend
/// on this ordering.
#[derive(Debug, Clone)]
pub struct CoinvariantBasis {
    block_sizes: Vec<usize>,
    basis: Vec<Polynomial>,
    elements: Vec<QMatrix>,
    delta: Polynomial,
}

impl CoinvariantBasis {
    pub fn block_sizes(&self) -> &[usize] {
        &self.block_sizes
    }

    pub fn nvars(&self) -> usize {
        self.block_sizes.iter().sum()
    }

    /// |W| = prod m_i!, which is also the basis size.
    pub fn order(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Polynomial] {
        &self.basis
    }

    /// The elements of W as permutation matrices, w_1 = identity.
    pub fn elements(&self) -> &[QMatrix] {
        &self.elements
    }

    pub fn delta(&self) -> &Polynomial {
        &self.delta
    }

    pub fn is_w_invariant(&self, f: &Polynomial) -> bool {
        self.elements.iter().all(|w| f.compose_linear(w) == *f)
    }
}

/// Build the tensor Artin basis for the given block sizes and cache Delta.
pub fn artin_basis(block_sizes: &[usize]) -> Result<CoinvariantBasis, CoinvariantError> {
    artin_basis_capped(block_sizes, DEFAULT_SIZE_BOUND)
}

pub fn artin_basis_capped(
    block_sizes: &[usize],
    cap: usize,
) -> Result<CoinvariantBasis, CoinvariantError> {
    assert!(!block_sizes.is_empty() && block_sizes.iter().all(|&m| m >= 1));
    let total: usize = block_sizes.iter().sum();
    let mut order = 1usize;
    for &m in block_sizes {
        for i in 1..=m {
            order = order.saturating_mul(i);
        }
    }
    if order > cap {
        return Err(CoinvariantError::SizeBoundExceeded { order, cap });
    }

    // Exponent ranges: within a block the j-th variable (1-based) admits
    // exponents 0..j, the first variable always 0.
    let basis: Vec<Polynomial> = block_sizes
        .iter()
        .flat_map(|&m| (1..=m).map(|j| 0..j as u32))
        .multi_cartesian_product()
        .map(|exps| Polynomial::monomial(total, exps, BigRational::one()))
        .collect();
    debug_assert_eq!(basis.len(), order);

    let elements: Vec<QMatrix> = block_sizes
        .iter()
        .map(|&m| (0..m).permutations(m).collect::<Vec<_>>())
        .multi_cartesian_product()
        .map(|words| {
            let mut p = QMatrix::zeros(total, total);
            let mut offset = 0;
            for (word, &m) in words.iter().zip(block_sizes) {
                for (i, &pi) in word.iter().enumerate() {
                    p.set(offset + i, offset + pi, BigRational::one());
                }
                offset += m;
            }
            p
        })
        .collect();
    debug_assert_eq!(elements.len(), order);

    let rows: Vec<Vec<Polynomial>> = elements
        .iter()
        .map(|w| basis.iter().map(|h| h.compose_linear(w)).collect())
        .collect();
    let delta = bareiss_determinant(rows, total);
    debug_assert!(!delta.is_zero());

    Ok(CoinvariantBasis {
        block_sizes: block_sizes.to_vec(),
        basis,
        elements,
        delta,
    })
}

/// Fraction-free determinant of a square matrix of polynomials. Every
/// division in the Bareiss recurrence is exact over the polynomial ring, so
/// intermediate entries stay minors instead of exploding into fractions.
fn bareiss_determinant(mut a: Vec<Vec<Polynomial>>, nvars: usize) -> Polynomial {
    let n = a.len();
    if n == 0 {
        return Polynomial::one(nvars);
    }
    let mut negate = false;
    let mut prev = Polynomial::one(nvars);
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    negate = !negate;
                }
                None => return Polynomial::zero(nvars),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[k][k].mul(&a[i][j]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = num.divide_exact(&prev).expect("Bareiss step divides exactly");
            }
            a[i][k] = Polynomial::zero(nvars);
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if negate {
        det.neg()
    } else {
        det
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeltaFactor {
    /// 1-based variable indices of the form `x_i - x_j`.
    pub var_i: usize,
    pub var_j: usize,
    pub exponent: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeltaReport {
    pub factors: Vec<DeltaFactor>,
    pub cofactor: String,
    pub pass: bool,
}

/// Divide Delta by every within-block coordinate difference as often as it
/// goes, recording the exponents. The factorization lemma promises each form
/// divides at least once and that nothing but a constant remains.
pub fn delta_divisibility_check(b: &CoinvariantBasis) -> DeltaReport {
    let total = b.nvars();
    let mut rest = b.delta().clone();
    let mut factors = Vec::new();
    let mut offset = 0;
    for &m in b.block_sizes() {
        for i in 0..m {
            for j in i + 1..m {
                let form = LinearForm::difference(total, offset + i, offset + j).to_polynomial();
                let mut exponent = 0;
                while let Ok(q) = rest.divide_exact(&form) {
                    if q.is_zero() {
                        break;
                    }
                    rest = q;
                    exponent += 1;
                }
                factors.push(DeltaFactor {
                    var_i: offset + i + 1,
                    var_j: offset + j + 1,
                    exponent,
                });
            }
        }
        offset += m;
    }
    let pass = factors.iter().all(|f| f.exponent >= 1) && rest.is_constant() && !rest.is_zero();
    DeltaReport {
        factors,
        cofactor: rest.to_string(),
        pass,
    }
}

/// Solve f = sum_j h_j f_j for the unique W-invariant coefficients via
/// Cramer's rule: f_j = det(D with column j replaced by (f o w_i)_i) / Delta.
pub fn cramer_decompose(
    f: &Polynomial,
    b: &CoinvariantBasis,
) -> Result<Vec<Polynomial>, CoinvariantError> {
    let total = b.nvars();
    if f.nvars() != total {
        return Err(PolyError::ArityMismatch(total, f.nvars()).into());
    }
    let rhs: Vec<Polynomial> = b.elements().iter().map(|w| f.compose_linear(w)).collect();
    let rows: Vec<Vec<Polynomial>> = b
        .elements()
        .iter()
        .map(|w| b.basis().iter().map(|h| h.compose_linear(w)).collect())
        .collect();

    let mut out = Vec::with_capacity(b.order());
    for j in 0..b.order() {
        let mut replaced = rows.clone();
        for (i, row) in replaced.iter_mut().enumerate() {
            row[j] = rhs[i].clone();
        }
        let det = bareiss_determinant(replaced, total);
        let fj = det
            .divide_exact(b.delta())
            .map_err(|_| CoinvariantError::DeltaDivisionFailed)?;
        out.push(fj);
    }

    debug_assert_eq!(
        &out.iter()
            .zip(b.basis())
            .fold(Polynomial::zero(total), |acc, (fj, hj)| acc.add(&hj.mul(fj))),
        f
    );
    Ok(out)
}

/// The class of f in H: the constant terms of its Cramer coefficients,
/// since f = sum_j h_j (f_j(0) + (f_j - f_j(0))) puts everything but
/// sum_j f_j(0) h_j inside the ideal of positive-degree invariants.
fn class_vector(f: &Polynomial, b: &CoinvariantBasis) -> Result<Vec<BigRational>, CoinvariantError> {
    Ok(cramer_decompose(f, b)?
        .iter()
        .map(|fj| fj.constant_term())
        .collect())
}

fn contains_group(b: &CoinvariantBasis, g: &FiniteMatrixGroup) -> bool {
    g.dim() == b.nvars() && g.elements().iter().all(|m| b.elements().contains(m))
}

/// A module basis for the G-invariant polynomials over the W-invariant
/// ring, for G a subgroup of W. Each Artin monomial is Reynolds-averaged
/// over G; an average is kept when its class in the coinvariant quotient
/// (read off through [`cramer_decompose`]) is independent of the classes
/// kept so far. The averages with independent classes are homogeneous lifts
/// of a basis of the G-invariant part of the quotient, which makes them a
/// free module basis.
pub fn subgroup_basis(
    b: &CoinvariantBasis,
    g: &FiniteMatrixGroup,
) -> Result<Vec<Polynomial>, CoinvariantError> {
    if !contains_group(b, g) {
        return Err(CoinvariantError::NotASubgroup);
    }
    let mut solver = SpanSolver::new(b.order());
    let mut kept = Vec::new();
    for h in b.basis() {
        let averaged = crate::invariant::reynolds(h, g).expect("dimensions agree");
        if solver.add(class_vector(&averaged, b)?) {
            kept.push(averaged);
        }
    }
    Ok(kept)
}

/// Decompose a G-invariant polynomial over the subgroup basis with
/// W-invariant coefficients: f = sum_i g_i q_i, solved degree by degree.
/// For each homogeneous piece of f the candidate columns are the products
/// of a basis element q_i with a W-invariant polynomial of the
/// complementary degree, and the exact linear solve picks the canonical
/// combination (dependent columns resolve to zero).
pub fn invariant_decompose(
    f: &Polynomial,
    b: &CoinvariantBasis,
    g: &FiniteMatrixGroup,
) -> Result<Vec<(Polynomial, Polynomial)>, CoinvariantError> {
    let total = b.nvars();
    if f.nvars() != total {
        return Err(PolyError::ArityMismatch(total, f.nvars()).into());
    }
    let basis = subgroup_basis(b, g)?;
    if g.elements().iter().any(|w| f.compose_linear(w) != *f) {
        return Err(CoinvariantError::NotInvariant);
    }

    let mut coeffs = vec![Polynomial::zero(total); basis.len()];
    for (d, component) in f.homogeneous_components() {
        let monomials = crate::poly::monomials_of_degree(total, d);
        let index: std::collections::HashMap<&Monomial, usize> =
            monomials.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let to_vec = |p: &Polynomial| {
            let mut v = vec![BigRational::zero(); monomials.len()];
            for (m, c) in p.terms() {
                v[index[m]] = c.clone();
            }
            v
        };

        let mut solver = SpanSolver::new(monomials.len());
        let mut columns: Vec<(usize, Polynomial)> = Vec::new();
        for (i, q) in basis.iter().enumerate() {
            let dq = q.total_degree();
            if dq > d || q.is_zero() {
                continue;
            }
            for inv in invariant_basis(b, d - dq) {
                let prod = q.mul(&inv);
                solver.add(to_vec(&prod));
                columns.push((i, inv));
            }
        }
        let solution = solver
            .express(&to_vec(&component))
            .ok_or(CoinvariantError::NotInvariant)?;
        for (c, (i, inv)) in solution.iter().zip(&columns) {
            if !c.is_zero() {
                coeffs[*i] = coeffs[*i].add(&inv.scale(c));
            }
        }
    }

    let out: Vec<(Polynomial, Polynomial)> = basis.into_iter().zip(coeffs).collect();
    debug_assert_eq!(
        &out.iter()
            .fold(Polynomial::zero(total), |acc, (q, gi)| acc.add(&q.mul(gi))),
        f
    );
    Ok(out)
}

/// A basis of the degree-`d` W-invariant polynomials: Reynolds averages of
/// the degree-`d` monomials in ascending order, thinned to the linearly
/// independent ones.
fn invariant_basis(b: &CoinvariantBasis, d: u32) -> Vec<Polynomial> {
    let total = b.nvars();
    if d == 0 {
        return vec![Polynomial::one(total)];
    }
    let scale = BigRational::new(1.into(), (b.order() as i64).into());
    let monomials = crate::poly::monomials_of_degree(total, d);
    let index: std::collections::HashMap<&Monomial, usize> =
        monomials.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut solver = SpanSolver::new(monomials.len());
    let mut out = Vec::new();
    for m in &monomials {
        let mono = Polynomial::monomial(total, m.0.clone(), BigRational::one());
        let avg = b
            .elements()
            .iter()
            .fold(Polynomial::zero(total), |acc, w| acc.add(&mono.compose_linear(w)))
            .scale(&scale);
        let mut v = vec![BigRational::zero(); monomials.len()];
        for (mm, c) in avg.terms() {
            v[index[mm]] = c.clone();
        }
        if solver.add(v) {
            out.push(avg);
        }
    }
    out
}

#[cfg(test)]
mod tests;
