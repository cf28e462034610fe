//! Finite matrix groups acting on polynomials: Reynolds averaging, invariant
//! generators with the Noether degree bound, rewriting an invariant as a
//! polynomial in the generators, the regular-representation embedding, and
//! the norm constants for the averaging argument.

mod generators;
mod weyl;

pub use generators::{invariant_generators, rewrite_invariant, GeneratorSystem};
pub(crate) use generators::{monomial_index, weighted_exponents, PowerCache};
pub use weyl::{weyl_embedding, weyl_section_check, SectionCheck, WeylEmbedding};

use crate::poly::{Polynomial, QMatrix};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum InvariantError {
    #[error("dimension mismatch: group acts on {expected} variables, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("generator matrix is singular")]
    SingularGenerator,
    #[error("group order exceeds the bound {max_order}")]
    OrderBoundExceeded { max_order: usize },
    #[error("polynomial is not invariant under the group")]
    NotInvariant,
    #[error("generator is not homogeneous of positive degree")]
    NotHomogeneous,
    #[error("degree {degree} component is outside the algebra generated by the system")]
    NotInAlgebra { degree: u32 },
    #[error(transparent)]
    Poly(#[from] crate::poly::PolyError),
}

/// A finite subgroup of GL_n(Q), stored as the full element list. The
/// identity is element 0; the rest follow the closure enumeration order
/// (breadth-first products with the given generators), which downstream
/// constructions treat as the canonical ordering.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteMatrixGroup {
    dim: usize,
    elements: Vec<QMatrix>,
}

impl FiniteMatrixGroup {
    /// Close a generating set under multiplication.
    pub fn from_generators(
        gens: &[QMatrix],
        max_order: usize,
    ) -> Result<Self, InvariantError> {
        let dim = match gens.first() {
            Some(g) => g.nrows(),
            None => return Err(InvariantError::SingularGenerator),
        };
        for g in gens {
            if g.nrows() != dim || g.ncols() != dim {
                return Err(InvariantError::DimensionMismatch {
                    expected: dim,
                    got: g.nrows().max(g.ncols()),
                });
            }
            if g.det().is_zero() {
                return Err(InvariantError::SingularGenerator);
            }
        }
        let mut elements = vec![QMatrix::identity(dim)];
        let mut frontier = 0usize;
        while frontier < elements.len() {
            let w = elements[frontier].clone();
            for g in gens {
                let p = w.matmul(g);
                if !elements.contains(&p) {
                    if elements.len() >= max_order {
                        return Err(InvariantError::OrderBoundExceeded { max_order });
                    }
                    elements.push(p);
                }
            }
            frontier += 1;
        }
        Ok(FiniteMatrixGroup { dim, elements })
    }

    /// {I, -I} acting on one variable.
    pub fn sign_group() -> Self {
        let minus = QMatrix::from_i64_rows(&[&[-1]]);
        Self::from_generators(&[minus], 2).unwrap()
    }

    /// S_n as permutation matrices, generated by adjacent transpositions.
    pub fn symmetric(n: usize) -> Self {
        assert!(n >= 1);
        if n == 1 {
            return Self::trivial(1);
        }
        let mut gens = Vec::new();
        for i in 0..n - 1 {
            let mut m = QMatrix::identity(n);
            m.set(i, i, BigRational::zero());
            m.set(i + 1, i + 1, BigRational::zero());
            m.set(i, i + 1, BigRational::one());
            m.set(i + 1, i, BigRational::one());
            gens.push(m);
        }
        let bound = (1..=n).product::<usize>();
        Self::from_generators(&gens, bound).unwrap()
    }

    /// The rotation group of order 4 on the plane.
    pub fn cyclic4() -> Self {
        let rot = QMatrix::from_i64_rows(&[&[0, -1], &[1, 0]]);
        Self::from_generators(&[rot], 4).unwrap()
    }

    pub fn trivial(n: usize) -> Self {
        FiniteMatrixGroup { dim: n, elements: vec![QMatrix::identity(n)] }
    }

    /// Block-diagonal product acting on the concatenated coordinates;
    /// elements are ordered with the first factor outermost.
    pub fn product(a: &Self, b: &Self) -> Self {
        let dim = a.dim + b.dim;
        let mut elements = Vec::with_capacity(a.order() * b.order());
        for ga in &a.elements {
            for gb in &b.elements {
                let mut m = QMatrix::zeros(dim, dim);
                for i in 0..a.dim {
                    for j in 0..a.dim {
                        m.set(i, j, ga.get(i, j).clone());
                    }
                }
                for i in 0..b.dim {
                    for j in 0..b.dim {
                        m.set(a.dim + i, a.dim + j, gb.get(i, j).clone());
                    }
                }
                elements.push(m);
            }
        }
        FiniteMatrixGroup { dim, elements }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[QMatrix] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &QMatrix {
        &self.elements[i]
    }

    /// Index of an element, if present.
    pub fn index_of(&self, m: &QMatrix) -> Option<usize> {
        self.elements.iter().position(|e| e == m)
    }

    /// Index of the inverse of element `i`.
    pub fn inverse_index(&self, i: usize) -> usize {
        let inv = self.elements[i].inverse().expect("group elements are invertible");
        self.index_of(&inv).expect("group is closed under inversion")
    }
}

/// Average of f over the group action, (1/|G|) sum_g f(g x). Projects onto
/// the invariants and fixes them.
pub fn reynolds(f: &Polynomial, g: &FiniteMatrixGroup) -> Result<Polynomial, InvariantError> {
    if f.nvars() != g.dim() {
        return Err(InvariantError::DimensionMismatch { expected: g.dim(), got: f.nvars() });
    }
    let mut acc = Polynomial::zero(g.dim());
    for e in g.elements() {
        acc = acc.add(&f.compose_linear(e));
    }
    let m = BigRational::from_integer(BigInt::from(g.order() as i64));
    Ok(acc.scale(&m.recip()))
}

/// Exact invariance check: f(g x) = f for every group element.
pub fn is_invariant(f: &Polynomial, g: &FiniteMatrixGroup) -> Result<bool, InvariantError> {
    if f.nvars() != g.dim() {
        return Err(InvariantError::DimensionMismatch { expected: g.dim(), got: f.nvars() });
    }
    for e in g.elements() {
        if &f.compose_linear(e) != f {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MuBoundKind {
    /// The spectral norm itself, attained and rational.
    Exact,
    /// A Frobenius-norm upper bound, used when the spectral value is
    /// irrational.
    FrobeniusUpper,
}

#[derive(Debug, Clone)]
pub struct MuBound {
    pub value: BigRational,
    pub kind: MuBoundKind,
}

fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let sn = r.numer().sqrt();
    let sd = r.denom().sqrt();
    if &(&sn * &sn) == r.numer() && &(&sd * &sd) == r.denom() {
        Some(BigRational::new(sn, sd))
    } else {
        None
    }
}

/// Smallest convenient rational upper bound for sqrt(r):
/// ceil(sqrt(num*den)) / den.
fn rational_sqrt_upper(r: &BigRational) -> BigRational {
    if let Some(s) = rational_sqrt(r) {
        return s;
    }
    let prod = r.numer() * r.denom();
    let mut s = prod.sqrt();
    if &(&s * &s) < &prod {
        s += BigInt::one();
    }
    BigRational::new(s, r.denom().clone())
}

/// Certified upper bound for max_g of the spectral norm of g. Exact when
/// every element has g^T g diagonal with a rational-square largest entry
/// (permutation and signed-permutation groups land here); otherwise the
/// irrational elements contribute Frobenius upper bounds.
pub fn operator_norm_mu(g: &FiniteMatrixGroup) -> MuBound {
    let mut exact_max: Option<BigRational> = None;
    let mut upper_max: Option<BigRational> = None;
    for e in g.elements() {
        let gtg = e.transpose().matmul(e);
        let spectral = if gtg.is_diagonal() {
            let mut top = BigRational::zero();
            for i in 0..gtg.nrows() {
                if gtg.get(i, i) > &top {
                    top = gtg.get(i, i).clone();
                }
            }
            rational_sqrt(&top)
        } else {
            None
        };
        match spectral {
            Some(s) => {
                if exact_max.as_ref().map_or(true, |m| &s > m) {
                    exact_max = Some(s);
                }
            }
            None => {
                let mut fr = BigRational::zero();
                for i in 0..e.nrows() {
                    for j in 0..e.ncols() {
                        fr += e.get(i, j) * e.get(i, j);
                    }
                }
                let u = rational_sqrt_upper(&fr);
                if upper_max.as_ref().map_or(true, |m| &u > m) {
                    upper_max = Some(u);
                }
            }
        }
    }
    match (exact_max, upper_max) {
        (Some(e), None) => MuBound { value: e, kind: MuBoundKind::Exact },
        (Some(e), Some(u)) if e >= u => MuBound { value: e, kind: MuBoundKind::Exact },
        (_, Some(u)) => MuBound { value: u, kind: MuBoundKind::FrobeniusUpper },
        (None, None) => MuBound { value: BigRational::zero(), kind: MuBoundKind::Exact },
    }
}

/// The dilated radius n^2 mu rho entering the chain-rule estimate for the
/// averaged extension.
pub fn faa_di_bruno_radius(rho: &BigRational, n: usize, mu: &BigRational) -> BigRational {
    assert!(rho.is_positive() && mu.is_positive() && n >= 1);
    let n2 = BigRational::from_integer(BigInt::from((n * n) as i64));
    n2 * mu * rho
}

#[cfg(test)]
mod tests;
