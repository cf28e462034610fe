//! Equivariant polynomial maps between two representations of a finite
//! group, module generators for them over the invariant ring of the source,
//! and exact decomposition of a given map over those generators.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::invariant::{
    invariant_generators, monomial_index, rewrite_invariant, weighted_exponents,
    FiniteMatrixGroup, GeneratorSystem, InvariantError, PowerCache,
};
use crate::poly::{Monomial, PolyError, Polynomial, QMatrix, SpanSolver};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EquivariantError {
    #[error("expected {expected} variables, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("expected {expected} components, got {got}")]
    ComponentCountMismatch { expected: usize, got: usize },
    #[error("matrix pair is not square or not invertible")]
    BadGenerator,
    #[error("map is not equivariant")]
    NotEquivariant,
    #[error("degree {degree} map does not decompose over the module generators")]
    NotInModule { degree: u32 },
    #[error(transparent)]
    Invariant(#[from] InvariantError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// A finite group given by two matrix representations at once: each abstract
/// element carries a matrix on the source space and one on the target space.
/// Stored as the closure of block-diagonal generators, so the two actions
/// stay aligned by construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepresentationPair {
    combined: FiniteMatrixGroup,
    source_dim: usize,
    target_dim: usize,
    source_mats: Vec<QMatrix>,
    target_mats: Vec<QMatrix>,
    source_group: FiniteMatrixGroup,
}

fn block_diagonal(a: &QMatrix, b: &QMatrix) -> QMatrix {
    let (n, m) = (a.nrows(), b.nrows());
    let mut out = QMatrix::zeros(n + m, n + m);
    for i in 0..n {
        for j in 0..n {
            out.set(i, j, a.get(i, j).clone());
        }
    }
    for i in 0..m {
        for j in 0..m {
            out.set(n + i, n + j, b.get(i, j).clone());
        }
    }
    out
}

fn split_block(m: &QMatrix, n1: usize) -> (QMatrix, QMatrix) {
    let n2 = m.nrows() - n1;
    let mut a = QMatrix::zeros(n1, n1);
    let mut b = QMatrix::zeros(n2, n2);
    for i in 0..n1 {
        for j in 0..n1 {
            a.set(i, j, m.get(i, j).clone());
        }
    }
    for i in 0..n2 {
        for j in 0..n2 {
            b.set(i, j, m.get(n1 + i, n1 + j).clone());
        }
    }
    (a, b)
}

impl RepresentationPair {
    pub fn from_generators(
        pairs: &[(QMatrix, QMatrix)],
        cap: usize,
    ) -> Result<Self, EquivariantError> {
        let (first_a, first_b) = pairs.first().ok_or(EquivariantError::BadGenerator)?;
        let (n1, n2) = (first_a.nrows(), first_b.nrows());
        for (a, b) in pairs {
            if a.nrows() != n1 || a.ncols() != n1 || b.nrows() != n2 || b.ncols() != n2 {
                return Err(EquivariantError::BadGenerator);
            }
        }
        let blocks: Vec<QMatrix> =
            pairs.iter().map(|(a, b)| block_diagonal(a, b)).collect();
        let combined = FiniteMatrixGroup::from_generators(&blocks, cap)?;
        let (source_mats, target_mats): (Vec<_>, Vec<_>) =
            combined.elements().iter().map(|m| split_block(m, n1)).unzip();
        let source_group =
            FiniteMatrixGroup::from_generators(&pairs.iter().map(|(a, _)| a.clone()).collect::<Vec<_>>(), cap)?;
        Ok(RepresentationPair {
            combined,
            source_dim: n1,
            target_dim: n2,
            source_mats,
            target_mats,
            source_group,
        })
    }

    /// The same representation on both sides.
    pub fn diagonal(g: &FiniteMatrixGroup) -> Self {
        let pairs: Vec<(QMatrix, QMatrix)> =
            g.elements().iter().map(|m| (m.clone(), m.clone())).collect();
        Self::from_generators(&pairs, g.order()).expect("a closed group closes within its order")
    }

    pub fn order(&self) -> usize {
        self.combined.order()
    }

    pub fn source_dim(&self) -> usize {
        self.source_dim
    }

    pub fn target_dim(&self) -> usize {
        self.target_dim
    }

    /// The image of the group in GL(source); this is what the invariant ring
    /// of the source space sees.
    pub fn source_group(&self) -> &FiniteMatrixGroup {
        &self.source_group
    }

    pub fn source(&self, i: usize) -> &QMatrix {
        &self.source_mats[i]
    }

    pub fn target(&self, i: usize) -> &QMatrix {
        &self.target_mats[i]
    }

    fn target_inverse(&self, i: usize) -> &QMatrix {
        &self.target_mats[self.combined.inverse_index(i)]
    }

    /// The aligned action on source x target-dual, block diagonal
    /// A + inverse-transpose(B). Invariants of this group are exactly the
    /// functions H with H(v, l) = H(g.v, l o g^{-1}).
    pub fn dual_pair_group(&self) -> FiniteMatrixGroup {
        let mats: Vec<QMatrix> = (0..self.order())
            .map(|i| block_diagonal(self.source(i), &self.target_inverse(i).transpose()))
            .collect();
        FiniteMatrixGroup::from_generators(&mats, self.order())
            .expect("a closed group closes within its order")
    }

    /// Twisted Reynolds average over the pair action. The result is always
    /// equivariant; averaging an equivariant map returns it unchanged.
    pub fn average(&self, components: &[Polynomial]) -> Result<Vec<Polynomial>, EquivariantError> {
        self.check_components(components)?;
        let n = self.order();
        let weight = BigRational::new(1.into(), (n as i64).into());
        let mut out = vec![Polynomial::zero(self.source_dim); self.target_dim];
        for i in 0..n {
            let a = self.source(i);
            let composed: Vec<Polynomial> = components
                .iter()
                .map(|c| c.compose_linear(a))
                .collect::<Vec<_>>();
            let b_inv = self.target_inverse(i);
            for (t, slot) in out.iter_mut().enumerate() {
                for (s, comp) in composed.iter().enumerate() {
                    let coef = b_inv.get(t, s);
                    if !coef.is_zero() {
                        *slot = slot.add(&comp.scale(coef));
                    }
                }
            }
        }
        Ok(out.into_iter().map(|c| c.scale(&weight)).collect())
    }

    fn check_components(&self, components: &[Polynomial]) -> Result<(), EquivariantError> {
        if components.len() != self.target_dim {
            return Err(EquivariantError::ComponentCountMismatch {
                expected: self.target_dim,
                got: components.len(),
            });
        }
        for c in components {
            if c.nvars() != self.source_dim {
                return Err(EquivariantError::DimensionMismatch {
                    expected: self.source_dim,
                    got: c.nvars(),
                });
            }
        }
        Ok(())
    }

    fn is_equivariant(&self, components: &[Polynomial]) -> bool {
        (0..self.order()).all(|i| {
            let a = self.source(i);
            let b = self.target(i);
            components.iter().enumerate().all(|(t, ct)| {
                let lhs = ct.compose_linear(a);
                let rhs = components.iter().enumerate().fold(
                    Polynomial::zero(self.source_dim),
                    |acc, (s, cs)| {
                        let coef = b.get(t, s);
                        if coef.is_zero() { acc } else { acc.add(&cs.scale(coef)) }
                    },
                );
                lhs == rhs
            })
        })
    }
}

/// A polynomial map source -> target commuting with the pair action,
/// component polynomials in the source variables.
#[derive(Debug, Clone)]
pub struct EquivariantMap {
    pair: RepresentationPair,
    components: Vec<Polynomial>,
}

impl EquivariantMap {
    pub fn new(
        pair: &RepresentationPair,
        components: Vec<Polynomial>,
    ) -> Result<Self, EquivariantError> {
        pair.check_components(&components)?;
        if !pair.is_equivariant(&components) {
            return Err(EquivariantError::NotEquivariant);
        }
        Ok(EquivariantMap { pair: pair.clone(), components })
    }

    fn new_unchecked(pair: &RepresentationPair, components: Vec<Polynomial>) -> Self {
        debug_assert!(pair.is_equivariant(&components));
        EquivariantMap { pair: pair.clone(), components }
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    pub fn pair(&self) -> &RepresentationPair {
        &self.pair
    }

    pub fn source_dim(&self) -> usize {
        self.pair.source_dim
    }

    pub fn target_dim(&self) -> usize {
        self.pair.target_dim
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Polynomial::is_zero)
    }

    pub fn degree(&self) -> u32 {
        self.components.iter().map(Polynomial::total_degree).max().unwrap_or(0)
    }
}

fn stacked_vector(
    components: &[Polynomial],
    index: &BTreeMap<Monomial, usize>,
) -> Vec<BigRational> {
    let block = index.len();
    let mut v = vec![BigRational::zero(); block * components.len()];
    for (t, c) in components.iter().enumerate() {
        for (m, coef) in c.terms() {
            v[t * block + index[m]] = coef.clone();
        }
    }
    v
}

/// Scale so the first non-zero component is graded-lex monic.
fn monic_map(components: Vec<Polynomial>) -> Vec<Polynomial> {
    let lead = components.iter().find_map(|c| c.leading().map(|(_, coef)| coef.clone()));
    match lead {
        Some(c) => components.iter().map(|p| p.scale(&c.recip())).collect(),
        None => components,
    }
}

fn scaled_map(components: &[Polynomial], q: &Polynomial) -> Vec<Polynomial> {
    components.iter().map(|c| c.mul(q)).collect()
}

/// Homogeneous degree-d slice of a map, component by component.
fn homogeneous_slices(components: &[Polynomial], nvars: usize) -> BTreeMap<u32, Vec<Polynomial>> {
    let mut out: BTreeMap<u32, Vec<Polynomial>> = BTreeMap::new();
    let n = components.len();
    for (t, c) in components.iter().enumerate() {
        for (d, part) in c.homogeneous_components() {
            let slot = out.entry(d).or_insert_with(|| vec![Polynomial::zero(nvars); n]);
            slot[t] = part;
        }
    }
    out
}

/// Module generators of the equivariant polynomial maps over the invariant
/// ring of the source: twisted Reynolds averages of all monomial maps of
/// degree at most the group order, thinned degree by degree against the
/// products already generated. Candidates are scanned per target coordinate
/// in graded-lex descending monomial order, which keeps the representatives
/// on leading variables. Generation is then re-verified on every averaged
/// monomial map up to the group order plus the largest generator degree; a
/// failure there means the degree bound is wrong, not the caller.
pub fn equivariant_module_generators(
    pair: &RepresentationPair,
) -> Result<Vec<EquivariantMap>, EquivariantError> {
    let sigma = invariant_generators(pair.source_group())?;
    let n1 = pair.source_dim();
    let n2 = pair.target_dim();
    let bound = pair.order() as u32;

    let mut kept: Vec<Vec<Polynomial>> = Vec::new();
    let mut degs: Vec<u32> = Vec::new();
    for d in 0..=bound {
        let (basis, index) = monomial_index(n1, d);
        let mut solver = SpanSolver::new(n2 * basis.len());
        seed_products(&mut solver, &kept, &degs, &sigma, &index, d, n1);
        for t in 0..n2 {
            for mono in basis.iter().rev() {
                let mut components = vec![Polynomial::zero(n1); n2];
                components[t] = Polynomial::monomial(n1, mono.0.clone(), BigRational::one());
                let avg = pair.average(&components)?;
                if avg.iter().all(Polynomial::is_zero) {
                    continue;
                }
                let avg = monic_map(avg);
                if solver.add(stacked_vector(&avg, &index)) {
                    kept.push(avg);
                    degs.push(d);
                }
            }
        }
    }

    let max_deg = degs.iter().copied().max().unwrap_or(0);
    for d in bound + 1..=bound + max_deg {
        let (basis, index) = monomial_index(n1, d);
        let mut solver = SpanSolver::new(n2 * basis.len());
        seed_products(&mut solver, &kept, &degs, &sigma, &index, d, n1);
        for t in 0..n2 {
            for mono in &basis {
                let mut components = vec![Polynomial::zero(n1); n2];
                components[t] = Polynomial::monomial(n1, mono.0.clone(), BigRational::one());
                let avg = pair.average(&components)?;
                if avg.iter().all(Polynomial::is_zero) {
                    continue;
                }
                if solver.express(&stacked_vector(&avg, &index)).is_none() {
                    return Err(EquivariantError::NotInModule { degree: d });
                }
            }
        }
    }

    Ok(kept.into_iter().map(|c| EquivariantMap::new_unchecked(pair, c)).collect())
}

/// Add every product (invariant of degree d - deg P_j) x P_j to the solver.
fn seed_products(
    solver: &mut SpanSolver,
    kept: &[Vec<Polynomial>],
    degs: &[u32],
    sigma: &GeneratorSystem,
    index: &BTreeMap<Monomial, usize>,
    d: u32,
    n1: usize,
) {
    let mut cache = PowerCache::new(sigma.generators(), n1);
    for (components, dj) in kept.iter().zip(degs) {
        for alpha in weighted_exponents(sigma.degrees(), d - dj) {
            let q = cache.product(&alpha);
            solver.add(stacked_vector(&scaled_map(components, &q), index));
        }
    }
}

/// Write an equivariant f as sum of (L_j o sigma) P_j, solved exactly degree
/// by degree. L is returned as polynomials in the sigma coordinates, one per
/// generator, graded-lex-first among the solutions when the module has
/// relations.
pub fn decompose_equivariant(
    f: &EquivariantMap,
    sigma: &GeneratorSystem,
    generators: &[EquivariantMap],
) -> Result<Vec<Polynomial>, EquivariantError> {
    let pair = f.pair();
    let n1 = pair.source_dim();
    if sigma.group().dim() != n1 {
        return Err(EquivariantError::DimensionMismatch {
            expected: n1,
            got: sigma.group().dim(),
        });
    }
    if !pair.is_equivariant(f.components()) {
        return Err(EquivariantError::NotEquivariant);
    }
    for g in generators {
        if g.source_dim() != n1 || g.target_dim() != pair.target_dim() {
            return Err(EquivariantError::ComponentCountMismatch {
                expected: pair.target_dim(),
                got: g.target_dim(),
            });
        }
    }
    let p = sigma.len();
    let mut result = vec![Polynomial::zero(p); generators.len()];
    let mut cache = PowerCache::new(sigma.generators(), n1);
    for (d, slice) in homogeneous_slices(f.components(), n1) {
        let (_, index) = monomial_index(n1, d);
        let mut solver = SpanSolver::new(pair.target_dim() * index.len());
        let mut columns: Vec<(usize, Monomial)> = Vec::new();
        for (j, g) in generators.iter().enumerate() {
            let dj = g.degree();
            if dj > d {
                continue;
            }
            for alpha in weighted_exponents(sigma.degrees(), d - dj) {
                let q = cache.product(&alpha);
                solver.add(stacked_vector(&scaled_map(g.components(), &q), &index));
                columns.push((j, alpha));
            }
        }
        let target = stacked_vector(&slice, &index);
        let coeffs = solver
            .express(&target)
            .ok_or(EquivariantError::NotInModule { degree: d })?;
        for (c, (j, alpha)) in coeffs.into_iter().zip(columns) {
            if !c.is_zero() {
                result[j].add_term(alpha, c);
            }
        }
    }
    debug_assert!({
        let rebuilt = reconstruct(&result, sigma, generators).unwrap();
        rebuilt == f.components()
    });
    Ok(result)
}

/// Evaluate sum of (L_j o sigma) P_j back to a list of component polynomials.
pub fn reconstruct(
    l: &[Polynomial],
    sigma: &GeneratorSystem,
    generators: &[EquivariantMap],
) -> Result<Vec<Polynomial>, EquivariantError> {
    let n1 = sigma.group().dim();
    let n2 = generators.first().map_or(0, |g| g.target_dim());
    let mut out = vec![Polynomial::zero(n1); n2];
    for (lj, g) in l.iter().zip(generators) {
        let coeff = lj.compose(sigma.generators())?;
        for (t, c) in g.components().iter().enumerate() {
            out[t] = out[t].add(&c.mul(&coeff));
        }
    }
    Ok(out)
}

/// The decomposition extracted from the graph invariant H_f(v, l) = l(f(v)):
/// maps are the dual-variable gradients of the combined invariants at l = 0,
/// coefficients the matching partials of the rewriting of H_f. Both lists
/// line up index by index and reconstruct f exactly.
#[derive(Debug, Clone)]
pub struct HfDecomposition {
    pub maps: Vec<EquivariantMap>,
    pub coefficients: Vec<Polynomial>,
}

impl HfDecomposition {
    pub fn reconstruct(&self, source_dim: usize, target_dim: usize) -> Vec<Polynomial> {
        let mut out = vec![Polynomial::zero(source_dim); target_dim];
        for (m, h) in self.maps.iter().zip(&self.coefficients) {
            for (t, c) in m.components().iter().enumerate() {
                out[t] = out[t].add(&c.mul(h));
            }
        }
        out
    }
}

/// Independent route to a decomposition of f: form H_f on source x dual
/// target, rewrite it over the invariant generators of the aligned action,
/// then read off equivariant maps and invariant coefficients from the
/// dual-variable derivatives at zero.
pub fn hf_cross_check(f: &EquivariantMap) -> Result<HfDecomposition, EquivariantError> {
    let pair = f.pair();
    let n1 = pair.source_dim();
    let n2 = pair.target_dim();
    if !pair.is_equivariant(f.components()) {
        return Err(EquivariantError::NotEquivariant);
    }

    let total = n1 + n2;
    let mut hf = Polynomial::zero(total);
    for (t, c) in f.components().iter().enumerate() {
        let lifted = c.map_vars(total, &(0..n1).collect::<Vec<_>>());
        hf = hf.add(&lifted.mul(&Polynomial::var(total, n1 + t)));
    }

    let dual_group = pair.dual_pair_group();
    let tau = invariant_generators(&dual_group)?;
    let psi = rewrite_invariant(&hf, &tau)?;

    // substitution x_i -> x_i, l_t -> 0, landing back in the source variables
    let at_zero: Vec<Polynomial> = (0..total)
        .map(|i| if i < n1 { Polynomial::var(n1, i) } else { Polynomial::zero(n1) })
        .collect();

    let tau_at_zero: Vec<Polynomial> = tau
        .generators()
        .iter()
        .map(|g| g.compose(&at_zero))
        .collect::<Result<_, _>>()?;
    let mut maps = Vec::with_capacity(tau.len());
    let mut coefficients = Vec::with_capacity(tau.len());
    for (i, tau_i) in tau.generators().iter().enumerate() {
        let components: Vec<Polynomial> = (0..n2)
            .map(|t| tau_i.partial_derivative(n1 + t).compose(&at_zero))
            .collect::<Result<_, _>>()?;
        let h = psi.partial_derivative(i).compose(&tau_at_zero)?;
        if components.iter().all(Polynomial::is_zero) || h.is_zero() {
            continue;
        }
        maps.push(EquivariantMap::new_unchecked(pair, components));
        coefficients.push(h);
    }

    let out = HfDecomposition { maps, coefficients };
    debug_assert_eq!(out.reconstruct(n1, n2).as_slice(), f.components());
    Ok(out)
}

#[cfg(test)]
mod tests;
