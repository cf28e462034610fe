//! Generator computation and invariant rewriting.
//!
//! Candidates are the Reynolds images of all monomials up to the Noether
//! bound |G| (valid in characteristic zero). A candidate is kept exactly
//! when it is linearly independent of the degree-graded piece of the algebra
//! generated by the candidates already kept, so the result is a homogeneous
//! generating system that is greedily minimal in (degree, graded-lex) order.

use super::*;
use crate::poly::{monomials_of_degree, Monomial, SpanSolver};
use std::collections::BTreeMap;

/// Homogeneous generators of the invariant ring of a group, with their
/// degrees. Invariance and homogeneity are validated on construction.
#[derive(Debug, Clone)]
pub struct GeneratorSystem {
    generators: Vec<Polynomial>,
    degrees: Vec<u32>,
    group: FiniteMatrixGroup,
}

impl GeneratorSystem {
    pub fn new(
        generators: Vec<Polynomial>,
        group: FiniteMatrixGroup,
    ) -> Result<Self, InvariantError> {
        let mut degrees = Vec::with_capacity(generators.len());
        for g in &generators {
            if g.is_zero() || !g.is_homogeneous() || g.total_degree() == 0 {
                return Err(InvariantError::NotHomogeneous);
            }
            if !is_invariant(g, &group)? {
                return Err(InvariantError::NotInvariant);
            }
            degrees.push(g.total_degree());
        }
        Ok(GeneratorSystem { generators, degrees, group })
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn group(&self) -> &FiniteMatrixGroup {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }
}

/// All exponent vectors alpha with sum alpha_i * degrees_i = d, sorted
/// graded-lex ascending.
pub(crate) fn weighted_exponents(degrees: &[u32], d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; degrees.len()];
    fn rec(degrees: &[u32], pos: usize, rem: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if pos == degrees.len() {
            if rem == 0 {
                out.push(Monomial(cur.clone()));
            }
            return;
        }
        let step = degrees[pos];
        for e in 0..=rem / step {
            cur[pos] = e;
            rec(degrees, pos + 1, rem - e * step, cur, out);
        }
        cur[pos] = 0;
    }
    rec(degrees, 0, d, &mut cur, &mut out);
    out.sort();
    out
}

/// Cache of generator powers, grown on demand.
pub(crate) struct PowerCache<'a> {
    gens: &'a [Polynomial],
    nvars: usize,
    powers: Vec<Vec<Polynomial>>,
}

impl<'a> PowerCache<'a> {
    pub(crate) fn new(gens: &'a [Polynomial], nvars: usize) -> Self {
        let powers = gens.iter().map(|_| vec![Polynomial::one(nvars)]).collect();
        PowerCache { gens, nvars, powers }
    }

    fn power(&mut self, i: usize, e: u32) -> Polynomial {
        while self.powers[i].len() <= e as usize {
            let next = self.powers[i].last().unwrap().mul(&self.gens[i]);
            self.powers[i].push(next);
        }
        self.powers[i][e as usize].clone()
    }

    pub(crate) fn product(&mut self, alpha: &Monomial) -> Polynomial {
        let mut acc = Polynomial::one(self.nvars);
        for (i, &e) in alpha.0.iter().enumerate() {
            if e > 0 {
                acc = acc.mul(&self.power(i, e));
            }
        }
        acc
    }
}

pub(crate) fn graded_vector(
    f: &Polynomial,
    index: &BTreeMap<Monomial, usize>,
) -> Vec<BigRational> {
    let mut v = vec![BigRational::zero(); index.len()];
    for (m, c) in f.terms() {
        let slot = index[m];
        v[slot] = c.clone();
    }
    v
}

pub(crate) fn monomial_index(nvars: usize, d: u32) -> (Vec<Monomial>, BTreeMap<Monomial, usize>) {
    let basis = monomials_of_degree(nvars, d);
    let index = basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    (basis, index)
}

/// Scale so the graded-lex leading coefficient is 1.
fn monic(f: &Polynomial) -> Polynomial {
    match f.leading() {
        Some((_, c)) => f.scale(&c.recip()),
        None => f.clone(),
    }
}

/// Homogeneous generators of the invariant ring, computed from the Reynolds
/// images of all monomials of degree at most |G|.
pub fn invariant_generators(g: &FiniteMatrixGroup) -> Result<GeneratorSystem, InvariantError> {
    let n = g.dim();
    let bound = g.order() as u32;
    let mut kept: Vec<Polynomial> = Vec::new();
    let mut degs: Vec<u32> = Vec::new();
    for d in 1..=bound {
        let (basis, index) = monomial_index(n, d);
        let mut solver = SpanSolver::new(basis.len());
        {
            let mut cache = PowerCache::new(&kept, n);
            for alpha in weighted_exponents(&degs, d) {
                let p = cache.product(&alpha);
                solver.add(graded_vector(&p, &index));
            }
        }
        for mono in basis {
            let cand = reynolds(&Polynomial::monomial(n, mono.0, BigRational::one()), g)?;
            if cand.is_zero() {
                continue;
            }
            let cand = monic(&cand);
            if solver.add(graded_vector(&cand, &index)) {
                kept.push(cand);
                degs.push(d);
            }
        }
    }
    Ok(GeneratorSystem { generators: kept, degrees: degs, group: g.clone() })
}

/// Write an invariant f as F(sigma_1, ..., sigma_p), solved exactly degree
/// by degree. Among the solutions of each underdetermined graded solve, the
/// one supported on the graded-lex-first independent products is returned,
/// with all later coefficients zero.
pub fn rewrite_invariant(
    f: &Polynomial,
    s: &GeneratorSystem,
) -> Result<Polynomial, InvariantError> {
    if f.nvars() != s.group().dim() {
        return Err(InvariantError::DimensionMismatch {
            expected: s.group().dim(),
            got: f.nvars(),
        });
    }
    if !is_invariant(f, s.group())? {
        return Err(InvariantError::NotInvariant);
    }
    let p = s.len();
    let mut result = Polynomial::zero(p);
    let mut cache = PowerCache::new(s.generators(), f.nvars());
    for (d, part) in f.homogeneous_components() {
        let (_, index) = monomial_index(f.nvars(), d);
        let mut solver = SpanSolver::new(index.len());
        let alphas = weighted_exponents(s.degrees(), d);
        for alpha in &alphas {
            let prod = cache.product(alpha);
            solver.add(graded_vector(&prod, &index));
        }
        let target = graded_vector(&part, &index);
        let coeffs = solver
            .express(&target)
            .ok_or(InvariantError::NotInAlgebra { degree: d })?;
        for (alpha, c) in alphas.into_iter().zip(coeffs) {
            if !c.is_zero() {
                result.add_term(alpha, c);
            }
        }
    }
    Ok(result)
}
