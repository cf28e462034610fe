//! The regular-representation embedding: V sits inside E = R^{mn} via
//! v -> (g_1 v, ..., g_m v), and an invariant function of v extends to a
//! block-symmetric function on E by averaging the per-block pullbacks.
//! Composing the lift with the embedding recovers the original invariant,
//! so the lift is a section of the restriction.

use super::*;

#[derive(Debug, Clone)]
pub struct WeylEmbedding {
    group: FiniteMatrixGroup,
    l: QMatrix,
}

impl WeylEmbedding {
    pub fn group(&self) -> &FiniteMatrixGroup {
        &self.group
    }

    /// The mn x n embedding matrix; block i is the i-th group element.
    pub fn matrix(&self) -> &QMatrix {
        &self.l
    }

    pub fn ambient_dim(&self) -> usize {
        self.group.order() * self.group.dim()
    }

    /// The lift J(f): the average over blocks of f read off block i's
    /// coordinates. Defined for every polynomial; it is a section only on
    /// invariants.
    pub fn lift(&self, f: &Polynomial) -> Result<Polynomial, InvariantError> {
        let n = self.group.dim();
        let m = self.group.order();
        if f.nvars() != n {
            return Err(InvariantError::DimensionMismatch { expected: n, got: f.nvars() });
        }
        let mut acc = Polynomial::zero(m * n);
        for block in 0..m {
            let map: Vec<usize> = (0..n).map(|j| block * n + j).collect();
            acc = acc.add(&f.map_vars(m * n, &map));
        }
        Ok(acc.scale(&BigRational::from_integer(BigInt::from(m as i64)).recip()))
    }

    /// Restriction along the embedding: a polynomial on E pulled back to V.
    pub fn restrict(&self, h: &Polynomial) -> Result<Polynomial, InvariantError> {
        if h.nvars() != self.ambient_dim() {
            return Err(InvariantError::DimensionMismatch {
                expected: self.ambient_dim(),
                got: h.nvars(),
            });
        }
        Ok(h.compose_linear(&self.l))
    }

    /// The block permutation induced by right translation with element k:
    /// entry i is the index of g_i g_k. Conjugating the block action by
    /// these permutations realizes the group inside S_m.
    pub fn block_permutation(&self, k: usize) -> Vec<usize> {
        let gk = self.group.element(k);
        self.group
            .elements()
            .iter()
            .map(|gi| {
                self.group
                    .index_of(&gi.matmul(gk))
                    .expect("group is closed under multiplication")
            })
            .collect()
    }
}

/// Result of sweeping the section identity restrict(lift(f)) = f over all
/// Reynolds monomial averages up to a degree. The identity is linear in f
/// and the averages span the invariants degree by degree, so a clean sweep
/// proves it on every invariant of those degrees.
#[derive(Debug, Clone, serde::Serialize)]
pub struct SectionCheck {
    pub dim: usize,
    pub order: usize,
    pub max_degree: u32,
    pub checked: usize,
    pub failures: usize,
}

impl SectionCheck {
    pub fn pass(&self) -> bool {
        self.failures == 0
    }
}

pub fn weyl_section_check(
    g: &FiniteMatrixGroup,
    max_degree: u32,
) -> Result<SectionCheck, InvariantError> {
    let emb = weyl_embedding(g);
    let n = g.dim();
    let mut checked = 0;
    let mut failures = 0;
    for d in 0..=max_degree {
        for mono in crate::poly::monomials_of_degree(n, d) {
            let f = reynolds(&Polynomial::monomial(n, mono.0, BigRational::one()), g)?;
            if f.is_zero() {
                continue;
            }
            checked += 1;
            if emb.restrict(&emb.lift(&f)?)? != f {
                failures += 1;
            }
        }
    }
    Ok(SectionCheck { dim: n, order: g.order(), max_degree, checked, failures })
}

/// Build the embedding for a group, blocks ordered by the group's canonical
/// element order.
pub fn weyl_embedding(g: &FiniteMatrixGroup) -> WeylEmbedding {
    let n = g.dim();
    let m = g.order();
    let mut l = QMatrix::zeros(m * n, n);
    for (bi, e) in g.elements().iter().enumerate() {
        for i in 0..n {
            for j in 0..n {
                l.set(bi * n + i, j, e.get(i, j).clone());
            }
        }
    }
    WeylEmbedding { group: g.clone(), l }
}
