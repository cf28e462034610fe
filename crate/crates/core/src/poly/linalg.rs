//! Dense exact-rational matrices and an incremental span/solve helper.
//!
//! `SpanSolver` is the workhorse behind every deterministic "greedy keep if
//! independent, then express in the kept set" computation: it maintains a
//! reduced row basis together with the combination of each row over the
//! vectors added so far, so membership tests double as exact solvers.

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "Vec<Vec<String>>", try_from = "Vec<Vec<String>>")]
pub struct QMatrix {
    nrows: usize,
    ncols: usize,
    data: Vec<BigRational>, // row major
}

impl QMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        QMatrix { nrows, ncols, data: vec![BigRational::zero(); nrows * ncols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigRational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == ncols));
        QMatrix { nrows, ncols, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| crate::qi(v)).collect())
                .collect(),
        )
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i * self.ncols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigRational) {
        self.data[i * self.ncols + j] = v;
    }

    pub fn matmul(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.ncols, other.nrows);
        let mut out = QMatrix::zeros(self.nrows, other.ncols);
        for i in 0..self.nrows {
            for k in 0..self.ncols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.ncols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let cur = out.get(i, j) + a * b;
                        out.set(i, j, cur);
                    }
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> QMatrix {
        let mut out = QMatrix::zeros(self.ncols, self.nrows);
        for i in 0..self.nrows {
            for j in 0..self.ncols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigRational]) -> Vec<BigRational> {
        assert_eq!(v.len(), self.ncols);
        (0..self.nrows)
            .map(|i| (0..self.ncols).map(|j| self.get(i, j) * &v[j]).sum())
            .collect()
    }

    pub fn is_identity(&self) -> bool {
        self.nrows == self.ncols && *self == QMatrix::identity(self.nrows)
    }

    pub fn is_diagonal(&self) -> bool {
        self.nrows == self.ncols
            && (0..self.nrows)
                .all(|i| (0..self.ncols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    /// True when the matrix is a 0/1 permutation matrix.
    pub fn is_permutation(&self) -> bool {
        if self.nrows != self.ncols {
            return false;
        }
        let one = BigRational::one();
        for i in 0..self.nrows {
            let mut ones = 0;
            for j in 0..self.ncols {
                let v = self.get(i, j);
                if *v == one {
                    ones += 1;
                } else if !v.is_zero() {
                    return false;
                }
            }
            if ones != 1 {
                return false;
            }
        }
        for j in 0..self.ncols {
            let count = (0..self.nrows).filter(|&i| !self.get(i, j).is_zero()).count();
            if count != 1 {
                return false;
            }
        }
        true
    }

    /// Exact determinant by fraction Gaussian elimination.
    pub fn det(&self) -> BigRational {
        assert_eq!(self.nrows, self.ncols);
        let n = self.nrows;
        let mut m = self.clone();
        let mut det = BigRational::one();
        for col in 0..n {
            let pivot = match (col..n).find(|&r| !m.get(r, col).is_zero()) {
                Some(p) => p,
                None => return BigRational::zero(),
            };
            if pivot != col {
                for j in 0..n {
                    let a = m.get(pivot, j).clone();
                    let b = m.get(col, j).clone();
                    m.set(pivot, j, b);
                    m.set(col, j, a);
                }
                det = -det;
            }
            let p = m.get(col, col).clone();
            det *= &p;
            for r in col + 1..n {
                let f = m.get(r, col) / &p;
                if f.is_zero() {
                    continue;
                }
                for j in col..n {
                    let v = m.get(r, j) - &f * m.get(col, j);
                    m.set(r, j, v);
                }
            }
        }
        det
    }

    pub fn row(&self, i: usize) -> &[BigRational] {
        &self.data[i * self.ncols..(i + 1) * self.ncols]
    }

    /// Exact inverse by Gauss-Jordan elimination; `None` when singular.
    pub fn inverse(&self) -> Option<QMatrix> {
        assert_eq!(self.nrows, self.ncols);
        let n = self.nrows;
        let mut m = self.clone();
        let mut inv = QMatrix::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !m.get(r, col).is_zero())?;
            if pivot != col {
                for j in 0..n {
                    let (a, b) = (m.get(pivot, j).clone(), m.get(col, j).clone());
                    m.set(pivot, j, b);
                    m.set(col, j, a);
                    let (a, b) = (inv.get(pivot, j).clone(), inv.get(col, j).clone());
                    inv.set(pivot, j, b);
                    inv.set(col, j, a);
                }
            }
            let p = m.get(col, col).clone();
            for j in 0..n {
                let v = m.get(col, j) / &p;
                m.set(col, j, v);
                let v = inv.get(col, j) / &p;
                inv.set(col, j, v);
            }
            for r in 0..n {
                if r == col || m.get(r, col).is_zero() {
                    continue;
                }
                let f = m.get(r, col).clone();
                for j in 0..n {
                    let v = m.get(r, j) - &f * m.get(col, j);
                    m.set(r, j, v);
                    let v = inv.get(r, j) - &f * inv.get(col, j);
                    inv.set(r, j, v);
                }
            }
        }
        Some(inv)
    }
}

impl From<QMatrix> for Vec<Vec<String>> {
    fn from(m: QMatrix) -> Self {
        (0..m.nrows)
            .map(|i| m.row(i).iter().map(super::format_rational).collect())
            .collect()
    }
}

impl TryFrom<Vec<Vec<String>>> for QMatrix {
    type Error = String;

    fn try_from(rows: Vec<Vec<String>>) -> Result<Self, String> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(nrows * ncols);
        for r in &rows {
            if r.len() != ncols {
                return Err("ragged matrix".into());
            }
            for s in r {
                data.push(super::parse_rational(s).map_err(|e| e.to_string())?);
            }
        }
        Ok(QMatrix { nrows, ncols, data })
    }
}

/// Incremental exact row reduction with combination tracking.
///
/// Vectors are added in a caller-chosen order; `add` reports whether the
/// vector enlarged the span, and `express` writes a target as a combination
/// of the added vectors. Dependent vectors never acquire a pivot, so the
/// combination returned by `express` is always supported on the greedily
/// kept independent subset - the earliest candidates win, which is what
/// makes rewriting results canonical.
pub struct SpanSolver {
    dim: usize,
    n_added: usize,
    // rows kept reduced: (vector with pivot normalized to 1, combination over added vectors)
    rows: Vec<(Vec<BigRational>, Vec<BigRational>)>,
    pivots: Vec<usize>,
}

impl SpanSolver {
    pub fn new(dim: usize) -> Self {
        SpanSolver { dim, n_added: 0, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn n_added(&self) -> usize {
        self.n_added
    }

    fn reduce(&self, v: &mut Vec<BigRational>, combo: &mut Vec<BigRational>) {
        for (row_idx, (u, uc)) in self.rows.iter().enumerate() {
            let p = self.pivots[row_idx];
            let c = v[p].clone();
            if c.is_zero() {
                continue;
            }
            for j in 0..self.dim {
                if !u[j].is_zero() {
                    let nv = &v[j] - &c * &u[j];
                    v[j] = nv;
                }
            }
            for (j, ucj) in uc.iter().enumerate() {
                if !ucj.is_zero() {
                    let nc = &combo[j] - &c * ucj;
                    combo[j] = nc;
                }
            }
        }
    }

    /// Add a vector to the span; returns true when it was independent.
    pub fn add(&mut self, v: Vec<BigRational>) -> bool {
        assert_eq!(v.len(), self.dim);
        let idx = self.n_added;
        self.n_added += 1;
        let mut v = v;
        let mut combo = vec![BigRational::zero(); idx + 1];
        combo[idx] = BigRational::one();
        for (_, uc) in self.rows.iter_mut() {
            uc.resize(idx + 1, BigRational::zero());
        }
        self.reduce(&mut v, &mut combo);
        let pivot = match v.iter().position(|x| !x.is_zero()) {
            Some(p) => p,
            None => return false,
        };
        let pv = v[pivot].clone();
        for x in v.iter_mut() {
            *x /= &pv;
        }
        for c in combo.iter_mut() {
            *c /= &pv;
        }
        // back-eliminate to keep rows fully reduced
        for (row_idx, (u, uc)) in self.rows.iter_mut().enumerate() {
            let _ = row_idx;
            let c = u[pivot].clone();
            if c.is_zero() {
                continue;
            }
            for j in 0..self.dim {
                if !v[j].is_zero() {
                    let nu = &u[j] - &c * &v[j];
                    u[j] = nu;
                }
            }
            for (j, cj) in combo.iter().enumerate() {
                if !cj.is_zero() {
                    let nc = &uc[j] - &c * cj;
                    uc[j] = nc;
                }
            }
        }
        self.rows.push((v, combo));
        self.pivots.push(pivot);
        true
    }

    /// Express `b` as a combination of the added vectors; `None` when `b`
    /// is outside the span. The combination vector has one entry per added
    /// vector, with zeros on all dependent ones.
    pub fn express(&self, b: &[BigRational]) -> Option<Vec<BigRational>> {
        assert_eq!(b.len(), self.dim);
        let mut v = b.to_vec();
        let mut combo = vec![BigRational::zero(); self.n_added];
        for (row_idx, (u, uc)) in self.rows.iter().enumerate() {
            let p = self.pivots[row_idx];
            let c = v[p].clone();
            if c.is_zero() {
                continue;
            }
            for j in 0..self.dim {
                if !u[j].is_zero() {
                    let nv = &v[j] - &c * &u[j];
                    v[j] = nv;
                }
            }
            for (j, ucj) in uc.iter().enumerate() {
                if !ucj.is_zero() {
                    let nc = &combo[j] + &c * ucj;
                    combo[j] = nc;
                }
            }
        }
        if v.iter().all(|x| x.is_zero()) {
            Some(combo)
        } else {
            None
        }
    }

    /// Membership without coefficient recovery.
    pub fn contains(&self, b: &[BigRational]) -> bool {
        self.express(b).is_some()
    }
}
