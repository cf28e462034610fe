//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! Monomials are ordered graded-lexicographically (total degree first, then
//! lexicographic with `x1` most significant); that order is fixed globally
//! and used for leading terms, display, and every deterministic tie-break
//! in the higher modules.
//!
//! Key operations: ring arithmetic, substitution (`compose`,
//! `compose_linear`), exact division by a single divisor (`divide_exact`,
//! a complete divisibility test), partial derivatives, evaluation, and
//! homogeneous components. Text and JSON round trips are bit-exact.

mod linalg;
mod parse;

pub use linalg::{QMatrix, SpanSolver};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("variable count mismatch: {0} vs {1}")]
    ArityMismatch(usize, usize),
    #[error("not divisible: remainder has leading monomial {0}")]
    NotDivisible(String),
    #[error("division by zero polynomial")]
    DivisionByZero,
}

/// Exponent vector of one monomial; always as long as the ambient
/// variable count of the polynomial that owns it.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }
}

impl Ord for Monomial {
    // graded lex: total degree first, then lex with x1 most significant
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "PolyRepr", try_from = "PolyRepr")]
pub struct Polynomial {
    nvars: usize,
    // invariant: no zero coefficients stored
    terms: BTreeMap<Monomial, BigRational>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigRational::one())
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(Monomial(vec![0; nvars]), c);
        p
    }

    /// The variable `x{i+1}` (zero-based index) as a polynomial.
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index {i} out of range for {nvars} vars");
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        let mut p = Self::zero(nvars);
        p.add_term(Monomial(exps), BigRational::one());
        p
    }

    pub fn monomial(nvars: usize, exps: Vec<u32>, c: BigRational) -> Self {
        assert_eq!(exps.len(), nvars);
        let mut p = Self::zero(nvars);
        p.add_term(Monomial(exps), c);
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Total degree; 0 for the zero polynomial.
    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|m| m.degree());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Terms in graded-lex ascending order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn leading(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn coeff(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn constant_term(&self) -> BigRational {
        self.coeff(&Monomial(vec![0; self.nvars]))
    }

    pub fn add_term(&mut self, m: Monomial, c: BigRational) {
        assert_eq!(m.0.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn neg(&self) -> Self {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = Self::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn partial_derivative(&self, i: usize) -> Self {
        assert!(i < self.nvars);
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[i] = e - 1;
            out.add_term(Monomial(exps), c * BigRational::from_integer(BigInt::from(e)));
        }
        out
    }

    pub fn evaluate(&self, point: &[BigRational]) -> BigRational {
        assert_eq!(point.len(), self.nvars);
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t *= pow_rational(&point[i], e);
                }
            }
            acc += t;
        }
        acc
    }

    /// Substitute `subs[i]` for variable `i`. All substitutes must share a
    /// common variable count, which becomes the variable count of the result.
    pub fn compose(&self, subs: &[Polynomial]) -> Result<Self, PolyError> {
        if subs.len() != self.nvars {
            return Err(PolyError::ArityMismatch(subs.len(), self.nvars));
        }
        let target = match subs.first() {
            Some(p) => p.nvars,
            None => return Ok(Self::constant(0, self.constant_term())),
        };
        for s in subs {
            if s.nvars != target {
                return Err(PolyError::ArityMismatch(s.nvars, target));
            }
        }
        // cache powers of each substitute up to its maximal exponent
        let mut max_exp = vec![0u32; self.nvars];
        for m in self.terms.keys() {
            for (i, &e) in m.0.iter().enumerate() {
                max_exp[i] = max_exp[i].max(e);
            }
        }
        let mut powers: Vec<Vec<Polynomial>> = Vec::with_capacity(self.nvars);
        for (i, s) in subs.iter().enumerate() {
            let mut ps = vec![Polynomial::one(target)];
            for _ in 1..=max_exp[i] {
                ps.push(ps.last().unwrap().mul(s));
            }
            powers.push(ps);
        }
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = t.mul(&powers[i][e as usize]);
                }
            }
            out = out.add(&t);
        }
        Ok(out)
    }

    /// Substitute `x := A y`, i.e. variable `i` becomes the linear form
    /// `sum_j A[i][j] y_j`. The matrix must be square of size `nvars`.
    pub fn compose_linear(&self, a: &QMatrix) -> Self {
        assert_eq!(a.nrows(), self.nvars);
        let subs: Vec<Polynomial> = (0..self.nvars)
            .map(|i| {
                let mut p = Polynomial::zero(a.ncols());
                for j in 0..a.ncols() {
                    let mut exps = vec![0; a.ncols()];
                    exps[j] = 1;
                    p.add_term(Monomial(exps), a.get(i, j).clone());
                }
                p
            })
            .collect();
        self.compose(&subs).expect("arity checked")
    }

    /// Reinterpret in a ring with `new_nvars` variables, sending variable
    /// `i` to variable `map[i]`.
    pub fn map_vars(&self, new_nvars: usize, map: &[usize]) -> Self {
        assert_eq!(map.len(), self.nvars);
        assert!(map.iter().all(|&j| j < new_nvars));
        let mut out = Self::zero(new_nvars);
        for (m, c) in &self.terms {
            let mut exps = vec![0u32; new_nvars];
            for (i, &e) in m.0.iter().enumerate() {
                exps[map[i]] += e;
            }
            out.add_term(Monomial(exps), c.clone());
        }
        out
    }

    /// Exact quotient `self / g`. Multivariate long division by the single
    /// divisor `g`; any stuck or nonzero remainder step proves
    /// indivisibility, so the error is a certificate, not a heuristic.
    pub fn divide_exact(&self, g: &Self) -> Result<Self, PolyError> {
        assert_eq!(self.nvars, g.nvars);
        let (glm, glc) = g.leading().ok_or(PolyError::DivisionByZero)?;
        let glm = glm.clone();
        let glc = glc.clone();
        let mut r = self.clone();
        let mut q = Self::zero(self.nvars);
        while let Some((rlm, rlc)) = r.leading() {
            if !glm.divides(rlm) {
                return Err(PolyError::NotDivisible(format_monomial(rlm, "x")));
            }
            let m = rlm.div(&glm);
            let c = rlc / &glc;
            let t = Polynomial::monomial(self.nvars, m.0.clone(), c);
            q = q.add(&t);
            r = r.sub(&t.mul(g));
        }
        Ok(q)
    }

    /// Homogeneous components keyed by degree, ascending; zero components
    /// are absent.
    pub fn homogeneous_components(&self) -> BTreeMap<u32, Polynomial> {
        let mut out: BTreeMap<u32, Polynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.degree())
                .or_insert_with(|| Polynomial::zero(self.nvars))
                .add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn homogeneous_component(&self, d: u32) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            if m.degree() == d {
                out.add_term(m.clone(), c.clone());
            }
        }
        out
    }

    /// Parse the text grammar, e.g. `3/2*x1^2*x2 - x3`.
    pub fn parse(input: &str, nvars: usize) -> Result<Self, PolyError> {
        parse::parse_polynomial(input, nvars)
    }
}

pub fn pow_rational(x: &BigRational, e: u32) -> BigRational {
    let mut acc = BigRational::one();
    let mut base = x.clone();
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc *= &base;
        }
        e >>= 1;
        if e > 0 {
            base = base.clone() * &base;
        }
    }
    acc
}

/// All exponent vectors in `nvars` variables of total degree exactly `d`,
/// in graded-lex ascending order.
pub fn monomials_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; nvars];
    fill_monomials(nvars, d, 0, &mut cur, &mut out);
    out.sort();
    out
}

fn fill_monomials(nvars: usize, left: u32, i: usize, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
    if i + 1 == nvars {
        cur[i] = left;
        out.push(Monomial(cur.clone()));
        cur[i] = 0;
        return;
    }
    if nvars == 0 {
        if left == 0 {
            out.push(Monomial(vec![]));
        }
        return;
    }
    for e in 0..=left {
        cur[i] = e;
        fill_monomials(nvars, left - e, i + 1, cur, out);
    }
    cur[i] = 0;
}

/// A nonzero linear form `sum_i c_i x_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearForm {
    pub coeffs: Vec<BigRational>,
}

impl LinearForm {
    pub fn new(coeffs: Vec<BigRational>) -> Self {
        assert!(coeffs.iter().any(|c| !c.is_zero()), "linear form must be nonzero");
        LinearForm { coeffs }
    }

    /// The form `x_i - x_j`.
    pub fn difference(nvars: usize, i: usize, j: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); nvars];
        coeffs[i] = BigRational::one();
        coeffs[j] = -BigRational::one();
        LinearForm::new(coeffs)
    }

    pub fn to_polynomial(&self) -> Polynomial {
        let n = self.coeffs.len();
        let mut p = Polynomial::zero(n);
        for (i, c) in self.coeffs.iter().enumerate() {
            let mut exps = vec![0; n];
            exps[i] = 1;
            p.add_term(Monomial(exps), c.clone());
        }
        p
    }
}

// ---- display ----

pub(crate) fn format_rational(c: &BigRational) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

pub(crate) fn parse_rational(s: &str) -> Result<BigRational, PolyError> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = num
        .parse()
        .map_err(|_| PolyError::Parse(format!("bad rational numerator {num:?}")))?;
    let d: BigInt = den
        .parse()
        .map_err(|_| PolyError::Parse(format!("bad rational denominator {den:?}")))?;
    if d.is_zero() {
        return Err(PolyError::Parse("zero denominator".into()));
    }
    Ok(BigRational::new(n, d))
}

fn format_monomial(m: &Monomial, letter: &str) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.0.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(format!("{}{}", letter, i + 1)),
            _ => parts.push(format!("{}{}^{}", letter, i + 1, e)),
        }
    }
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

impl Polynomial {
    fn render(&self, f: &mut fmt::Formatter<'_>, letter: &str) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // leading (graded-lex greatest) term first
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { -c } else { c.clone() };
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mono = format_monomial(m, letter);
            if mono == "1" {
                write!(f, "{}", format_rational(&abs))?;
            } else if abs.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{}*{}", format_rational(&abs), mono)?;
            }
        }
        Ok(())
    }

    /// Same rendering as [`Display`](fmt::Display) with a different variable
    /// letter, for polynomials living in generator coordinates.
    pub fn display_with(&self, letter: &str) -> String {
        struct Lettered<'a>(&'a Polynomial, &'a str);
        impl fmt::Display for Lettered<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                self.0.render(f, self.1)
            }
        }
        Lettered(self, letter).to_string()
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.render(f, "x")
    }
}

// ---- serde representation: {"nvars": n, "terms": [{"coeff": "p/q", "exps": [...]}]} ----

#[derive(Serialize, Deserialize)]
struct TermRepr {
    coeff: String,
    exps: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct PolyRepr {
    nvars: usize,
    terms: Vec<TermRepr>,
}

impl From<Polynomial> for PolyRepr {
    fn from(p: Polynomial) -> Self {
        PolyRepr {
            nvars: p.nvars,
            // descending so the leading term comes first, as in Display
            terms: p
                .terms
                .iter()
                .rev()
                .map(|(m, c)| TermRepr { coeff: format_rational(c), exps: m.0.clone() })
                .collect(),
        }
    }
}

impl TryFrom<PolyRepr> for Polynomial {
    type Error = String;

    fn try_from(r: PolyRepr) -> Result<Self, String> {
        let mut p = Polynomial::zero(r.nvars);
        for t in r.terms {
            if t.exps.len() != r.nvars {
                return Err(format!("term arity {} != nvars {}", t.exps.len(), r.nvars));
            }
            let c = parse_rational(&t.coeff).map_err(|e| e.to_string())?;
            p.add_term(Monomial(t.exps), c);
        }
        Ok(p)
    }
}
