//! Weight sequences M = (M_k) normalized to M_0 = 1, nondecreasing, and the
//! regularity conditions that control which ultradifferentiable class they
//! define: logarithmic convexity, derivation closure, (non)quasianalyticity,
//! strong nonquasianalyticity, and moderate growth.
//!
//! Verdicts for the symbolic families are decided analytically from closed
//! forms; every verdict also carries finite-prefix numerical evidence
//! (a prefix sup with its argmax, or partial sums). Finite tables can never
//! certify an asymptotic condition, so table inputs yield `EvidenceOnly`
//! unless the prefix already refutes the condition outright.

mod conditions;
mod loss;

pub use conditions::{
    classify, is_derivation_closed, is_log_convex, is_quasianalytic,
    is_strongly_nonquasianalytic, is_strongly_regular, has_moderate_growth, ClassificationReport,
};
pub use loss::{inclusion_index, loss_condition, minimal_loss_sequence};

use crate::poly::{self};
use crate::real::RealInterval;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use std::fmt;

pub const DEFAULT_PREFIX_K: u64 = 200;
pub const DEFAULT_SERIES_K: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WeightError {
    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),
    #[error("table not normalized: first entry must be exactly 1")]
    TableNotNormalized,
    #[error("table too short: index {index} requested, length {len}")]
    InsufficientTable { index: u64, len: usize },
    #[error("precision exhausted while {context}; raise CARLEMAN_PRECISION_BITS")]
    PrecisionExhausted { context: String },
    #[error("parse error: {0}")]
    Parse(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    /// M_k = 1 (the real-analytic class).
    Constant,
    /// M_k = (k!)^delta, delta > 0.
    Gevrey(BigRational),
    /// M_k = (log(k+e))^(delta*k), delta > 0.
    LogPower(BigRational),
    /// M_k = q^(k^2), q > 1.
    QGevrey(BigRational),
    /// Finite explicit prefix.
    Table(Vec<BigRational>),
}

/// A weight sequence: M_0 = 1 and M_{k+1} >= M_k, verified exactly on any
/// queried prefix (construction validates tables; the symbolic families
/// satisfy it identically).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightSequence {
    family: Family,
}

/// One evaluated term: exact rational when the value is rational, otherwise
/// a certified enclosure.
#[derive(Debug, Clone)]
pub enum Mk {
    Exact(BigRational),
    Certified(RealInterval),
}

impl Mk {
    pub fn to_interval(&self, prec: usize) -> RealInterval {
        match self {
            Mk::Exact(r) => RealInterval::from_rational(r, prec),
            Mk::Certified(i) => i.clone(),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Mk::Exact(r) => rational_to_f64(r),
            Mk::Certified(i) => i.to_f64(),
        }
    }
}

pub(crate) fn rational_to_f64(r: &BigRational) -> f64 {
    // exact-to-nearest via interval midpoint keeps huge values finite-safe
    RealInterval::from_rational(r, 64).to_f64()
}

impl WeightSequence {
    pub fn constant() -> Self {
        WeightSequence { family: Family::Constant }
    }

    pub fn gevrey(delta: BigRational) -> Result<Self, WeightError> {
        if !delta.is_positive() {
            return Err(WeightError::ParameterOutOfRange(format!(
                "gevrey index must be positive, got {}",
                poly::format_rational(&delta)
            )));
        }
        Ok(WeightSequence { family: Family::Gevrey(delta) })
    }

    pub fn log_power(delta: BigRational) -> Result<Self, WeightError> {
        if !delta.is_positive() {
            return Err(WeightError::ParameterOutOfRange(format!(
                "log-power index must be positive, got {}",
                poly::format_rational(&delta)
            )));
        }
        Ok(WeightSequence { family: Family::LogPower(delta) })
    }

    pub fn q_gevrey(q: BigRational) -> Result<Self, WeightError> {
        if q <= BigRational::one() {
            return Err(WeightError::ParameterOutOfRange(format!(
                "q-gevrey base must exceed 1, got {}",
                poly::format_rational(&q)
            )));
        }
        Ok(WeightSequence { family: Family::QGevrey(q) })
    }

    pub fn table(values: Vec<BigRational>) -> Result<Self, WeightError> {
        if values.is_empty() || !values[0].is_one() {
            return Err(WeightError::TableNotNormalized);
        }
        for (k, v) in values.iter().enumerate() {
            if !v.is_positive() {
                return Err(WeightError::ParameterOutOfRange(format!(
                    "table entry {k} is not positive"
                )));
            }
        }
        for k in 0..values.len() - 1 {
            if values[k + 1] < values[k] {
                return Err(WeightError::ParameterOutOfRange(format!(
                    "table decreases at index {}",
                    k + 1
                )));
            }
        }
        Ok(WeightSequence { family: Family::Table(values) })
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn is_table(&self) -> bool {
        matches!(self.family, Family::Table(_))
    }

    /// Largest index with a defined value; `None` for the symbolic families.
    pub fn max_index(&self) -> Option<u64> {
        match &self.family {
            Family::Table(v) => Some(v.len() as u64 - 1),
            _ => None,
        }
    }

    /// M_k, exact when the value is rational.
    pub fn eval(&self, k: u64, prec: usize) -> Result<Mk, WeightError> {
        match &self.family {
            Family::Constant => Ok(Mk::Exact(BigRational::one())),
            Family::Gevrey(delta) => {
                let f = factorial(k);
                if delta.denom().is_one() {
                    let e: u64 = delta.numer().try_into().map_err(|_| {
                        WeightError::ParameterOutOfRange("gevrey index too large".into())
                    })?;
                    Ok(Mk::Exact(BigRational::from_integer(pow_bigint(&f, e))))
                } else if k <= 1 {
                    Ok(Mk::Exact(BigRational::one()))
                } else {
                    let base = RealInterval::from_bigint(&f, prec);
                    Ok(Mk::Certified(base.pow_rational(delta, prec)))
                }
            }
            Family::LogPower(delta) => {
                if k == 0 {
                    return Ok(Mk::Exact(BigRational::one()));
                }
                let base = RealInterval::from_u64(k, prec).add(&RealInterval::euler(prec));
                let exponent = delta * BigRational::from_integer(BigInt::from(k));
                Ok(Mk::Certified(base.ln().pow_rational(&exponent, prec)))
            }
            Family::QGevrey(q) => Ok(Mk::Exact(poly::pow_rational(
                q,
                (k * k).try_into().map_err(|_| {
                    WeightError::ParameterOutOfRange("q-gevrey index out of range".into())
                })?,
            ))),
            Family::Table(v) => v
                .get(k as usize)
                .cloned()
                .map(Mk::Exact)
                .ok_or(WeightError::InsufficientTable { index: k, len: v.len() }),
        }
    }

    /// ln M_k as f64, for evidence displays; exactness is not promised.
    pub fn ln_f64(&self, k: u64) -> Result<f64, WeightError> {
        match &self.family {
            Family::Constant => Ok(0.0),
            Family::Gevrey(delta) => Ok(rational_to_f64(delta) * ln_factorial_f64(k)),
            Family::LogPower(delta) => {
                if k == 0 {
                    return Ok(0.0);
                }
                let l = (k as f64 + std::f64::consts::E).ln().ln();
                Ok(rational_to_f64(delta) * k as f64 * l)
            }
            Family::QGevrey(q) => Ok((k as f64) * (k as f64) * rational_to_f64(q).ln()),
            Family::Table(v) => match v.get(k as usize) {
                Some(x) => Ok(rational_to_f64(x).ln()),
                None => Err(WeightError::InsufficientTable { index: k, len: v.len() }),
            },
        }
    }

    /// Parse the sequence grammar:
    /// `constant | gevrey:<r> | logpow:<r> | qgevrey:<r> | table:[v0,v1,...]`
    /// with `<r>` a rational like `1/2`.
    pub fn parse_spec(s: &str) -> Result<Self, WeightError> {
        let s = s.trim();
        if s == "constant" {
            return Ok(Self::constant());
        }
        let (name, arg) = s
            .split_once(':')
            .ok_or_else(|| WeightError::Parse(format!("bad sequence spec {s:?}")))?;
        let parse_r = |t: &str| {
            poly::parse_rational(t).map_err(|_| WeightError::Parse(format!("bad rational {t:?}")))
        };
        match name.trim() {
            "gevrey" => Self::gevrey(parse_r(arg)?),
            "logpow" => Self::log_power(parse_r(arg)?),
            "qgevrey" => Self::q_gevrey(parse_r(arg)?),
            "table" => {
                let body = arg.trim();
                let inner = body
                    .strip_prefix('[')
                    .and_then(|b| b.strip_suffix(']'))
                    .ok_or_else(|| WeightError::Parse("table wants [v0,v1,...]".into()))?;
                let vals = inner
                    .split(',')
                    .filter(|t| !t.trim().is_empty())
                    .map(|t| parse_r(t.trim()))
                    .collect::<Result<Vec<_>, _>>()?;
                Self::table(vals)
            }
            other => Err(WeightError::Parse(format!("unknown sequence family {other:?}"))),
        }
    }
}

impl fmt::Display for WeightSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.family {
            Family::Constant => write!(f, "constant"),
            Family::Gevrey(d) => write!(f, "gevrey:{}", poly::format_rational(d)),
            Family::LogPower(d) => write!(f, "logpow:{}", poly::format_rational(d)),
            Family::QGevrey(q) => write!(f, "qgevrey:{}", poly::format_rational(q)),
            Family::Table(v) => {
                write!(f, "table:[")?;
                for (i, x) in v.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{}", poly::format_rational(x))?;
                }
                write!(f, "]")
            }
        }
    }
}

pub(crate) fn factorial(k: u64) -> BigInt {
    let mut acc = BigInt::one();
    for j in 2..=k {
        acc *= BigInt::from(j);
    }
    acc
}

pub(crate) fn pow_bigint(n: &BigInt, e: u64) -> BigInt {
    let mut acc = BigInt::one();
    let mut base = n.clone();
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc *= &base;
        }
        e >>= 1;
        if e > 0 {
            base = base.clone() * base.clone();
        }
    }
    acc
}

pub(crate) fn ln_factorial_f64(k: u64) -> f64 {
    // direct summation; callers needing many consecutive values keep
    // their own running sum instead
    (2..=k).map(|j| (j as f64).ln()).sum()
}

// ---- verdicts ----

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum VerdictStatus {
    Holds,
    Fails,
    EvidenceOnly,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Witness {
    Index(u64),
    Pair([u64; 2]),
}

/// Outcome of one condition check: the analytic verdict, a witness index
/// where meaningful, a numerical estimate of the governing sup, and prose
/// detail explaining what was computed.
#[derive(Debug, Clone, Serialize)]
pub struct ConditionVerdict {
    pub condition: String,
    pub status: VerdictStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sup_estimate: Option<f64>,
    pub prefix_k: u64,
    pub detail: String,
}

impl ConditionVerdict {
    pub fn holds(&self) -> bool {
        self.status == VerdictStatus::Holds
    }
}
