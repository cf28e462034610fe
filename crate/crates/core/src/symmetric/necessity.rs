//! The derivative-blowup series behind the necessity of the ratio condition.
//!
//! With `rho_k = M_{kn+1}/M_{kn}` and `c_k = M_{kn} / (2^k rho_k^{kn})`, the
//! m-th derivative of the series at the origin is `sum_k c_k rho_k^{mn} m!`,
//! and the `k = m` term alone equals `m! M_{mn} / 2^m`. The report certifies
//! that inequality row by row with directed rounding, so a pass is a proof,
//! not a float coincidence.

use super::SymmetricError;
use crate::real::{default_precision, RealInterval};
use crate::weights::{is_log_convex, VerdictStatus, WeightSequence};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;

pub const DEFAULT_TRUNCATION: u64 = 40;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NecessityRow {
    pub m: u64,
    /// Certified lower endpoint of the truncated series.
    pub truncated_sum: f64,
    /// Certified upper endpoint of `m! M_{mn} / 2^m`.
    pub lower_bound: f64,
    pub ratio: f64,
    /// Directed-rounding comparison: the sum's lower endpoint dominates the
    /// bound's upper endpoint.
    pub certified: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NecessityReport {
    pub sequence: String,
    pub n: u64,
    pub m_max: u64,
    pub truncation: u64,
    pub rows: Vec<NecessityRow>,
}

impl NecessityReport {
    pub fn all_certified(&self) -> bool {
        self.rows.iter().all(|r| r.certified)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "necessity series for {} with n = {}, K = {}",
            self.sequence, self.n, self.truncation
        );
        let _ = writeln!(
            s,
            "{:>4}  {:>18}  {:>18}  {:>12}  {}",
            "m", "truncated_sum", "lower_bound", "ratio", "certified"
        );
        for r in &self.rows {
            let _ = writeln!(
                s,
                "{:>4}  {:>18.9e}  {:>18.9e}  {:>12.6}  {}",
                r.m, r.truncated_sum, r.lower_bound, r.ratio, r.certified
            );
        }
        s
    }
}

/// Evaluate the truncated series `sum_{k<=K} c_k rho_k^{mn} m!` against the
/// bound `m! M_{mn} / 2^m` for every `m <= m_max`, at 256-bit precision or
/// whatever higher precision is configured.
pub fn necessity_report(
    m_seq: &WeightSequence,
    n: u64,
    m_max: u64,
    truncation: u64,
) -> Result<NecessityReport, SymmetricError> {
    if n < 3 {
        return Err(SymmetricError::DimensionTooSmall { n: n as usize });
    }
    let top = truncation.max(m_max) * n + 1;
    if is_log_convex(m_seq, top + 1)?.status == VerdictStatus::Fails {
        return Err(SymmetricError::NotLogConvex);
    }
    let prec = default_precision().max(256);

    // M_{kn} and rho_k = M_{kn+1} / M_{kn} for every truncation index.
    let k_end = truncation;
    let mut m_kn = Vec::with_capacity(k_end as usize + 1);
    let mut rho = Vec::with_capacity(k_end as usize + 1);
    for k in 0..=k_end {
        let mk = m_seq.eval(k * n, prec)?.to_interval(prec);
        let mk1 = m_seq.eval(k * n + 1, prec)?.to_interval(prec);
        rho.push(mk1.div(&mk));
        m_kn.push(mk);
    }

    let mut rows = Vec::with_capacity(m_max as usize);
    for m in 1..=m_max {
        let m_fact = RealInterval::from_bigint(&crate::weights::factorial(m), prec);
        let mut sum = RealInterval::from_u64(0, prec);
        for k in 0..=k_end {
            // c_k rho_k^{mn} = M_{kn} rho_k^{(m-k)n} / 2^k
            let mut term = m_kn[k as usize].mul(&m_fact);
            if m >= k {
                term = term.mul(&rho[k as usize].powi((m - k) * n));
            } else {
                term = term.div(&rho[k as usize].powi((k - m) * n));
            }
            let two_k = RealInterval::from_bigint(&(BigInt::from(1) << k), prec);
            sum = sum.add(&term.div(&two_k));
        }
        let m_mn = m_seq.eval(m * n, prec)?.to_interval(prec);
        let two_m = RealInterval::from_bigint(&(BigInt::from(1) << m), prec);
        let bound = m_fact.mul(&m_mn).div(&two_m);

        let certified = bound.certainly_le(&sum);
        let sum_lo = sum.lower_f64();
        let bound_hi = bound.upper_f64();
        rows.push(NecessityRow {
            m,
            truncated_sum: sum_lo,
            lower_bound: bound_hi,
            ratio: sum_lo / bound_hi,
            certified,
        });
    }

    Ok(NecessityReport {
        sequence: m_seq.to_string(),
        n,
        m_max,
        truncation,
        rows,
    })
}
