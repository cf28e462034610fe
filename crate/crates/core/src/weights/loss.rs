//! Inclusion between classes and the loss-of-regularity calculus.
//!
//! The governing quantity is x_k = (M_{km} / N_k)^{1/k}: composition with an
//! m-fold stretch maps the class of M into the class of N exactly when
//! sup_k x_k is finite. For the symbolic families, ln x_k has one of four
//! growth shapes - bounded, log log k, log k, or linear in k - so finiteness
//! reduces to comparing (shape, coefficient) pairs lexicographically.

use super::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum GrowthShape {
    Bounded,
    LogLog,
    Log,
    Linear,
}

/// Shape and coefficient of ln x_k for the m-fold stretched sequence
/// k -> M_{km}. For the linear shape the coefficient stored is the
/// exact base q^{m^2} rather than its logarithm, so base comparisons
/// stay rational.
fn stretched_shape(m: &WeightSequence, stretch: u64) -> Option<(GrowthShape, BigRational)> {
    let sf = BigRational::from_integer(BigInt::from(stretch));
    match m.family() {
        Family::Constant => Some((GrowthShape::Bounded, BigRational::zero())),
        Family::LogPower(d) => Some((GrowthShape::LogLog, d * &sf)),
        Family::Gevrey(d) => Some((GrowthShape::Log, d * &sf)),
        Family::QGevrey(q) => {
            let e = (stretch * stretch).try_into().ok()?;
            Some((GrowthShape::Linear, poly::pow_rational(q, e)))
        }
        Family::Table(_) => None,
    }
}

/// Prefix evidence for sup_k (M_{km}/N_k)^{1/k}.
fn stretch_evidence(
    m: &WeightSequence,
    n: &WeightSequence,
    stretch: u64,
    k_max: u64,
) -> Result<(f64, u64, bool, u64), WeightError> {
    let mut end = k_max;
    if let Some(t) = m.max_index() {
        end = end.min(t / stretch);
    }
    if let Some(t) = n.max_index() {
        end = end.min(t);
    }
    let mut sup = f64::NEG_INFINITY;
    let mut argmax = 1u64;
    let mut last = f64::NEG_INFINITY;
    let mut tail_up = 0u64;
    for k in 1..=end {
        let v = (m.ln_f64(k * stretch)? - n.ln_f64(k)?) / k as f64;
        if v > sup {
            sup = v;
            argmax = k;
        }
        if v > last {
            tail_up += 1;
        } else {
            tail_up = 0;
        }
        last = v;
    }
    Ok((sup.exp(), argmax, end > 0 && tail_up >= 10.min(end), end))
}

fn stretch_condition(
    condition: &str,
    m: &WeightSequence,
    n: &WeightSequence,
    stretch: u64,
    k_max: u64,
) -> Result<ConditionVerdict, WeightError> {
    if stretch == 0 {
        return Err(WeightError::ParameterOutOfRange(
            "stretch factor must be at least 1".into(),
        ));
    }
    let (sup, argmax, tail_up, end) = stretch_evidence(m, n, stretch, k_max)?;
    let evidence = format!(
        "prefix sup of (M_(k*{stretch})/N_k)^(1/k) over k <= {end} is {sup:.6} at k={argmax}{}",
        if tail_up { "; the values still increase at the prefix end" } else { "" }
    );
    let (status, detail) = match (stretched_shape(m, stretch), stretched_shape(n, 1)) {
        (Some((sm, cm)), Some((sn, cn))) => {
            let holds = sm < sn || (sm == sn && cm <= cn);
            let shape_word = |s: GrowthShape| match s {
                GrowthShape::Bounded => "bounded",
                GrowthShape::LogLog => "log log k",
                GrowthShape::Log => "log k",
                GrowthShape::Linear => "linear in k",
            };
            let reason = if sm != sn {
                format!(
                    "ln x_k grows like {} for the stretched M but like {} for N",
                    shape_word(sm),
                    shape_word(sn)
                )
            } else {
                format!(
                    "both sides grow like {} and the coefficients compare as {} vs {}",
                    shape_word(sm),
                    poly::format_rational(&cm),
                    poly::format_rational(&cn)
                )
            };
            (
                if holds { VerdictStatus::Holds } else { VerdictStatus::Fails },
                format!("{reason}; {evidence}"),
            )
        }
        _ => (VerdictStatus::EvidenceOnly, evidence),
    };
    Ok(ConditionVerdict {
        condition: condition.into(),
        status,
        witness: Some(Witness::Index(argmax)),
        sup_estimate: Some(sup),
        prefix_k: end,
        detail,
    })
}

/// Does the class of M include into the class of N (sup (M_k/N_k)^{1/k} finite)?
pub fn inclusion_index(
    m: &WeightSequence,
    n: &WeightSequence,
    k_max: u64,
) -> Result<ConditionVerdict, WeightError> {
    stretch_condition("inclusion", m, n, 1, k_max)
}

/// Does composition with an m-fold stretch of M land in the class of N
/// (sup (M_{km}/N_k)^{1/k} finite)?
pub fn loss_condition(
    m: &WeightSequence,
    n: &WeightSequence,
    stretch: u64,
    k_max: u64,
) -> Result<ConditionVerdict, WeightError> {
    stretch_condition("loss", m, n, stretch, k_max)
}

/// The minimal target family that absorbs an m-fold stretch of M: the
/// sequence N_k = M_{km}, expressed inside the same family when possible.
pub fn minimal_loss_sequence(
    m: &WeightSequence,
    stretch: u64,
) -> Result<WeightSequence, WeightError> {
    if stretch == 0 {
        return Err(WeightError::ParameterOutOfRange(
            "stretch factor must be at least 1".into(),
        ));
    }
    let sf = BigRational::from_integer(BigInt::from(stretch));
    match m.family() {
        Family::Constant => Ok(WeightSequence::constant()),
        // (km)! <= m^{km} (k!)^m ... and (k!)^m <= (km)!, so k -> ((km)!)^delta
        // and k -> (k!)^{delta m} generate the same class
        Family::Gevrey(d) => WeightSequence::gevrey(d * &sf),
        Family::LogPower(d) => WeightSequence::log_power(d * &sf),
        Family::QGevrey(q) => {
            let e = (stretch * stretch).try_into().map_err(|_| {
                WeightError::ParameterOutOfRange("stretch factor too large".into())
            })?;
            WeightSequence::q_gevrey(poly::pow_rational(q, e))
        }
        Family::Table(v) => {
            let stride = stretch as usize;
            let vals: Vec<BigRational> = v.iter().step_by(stride).cloned().collect();
            WeightSequence::table(vals)
        }
    }
}
