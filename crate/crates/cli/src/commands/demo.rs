use clap::Subcommand;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde_json::json;

use carleman::invariant::{invariant_generators, FiniteMatrixGroup};
use carleman::poly::Polynomial;
use carleman::weights::{loss_condition, minimal_loss_sequence, VerdictStatus, WeightSequence};

use crate::groups::parse_rational;
use crate::report::Report;
use crate::CliError;

use super::{condition_line, Ctx};

#[derive(Subcommand)]
pub enum DemoCmd {
    /// Rewrite an invariant through the symmetric generators on the plane
    /// and show exactly how much Gevrey regularity the rewrite costs.
    GevreyLoss {
        /// Gevrey index of the invariant function, a positive rational.
        #[arg(long, default_value = "1")]
        delta: String,
        #[arg(long, default_value_t = 200)]
        k_max: u64,
    },
}

pub fn run(cmd: &DemoCmd, ctx: &Ctx) -> Result<(Report, String), CliError> {
    let DemoCmd::GevreyLoss { delta, k_max } = cmd;
    let d = parse_rational(delta)?;
    if d <= BigRational::zero() {
        return Err(CliError::usage("--delta must be positive"));
    }

    let group = FiniteMatrixGroup::symmetric(2);
    let sigma = invariant_generators(&group)?;
    let stretch = *sigma.degrees().iter().max().expect("nonempty system") as u64;

    let f = Polynomial::parse("x1^3 + x2^3", 2)?;
    let h = carleman::invariant::rewrite_invariant(&f, &sigma)?;
    if h.compose(sigma.generators())? != f {
        return Err(CliError::domain("substitution does not reproduce the sample"));
    }

    let m_seq = WeightSequence::gevrey(d.clone())?;
    let at = &d * BigRational::from_integer(BigInt::from(stretch));
    let margin = BigRational::new(BigInt::from(1), BigInt::from(4));
    let below = &at - &margin;
    if below <= BigRational::zero() {
        return Err(CliError::usage("--delta is too small to leave room under the stretched index"));
    }
    let n_at = WeightSequence::gevrey(at)?;
    let n_below = WeightSequence::gevrey(below)?;

    let holds = loss_condition(&m_seq, &n_at, stretch, *k_max)?;
    let fails = loss_condition(&m_seq, &n_below, stretch, *k_max)?;
    let minimal = minimal_loss_sequence(&m_seq, stretch)?;

    let as_expected =
        holds.status == VerdictStatus::Holds && fails.status == VerdictStatus::Fails;
    let verdict = if as_expected { "PASS" } else { "FAIL" };

    let inputs = json!({"delta": delta, "k_max": k_max, "seed": ctx.seed});
    let outputs = json!({
        "group": "s2",
        "sigma": sigma.generators().iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        "sample": {"poly": f.to_string(), "rewritten": h.display_with("s")},
        "stretch": stretch,
        "at_stretched_index": {
            "target": n_at.to_string(),
            "condition": serde_json::to_value(&holds).expect("verdict serializes"),
        },
        "below_stretched_index": {
            "target": n_below.to_string(),
            "condition": serde_json::to_value(&fails).expect("verdict serializes"),
        },
        "minimal_target": minimal.to_string(),
    });

    let mut text = format!("group: s2 acting on 2 variables\n");
    for (i, p) in sigma.generators().iter().enumerate() {
        text.push_str(&format!("s{} = {}\n", i + 1, p));
    }
    text.push_str(&format!("f = {}\nf = {}   (round trip exact)\n", f, h.display_with("s")));
    text.push_str(&format!(
        "generator degrees reach {stretch}, so rewriting a {m_seq} function stretches its weights {stretch}-fold\n"
    ));
    text.push_str(&format!("into {}: {}\n", n_at, condition_line(&holds)));
    text.push_str(&format!("into {}: {}\n", n_below, condition_line(&fails)));
    text.push_str(&format!("minimal absorbing target: {minimal}\n"));

    Ok((Report::new("demo gevrey-loss", inputs, outputs, Some(verdict)), text))
}
