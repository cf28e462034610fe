use clap::Subcommand;
use serde_json::json;

use carleman::weights::{classify, inclusion_index, loss_condition, minimal_loss_sequence, WeightSequence};

use crate::report::Report;
use crate::CliError;

use super::{condition_line, status_verdict, Ctx};

#[derive(Subcommand)]
pub enum SeqCmd {
    /// Run the standard regularity conditions against one sequence.
    Classify {
        /// Sequence spec: constant | gevrey:<r> | logpow:<r> | qgevrey:<r> | table:[v0,v1,...]
        #[arg(long)]
        spec: String,
        /// Prefix length for the finite checks.
        #[arg(long, default_value_t = 200)]
        k_max: u64,
    },
    /// Decide whether the first class is contained in the second.
    Compare {
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(long, default_value_t = 200)]
        k_max: u64,
    },
    /// Check whether an m-fold stretch of the first class lands in the
    /// second, and name the minimal target that absorbs it.
    Loss {
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        /// Stretch factor m.
        #[arg(long, default_value_t = 2)]
        stretch: u64,
        #[arg(long, default_value_t = 200)]
        k_max: u64,
    },
}

pub fn run(cmd: &SeqCmd, ctx: &Ctx) -> Result<(Report, String), CliError> {
    match cmd {
        SeqCmd::Classify { spec, k_max } => {
            let seq = WeightSequence::parse_spec(spec)?;
            let table = classify(&seq, *k_max)?;
            let inputs = json!({"spec": spec, "k_max": k_max, "seed": ctx.seed});
            let outputs = serde_json::to_value(&table).expect("report serializes");
            let mut text = format!("sequence: {}\nprefix: k <= {}\n", table.sequence, table.prefix_k);
            for v in &table.conditions {
                text.push_str(&condition_line(v));
                text.push('\n');
            }
            Ok((Report::new("seq classify", inputs, outputs, None), text))
        }
        SeqCmd::Compare { from, to, k_max } => {
            let m = WeightSequence::parse_spec(from)?;
            let n = WeightSequence::parse_spec(to)?;
            let v = inclusion_index(&m, &n, *k_max)?;
            let inputs = json!({"from": from, "to": to, "k_max": k_max, "seed": ctx.seed});
            let outputs = serde_json::to_value(&v).expect("verdict serializes");
            let text = format!("{} -> {}\n{}\n", m, n, condition_line(&v));
            Ok((Report::new("seq compare", inputs, outputs, Some(status_verdict(v.status))), text))
        }
        SeqCmd::Loss { from, to, stretch, k_max } => {
            let m = WeightSequence::parse_spec(from)?;
            let n = WeightSequence::parse_spec(to)?;
            let v = loss_condition(&m, &n, *stretch, *k_max)?;
            let minimal = minimal_loss_sequence(&m, *stretch)?;
            let inputs =
                json!({"from": from, "to": to, "stretch": stretch, "k_max": k_max, "seed": ctx.seed});
            let outputs = json!({
                "condition": serde_json::to_value(&v).expect("verdict serializes"),
                "minimal_target": minimal.to_string(),
            });
            let text = format!(
                "{} stretched by {} -> {}\n{}\nminimal target: {}\n",
                m,
                stretch,
                n,
                condition_line(&v),
                minimal
            );
            Ok((Report::new("seq loss", inputs, outputs, Some(status_verdict(v.status))), text))
        }
    }
}
