use clap::Subcommand;
use serde_json::json;

use carleman::invariant::{invariant_generators, reynolds, rewrite_invariant, weyl_section_check};

use crate::groups::parse_group;
use crate::report::Report;
use crate::CliError;

use super::{parse_poly, poly_strings, read_poly_source, Ctx};

#[derive(Subcommand)]
pub enum InvCmd {
    /// Print a generating system for the ring of invariants.
    Generators {
        /// Group spec: sign | s<n> | c4 | s2xs2 | trivial:<n> | <matrices.json>
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = 1024)]
        max_order: usize,
    },
    /// Rewrite an invariant polynomial as a polynomial in the generators.
    Rewrite {
        #[arg(long)]
        group: String,
        #[arg(long)]
        poly: Option<String>,
        #[arg(long)]
        poly_file: Option<String>,
        #[arg(long, default_value_t = 1024)]
        max_order: usize,
    },
    /// Average a polynomial over the group.
    Reynolds {
        #[arg(long)]
        group: String,
        #[arg(long)]
        poly: Option<String>,
        #[arg(long)]
        poly_file: Option<String>,
        #[arg(long, default_value_t = 1024)]
        max_order: usize,
    },
    /// Check restrict(lift(f)) = f on every averaged monomial up to a degree.
    WeylCheck {
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = 6)]
        max_degree: u32,
        #[arg(long, default_value_t = 1024)]
        max_order: usize,
    },
}

pub fn run(cmd: &InvCmd, ctx: &Ctx) -> Result<(Report, String), CliError> {
    match cmd {
        InvCmd::Generators { group, max_order } => {
            let g = parse_group(group, *max_order)?;
            let sys = invariant_generators(&g.group)?;
            let inputs = json!({"group": group, "max_order": max_order, "seed": ctx.seed});
            let outputs = json!({
                "dim": g.group.dim(),
                "order": g.group.order(),
                "generators": poly_strings(sys.generators()),
                "degrees": sys.degrees(),
            });
            let mut text = format!(
                "group: {} (order {}, dim {})\n",
                g.name,
                g.group.order(),
                g.group.dim()
            );
            for (i, p) in sys.generators().iter().enumerate() {
                text.push_str(&format!("s{} = {}\n", i + 1, p));
            }
            Ok((Report::new("inv generators", inputs, outputs, None), text))
        }
        InvCmd::Rewrite { group, poly, poly_file, max_order } => {
            let g = parse_group(group, *max_order)?;
            let source = read_poly_source(poly.as_deref(), poly_file.as_deref())?;
            let f = parse_poly(&source, g.group.dim())?;
            let sys = invariant_generators(&g.group)?;
            let h = rewrite_invariant(&f, &sys)?;
            let back = h.compose(sys.generators())?;
            if back != f {
                return Err(CliError::domain("substitution does not reproduce the input"));
            }
            let inputs = json!({"group": group, "poly": source, "max_order": max_order, "seed": ctx.seed});
            let outputs = json!({
                "generators": poly_strings(sys.generators()),
                "rewritten": h.display_with("s"),
                "round_trip": true,
            });
            let mut text = String::new();
            for (i, p) in sys.generators().iter().enumerate() {
                text.push_str(&format!("s{} = {}\n", i + 1, p));
            }
            text.push_str(&format!("f = {}\nf = {}\nround trip: exact\n", f, h.display_with("s")));
            Ok((Report::new("inv rewrite", inputs, outputs, None), text))
        }
        InvCmd::Reynolds { group, poly, poly_file, max_order } => {
            let g = parse_group(group, *max_order)?;
            let source = read_poly_source(poly.as_deref(), poly_file.as_deref())?;
            let f = parse_poly(&source, g.group.dim())?;
            let avg = reynolds(&f, &g.group)?;
            let inputs = json!({"group": group, "poly": source, "max_order": max_order, "seed": ctx.seed});
            let outputs = json!({"average": avg.to_string()});
            let text = format!("average = {avg}\n");
            Ok((Report::new("inv reynolds", inputs, outputs, None), text))
        }
        InvCmd::WeylCheck { group, max_degree, max_order } => {
            let g = parse_group(group, *max_order)?;
            let check = weyl_section_check(&g.group, *max_degree)?;
            let verdict = if check.pass() { "PASS" } else { "FAIL" };
            let inputs = json!({"group": group, "max_degree": max_degree, "max_order": max_order, "seed": ctx.seed});
            let outputs = serde_json::to_value(&check).expect("check serializes");
            let text = format!(
                "group: {} (order {}, dim {})\naverages checked through degree {}: {}\nfailures: {}\n",
                g.name, check.order, check.dim, check.max_degree, check.checked, check.failures
            );
            Ok((Report::new("inv weyl-check", inputs, outputs, Some(verdict)), text))
        }
    }
}
