use clap::Subcommand;
use serde_json::json;

use carleman::coinvariant::{
    artin_basis_capped, cramer_decompose, delta_divisibility_check, invariant_decompose,
    subgroup_basis,
};
use carleman::poly::Polynomial;

use crate::groups::{parse_blocks, parse_group};
use crate::report::Report;
use crate::CliError;

use super::{parse_poly, poly_strings, read_poly_source, Ctx};

#[derive(Subcommand)]
pub enum CoinvCmd {
    /// Print the Artin monomial basis and the determinant Delta.
    Basis {
        /// Block sizes of the permutation action, e.g. 2,2.
        #[arg(long)]
        blocks: String,
        #[arg(long, default_value_t = 1024)]
        max_order: usize,
    },
    /// Write f = sum_j h_j f_j with group-invariant coefficients f_j, or,
    /// with --subgroup, over the averaged basis of a subgroup.
    Decompose {
        #[arg(long)]
        blocks: String,
        #[arg(long)]
        poly: Option<String>,
        #[arg(long)]
        poly_file: Option<String>,
        /// Subgroup spec; f must be invariant under it.
        #[arg(long)]
        subgroup: Option<String>,
        #[arg(long, default_value_t = 1024)]
        max_order: usize,
    },
    /// Factor Delta into coordinate differences and report the cofactor.
    DeltaCheck {
        #[arg(long)]
        blocks: String,
        #[arg(long, default_value_t = 1024)]
        max_order: usize,
    },
}

pub fn run(cmd: &CoinvCmd, ctx: &Ctx) -> Result<(Report, String), CliError> {
    match cmd {
        CoinvCmd::Basis { blocks, max_order } => {
            let sizes = parse_blocks(blocks)?;
            let b = artin_basis_capped(&sizes, *max_order)?;
            let inputs = json!({"blocks": blocks, "max_order": max_order, "seed": ctx.seed});
            let outputs = json!({
                "block_sizes": b.block_sizes(),
                "nvars": b.nvars(),
                "order": b.order(),
                "basis": poly_strings(b.basis()),
                "delta": b.delta().to_string(),
            });
            let mut text = format!(
                "blocks {:?}: {} variables, group order {}\n",
                b.block_sizes(),
                b.nvars(),
                b.order()
            );
            for (j, h) in b.basis().iter().enumerate() {
                text.push_str(&format!("h{} = {}\n", j + 1, h));
            }
            text.push_str(&format!("Delta = {}\n", b.delta()));
            Ok((Report::new("coinv basis", inputs, outputs, None), text))
        }
        CoinvCmd::Decompose { blocks, poly, poly_file, subgroup, max_order } => {
            let sizes = parse_blocks(blocks)?;
            let b = artin_basis_capped(&sizes, *max_order)?;
            let source = read_poly_source(poly.as_deref(), poly_file.as_deref())?;
            let f = parse_poly(&source, b.nvars())?;
            let mut inputs = json!({
                "blocks": blocks, "poly": source, "max_order": max_order, "seed": ctx.seed
            });
            match subgroup {
                None => {
                    let coeffs = cramer_decompose(&f, &b)?;
                    let mut back = Polynomial::zero(b.nvars());
                    for (h, c) in b.basis().iter().zip(&coeffs) {
                        back = back.add(&h.mul(c));
                    }
                    if back != f {
                        return Err(CliError::domain("decomposition does not reproduce the input"));
                    }
                    let outputs = json!({
                        "basis": poly_strings(b.basis()),
                        "coefficients": poly_strings(&coeffs),
                        "round_trip": true,
                    });
                    let mut text = format!("f = {f}\n");
                    for (j, (h, c)) in b.basis().iter().zip(&coeffs).enumerate() {
                        text.push_str(&format!("h{} = {}   f{} = {}\n", j + 1, h, j + 1, c));
                    }
                    text.push_str("round trip: exact\n");
                    Ok((Report::new("coinv decompose", inputs, outputs, None), text))
                }
                Some(sub) => {
                    let g = parse_group(sub, *max_order)?;
                    inputs["subgroup"] = json!(sub);
                    let qs = subgroup_basis(&b, &g.group)?;
                    let pairs = invariant_decompose(&f, &b, &g.group)?;
                    let mut back = Polynomial::zero(b.nvars());
                    for (q, c) in &pairs {
                        back = back.add(&q.mul(c));
                    }
                    if back != f {
                        return Err(CliError::domain("decomposition does not reproduce the input"));
                    }
                    let outputs = json!({
                        "module_basis": poly_strings(&qs),
                        "coefficients": pairs.iter().map(|(_, c)| c.to_string()).collect::<Vec<_>>(),
                        "round_trip": true,
                    });
                    let mut text = format!("f = {f}\nsubgroup order {}\n", g.group.order());
                    for (j, (q, c)) in pairs.iter().enumerate() {
                        text.push_str(&format!("q{} = {}   g{} = {}\n", j + 1, q, j + 1, c));
                    }
                    text.push_str("round trip: exact\n");
                    Ok((Report::new("coinv decompose", inputs, outputs, None), text))
                }
            }
        }
        CoinvCmd::DeltaCheck { blocks, max_order } => {
            let sizes = parse_blocks(blocks)?;
            let b = artin_basis_capped(&sizes, *max_order)?;
            let report = delta_divisibility_check(&b);
            let verdict = if report.pass { "PASS" } else { "FAIL" };
            let inputs = json!({"blocks": blocks, "max_order": max_order, "seed": ctx.seed});
            let outputs = serde_json::to_value(&report).expect("report serializes");
            let mut text = format!("Delta = {}\n", b.delta());
            for f in &report.factors {
                text.push_str(&format!("(x{} - x{})^{}\n", f.var_i, f.var_j, f.exponent));
            }
            text.push_str(&format!("cofactor: {}\n", report.cofactor));
            Ok((Report::new("coinv delta-check", inputs, outputs, Some(verdict)), text))
        }
    }
}
