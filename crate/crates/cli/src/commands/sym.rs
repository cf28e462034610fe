use clap::{Subcommand, ValueEnum};
use serde_json::json;

use carleman::symmetric::{
    block_generators, block_rewrite, bronshtein_check, necessity_report, rewrite_symmetric,
    SymmetricCoordinates,
};
use carleman::weights::WeightSequence;

use crate::groups::parse_blocks;
use crate::report::Report;
use crate::CliError;

use super::{parse_poly, poly_strings, read_poly_source, Ctx};

#[derive(Clone, Copy, ValueEnum)]
pub enum BasisArg {
    Elementary,
    Newton,
}

#[derive(Subcommand)]
pub enum SymCmd {
    /// Rewrite a symmetric polynomial in elementary or Newton coordinates,
    /// or blockwise with --blocks.
    Rewrite {
        #[arg(long)]
        poly: Option<String>,
        #[arg(long)]
        poly_file: Option<String>,
        /// Number of variables (implied by --blocks when given).
        #[arg(long)]
        nvars: Option<usize>,
        #[arg(long, value_enum, default_value_t = BasisArg::Elementary)]
        basis: BasisArg,
        /// Block sizes for a blockwise rewrite, e.g. 2,2.
        #[arg(long)]
        blocks: Option<String>,
    },
    /// Compare the closed-form partials of the coordinate rewrite against
    /// direct differentiation, over all symmetrized monomials of a degree.
    BronshteinCheck {
        #[arg(long)]
        nvars: usize,
        #[arg(long, default_value_t = 4)]
        max_degree: u32,
    },
    /// Certify the derivative-blowup series bound row by row.
    Necessity {
        #[arg(long, default_value = "gevrey:1")]
        spec: String,
        #[arg(long, default_value_t = 3)]
        nvars: u64,
        #[arg(long, default_value_t = 5)]
        m_max: u64,
        #[arg(long, default_value_t = 40)]
        truncation: u64,
    },
}

pub fn run(cmd: &SymCmd, ctx: &Ctx) -> Result<(Report, String), CliError> {
    match cmd {
        SymCmd::Rewrite { poly, poly_file, nvars, basis, blocks } => {
            let source = read_poly_source(poly.as_deref(), poly_file.as_deref())?;
            let (letter, gens, f, h, echo) = match blocks {
                Some(spec) => {
                    if matches!(basis, BasisArg::Newton) {
                        return Err(CliError::usage(
                            "the blockwise rewrite uses elementary coordinates per block",
                        ));
                    }
                    let sizes = parse_blocks(spec)?;
                    let total: usize = sizes.iter().sum();
                    if let Some(n) = nvars {
                        if *n != total {
                            return Err(CliError::usage(format!(
                                "--nvars {n} contradicts --blocks {spec} ({total} variables)"
                            )));
                        }
                    }
                    let f = parse_poly(&source, total)?;
                    let h = block_rewrite(&f, &sizes)?;
                    let echo = json!({"poly": source, "blocks": spec, "seed": ctx.seed});
                    ("s", block_generators(&sizes), f, h, echo)
                }
                None => {
                    let n = nvars.ok_or_else(|| {
                        CliError::usage("--nvars is required when --blocks is not given")
                    })?;
                    let f = parse_poly(&source, n)?;
                    let (letter, coords) = match basis {
                        BasisArg::Elementary => ("e", SymmetricCoordinates::elementary(n)),
                        BasisArg::Newton => ("p", SymmetricCoordinates::newton(n)),
                    };
                    let h = rewrite_symmetric(&f, coords)?;
                    let echo = json!({"poly": source, "nvars": n, "basis": letter, "seed": ctx.seed});
                    (letter, coords.generators(), f, h, echo)
                }
            };
            let back = h.compose(&gens)?;
            if back != f {
                return Err(CliError::domain("substitution does not reproduce the input"));
            }
            let outputs = json!({
                "coordinates": poly_strings(&gens),
                "rewritten": h.display_with(letter),
                "round_trip": true,
            });
            let mut text = String::new();
            for (i, p) in gens.iter().enumerate() {
                text.push_str(&format!("{letter}{} = {}\n", i + 1, p));
            }
            text.push_str(&format!("f = {}\nf = {}\nround trip: exact\n", f, h.display_with(letter)));
            Ok((Report::new("sym rewrite", echo, outputs, None), text))
        }
        SymCmd::BronshteinCheck { nvars, max_degree } => {
            let check = bronshtein_check(*nvars, *max_degree)?;
            let verdict = if check.pass() { "PASS" } else { "FAIL" };
            let inputs = json!({"nvars": nvars, "max_degree": max_degree, "seed": ctx.seed});
            let outputs = serde_json::to_value(&check).expect("check serializes");
            let mut text = format!(
                "partials in {} variables through degree {}: {} cases, {} mismatches\nconvention: {}\n",
                check.n,
                check.max_degree,
                check.cases,
                check.mismatches.len(),
                check.convention
            );
            for m in &check.mismatches {
                text.push_str(&format!("mismatch at exponents {:?}, k = {}\n", m.exponents, m.k));
            }
            Ok((Report::new("sym bronshtein-check", inputs, outputs, Some(verdict)), text))
        }
        SymCmd::Necessity { spec, nvars, m_max, truncation } => {
            let seq = WeightSequence::parse_spec(spec)?;
            let report = necessity_report(&seq, *nvars, *m_max, *truncation)?;
            let verdict = if report.all_certified() { "PASS" } else { "FAIL" };
            let inputs = json!({
                "spec": spec, "nvars": nvars, "m_max": m_max,
                "truncation": truncation, "seed": ctx.seed
            });
            let text = report.to_text();
            let outputs = serde_json::to_value(&report).expect("report serializes");
            Ok((Report::new("sym necessity", inputs, outputs, Some(verdict)), text))
        }
    }
}
