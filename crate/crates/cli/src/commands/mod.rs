pub mod coinv;
pub mod demo;
pub mod equiv;
pub mod inv;
pub mod seq;
pub mod sym;

use carleman::poly::Polynomial;
use carleman::weights::{ConditionVerdict, VerdictStatus};

use crate::CliError;

pub struct Ctx {
    pub seed: u64,
}

/// Resolve the inline/file pair for a polynomial argument. Exactly one of
/// the two must be present; the returned string is the raw source text for
/// the input echo.
pub fn read_poly_source(
    inline: Option<&str>,
    file: Option<&str>,
) -> Result<String, CliError> {
    match (inline, file) {
        (Some(_), Some(_)) => Err(CliError::usage("give the polynomial inline or as a file, not both")),
        (None, None) => Err(CliError::usage("a polynomial is required: --poly or --poly-file")),
        (Some(s), None) => Ok(s.to_string()),
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::usage(format!("cannot read {path}: {e}")))?;
            Ok(text.trim().to_string())
        }
    }
}

pub fn parse_poly(source: &str, nvars: usize) -> Result<Polynomial, CliError> {
    Polynomial::parse(source, nvars)
        .map_err(|e| CliError::usage(format!("bad polynomial {source:?}: {e}")))
}

pub fn poly_strings(ps: &[Polynomial]) -> Vec<String> {
    ps.iter().map(|p| p.to_string()).collect()
}

pub fn status_verdict(status: VerdictStatus) -> &'static str {
    match status {
        VerdictStatus::Holds => "PASS",
        VerdictStatus::Fails => "FAIL",
        VerdictStatus::EvidenceOnly => "EVIDENCE",
    }
}

pub fn condition_line(v: &ConditionVerdict) -> String {
    let mut line = format!("{:<18} {:?}", v.condition, v.status);
    if let Some(sup) = v.sup_estimate {
        line.push_str(&format!("  sup ~ {sup:.6}"));
    }
    line.push_str(&format!("  ({})", v.detail));
    line
}
