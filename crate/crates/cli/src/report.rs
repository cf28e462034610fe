use serde::Serialize;
use serde_json::Value;

/// Output envelope shared by every subcommand. `inputs` echoes the parsed
/// arguments in canonical form and `digest` fingerprints that echo, so two
/// runs can be compared byte for byte. `verdict` is present only for
/// commands that decide something.
#[derive(Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: Value,
    pub digest: String,
    pub outputs: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<&'static str>,
}

impl Report {
    pub fn new(command: &str, inputs: Value, outputs: Value, verdict: Option<&'static str>) -> Self {
        let digest = format!("fnv1a64:{:016x}", fnv1a64(inputs.to_string().as_bytes()));
        Report { command: command.to_string(), inputs, digest, outputs, verdict }
    }

    pub fn exit_code(&self) -> i32 {
        match self.verdict {
            Some("FAIL") => 1,
            _ => 0,
        }
    }
}

/// FNV-1a, 64-bit offset basis and prime.
pub fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

#[derive(Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

/// Print the report to stdout in the requested format and return the exit
/// code. Text mode takes the pre-rendered human lines; JSON mode prints the
/// envelope with sorted keys (serde_json maps are BTree-backed), so the
/// bytes depend only on the inputs.
pub fn emit(format: Format, report: &Report, text: &str) -> i32 {
    match format {
        Format::Json => {
            println!("{}", serde_json::to_string_pretty(report).expect("report serializes"));
        }
        Format::Text => {
            print!("{text}");
            if !text.ends_with('\n') {
                println!();
            }
            if let Some(v) = report.verdict {
                println!("verdict: {v}");
            }
        }
    }
    report.exit_code()
}
