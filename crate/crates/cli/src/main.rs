mod commands;
mod groups;
mod report;

use clap::{Parser, Subcommand, ValueEnum};
use report::Format;

#[derive(Parser)]
#[command(name = "carleman", version, about = "Exact arithmetic for weight sequences, invariant rings, and equivariant maps", max_term_width = 100)]
struct Cli {
    /// Output format for the report on stdout.
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
    /// Seed echoed into every report. Reserved for future sampling
    /// commands; nothing shipped today draws randomness.
    #[arg(long, global = true, default_value_t = 17)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Weight sequence classification, comparison, and composition loss.
    #[command(subcommand)]
    Seq(commands::seq::SeqCmd),
    /// Invariant rings of finite matrix groups.
    #[command(subcommand)]
    Inv(commands::inv::InvCmd),
    /// Coinvariant bases and Cramer decompositions for block permutation groups.
    #[command(subcommand)]
    Coinv(commands::coinv::CoinvCmd),
    /// Symmetric polynomial rewriting and its derivative formulas.
    #[command(subcommand)]
    Sym(commands::sym::SymCmd),
    /// Module generators and decompositions for equivariant polynomial maps.
    #[command(subcommand)]
    Equiv(commands::equiv::EquivCmd),
    /// End-to-end worked examples.
    #[command(subcommand)]
    Demo(commands::demo::DemoCmd),
}

/// Errors split into two exit classes: `usage` (malformed invocation or
/// unreadable input, exit 2) and `domain` (well-formed request the
/// mathematics rejects, exit 1). Both print one JSON object to stderr.
pub struct CliError {
    kind: &'static str,
    message: String,
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError { kind: "usage", message: msg.into() }
    }

    pub fn domain(msg: impl Into<String>) -> Self {
        CliError { kind: "domain", message: msg.into() }
    }

    fn exit_code(&self) -> i32 {
        if self.kind == "usage" {
            2
        } else {
            1
        }
    }

    fn to_stderr(&self) {
        let obj = serde_json::json!({"error": {"kind": self.kind, "message": self.message}});
        eprintln!("{obj}");
    }
}

macro_rules! domain_from {
    ($($t:ty),* $(,)?) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::domain(e.to_string())
            }
        }
    )*};
}

domain_from!(
    carleman::weights::WeightError,
    carleman::invariant::InvariantError,
    carleman::coinvariant::CoinvariantError,
    carleman::symmetric::SymmetricError,
    carleman::equivariant::EquivariantError,
    carleman::poly::PolyError,
);

fn main() {
    let started = std::time::Instant::now();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                std::process::exit(0);
            }
            CliError::usage(e.to_string()).to_stderr();
            std::process::exit(2);
        }
    };

    let format = match cli.format {
        FormatArg::Text => Format::Text,
        FormatArg::Json => Format::Json,
    };
    let ctx = commands::Ctx { seed: cli.seed };

    let outcome = match &cli.command {
        Command::Seq(cmd) => commands::seq::run(cmd, &ctx),
        Command::Inv(cmd) => commands::inv::run(cmd, &ctx),
        Command::Coinv(cmd) => commands::coinv::run(cmd, &ctx),
        Command::Sym(cmd) => commands::sym::run(cmd, &ctx),
        Command::Equiv(cmd) => commands::equiv::run(cmd, &ctx),
        Command::Demo(cmd) => commands::demo::run(cmd, &ctx),
    };

    let code = match outcome {
        Ok((report, text)) => report::emit(format, &report, &text),
        Err(err) => {
            err.to_stderr();
            err.exit_code()
        }
    };
    // timing stays off stdout so report bytes depend only on the inputs
    eprintln!("elapsed_ms: {}", started.elapsed().as_millis());
    std::process::exit(code);
}
