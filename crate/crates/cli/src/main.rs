use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use eisenstein_cli::request::{
    DEFAULT_D, DEFAULT_K, DEFAULT_N, DEFAULT_PRECISION_BITS, DEFAULT_SEED,
};
use eisenstein_cli::{run, save_report, CliError, CommandRequest, Suite};

/// Exact and high-precision checks of Eisenstein-symbol residues,
/// horospherical maps and polylogarithm regulators.
///
/// Exit status: 0 when every verdict passes, 1 on a verification failure,
/// 2 on a usage or input error.
#[derive(Parser, Debug)]
#[command(name = "eisenstein", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Level N of the torsion subgroup.
    #[arg(short = 'N', long = "level", global = true, default_value_t = DEFAULT_N)]
    n: u32,

    /// Weight index k.
    #[arg(short = 'k', long = "weight", global = true, default_value_t = DEFAULT_K)]
    k: usize,

    /// Truncation degree D of the free Lie algebra.
    #[arg(short = 'D', long = "degree", global = true, default_value_t = DEFAULT_D)]
    d: usize,

    /// Requested precision in bits for numeric suites.
    #[arg(short = 'p', long, global = true, default_value_t = DEFAULT_PRECISION_BITS)]
    precision: u32,

    /// Restrict torsion-point suites to t = (a/N) tau + b/N with this a.
    #[arg(short = 'a', long, global = true)]
    a: Option<u32>,

    /// Restrict psi-u and regulator suites to this residue u.
    #[arg(short = 'u', long, global = true)]
    u: Option<i64>,

    /// Seed for the random divisors and Lie elements.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,

    /// Divisor JSON: {"N": int, "support": [{"t1", "t2", "coeff": "p/q"}]}.
    #[arg(short = 'i', long, global = true)]
    input: Option<PathBuf>,

    /// Write the report here instead of standard output.
    #[arg(short = 'o', long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Subcommand, Debug, Clone, Copy)]
enum Command {
    /// Bernoulli polynomials, distribution relation, residue series.
    Bernoulli,
    /// Horospherical image of a divisor and its invariants.
    Horospherical,
    /// Kernel of the horospherical map and the surjectivity ranks.
    Kernel,
    /// The divisors psi_u and their regulator formulas.
    PsiU,
    /// BCH and the Lie identities in the metabelian quotient.
    LieVerify,
    /// Residue at the cusp from the Lie side against its closed form.
    Residue,
    /// Hodge regulator of psi_u against Li_{k+1} at roots of unity.
    Regulator,
    /// Polylogarithm relations from kernel divisors.
    KernelRelations,
    /// The residue consistency identity on random divisors.
    Consistency,
    /// Every suite with the same parameters.
    All,
}

impl From<Command> for Suite {
    fn from(c: Command) -> Suite {
        match c {
            Command::Bernoulli => Suite::Bernoulli,
            Command::Horospherical => Suite::Horospherical,
            Command::Kernel => Suite::Kernel,
            Command::PsiU => Suite::PsiU,
            Command::LieVerify => Suite::LieVerify,
            Command::Residue => Suite::Residue,
            Command::Regulator => Suite::Regulator,
            Command::KernelRelations => Suite::KernelRelations,
            Command::Consistency => Suite::Consistency,
            Command::All => Suite::All,
        }
    }
}

fn execute(cli: Cli) -> Result<i32, CliError> {
    let request = CommandRequest {
        suite: cli.command.into(),
        n: cli.n,
        k: cli.k,
        d: cli.d,
        precision_bits: cli.precision,
        a: cli.a,
        u: cli.u,
        seed: cli.seed,
        input: cli.input,
    };
    let report = run(&request)?;
    match &cli.output {
        Some(path) => save_report(&report, path)?,
        None => print!("{}", report.to_json()),
    }
    if !report.passed() {
        for suite in &report.suites {
            for case in suite.cases.iter().filter(|c| !c.passed) {
                eprintln!(
                    "FAIL {}/{} {}",
                    suite.suite,
                    case.name,
                    serde_json::Value::Object(case.params.clone())
                );
            }
        }
    }
    Ok(report.exit_code())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
