//! Verification suites over `eisenstein-core`, with deterministic JSON
//! reports.  The `eisenstein` binary is a thin clap front end over [`run`].

pub mod error;
pub mod io;
pub mod report;
pub mod request;
pub mod suites;

pub use error::{CliError, CliResult, SchemaProblem};
pub use io::{divisor_schema_problems, load_divisor, parse_divisor, save_json, save_report};
pub use report::{Case, SuiteReport, Summary, VerificationReport, TOOL};
pub use request::{CommandRequest, Suite};

/// Validates the request and runs one suite, or every suite for `all`.
pub fn run(request: &CommandRequest) -> CliResult<VerificationReport> {
    request.validate()?;
    let selected: Vec<Suite> = match request.suite {
        Suite::All => Suite::EACH.to_vec(),
        s => vec![s],
    };
    let reports = selected
        .into_iter()
        .map(|s| suites::run_suite(s, request))
        .collect::<CliResult<Vec<_>>>()?;
    Ok(VerificationReport::new(request.clone(), reports))
}
