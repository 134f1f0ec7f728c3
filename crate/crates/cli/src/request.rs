use std::path::PathBuf;

use clap::ValueEnum;
use serde::Serialize;

use crate::error::{CliError, CliResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Bernoulli,
    Horospherical,
    Kernel,
    PsiU,
    LieVerify,
    Residue,
    Regulator,
    KernelRelations,
    Consistency,
    All,
}

impl Suite {
    pub const EACH: [Suite; 9] = [
        Suite::Bernoulli,
        Suite::Horospherical,
        Suite::Kernel,
        Suite::PsiU,
        Suite::LieVerify,
        Suite::Residue,
        Suite::Regulator,
        Suite::KernelRelations,
        Suite::Consistency,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Bernoulli => "bernoulli",
            Suite::Horospherical => "horospherical",
            Suite::Kernel => "kernel",
            Suite::PsiU => "psi-u",
            Suite::LieVerify => "lie-verify",
            Suite::Residue => "residue",
            Suite::Regulator => "regulator",
            Suite::KernelRelations => "kernel-relations",
            Suite::Consistency => "consistency",
            Suite::All => "all",
        }
    }

    fn needs_positive_weight(self) -> bool {
        matches!(
            self,
            Suite::PsiU | Suite::Regulator | Suite::KernelRelations
        )
    }
}

/// Parameters shared by every suite.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CommandRequest {
    pub suite: Suite,
    #[serde(rename = "N")]
    pub n: u32,
    pub k: usize,
    #[serde(rename = "D")]
    pub d: usize,
    pub precision_bits: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub u: Option<i64>,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input: Option<PathBuf>,
}

pub const DEFAULT_N: u32 = 3;
pub const DEFAULT_K: usize = 1;
pub const DEFAULT_D: usize = 8;
pub const DEFAULT_PRECISION_BITS: u32 = 200;
pub const DEFAULT_SEED: u64 = 20_240_601;

impl CommandRequest {
    pub fn new(suite: Suite) -> Self {
        CommandRequest {
            suite,
            n: DEFAULT_N,
            k: DEFAULT_K,
            d: DEFAULT_D,
            precision_bits: DEFAULT_PRECISION_BITS,
            a: None,
            u: None,
            seed: DEFAULT_SEED,
            input: None,
        }
    }

    pub fn with(mut self, n: u32, k: usize) -> Self {
        self.n = n;
        self.k = k;
        self
    }

    /// Rejects parameters outside the preconditions of the target suite.
    pub fn validate(&self) -> CliResult<()> {
        let usage = |m: String| Err(CliError::Usage(m));
        if !(3..=16).contains(&self.n) {
            return usage(format!("N must lie in 3..=16, got {}", self.n));
        }
        if self.k > 12 {
            return usage(format!("k must be at most 12, got {}", self.k));
        }
        if !(3..=16).contains(&self.d) {
            return usage(format!("D must lie in 3..=16, got {}", self.d));
        }
        if self.suite == Suite::Residue && self.k + 3 > 16 {
            return usage(format!("residue needs D = k+3 <= 16, got k = {}", self.k));
        }
        if !(32..=4096).contains(&self.precision_bits) {
            return usage(format!(
                "precision must lie in 32..=4096 bits, got {}",
                self.precision_bits
            ));
        }
        if self.k == 0 && (self.suite.needs_positive_weight() || self.suite == Suite::All) {
            return usage(format!("{} needs k >= 1", self.suite.name()));
        }
        if let Some(a) = self.a {
            if a >= self.n {
                return usage(format!("a must satisfy 0 <= a < N, got a = {a}"));
            }
        }
        if let Some(u) = self.u {
            if u.rem_euclid(self.n as i64) == 0 {
                return usage(format!("u must be nonzero mod N, got u = {u}"));
            }
        }
        Ok(())
    }
}
