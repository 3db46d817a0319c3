//! Job documents: what to run, on which inputs, with which options.

use conifold::equiv::{DEFAULT_BOUND, DEFAULT_PRIMES, DEFAULT_STEP_BUDGET, FINGERPRINT_PRIMES};
use conifold::{FourManifold, RankTwoBundle};
use serde::{Deserialize, Serialize};

use crate::descriptor::{Side, Source, SourceDoc};
use crate::error::{CliError, Result};
use crate::schema::{BundleDoc, ManifoldDoc, SystemDoc, SCHEMA};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Table,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Options {
    pub bound: u32,
    pub primes: Vec<u32>,
    pub check_c1: bool,
    pub format: Format,
    pub step_budget: u64,
    pub parallel: bool,
}

impl Default for Options {
    fn default() -> Self {
        Self {
            bound: DEFAULT_BOUND,
            primes: DEFAULT_PRIMES.to_vec(),
            check_c1: false,
            format: Format::Json,
            step_budget: DEFAULT_STEP_BUDGET,
            parallel: true,
        }
    }
}

impl Options {
    pub fn validate(&self) -> Result<()> {
        if self.bound == 0 {
            return Err(CliError::Validation("bound must be at least 1".into()));
        }
        if let Some(p) = self.primes.iter().find(|p| !FINGERPRINT_PRIMES.contains(p)) {
            return Err(CliError::Validation(format!(
                "unsupported prime {p} (expected one of 2, 3, 5, 7)"
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Command {
    Invariants(Source),
    Transition {
        base: FourManifold,
        bundle: RankTwoBundle,
        swap: bool,
    },
    Compare {
        left: Source,
        right: Source,
    },
    VerifyPaper,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Invariants(_) => "invariants",
            Self::Transition { .. } => "transition",
            Self::Compare { .. } => "compare",
            Self::VerifyPaper => "verify-paper",
        }
    }
}

/// A validated job. `input` echoes the descriptor an `invariants` job was
/// built from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JobSpec {
    pub command: Command,
    pub options: Options,
    pub input: serde_json::Value,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OptionsDoc {
    #[serde(default)]
    pub bound: Option<u32>,
    #[serde(default)]
    pub primes: Option<Vec<u32>>,
    #[serde(default)]
    pub check_c1: Option<bool>,
    #[serde(default)]
    pub format: Option<Format>,
    #[serde(default)]
    pub step_budget: Option<u64>,
    #[serde(default)]
    pub parallel: Option<bool>,
}

impl OptionsDoc {
    pub fn resolve(&self) -> Result<Options> {
        let d = Options::default();
        let o = Options {
            bound: self.bound.unwrap_or(d.bound),
            primes: self.primes.clone().unwrap_or(d.primes),
            check_c1: self.check_c1.unwrap_or(d.check_c1),
            format: self.format.unwrap_or(d.format),
            step_budget: self.step_budget.unwrap_or(d.step_budget),
            parallel: self.parallel.unwrap_or(d.parallel),
        };
        o.validate()?;
        Ok(o)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CommandName {
    Invariants,
    Transition,
    Compare,
    VerifyPaper,
}

/// The job document. Source keys (`system`, `builtin`, `base`, `bundle`,
/// `blowups`, `side`) sit at top level for `invariants` and `transition`;
/// `compare` takes `left` and `right` sources.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobDoc {
    #[serde(default)]
    pub schema: Option<String>,
    pub command: CommandName,
    #[serde(default)]
    pub system: Option<SystemDoc>,
    #[serde(default)]
    pub builtin: Option<String>,
    #[serde(default)]
    pub base: Option<ManifoldDoc>,
    #[serde(default)]
    pub bundle: Option<BundleDoc>,
    #[serde(default)]
    pub blowups: u32,
    #[serde(default)]
    pub side: Option<Side>,
    #[serde(default)]
    pub swap: bool,
    #[serde(default)]
    pub left: Option<SourceDoc>,
    #[serde(default)]
    pub right: Option<SourceDoc>,
    #[serde(default)]
    pub options: OptionsDoc,
}

fn unexpected(what: &str, command: &str) -> CliError {
    CliError::Validation(format!("\"{what}\" does not apply to {command}"))
}

impl JobDoc {
    fn inline_source(&self) -> SourceDoc {
        SourceDoc {
            system: self.system.clone(),
            builtin: self.builtin.clone(),
            base: self.base.clone(),
            bundle: self.bundle.clone(),
            blowups: self.blowups,
            side: self.side,
        }
    }

    fn has_inline_source(&self) -> bool {
        self.inline_source() != SourceDoc::default()
    }

    pub fn resolve(&self) -> Result<JobSpec> {
        if let Some(s) = &self.schema {
            if s != SCHEMA {
                return Err(CliError::Validation(format!(
                    "unsupported schema \"{s}\" (expected \"{SCHEMA}\")"
                )));
            }
        }
        let options = self.options.resolve()?;
        let (command, input) = match self.command {
            CommandName::Invariants => {
                self.forbid_pair("invariants")?;
                if self.swap {
                    return Err(unexpected("swap", "invariants"));
                }
                let doc = self.inline_source();
                let input = serde_json::to_value(&doc).expect("sources serialize");
                (Command::Invariants(doc.resolve()?), input)
            }
            CommandName::Transition => {
                self.forbid_pair("transition")?;
                if self.system.is_some() {
                    return Err(unexpected("system", "transition"));
                }
                if self.builtin.is_some() {
                    return Err(unexpected("builtin", "transition"));
                }
                if self.blowups > 0 {
                    return Err(unexpected("blowups", "transition"));
                }
                if self.side.is_some() {
                    return Err(unexpected("side", "transition"));
                }
                let base = self
                    .base
                    .as_ref()
                    .ok_or_else(|| CliError::Validation("transition needs \"base\"".into()))?
                    .resolve()?;
                let bundle = match &self.bundle {
                    Some(b) => b.resolve(&base)?,
                    None => RankTwoBundle::trivial(base.clone()),
                };
                let cmd = Command::Transition {
                    base,
                    bundle,
                    swap: self.swap,
                };
                (cmd, serde_json::Value::Null)
            }
            CommandName::Compare => {
                if self.has_inline_source() {
                    return Err(CliError::Validation(
                        "compare takes its inputs under \"left\" and \"right\"".into(),
                    ));
                }
                if self.swap {
                    return Err(unexpected("swap", "compare"));
                }
                let left = self
                    .left
                    .as_ref()
                    .ok_or_else(|| CliError::Validation("compare needs \"left\"".into()))?;
                let right = self
                    .right
                    .as_ref()
                    .ok_or_else(|| CliError::Validation("compare needs \"right\"".into()))?;
                let cmd = Command::Compare {
                    left: left.resolve()?,
                    right: right.resolve()?,
                };
                (cmd, serde_json::Value::Null)
            }
            CommandName::VerifyPaper => {
                self.forbid_pair("verify-paper")?;
                if self.has_inline_source() || self.swap {
                    return Err(CliError::Validation("verify-paper takes no inputs".into()));
                }
                (Command::VerifyPaper, serde_json::Value::Null)
            }
        };
        Ok(JobSpec {
            command,
            options,
            input,
        })
    }

    fn forbid_pair(&self, command: &str) -> Result<()> {
        if self.left.is_some() {
            return Err(unexpected("left", command));
        }
        if self.right.is_some() {
            return Err(unexpected("right", command));
        }
        Ok(())
    }
}

/// Parses and validates a job document. Syntax errors carry the line and
/// column; every descriptor is validated before anything is computed.
pub fn parse_input(text: &str) -> Result<JobSpec> {
    let doc: JobDoc = serde_json::from_str(text)?;
    doc.resolve()
}
