use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use pgroup_core::format::source_digest;
use pgroup_core::word::parse_presentation;
use pgroup_core::{Presentation, QuotientError};
use serde::{Deserialize, Serialize};

/// Everything that can stop a job, grouped by exit code.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Input(anyhow::Error),
    Internal(anyhow::Error),
    Budget(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Usage(_) => 1,
            Self::Input(_) => 2,
            Self::Internal(_) => 3,
            Self::Budget(_) => 4,
        }
    }

    pub fn input(msg: impl fmt::Display) -> Self {
        Self::Input(anyhow::anyhow!("{msg}"))
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Usage(m) => write!(f, "usage: {m}"),
            Self::Input(e) => write!(f, "input error: {e:#}"),
            Self::Internal(e) => write!(f, "internal inconsistency: {e:#}"),
            Self::Budget(m) => write!(f, "budget exceeded: {m}"),
        }
    }
}

impl From<QuotientError> for Failure {
    fn from(e: QuotientError) -> Self {
        match e {
            QuotientError::Inconsistent(_) => Self::Internal(e.into()),
            _ => Self::Input(e.into()),
        }
    }
}

impl From<pgroup_core::PcError> for Failure {
    fn from(e: pgroup_core::PcError) -> Self {
        QuotientError::from(e).into()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Words,
    Pq,
    Cover,
    Multiplier,
    Order,
    Minimize,
    Gamma,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Words => "words",
            Self::Pq => "pq",
            Self::Cover => "cover",
            Self::Multiplier => "multiplier",
            Self::Order => "order",
            Self::Minimize => "minimize",
            Self::Gamma => "gamma",
        }
    }
}

/// A job as given on the command line or in a job file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobConfig {
    pub command: Command,
    pub presentation: Option<PathBuf>,
    pub prime: Option<u32>,
    /// p-class cap; 0 or absent means run to termination.
    pub class: Option<u32>,
    pub exponent: Option<u64>,
    pub rank: Option<u32>,
    pub length: Option<usize>,
    #[serde(default)]
    pub stated_rules: bool,
    /// Work in the central extension `<X | [v,x]>` rather than `<X | V>`.
    #[serde(default)]
    pub extension: bool,
    /// Treat the base as its class `cap - 1` truncation.
    #[serde(default)]
    pub truncate_base: bool,
    /// 1-based relator numbers imposed directly in the extension.
    #[serde(default)]
    pub retain: Vec<usize>,
    #[serde(default)]
    pub targets: Vec<String>,
    pub gamma: Option<usize>,
    pub class_from: Option<u32>,
    pub class_to: Option<u32>,
    pub checkpoint: Option<PathBuf>,
    pub output: Option<PathBuf>,
    pub budget_secs: Option<f64>,
    pub memory_mb: Option<u64>,
    /// Digest of the presentation, recorded when a checkpoint is created.
    pub input_digest: Option<String>,
}

impl JobConfig {
    pub fn new(command: Command) -> Self {
        Self {
            command,
            presentation: None,
            prime: None,
            class: None,
            exponent: None,
            rank: None,
            length: None,
            stated_rules: false,
            extension: false,
            truncate_base: false,
            retain: Vec::new(),
            targets: Vec::new(),
            gamma: None,
            class_from: None,
            class_to: None,
            checkpoint: None,
            output: None,
            budget_secs: None,
            memory_mb: None,
            input_digest: None,
        }
    }

    /// Reads a job file; relative paths are taken from the file's directory.
    pub fn from_file(path: &Path) -> Result<Self, Failure> {
        let text = fs::read_to_string(path)
            .map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))?;
        let mut job: JobConfig = toml::from_str(&text)
            .map_err(|e| Failure::input(format!("bad job file {}: {e}", path.display())))?;
        let base = path.parent().unwrap_or(Path::new("."));
        for p in [&mut job.presentation, &mut job.checkpoint, &mut job.output]
            .into_iter()
            .flatten()
        {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        }
        Ok(job)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("job config serializes")
    }

    pub fn prime(&self) -> Result<u32, Failure> {
        let p = self
            .prime
            .ok_or_else(|| Failure::Usage(format!("{} needs --prime", self.command.name())))?;
        if !pgroup_core::pc::is_prime(p) {
            return Err(Failure::input(format!("{p} is not prime")));
        }
        Ok(p)
    }

    pub fn class_cap(&self) -> u32 {
        self.class.unwrap_or(0)
    }

    pub fn required_class(&self) -> Result<u32, Failure> {
        match self.class {
            Some(c) if c >= 1 => Ok(c),
            _ => Err(Failure::Usage(format!(
                "{} needs --class of at least 1",
                self.command.name()
            ))),
        }
    }

    /// The exponent law, which must be a multiple of the prime.
    pub fn exponent(&self) -> Result<Option<u64>, Failure> {
        match self.exponent {
            None => Ok(None),
            Some(n) => {
                let p = self.prime()? as u64;
                if n == 0 || n % p != 0 {
                    return Err(Failure::input(format!(
                        "exponent {n} is not a positive multiple of {p}"
                    )));
                }
                Ok(Some(n))
            }
        }
    }

    pub fn load_presentation(&self) -> Result<Presentation, Failure> {
        let path = self
            .presentation
            .as_ref()
            .ok_or_else(|| Failure::Usage(format!("{} needs --pres", self.command.name())))?;
        let text = fs::read_to_string(path)
            .map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))?;
        let pres = parse_presentation(&text)
            .map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
        if let Some(d) = &self.input_digest {
            if *d != source_digest(&pres) {
                return Err(Failure::input(format!(
                    "{} changed since the checkpoint was written",
                    path.display()
                )));
            }
        }
        Ok(pres)
    }

    /// The same job apart from run-time limits and output locations.
    pub fn same_work(&self, other: &JobConfig) -> bool {
        let strip = |j: &JobConfig| JobConfig {
            budget_secs: None,
            memory_mb: None,
            output: None,
            checkpoint: None,
            input_digest: None,
            ..j.clone()
        };
        strip(self) == strip(other)
    }
}
