use std::path::{Path, PathBuf};

use serde::Deserialize;

use powerlab::suite::{parse_suites, Statement, SuiteConfig};
use powerlab::ClosureSteps;

use crate::CliError;

/// Optional TOML file; every key may be overridden by a flag.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub max_poset: Option<usize>,
    pub max_semilattice: Option<usize>,
    pub suites: Option<Vec<String>>,
    pub cache: Option<PathBuf>,
    pub format: Option<String>,
    pub threads: Option<usize>,
    pub timing: Option<bool>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::input(format!("cannot read config {}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| CliError::input(format!("malformed config {}: {e}", path.display())))
    }
}

/// Resolved settings for `verify`.
#[derive(Debug)]
pub struct Config {
    pub max_poset: usize,
    pub max_semilattice: usize,
    pub suites: Vec<Statement>,
    pub threads: usize,
    pub timing: bool,
    pub steps: ClosureSteps,
}

impl Config {
    pub fn suite_config(&self) -> SuiteConfig {
        SuiteConfig {
            max_poset: self.max_poset,
            max_semilattice: self.max_semilattice,
            statements: self.suites.clone(),
            steps: self.steps,
            threads: self.threads,
            record_timing: self.timing,
            ..SuiteConfig::default()
        }
    }
}

pub struct VerifyFlags<'a> {
    pub suite: Option<&'a str>,
    pub max_poset: Option<usize>,
    pub max_semilattice: Option<usize>,
    pub threads: Option<usize>,
    pub no_timing: bool,
    pub drop_step: Option<&'a str>,
}

pub fn resolve(file: FileConfig, flags: VerifyFlags<'_>) -> Result<Config, CliError> {
    let defaults = SuiteConfig::default();
    let suites = match (flags.suite, &file.suites) {
        (Some(s), _) => parse_suites(s)?,
        (None, Some(list)) => parse_suites(&list.join(","))?,
        (None, None) => defaults.statements.clone(),
    };
    let max_poset = flags.max_poset.or(file.max_poset).unwrap_or(defaults.max_poset);
    let max_semilattice = flags.max_semilattice.or(file.max_semilattice).unwrap_or(defaults.max_semilattice);
    if max_poset == 0 || max_semilattice == 0 {
        return Err(CliError::input("size caps must be at least 1"));
    }
    let mut steps = ClosureSteps::ALL;
    match flags.drop_step {
        None => {}
        Some("lower") => steps.lower = false,
        Some("join") => steps.pair_join = false,
        Some("directed") => steps.directed_sup = false,
        Some(other) => return Err(CliError::input(format!("unknown closure step {other:?}"))),
    }
    Ok(Config {
        max_poset,
        max_semilattice,
        suites,
        threads: flags.threads.or(file.threads).unwrap_or(0),
        timing: !flags.no_timing && file.timing.unwrap_or(true),
        steps,
    })
}

/// Flag, then `POWERLAB_CACHE`, then the config file.
pub fn cache_dir(flag: Option<PathBuf>, file: Option<PathBuf>) -> Option<PathBuf> {
    flag.or_else(|| std::env::var_os("POWERLAB_CACHE").map(PathBuf::from)).or(file)
}
