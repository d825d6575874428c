//! `powerlab`: build Hoare-style powerdomains of finite posets, search for
//! refutation witnesses, enumerate posets and run the verification sweep.

mod config;

use std::fs::{self, File};
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};

use powerlab::enumeration::{
    canonical_form, enumerate_canonical_forms, read_form_cache, write_form_cache, DEFAULT_ENUMERATION_CAP,
};
use powerlab::hoare::{refute_v_existing, WitnessCert};
use powerlab::io::{parse_poset, to_dot, FamilyJson, GammaFJson, HoareJson, PosetJson, WitnessJson};
use powerlab::semilattice::{gamma_f, is_v_semilattice};
use powerlab::suite::{run_all, Verdict};
use powerlab::{gamma, gamma0, CanonicalForm, ConsistentHoare, Error, FinitePoset, SubsetBits, VSemilattice};

use config::{cache_dir, resolve, FileConfig, VerifyFlags};

#[derive(Debug)]
pub struct CliError {
    message: String,
}

impl CliError {
    pub fn input(message: impl Into<String>) -> Self {
        CliError { message: message.into() }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::input(e.to_string())
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::input(format!("i/o error: {e}"))
    }
}

#[derive(Parser)]
#[command(name = "powerlab", version, about = "Consistent Hoare powerdomains of finite posets")]
struct Cli {
    /// TOML file with defaults; flags take precedence
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Scott closed subsets Γ(P) without ∅, or Γ_0(P) with --with-empty
    Gamma {
        poset: PathBuf,
        /// include the empty set (Γ_0)
        #[arg(long)]
        with_empty: bool,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// The consistent Hoare powerdomain H_c(P)
    Hoare {
        poset: PathBuf,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// F-Scott closed sets of a ∨↑-semilattice
    Gammaf {
        poset: PathBuf,
        /// use H_c(P) of the input instead of the input itself
        #[arg(long)]
        hoare: bool,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Search for a map under which the image of a set has no supremum
    Vexist {
        poset: PathBuf,
        /// comma separated labels of a nonempty Scott closed set
        #[arg(long)]
        set: String,
        #[arg(long, default_value_t = 5)]
        max_l: usize,
    },
    /// Posets (or ∨↑-semilattices) of a given size up to isomorphism, as JSON lines
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        semilattices: bool,
        /// directory for canonical form caches
        #[arg(long)]
        cache: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
        cap: usize,
    },
    /// Run the verification sweep
    Verify {
        /// all, or a comma separated list such as thm3.10,cor3.11
        #[arg(long)]
        suite: Option<String>,
        #[arg(long)]
        max_poset: Option<usize>,
        #[arg(long)]
        max_semilattice: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// exit 3 when some check is inconclusive
        #[arg(long)]
        strict: bool,
        #[arg(long)]
        threads: Option<usize>,
        /// report wall_ms as 0 so reports are byte-identical across runs
        #[arg(long)]
        no_timing: bool,
        #[arg(long, hide = true)]
        drop_step: Option<String>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let file = match cli.config.as_deref().map(FileConfig::load).transpose() {
        Ok(f) => f.unwrap_or_default(),
        Err(e) => {
            eprintln!("error: {}", e.message);
            return ExitCode::from(2);
        }
    };
    match run(cli.command, file) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(2)
        }
    }
}

fn read_poset(path: &Path) -> Result<Arc<FinitePoset>, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::input(format!("cannot read {}: {e}", path.display())))?;
    Ok(Arc::new(parse_poset(&text)?))
}

/// Writes to stdout; a closed pipe downstream is not an error.
fn emit(text: &str) -> Result<(), CliError> {
    match io::stdout().lock().write_all(text.as_bytes()) {
        Err(e) if e.kind() != io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

fn print_json<T: serde::Serialize>(value: &T) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value).map_err(|e| CliError::input(e.to_string()))?;
    emit(&(text + "\n"))
}

fn unsupported(cmd: &str, f: Format) -> CliError {
    CliError::input(format!("{cmd} does not support --format {f:?}").to_lowercase())
}

fn run(cmd: Command, mut file: FileConfig) -> Result<u8, CliError> {
    let default_format = match file.format.take().as_deref() {
        None | Some("json") => Format::Json,
        Some("dot") => Format::Dot,
        Some("csv") => Format::Csv,
        Some(other) => return Err(CliError::input(format!("unknown format {other:?} in config"))),
    };
    let fmt = |f: Option<Format>| f.unwrap_or(default_format);
    match cmd {
        Command::Gamma { poset, with_empty, format } => {
            let p = read_poset(&poset)?;
            let fam = if with_empty { gamma0(&p) } else { gamma(&p) };
            match fmt(format) {
                Format::Json => print_json(&FamilyJson::from_family(&fam))?,
                Format::Dot => emit(&to_dot(&fam.as_poset()))?,
                f => return Err(unsupported("gamma", f)),
            }
        }
        Command::Hoare { poset, format } => {
            let h = ConsistentHoare::build(&read_poset(&poset)?)?;
            match fmt(format) {
                Format::Json => print_json(&HoareJson::from_hoare(&h))?,
                Format::Dot => emit(&to_dot(h.poset()))?,
                Format::Csv => emit(&h.semilattice().join_table_csv())?,
            }
        }
        Command::Gammaf { poset, hoare, format } => {
            let p = read_poset(&poset)?;
            let l = if hoare {
                ConsistentHoare::build(&p)?.semilattice().clone()
            } else {
                if !is_v_semilattice(&p) {
                    return Err(CliError::input("input is not a ∨↑-semilattice: some bounded pair has no join"));
                }
                VSemilattice::new(p)?
            };
            match fmt(format) {
                Format::Json => print_json(&GammaFJson::from_system(&gamma_f(&l)?))?,
                Format::Dot => emit(&to_dot(&gamma_f(&l)?.family().as_poset()))?,
                Format::Csv => emit(&l.join_table_csv())?,
            }
        }
        Command::Vexist { poset, set, max_l } => {
            let p = read_poset(&poset)?;
            let labels: Vec<&str> = set.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
            let a: SubsetBits = p.subset_of_labels(&labels)?;
            if a.is_empty() || !p.is_scott_closed(a) {
                return Err(CliError::input(format!(
                    "set {{{}}} is not a nonempty Scott closed set",
                    labels.join(",")
                )));
            }
            if max_l > DEFAULT_ENUMERATION_CAP {
                return Err(Error::CapExceeded { n: max_l, cap: DEFAULT_ENUMERATION_CAP }.into());
            }
            let r = refute_v_existing(&p, a, max_l)?;
            if let powerlab::Refutation::Refuted(cert) = &r {
                let cert: &WitnessCert = cert;
                if !cert.replay()? {
                    return Err(CliError::input("witness failed to replay"));
                }
            }
            let h = ConsistentHoare::build(&p)?;
            print_json(&WitnessJson::from_refutation(&h, a, &r))?;
        }
        Command::Enumerate { n, semilattices, cache, cap } => {
            let dir = cache_dir(cache, file.cache);
            let forms = forms_for(n, cap, dir.as_deref())?;
            let stdout = io::stdout();
            let mut out = BufWriter::new(stdout.lock());
            let mut index = 0;
            for form in forms {
                let p = form.to_poset()?;
                if semilattices && !is_v_semilattice(&p) {
                    continue;
                }
                let line = serde_json::json!({
                    "n": n,
                    "index": index,
                    "form": form.to_hex(),
                    "poset": PosetJson::from_poset(&p),
                });
                if let Err(e) = writeln!(out, "{line}") {
                    if e.kind() == io::ErrorKind::BrokenPipe {
                        return Ok(0);
                    }
                    return Err(e.into());
                }
                index += 1;
            }
            let _ = out.flush();
        }
        Command::Verify { suite, max_poset, max_semilattice, out, strict, threads, no_timing, drop_step } => {
            let cfg = resolve(
                file,
                VerifyFlags {
                    suite: suite.as_deref(),
                    max_poset,
                    max_semilattice,
                    threads,
                    no_timing,
                    drop_step: drop_step.as_deref(),
                },
            )?;
            let summary = run_all(cfg.suite_config())?;
            for r in &summary.reports {
                let bound: Vec<String> = r.bound.iter().map(|(k, v)| format!("{k}={v}")).collect();
                eprintln!(
                    "{:<10} {:<12} instances={} failures={} inconclusive={} {}",
                    r.statement,
                    format!("{:?}", r.verdict()).to_uppercase(),
                    r.instances,
                    r.failures.len(),
                    r.inconclusive.len(),
                    bound.join(" ")
                );
            }
            let text = serde_json::to_string_pretty(&summary).map_err(|e| CliError::input(e.to_string()))?;
            match out {
                Some(path) => fs::write(&path, text + "\n")?,
                None => emit(&(text + "\n"))?,
            }
            let any = |v| summary.reports.iter().any(|r| r.verdict() == v);
            return Ok(if any(Verdict::Fail) {
                1
            } else if strict && any(Verdict::Inconclusive) {
                3
            } else {
                0
            });
        }
    }
    Ok(0)
}

/// Canonical forms of size `n`, through the cache directory when given.
/// A cache file that fails validation is ignored and rewritten.
fn forms_for(n: usize, cap: usize, dir: Option<&Path>) -> Result<Vec<CanonicalForm>, CliError> {
    if n > cap {
        return Err(Error::CapExceeded { n, cap }.into());
    }
    let Some(dir) = dir else {
        return Ok(enumerate_canonical_forms(n, cap)?);
    };
    let path = dir.join(format!("posets-{n}.bin"));
    if let Ok(f) = File::open(&path) {
        if let Ok(forms) = read_form_cache(BufReader::new(f)) {
            if forms.iter().all(|c| c.to_poset().map(|p| &canonical_form(&p) == c).unwrap_or(false)) {
                return Ok(forms);
            }
        }
    }
    let forms = enumerate_canonical_forms(n, cap)?;
    fs::create_dir_all(dir)?;
    write_form_cache(BufWriter::new(File::create(&path)?), &forms)?;
    Ok(forms)
}
