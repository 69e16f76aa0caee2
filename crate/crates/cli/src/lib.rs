//! Command-line front end: ring definitions in, JSON reports out.
//!
//! Exit codes: 0 on success, 2 when a freeness decision is inconclusive,
//! 1 on any error.

pub mod definition;
mod report;

use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use definition::{preset, BuildError, BuiltRing, DefinitionError, RingDefinition, PRESET_NAMES};
pub use report::error_code;

pub const SCHEMA_VERSION: u32 = 1;
pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser, Debug)]
#[command(
    name = "toricmcm",
    version,
    about = "Frobenius saturations, semigroup closures and Witt checks for toric rings"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Include wall-clock timing in the report.
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Args, Debug, Clone)]
pub struct RingArgs {
    /// Built-in definition: e3, genfam or regular.
    #[arg(long, conflicts_with = "file")]
    pub preset: Option<String>,
    /// Ring-definition file.
    #[arg(long)]
    pub file: Option<PathBuf>,
    /// Override the characteristic.
    #[arg(long)]
    pub p: Option<u64>,
}

#[derive(Args, Debug, Clone)]
pub struct SweepArgs {
    /// Comma-separated primes to sweep over instead of a single run.
    #[arg(long, value_delimiter = ',')]
    pub sweep_p: Vec<u64>,
    /// Comma-separated exponents e for q = p^e in a sweep.
    #[arg(long, value_delimiter = ',', default_value = "1")]
    pub sweep_e: Vec<u32>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Standard monomials of the closed fiber.
    Basis(RingArgs),
    /// Length of the closed fiber, the bound for the number of generators.
    Pardeg(RingArgs),
    /// Generators and relation table of the saturation of *1.
    Saturate {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long, required_unless_present = "sweep_p")]
        q: Option<u64>,
        #[command(flatten)]
        sweep: SweepArgs,
    },
    /// Freeness certificate, cross-checked by the syzygy oracle.
    Certify {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long, required_unless_present = "sweep_p")]
        q: Option<u64>,
        /// Degree bound for the syzygy oracle.
        #[arg(long, default_value_t = toricmcm::binomial::DEFAULT_SYZYGY_BOUND)]
        bound: u32,
        #[command(flatten)]
        sweep: SweepArgs,
    },
    /// Predicted family generators against the computed saturation.
    VerifyFamily {
        #[command(flatten)]
        ring: RingArgs,
        /// Defaults to the smallest admissible q.
        #[arg(long)]
        q: Option<u64>,
    },
    /// Whether the kernel of the parametrization kills the saturation.
    Annihilate {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long)]
        q: u64,
    },
    /// q-integral and F-integral closures of the image semigroup.
    Fintegral {
        #[command(flatten)]
        ring: RingArgs,
        /// Semigroup generators instead of a ring, e.g. "3 0 | 0 3 | 1 2".
        #[arg(long)]
        semigroup: Option<String>,
        /// q-integral closure for this q in addition to the F-normalization.
        #[arg(long)]
        q: Option<u64>,
    },
    /// Normalization of the image semigroup.
    Normalize {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long)]
        semigroup: Option<String>,
    },
    /// Power-integral elements of the image semigroup.
    Powint {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long)]
        semigroup: Option<String>,
    },
    /// Teichmüller images of the relations in length-2 Witt vectors.
    WittCheck {
        #[command(flatten)]
        ring: RingArgs,
        /// Truncation order N; defaults to twice the largest relation degree.
        #[arg(long)]
        trunc: Option<u32>,
        /// Run without the purely-toric precondition, with the given scalar lift.
        #[arg(long, value_parser = ["integer", "teichmuller"])]
        probe: Option<String>,
    },
    /// Naive intersection length and the length quotient.
    Chi {
        /// Comma-separated variable names of the ambient polynomial ring.
        #[arg(long, value_delimiter = ',', required = true)]
        vars: Vec<String>,
        /// Generator of the first ideal (repeatable).
        #[arg(long = "a", required = true)]
        a: Vec<String>,
        /// Generator of the second ideal (repeatable).
        #[arg(long = "b", required = true)]
        b: Vec<String>,
        #[arg(long, default_value_t = 7)]
        p: u64,
        /// Length of the first module at its minimal prime.
        #[arg(long, default_value_t = 1)]
        len_m: u64,
        /// Length of the second module at its minimal prime.
        #[arg(long, default_value_t = 1)]
        len_n: u64,
        /// Rank of a free MCM over the Noether normalization; replaces --len-m.
        #[arg(long, requires = "frac_deg")]
        rank: Option<u64>,
        #[arg(long, requires = "rank")]
        frac_deg: Option<u64>,
    },
}

/// Exit code and the report text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub exit_code: i32,
    pub output: String,
}

pub(crate) enum Failure {
    Definition(DefinitionError),
    Engine(toricmcm::Error),
    Io(String),
    Usage(String),
}

impl From<BuildError> for Failure {
    fn from(e: BuildError) -> Self {
        match e {
            BuildError::Definition(d) => Failure::Definition(d),
            BuildError::Engine(e) => Failure::Engine(e),
        }
    }
}

impl From<toricmcm::Error> for Failure {
    fn from(e: toricmcm::Error) -> Self {
        Failure::Engine(e)
    }
}

impl From<DefinitionError> for Failure {
    fn from(e: DefinitionError) -> Self {
        Failure::Definition(e)
    }
}

pub(crate) type CmdResult = Result<(Value, i32), Failure>;

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run_cli(&cli),
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            Outcome {
                exit_code: code,
                output: e.to_string(),
            }
        }
    }
}

pub fn run_cli(cli: &Cli) -> Outcome {
    let start = Instant::now();
    let (name, echo) = command_echo(&cli.command);
    let mut doc = json!({
        "schema_version": SCHEMA_VERSION,
        "engine_version": ENGINE_VERSION,
        "command": { "name": name, "args": echo },
    });
    let (hash, result) = match input_text(&cli.command) {
        Ok(text) => (Some(sha256_hex(&text)), dispatch(&cli.command)),
        Err(f) => (None, Err(f)),
    };
    doc["input_sha256"] = hash.map_or(Value::Null, Value::String);
    let exit_code = match result {
        Ok((value, code)) => {
            doc["result"] = value;
            code
        }
        Err(f) => {
            doc["error"] = report::failure_json(&f);
            1
        }
    };
    if cli.timing {
        doc["timing_ms"] = json!(start.elapsed().as_secs_f64() * 1000.0);
    }
    Outcome {
        exit_code,
        output: serde_json::to_string_pretty(&doc).expect("report serializes") + "\n",
    }
}

fn sha256_hex(text: &str) -> String {
    format!("{:x}", Sha256::digest(text.as_bytes()))
}

fn command_echo(cmd: &Command) -> (&'static str, Value) {
    let ring = |r: &RingArgs| json!({ "preset": r.preset, "file": r.file.as_ref().map(|f| f.display().to_string()), "p": r.p });
    match cmd {
        Command::Basis(r) => ("basis", json!({ "ring": ring(r) })),
        Command::Pardeg(r) => ("pardeg", json!({ "ring": ring(r) })),
        Command::Saturate { ring: r, q, sweep } => (
            "saturate",
            json!({ "ring": ring(r), "q": q, "sweep_p": sweep.sweep_p, "sweep_e": sweep.sweep_e }),
        ),
        Command::Certify {
            ring: r,
            q,
            bound,
            sweep,
        } => (
            "certify",
            json!({ "ring": ring(r), "q": q, "bound": bound, "sweep_p": sweep.sweep_p, "sweep_e": sweep.sweep_e }),
        ),
        Command::VerifyFamily { ring: r, q } => {
            ("verify-family", json!({ "ring": ring(r), "q": q }))
        }
        Command::Annihilate { ring: r, q } => ("annihilate", json!({ "ring": ring(r), "q": q })),
        Command::Fintegral {
            ring: r,
            semigroup,
            q,
        } => (
            "fintegral",
            json!({ "ring": ring(r), "semigroup": semigroup, "q": q }),
        ),
        Command::Normalize { ring: r, semigroup } => (
            "normalize",
            json!({ "ring": ring(r), "semigroup": semigroup }),
        ),
        Command::Powint { ring: r, semigroup } => {
            ("powint", json!({ "ring": ring(r), "semigroup": semigroup }))
        }
        Command::WittCheck {
            ring: r,
            trunc,
            probe,
        } => (
            "witt-check",
            json!({ "ring": ring(r), "trunc": trunc, "probe": probe }),
        ),
        Command::Chi {
            vars,
            a,
            b,
            p,
            len_m,
            len_n,
            rank,
            frac_deg,
        } => (
            "chi",
            json!({ "vars": vars, "a": a, "b": b, "p": p, "len_m": len_m, "len_n": len_n, "rank": rank, "frac_deg": frac_deg }),
        ),
    }
}

fn ring_args(cmd: &Command) -> Option<&RingArgs> {
    match cmd {
        Command::Basis(r) | Command::Pardeg(r) => Some(r),
        Command::Saturate { ring, .. }
        | Command::Certify { ring, .. }
        | Command::VerifyFamily { ring, .. }
        | Command::Annihilate { ring, .. }
        | Command::WittCheck { ring, .. } => Some(ring),
        Command::Fintegral {
            ring, semigroup, ..
        }
        | Command::Normalize { ring, semigroup }
        | Command::Powint { ring, semigroup } => semigroup.is_none().then_some(ring),
        Command::Chi { .. } => None,
    }
}

pub(crate) fn load_definition(r: &RingArgs) -> Result<RingDefinition, Failure> {
    let def = match (&r.preset, &r.file) {
        (Some(name), _) => preset(name).ok_or_else(|| {
            Failure::Usage(format!(
                "unknown preset '{name}' (expected one of {})",
                PRESET_NAMES.join(", ")
            ))
        })?,
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
            RingDefinition::parse(&text)?
        }
        (None, None) => {
            return Err(Failure::Usage(
                "a ring is required: pass --preset or --file".into(),
            ))
        }
    };
    Ok(def.with_p(r.p))
}

/// Canonical text the input hash is computed from.
fn input_text(cmd: &Command) -> Result<String, Failure> {
    if let Some(r) = ring_args(cmd) {
        return Ok(load_definition(r)?.to_text());
    }
    Ok(match cmd {
        Command::Fintegral {
            semigroup: Some(s), ..
        }
        | Command::Normalize {
            semigroup: Some(s), ..
        }
        | Command::Powint {
            semigroup: Some(s), ..
        } => format!("semigroup = {s}\n"),
        Command::Chi { vars, a, b, p, .. } => {
            format!(
                "p = {p}\nvars = {}\na = {}\nb = {}\n",
                vars.join(","),
                a.join(","),
                b.join(",")
            )
        }
        _ => String::new(),
    })
}

pub(crate) fn build(r: &RingArgs) -> Result<BuiltRing, Failure> {
    Ok(load_definition(r)?.build()?)
}

fn dispatch(cmd: &Command) -> CmdResult {
    match cmd {
        Command::Basis(r) => report::basis(&build(r)?),
        Command::Pardeg(r) => report::pardeg(&build(r)?),
        Command::Saturate { ring, q, sweep } => sweepable(ring, *q, sweep, report::saturate),
        Command::Certify {
            ring,
            q,
            bound,
            sweep,
        } => sweepable(ring, *q, sweep, |built, q| {
            report::certify(built, q, *bound)
        }),
        Command::VerifyFamily { ring, q } => report::verify_family(&build(ring)?, *q),
        Command::Annihilate { ring, q } => report::annihilate(&build(ring)?, *q),
        Command::Fintegral { ring, semigroup, q } => {
            let (g, p) = report::semigroup_input(ring, semigroup.as_deref())?;
            report::fintegral(&g, p, *q)
        }
        Command::Normalize { ring, semigroup } => {
            let (g, _) = report::semigroup_input(ring, semigroup.as_deref())?;
            report::normalize(&g)
        }
        Command::Powint { ring, semigroup } => {
            let (g, _) = report::semigroup_input(ring, semigroup.as_deref())?;
            report::powint(&g)
        }
        Command::WittCheck { ring, trunc, probe } => {
            report::witt_check(&build(ring)?, *trunc, probe.as_deref())
        }
        Command::Chi {
            vars,
            a,
            b,
            p,
            len_m,
            len_n,
            rank,
            frac_deg,
        } => report::chi(vars, a, b, *p, *len_m, *len_n, rank.zip(*frac_deg)),
    }
}

/// A single run for --q, or a (p, q) grid fanned out over a thread pool and
/// reported in key order.
fn sweepable<F>(ring: &RingArgs, q: Option<u64>, sweep: &SweepArgs, f: F) -> CmdResult
where
    F: Fn(&BuiltRing, u64) -> CmdResult + Sync,
{
    if sweep.sweep_p.is_empty() {
        let q = q.ok_or_else(|| Failure::Usage("--q is required".into()))?;
        return f(&build(ring)?, q);
    }
    let def = load_definition(ring)?;
    let mut keys: Vec<(u64, u64)> = Vec::new();
    for &p in &sweep.sweep_p {
        for &e in &sweep.sweep_e {
            let q = p
                .checked_pow(e)
                .ok_or_else(|| Failure::Usage(format!("{p}^{e} overflows")))?;
            keys.push((p, q));
        }
    }
    keys.sort();
    keys.dedup();
    let entries: Vec<Value> = keys
        .par_iter()
        .map(|&(p, q)| {
            let run = def
                .with_p(Some(p))
                .build()
                .map_err(Failure::from)
                .and_then(|b| f(&b, q));
            match run {
                Ok((v, code)) => json!({ "p": p, "q": q, "exit_code": code, "result": v }),
                Err(e) => {
                    json!({ "p": p, "q": q, "exit_code": 1, "error": report::failure_json(&e) })
                }
            }
        })
        .collect();
    let worst = entries
        .iter()
        .map(|e| e["exit_code"].as_i64().unwrap_or(1) as i32)
        .fold(0, |acc, c| match (acc, c) {
            (1, _) | (_, 1) => 1,
            (2, _) | (_, 2) => 2,
            _ => 0,
        });
    Ok((json!({ "sweep": entries }), worst))
}
