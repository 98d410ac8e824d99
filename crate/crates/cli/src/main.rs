//! `muposet`: compute, construct, verify, sweep and export.
//!
//! Exit status: 0 on success or a passing check, 1 when a check fails or a
//! run-time error occurs, 2 for usage and parse errors.

mod export;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use muposet::balloon::{
    balloon_2413, balloon_general, pi_sequence, reductions, unballoon_2413, unballoon_general,
    GeneralBalloonSpec,
};
use muposet::chains::{mu_via_chains, DEFAULT_CHAIN_LIMIT};
use muposet::mobius::{mu, mu_max_sweep, mu_principal, MuOptions, SweepConfig};
use muposet::store::{MuCache, CACHE_ENV};
use muposet::verify::{check_conjecture, Check, Conjecture, VerificationReport, VerifyConfig};
use muposet::{Error, Permutation};

#[derive(Parser, Debug)]
#[command(name = "muposet", version, about = "Möbius function of the permutation pattern poset")]
struct Cli {
    /// μ cache file, read before and written after commands that compute μ.
    #[arg(long, global = true, env = CACHE_ENV)]
    cache: Option<PathBuf>,

    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print μ(1, π), or μ(σ, π) with --from.
    Mu {
        pi: Permutation,
        #[arg(long)]
        from: Option<Permutation>,
        #[arg(long, value_enum, default_value_t = Method::Auto)]
        method: Method,
    },
    /// Build ⟨2413, β⟩, a general balloon with --alpha/--at, or undo one with --unwrap.
    Balloon(BalloonArgs),
    /// Print π^(n) and its μ.
    Sequence { n: usize },
    /// List the fifteen reductions of ⟨2413, β⟩ as `<mask> <σ> <proper|improper>`.
    Reductions { beta: Permutation },
    /// Run a verification check (or `all`).
    Verify {
        check: String,
        #[arg(long)]
        max_len: Option<usize>,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_CHAIN_LIMIT)]
        chain_limit: u128,
    },
    /// Test a conjectured formula against computed μ.
    Conjecture {
        which: Conjecture,
        #[arg(long, default_value_t = 5)]
        max_len: usize,
    },
    /// Maximum |μ| for every length up to --len, one symmetry class at a time.
    Sweep {
        #[arg(long)]
        len: usize,
        /// Write every class representative and its μ as CSV.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = SweepConfig::default().limit)]
        limit: usize,
    },
    /// Write the interval as DOT, or a permutation plot as CSV.
    #[command(subcommand)]
    Export(export::Export),
}

#[derive(Args, Debug)]
struct BalloonArgs {
    /// β to balloon, or the permutation to unwrap with --unwrap.
    perm: Permutation,
    #[arg(long, requires = "at")]
    alpha: Option<Permutation>,
    /// Column and row indexes `i,j`.
    #[arg(long, requires = "alpha", value_parser = parse_indexes)]
    at: Option<(usize, usize)>,
    #[arg(long)]
    unwrap: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Method {
    Recursive,
    Chains,
    Auto,
}

fn parse_indexes(s: &str) -> Result<(usize, usize), String> {
    let (i, j) = s.split_once(',').ok_or_else(|| format!("expected i,j but got {s:?}"))?;
    let num = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("{t:?}: {e}"));
    Ok((num(i)?, num(j)?))
}

/// An error that should exit with status 2.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    Usage(msg.into()).into()
}

/// Errors caused by the arguments rather than by the computation.
fn is_input_error(e: &Error) -> bool {
    matches!(
        e,
        Error::Malformed(_)
            | Error::NotBijection { .. }
            | Error::TooLong
            | Error::EmptySelection
            | Error::PositionOutOfRange { .. }
            | Error::SequenceIndex
            | Error::BalloonIndex { .. }
            | Error::MonotoneBeta(_)
            | Error::SweepLimit { .. }
            | Error::Precondition(_)
    )
}

struct Session {
    path: Option<PathBuf>,
    cache: MuCache,
    dirty: bool,
}

impl Session {
    fn open(path: Option<PathBuf>) -> anyhow::Result<Self> {
        let cache = match &path {
            Some(p) => MuCache::load_or_new(p).with_context(|| format!("reading cache {}", p.display()))?,
            None => MuCache::new(),
        };
        Ok(Session { path, cache, dirty: false })
    }

    fn close(self) -> anyhow::Result<()> {
        if let (Some(p), true) = (&self.path, self.dirty) {
            self.cache.save(p).with_context(|| format!("writing cache {}", p.display()))?;
        }
        Ok(())
    }
}

fn print_report(r: &VerificationReport) -> bool {
    println!("{r}");
    r.passed()
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    if let Some(j) = cli.jobs {
        rayon::ThreadPoolBuilder::new().num_threads(j.max(1)).build_global()?;
    }
    let mut out = std::io::stdout().lock();
    match cli.command {
        Command::Mu { pi, from, method } => {
            let mut s = Session::open(cli.cache)?;
            let value = match (from, method) {
                (Some(sigma), Method::Chains) => {
                    return Err(usage(format!(
                        "--method chains computes mu(1, pi) only; drop --from {sigma} or pick another method"
                    )))
                }
                (Some(sigma), _) => mu(&sigma, &pi, &mut s.cache)?,
                (None, Method::Chains) => mu_via_chains(&pi, DEFAULT_CHAIN_LIMIT)?,
                (None, Method::Recursive) => mu_principal(&pi, &mut s.cache, MuOptions::PLAIN)?.mu,
                (None, Method::Auto) => mu_principal(&pi, &mut s.cache, MuOptions::ACCELERATED)?.mu,
            };
            s.dirty = method != Method::Chains;
            writeln!(out, "{value}")?;
            s.close()?;
            Ok(true)
        }
        Command::Balloon(args) => {
            let spec = match (args.alpha, args.at) {
                (Some(alpha), Some((i, j))) => Some(GeneralBalloonSpec::new(alpha, i, j)?),
                _ => None,
            };
            let result = match (&spec, args.unwrap) {
                (None, false) => Some(balloon_2413(&args.perm)),
                (None, true) => unballoon_2413(&args.perm),
                (Some(spec), false) => Some(balloon_general(spec, &args.perm)),
                (Some(spec), true) => unballoon_general(spec, &args.perm),
            };
            match result {
                Some(p) => writeln!(out, "{p}")?,
                None => writeln!(out, "not-a-balloon")?,
            }
            Ok(true)
        }
        Command::Sequence { n } => {
            let mut s = Session::open(cli.cache)?;
            let pi = pi_sequence(n)?;
            let m = mu_principal(&pi, &mut s.cache, MuOptions::ACCELERATED)?.mu;
            s.dirty = true;
            writeln!(out, "{pi}  mu={m}")?;
            s.close()?;
            Ok(true)
        }
        Command::Reductions { beta } => {
            for r in reductions(&beta) {
                writeln!(out, "{r}")?;
            }
            Ok(true)
        }
        Command::Verify { check, max_len, samples, seed, chain_limit } => {
            let cfg = VerifyConfig { max_len, samples, seed, chain_limit };
            let checks: Vec<Check> = if check == "all" {
                Check::ALL.to_vec()
            } else {
                vec![check.parse::<Check>().map_err(|e| usage(e.to_string()))?]
            };
            let mut ok = true;
            for c in checks {
                ok &= print_report(&c.run(&cfg)?);
            }
            Ok(ok)
        }
        Command::Conjecture { which, max_len } => Ok(print_report(&check_conjecture(which, max_len)?)),
        Command::Sweep { len, out: csv_path, limit } => {
            let mut s = Session::open(cli.cache)?;
            if !s.cache.is_canonical() {
                return Err(usage("sweeps need a canonical cache file"));
            }
            let rows = mu_max_sweep(len, &mut s.cache, SweepConfig { limit, ..SweepConfig::default() })?;
            s.dirty = true;
            for r in &rows {
                let w: Vec<String> = r.witnesses.iter().map(ToString::to_string).collect();
                writeln!(out, "n={} max={} witness={}", r.n, r.max_abs, w.join(","))?;
            }
            let mut ok = true;
            for r in &rows {
                let required = match r.n / 4 {
                    0 => "1/2".to_string(),
                    k => (1u128 << (k - 1)).to_string(),
                };
                let verdict = if r.meets_growth_bound() { "ok" } else { "VIOLATED" };
                ok &= r.meets_growth_bound();
                writeln!(out, "bound n={} required={required} max={} {verdict}", r.n, r.max_abs)?;
            }
            if let Some(path) = csv_path {
                export::write_mu_csv(&path, &s.cache, len)?;
            }
            s.close()?;
            Ok(ok)
        }
        Command::Export(e) => {
            e.run()?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            let input = e.downcast_ref::<Usage>().is_some()
                || e.downcast_ref::<Error>().is_some_and(is_input_error);
            ExitCode::from(if input { 2 } else { 1 })
        }
    }
}
