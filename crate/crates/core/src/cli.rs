//! Command-line front end. Every flag can also be set through a
//! `TRACE_KERNEL_*` environment variable; flags take precedence.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::construction::build_theta;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::permutations::EnumerationCap;
use crate::rep::random_matrix;
use crate::scalar::{Fp, PrimeModulus, ScalarKind, MERSENNE_61};
use crate::verify::{self, al_sum_fast, al_sum_naive, VerificationReport, VerifyConfig};

#[derive(Debug, Parser)]
#[command(
    name = "trace-kernel",
    version,
    about = "Build and verify the kernel chains Θ_n"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write Θ_n as chain JSON.
    Construct(RunConfig),
    /// Run one check, or all of them, and write a JSON report.
    Verify {
        check: CheckName,
        #[command(flatten)]
        config: RunConfig,
        /// With `al`: also find a nonzero value of the degree 2n−1 polynomial.
        #[arg(long)]
        sharpness: bool,
    },
    /// Time naive vs subset evaluation and the kernel check for n = 1..=N, as CSV.
    Bench(RunConfig),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CheckName {
    Kernel,
    Al,
    Distinct,
    Homology,
    Control,
    Sl2,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Modp,
    Rational,
}

impl From<KindArg> for ScalarKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Modp => ScalarKind::ModP,
            KindArg::Rational => ScalarKind::Rational,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct RunConfig {
    /// Matrix size; Θ_n is a sum over S_2n.
    #[arg(long, env = "TRACE_KERNEL_N", default_value_t = 2,
          value_parser = clap::value_parser!(u64).range(1..))]
    pub n: u64,
    /// Random trials [default: 100 for modp, 25 for rational].
    #[arg(long, env = "TRACE_KERNEL_TRIALS",
          value_parser = clap::value_parser!(u64).range(1..))]
    pub trials: Option<u64>,
    #[arg(long, env = "TRACE_KERNEL_KIND", value_enum, default_value_t = KindArg::Modp)]
    pub kind: KindArg,
    #[arg(long, env = "TRACE_KERNEL_PRIME", default_value_t = MERSENNE_61)]
    pub prime: u64,
    #[arg(long, env = "TRACE_KERNEL_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Entries of rational samples lie in [-bound, bound].
    #[arg(long, env = "TRACE_KERNEL_BOUND", default_value_t = 10)]
    pub bound: u64,
    /// Largest m for which m! permutations may be enumerated.
    #[arg(long, env = "TRACE_KERNEL_CAP", default_value_t = 10)]
    pub cap: usize,
    #[arg(long, env = "TRACE_KERNEL_WORKERS")]
    pub workers: Option<usize>,
    #[arg(long, env = "TRACE_KERNEL_OUT")]
    pub out: Option<PathBuf>,
}

impl RunConfig {
    pub fn verify_config(&self, sharpness: bool) -> VerifyConfig {
        let kind = ScalarKind::from(self.kind);
        let trials = self.trials.map(|t| t as usize).unwrap_or(match kind {
            ScalarKind::ModP => 100,
            ScalarKind::Rational => 25,
        });
        VerifyConfig {
            n: self.n as usize,
            trials,
            kind,
            prime: self.prime,
            seed: self.seed,
            bound: self.bound,
            cap: EnumerationCap(self.cap),
            sharpness,
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Io(_) | Error::Json(_) => 1,
        _ => 2,
    }
}

pub fn run(cli: Cli) -> i32 {
    let config = match &cli.command {
        Command::Construct(c) | Command::Bench(c) | Command::Verify { config: c, .. } => c,
    };
    if let Some(w) = config.workers {
        // Fails only if a pool already exists, in which case that one is used.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build_global();
    }
    let result = match &cli.command {
        Command::Construct(c) => cmd_construct(c),
        Command::Verify {
            check,
            config,
            sharpness,
        } => cmd_verify(*check, config, *sharpness),
        Command::Bench(c) => cmd_bench(c),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn write_output(path: Option<&Path>, body: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, body)?,
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(body.as_bytes())?;
            out.write_all(b"\n")?;
        }
    }
    Ok(())
}

pub fn cmd_construct(config: &RunConfig) -> Result<i32> {
    let n = config.n as usize;
    let theta = build_theta(n, EnumerationCap(config.cap))?;
    let json = theta.to_json()?;
    write_output(config.out.as_deref(), &json)?;

    let lens: Vec<usize> = theta.iter().map(|(c, _)| c.len()).collect();
    let (plus, minus) = theta.unit_sign_counts();
    let summary = format!(
        "n = {n}: {} terms ({plus} with +1, {minus} with -1); letter length min {} max {}",
        theta.support_size(),
        lens.iter().min().unwrap_or(&0),
        lens.iter().max().unwrap_or(&0),
    );
    if config.out.is_some() {
        println!("{summary}");
    } else {
        eprintln!("{summary}");
    }
    Ok(0)
}

pub fn run_check(check: CheckName, cfg: &VerifyConfig) -> Result<VerificationReport> {
    match check {
        CheckName::Kernel => verify::verify_kernel(cfg),
        CheckName::Al => verify::verify_amitsur_levitzki(cfg),
        CheckName::Distinct => verify::verify_noncancellation(cfg),
        CheckName::Homology => verify::verify_homology(cfg),
        CheckName::Control => verify::verify_negative_control(cfg),
        CheckName::Sl2 => verify::verify_sl2_relation(cfg),
        CheckName::All => verify::verify_all(cfg),
    }
}

pub fn cmd_verify(check: CheckName, config: &RunConfig, sharpness: bool) -> Result<i32> {
    let cfg = config.verify_config(sharpness);
    let report = run_check(check, &cfg)?;
    let parts = if report.reports.is_empty() {
        std::slice::from_ref(&report)
    } else {
        &report.reports[..]
    };
    for r in parts {
        eprintln!(
            "{:<9} {} ({} ms)",
            r.check,
            if r.passed() { "pass" } else { "FAIL" },
            r.elapsed_ms
        );
    }
    write_output(config.out.as_deref(), &report.to_json_pretty()?)?;
    Ok(if report.passed() { 0 } else { 1 })
}

fn time_ms<T>(f: impl FnOnce() -> Result<T>) -> Result<f64> {
    let started = Instant::now();
    f()?;
    Ok(started.elapsed().as_secs_f64() * 1e3)
}

/// CSV `n,algorithm,elapsed_ms` for n = 1..=config.n. The naive row is
/// skipped once 2n exceeds the enumeration cap.
pub fn cmd_bench(config: &RunConfig) -> Result<i32> {
    let ctx = PrimeModulus::new(config.prime)?;
    let cap = EnumerationCap(config.cap);
    let mut rows = vec!["n,algorithm,elapsed_ms".to_string()];
    for n in 1..=config.n as usize {
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        let mats: Vec<Matrix<Fp>> = (0..2 * n)
            .map(|_| random_matrix::<Fp, _>(n, ctx, &mut rng, config.bound))
            .collect();
        if 2 * n <= cap.0 {
            let ms = time_ms(|| al_sum_naive(&mats, cap))?;
            rows.push(format!("{n},al_naive,{ms:.3}"));
        }
        let ms = time_ms(|| al_sum_fast(&mats))?;
        rows.push(format!("{n},al_fast,{ms:.3}"));
        let cfg = VerifyConfig {
            n,
            trials: config.trials.unwrap_or(1) as usize,
            kind: ScalarKind::ModP,
            ..config.verify_config(false)
        };
        let ms = time_ms(|| verify::verify_kernel(&cfg))?;
        rows.push(format!("{n},kernel,{ms:.3}"));
    }
    write_output(config.out.as_deref(), &rows.join("\n"))?;
    Ok(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_documented_flags() {
        let cli = Cli::try_parse_from([
            "trace-kernel",
            "verify",
            "kernel",
            "--n",
            "3",
            "--kind",
            "rational",
            "--trials",
            "25",
        ])
        .unwrap();
        let Command::Verify {
            check,
            config,
            sharpness,
        } = cli.command
        else {
            panic!("expected verify");
        };
        assert_eq!(check, CheckName::Kernel);
        assert!(!sharpness);
        let cfg = config.verify_config(false);
        assert_eq!((cfg.n, cfg.trials, cfg.kind), (3, 25, ScalarKind::Rational));
        assert_eq!(cfg.prime, 2305843009213693951);
    }

    #[test]
    fn kind_dependent_trial_default() {
        let cli = Cli::try_parse_from(["trace-kernel", "verify", "kernel", "--kind", "rational"])
            .unwrap();
        let Command::Verify { config, .. } = cli.command else {
            panic!("expected verify");
        };
        assert_eq!(config.verify_config(false).trials, 25);
    }

    #[test]
    fn rejects_zero_n() {
        let err = Cli::try_parse_from(["trace-kernel", "construct", "--n", "0"]).unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn error_codes() {
        assert_eq!(exit_code(&Error::InvalidPrime(4)), 2);
        assert_eq!(
            exit_code(&Error::Resource {
                degree: 12,
                cap: 10,
                requested: "12!".into()
            }),
            2
        );
        assert_eq!(exit_code(&Error::Io(std::io::Error::other("x"))), 1);
    }
}
