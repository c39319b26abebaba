//! End-to-end checks. Every check is deterministic in its configuration:
//! trial `t` draws from a ChaCha stream seeded with `seed ^ t`, and parallel
//! trials are reported in trial order.

mod report;
mod standard_poly;

use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

pub use report::{Outcome, ReportParams, VerificationReport};
pub use standard_poly::{al_sum_fast, al_sum_naive, MAX_FAST_DEGREE};

use crate::chains::Chain;
use crate::construction::{build_theta, build_x, certify_homology, certify_pairwise_distinct};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::permutations::{factorial, EnumerationCap};
use crate::rep::{random_matrix, random_representation, Representation};
use crate::scalar::{Fp, PrimeModulus, Rational, Scalar, ScalarKind, MERSENNE_61};
use crate::words::Word;

/// How many `(2n−1)`-tuples the sharpness search draws before giving up.
pub const SHARPNESS_ATTEMPTS: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyConfig {
    pub n: usize,
    pub trials: usize,
    pub kind: ScalarKind,
    pub prime: u64,
    pub seed: u64,
    pub bound: u64,
    pub cap: EnumerationCap,
    /// Also search for a nonzero `S_{2n−1}` value when checking the identity.
    pub sharpness: bool,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            n: 2,
            trials: 100,
            kind: ScalarKind::ModP,
            prime: MERSENNE_61,
            seed: 0,
            bound: 10,
            cap: EnumerationCap::default(),
            sharpness: false,
        }
    }
}

impl VerifyConfig {
    fn trial_params(&self) -> ReportParams {
        ReportParams {
            n: Some(self.n),
            trials: Some(self.trials),
            kind: Some(self.kind),
            seed: Some(self.seed),
            prime: (self.kind == ScalarKind::ModP).then_some(self.prime),
            bound: Some(self.bound),
        }
    }

    fn n_params(&self) -> ReportParams {
        ReportParams {
            n: Some(self.n),
            ..Default::default()
        }
    }

    fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::Domain("n must be at least 1".into()));
        }
        if self.trials == 0 {
            return Err(Error::Domain("trials must be at least 1".into()));
        }
        if self.kind == ScalarKind::ModP {
            PrimeModulus::new(self.prime)?;
        }
        Ok(())
    }
}

pub fn trial_seed(seed: u64, trial: usize) -> u64 {
    seed ^ trial as u64
}

fn finish(
    check: &str,
    params: ReportParams,
    started: Instant,
    witness: Option<Value>,
    details: Option<Value>,
) -> VerificationReport {
    VerificationReport {
        check: check.to_string(),
        params,
        outcome: if witness.is_none() {
            Outcome::Pass
        } else {
            Outcome::Fail
        },
        witness,
        details,
        reports: Vec::new(),
        elapsed_ms: started.elapsed().as_millis() as u64,
    }
}

fn matrix_json<S: Scalar>(m: &Matrix<S>) -> Value {
    json!(m.to_string_rows())
}

fn matrices_json<S: Scalar>(ms: &[Matrix<S>]) -> Value {
    Value::Array(ms.iter().map(matrix_json).collect())
}

fn rep_json<S: Scalar>(rho: &Representation<S>) -> Value {
    json!({ "a": matrix_json(rho.image_a()), "b": matrix_json(rho.image_b()) })
}

/// Runs `f` on the selected ring.
macro_rules! with_scalar {
    ($cfg:expr, $f:ident ( $($arg:expr),* )) => {
        match $cfg.kind {
            ScalarKind::Rational => $f::<Rational>($($arg,)* ()),
            ScalarKind::ModP => $f::<Fp>($($arg,)* PrimeModulus::new($cfg.prime)?),
        }
    };
}

/// First failing trial in trial order, if any.
fn run_trials<F>(trials: usize, f: F) -> Result<Option<Value>>
where
    F: Fn(usize) -> Result<Option<Value>> + Sync + Send,
{
    let results: Vec<Result<Option<Value>>> = (0..trials).into_par_iter().map(f).collect();
    for r in results {
        if let Some(w) = r? {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

fn sample_tuple<S: Scalar>(
    n: usize,
    count: usize,
    ctx: S::Ctx,
    rng: &mut ChaCha8Rng,
    bound: u64,
) -> Vec<Matrix<S>> {
    (0..count)
        .map(|_| random_matrix::<S, _>(n, ctx, rng, bound))
        .collect()
}

/// Checks `S_degree ≡ 0` on `trials` random tuples of arbitrary `n × n`
/// matrices. Passes for `degree ≥ 2n`; a smaller degree is expected to fail
/// with a witness.
pub fn verify_standard_identity(cfg: &VerifyConfig, degree: usize) -> Result<VerificationReport> {
    cfg.validate()?;
    let started = Instant::now();
    let (witness, spot_checked) = with_scalar!(cfg, standard_identity_trials(cfg, degree))?;
    let details = json!({ "degree": degree, "naive_spot_check": spot_checked });
    Ok(finish(
        "al",
        cfg.trial_params(),
        started,
        witness,
        Some(details),
    ))
}

fn standard_identity_trials<S: Scalar>(
    cfg: &VerifyConfig,
    degree: usize,
    ctx: S::Ctx,
) -> Result<(Option<Value>, bool)> {
    S::check_bound(ctx, cfg.bound)?;
    let spot_check = degree <= cfg.cap.0;
    let witness = run_trials(cfg.trials, |t| {
        let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(cfg.seed, t));
        let mats = sample_tuple::<S>(cfg.n, degree, ctx, &mut rng, cfg.bound);
        let fast = al_sum_fast(&mats)?;
        if t == 0 && spot_check {
            let naive = al_sum_naive(&mats, cfg.cap)?;
            if naive != fast {
                return Ok(Some(json!({
                    "trial": t,
                    "reason": "fast and naive evaluators disagree",
                    "matrices": matrices_json(&mats),
                    "fast": matrix_json(&fast),
                    "naive": matrix_json(&naive),
                })));
            }
        }
        Ok((!fast.is_zero()).then(|| {
            json!({
                "trial": t,
                "matrices": matrices_json(&mats),
                "value": matrix_json(&fast),
            })
        }))
    })?;
    Ok((witness, spot_check))
}

/// Draws up to `attempts` random `(2n−1)`-tuples and returns the first whose
/// standard polynomial is nonzero.
pub fn find_sharpness_witness(cfg: &VerifyConfig, attempts: usize) -> Result<Option<Value>> {
    cfg.validate()?;
    with_scalar!(cfg, sharpness_search(cfg, attempts))
}

fn sharpness_search<S: Scalar>(
    cfg: &VerifyConfig,
    attempts: usize,
    ctx: S::Ctx,
) -> Result<Option<Value>> {
    S::check_bound(ctx, cfg.bound)?;
    let degree = 2 * cfg.n - 1;
    for t in 0..attempts {
        // offset keeps these draws apart from the identity trials
        let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(cfg.seed, t) ^ (1 << 63));
        let mats = sample_tuple::<S>(cfg.n, degree, ctx, &mut rng, cfg.bound);
        let value = al_sum_fast(&mats)?;
        if !value.is_zero() {
            return Ok(Some(json!({
                "attempt": t,
                "degree": degree,
                "matrices": matrices_json(&mats),
                "value": matrix_json(&value),
            })));
        }
    }
    Ok(None)
}

/// `S_2n ≡ 0` on `M_n`, plus the sharpness search when `cfg.sharpness`.
pub fn verify_amitsur_levitzki(cfg: &VerifyConfig) -> Result<VerificationReport> {
    let started = Instant::now();
    let mut report = verify_standard_identity(cfg, 2 * cfg.n)?;
    if cfg.sharpness {
        let found = find_sharpness_witness(cfg, SHARPNESS_ATTEMPTS)?;
        let details = report.details.get_or_insert_with(|| json!({}));
        details["sharpness_witness"] = found.clone().unwrap_or(Value::Null);
        if found.is_none() && report.witness.is_none() {
            report.outcome = Outcome::Fail;
            report.witness = Some(json!({
                "reason": format!(
                    "no nonzero S_{} value in {SHARPNESS_ATTEMPTS} attempts",
                    2 * cfg.n - 1
                ),
            }));
        }
    }
    report.elapsed_ms = started.elapsed().as_millis() as u64;
    Ok(report)
}

/// For random `ρ` into `GL_n`, checks `tr ρ(Θ_n) = 0` and, independently,
/// `tr(A · S_2n(ρ(x_1), …, ρ(x_2n))) = 0`, requiring the two to agree.
pub fn verify_kernel(cfg: &VerifyConfig) -> Result<VerificationReport> {
    cfg.validate()?;
    let started = Instant::now();
    let theta = build_theta(cfg.n, cfg.cap)?;
    let witness = with_scalar!(cfg, kernel_trials(cfg, &theta))?;
    let details = json!({ "support_size": theta.support_size() });
    Ok(finish(
        "kernel",
        cfg.trial_params(),
        started,
        witness,
        Some(details),
    ))
}

fn kernel_trials<S: Scalar>(
    cfg: &VerifyConfig,
    theta: &Chain,
    ctx: S::Ctx,
) -> Result<Option<Value>> {
    let xs: Vec<Word> = (1..=2 * cfg.n as i64).map(build_x).collect::<Result<_>>()?;
    run_trials(cfg.trials, |t| {
        let seed = trial_seed(cfg.seed, t);
        let rho = random_representation::<S>(cfg.n, ctx, seed, cfg.bound)?;
        let chain_trace = rho.trace_of_chain(theta);
        let images: Vec<Matrix<S>> = xs.iter().map(|x| rho.evaluate_word(x)).collect();
        let al_trace = rho.image_a().trace_of_product(&al_sum_fast(&images)?)?;
        if chain_trace.is_zero() && al_trace.is_zero() {
            return Ok(None);
        }
        Ok(Some(json!({
            "trial": t,
            "seed": seed,
            "representation": rep_json(&rho),
            "chain_trace": chain_trace.to_string(),
            "al_trace": al_trace.to_string(),
        })))
    })
}

/// `Θ_n` has `(2n)!` terms, all `±1`, half of each sign, and the classes
/// pass the pairwise-distinctness certificate.
pub fn verify_noncancellation(cfg: &VerifyConfig) -> Result<VerificationReport> {
    cfg.validate()?;
    let started = Instant::now();
    let cert = match certify_pairwise_distinct(cfg.n, cfg.cap) {
        Ok(c) => c,
        Err(Error::CertificationFailure(why)) => {
            return Ok(finish(
                "distinct",
                cfg.n_params(),
                started,
                Some(json!({ "reason": why })),
                None,
            ));
        }
        Err(e) => return Err(e),
    };
    let theta = build_theta(cfg.n, cfg.cap)?;
    let expected = factorial(2 * cfg.n) as usize;
    let (plus, minus) = theta.unit_sign_counts();
    let ok = cert.all_distinct()
        && theta.support_size() == expected
        && plus + minus == expected
        && plus == minus;
    let details = json!({
        "support_size": theta.support_size(),
        "plus_terms": plus,
        "minus_terms": minus,
        "certificate": cert,
    });
    let witness = (!ok)
        .then(|| json!({ "reason": "support or sign counts wrong", "expected_support": expected }));
    Ok(finish(
        "distinct",
        cfg.n_params(),
        started,
        witness,
        Some(details),
    ))
}

pub fn verify_homology(cfg: &VerifyConfig) -> Result<VerificationReport> {
    cfg.validate()?;
    let started = Instant::now();
    match certify_homology(cfg.n, cfg.cap) {
        Ok(cert) => Ok(finish(
            "homology",
            cfg.n_params(),
            started,
            None,
            Some(json!(cert)),
        )),
        Err(Error::CertificationFailure(why)) => Ok(finish(
            "homology",
            cfg.n_params(),
            started,
            Some(json!({ "reason": why })),
            None,
        )),
        Err(e) => Err(e),
    }
}

/// Guards against an evaluator that always returns zero: `Θ_n` with its
/// last term removed, and the single class `|a|`, must each have a nonzero
/// trace at some sampled `ρ`, while the full `Θ_n` stays zero throughout.
pub fn verify_negative_control(cfg: &VerifyConfig) -> Result<VerificationReport> {
    cfg.validate()?;
    let started = Instant::now();
    let theta = build_theta(cfg.n, cfg.cap)?;
    let mut truncated = theta.clone();
    let removed = truncated.last_class().cloned().expect("theta is nonzero");
    truncated.remove_term(&removed);
    let (witness, details) = with_scalar!(cfg, control_trials(cfg, &theta, &truncated))?;
    let mut details = details;
    details["removed_class"] = json!(removed.to_string());
    Ok(finish(
        "control",
        cfg.trial_params(),
        started,
        witness,
        Some(details),
    ))
}

fn control_trials<S: Scalar>(
    cfg: &VerifyConfig,
    theta: &Chain,
    truncated: &Chain,
    ctx: S::Ctx,
) -> Result<(Option<Value>, Value)> {
    let single_a = Chain::term(&Word::a(), 1);
    let mut truncated_hit = None;
    let mut a_hit = None;
    let mut examined = 0;
    for t in 0..cfg.trials {
        let seed = trial_seed(cfg.seed, t);
        let rho = random_representation::<S>(cfg.n, ctx, seed, cfg.bound)?;
        examined += 1;
        let full = rho.trace_of_chain(theta);
        if !full.is_zero() {
            let w = json!({
                "trial": t,
                "reason": "full chain has nonzero trace",
                "representation": rep_json(&rho),
                "value": full.to_string(),
            });
            return Ok((Some(w), json!({})));
        }
        if truncated_hit.is_none() {
            let v = rho.trace_of_chain(truncated);
            if !v.is_zero() {
                truncated_hit = Some(json!({ "trial": t, "value": v.to_string() }));
            }
        }
        if a_hit.is_none() {
            let v = rho.trace_of_chain(&single_a);
            if !v.is_zero() {
                a_hit = Some(json!({ "trial": t, "value": v.to_string() }));
            }
        }
        if truncated_hit.is_some() && a_hit.is_some() {
            break;
        }
    }
    let details = json!({
        "trials_examined": examined,
        "truncated_nonzero": truncated_hit,
        "single_class_nonzero": a_hit,
    });
    let witness = (truncated_hit.is_none() || a_hit.is_none()).then(
        || json!({ "reason": "every sampled trace vanished; the evaluator may be degenerate" }),
    );
    Ok((witness, details))
}

/// A random element of `SL_2(Q)`: integer `a ≠ 0, b, c` from `[-bound, bound]`
/// and `d = (1 + bc)/a`.
pub fn random_sl2<R: Rng + ?Sized>(rng: &mut R, bound: u64) -> Result<Matrix<Rational>> {
    if bound == 0 {
        return Err(Error::Domain("SL2 sampling needs bound >= 1".into()));
    }
    let b = bound as i64;
    let mut draw = || BigInt::from(rng.gen_range(-b..=b));
    let a = loop {
        let a = draw();
        if a != BigInt::from(0) {
            break a;
        }
    };
    let (b, c) = (draw(), draw());
    let d = BigRational::new(BigInt::from(1) + &b * &c, a.clone());
    Matrix::from_rows(
        (),
        vec![
            vec![BigRational::from_integer(a), BigRational::from_integer(b)],
            vec![BigRational::from_integer(c), d],
        ],
    )
}

/// `tr(AB) + tr(A⁻¹B) = tr(A)·tr(B)` on random `SL_2(Q)` pairs.
pub fn verify_sl2_relation(cfg: &VerifyConfig) -> Result<VerificationReport> {
    if cfg.trials == 0 {
        return Err(Error::Domain("trials must be at least 1".into()));
    }
    let started = Instant::now();
    let witness = run_trials(cfg.trials, |t| {
        let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(cfg.seed, t));
        let a = random_sl2(&mut rng, cfg.bound)?;
        let b = random_sl2(&mut rng, cfg.bound)?;
        let lhs = a.trace_of_product(&b)? + a.inverse()?.trace_of_product(&b)?;
        let rhs = a.trace() * b.trace();
        Ok((lhs != rhs).then(|| {
            json!({
                "trial": t,
                "a": matrix_json(&a),
                "b": matrix_json(&b),
                "lhs": lhs.to_string(),
                "rhs": rhs.to_string(),
            })
        }))
    })?;
    let params = ReportParams {
        trials: Some(cfg.trials),
        kind: Some(ScalarKind::Rational),
        seed: Some(cfg.seed),
        bound: Some(cfg.bound),
        ..Default::default()
    };
    Ok(finish("sl2", params, started, witness, None))
}

/// distinct, homology, al, kernel, control, sl2, in that order.
pub fn verify_all(cfg: &VerifyConfig) -> Result<VerificationReport> {
    cfg.validate()?;
    let started = Instant::now();
    let reports = vec![
        verify_noncancellation(cfg)?,
        verify_homology(cfg)?,
        verify_amitsur_levitzki(cfg)?,
        verify_kernel(cfg)?,
        verify_negative_control(cfg)?,
        verify_sl2_relation(cfg)?,
    ];
    let failed: Vec<&str> = reports
        .iter()
        .filter(|r| !r.passed())
        .map(|r| r.check.as_str())
        .collect();
    let witness = (!failed.is_empty()).then(|| json!({ "failed_checks": failed }));
    let mut report = finish("all", cfg.trial_params(), started, witness, None);
    report.reports = reports;
    Ok(report)
}
