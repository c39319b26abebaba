//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each,
//! and exits nonzero if any fails.
//!
//! `cargo test -p trace-kernel --test acceptance` (add `--release` for speed).

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use trace_kernel::construction::boundary_commutator;
use trace_kernel::rep::random_matrix;
use trace_kernel::verify::{
    al_sum_fast, al_sum_naive, find_sharpness_witness, verify_kernel, verify_negative_control,
    verify_sl2_relation, verify_standard_identity, SHARPNESS_ATTEMPTS,
};
use trace_kernel::{
    build_theta, certify_homology, certify_pairwise_distinct, AbelianImage, EnumerationCap, Fp,
    Matrix, PrimeModulus, Rational, Scalar, ScalarKind, VerificationReport, VerifyConfig,
    MERSENNE_61,
};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn passed(r: &VerificationReport) -> Result<(), String> {
    ensure(r.passed(), || {
        format!(
            "{} failed: {}",
            r.check,
            r.witness.clone().unwrap_or_default()
        )
    })
}

fn modp(n: usize, trials: usize) -> VerifyConfig {
    VerifyConfig {
        n,
        trials,
        kind: ScalarKind::ModP,
        prime: MERSENNE_61,
        ..VerifyConfig::default()
    }
}

fn kernel_modp() -> Check {
    let mut notes = Vec::new();
    for n in 1..=4 {
        let started = Instant::now();
        let r = verify_kernel(&modp(n, 100)).map_err(|e| e.to_string())?;
        passed(&r)?;
        notes.push(format!("n={n} {:.1}s", started.elapsed().as_secs_f64()));
    }
    Ok(notes.join(", "))
}

fn kernel_rational() -> Check {
    for n in 1..=3 {
        let cfg = VerifyConfig {
            n,
            trials: 25,
            kind: ScalarKind::Rational,
            bound: 5,
            ..VerifyConfig::default()
        };
        passed(&verify_kernel(&cfg).map_err(|e| e.to_string())?)?;
    }
    Ok("n=1..3, 25 trials, bound 5".into())
}

fn nonvanishing() -> Check {
    let expected = [2usize, 24, 720, 40320];
    for (n, &want) in (1..=4).zip(&expected) {
        let theta = build_theta(n, EnumerationCap::default()).map_err(|e| e.to_string())?;
        ensure(theta.support_size() == want, || {
            format!("n={n}: support {} != {want}", theta.support_size())
        })?;
        let (plus, minus) = theta.unit_sign_counts();
        ensure(plus == want / 2 && minus == want / 2, || {
            format!("n={n}: {plus} positive, {minus} negative unit coefficients")
        })?;
    }
    Ok("supports 2, 24, 720, 40320 with balanced signs".into())
}

fn distinctness() -> Check {
    for n in 1..=3 {
        let cert =
            certify_pairwise_distinct(n, EnumerationCap::default()).map_err(|e| e.to_string())?;
        ensure(cert.all_distinct(), || format!("n={n}: {cert:?}"))?;
    }
    Ok("n=1..3 exhaustive".into())
}

fn homology() -> Check {
    for n in 1..=4 {
        let cert = certify_homology(n, EnumerationCap::default()).map_err(|e| e.to_string())?;
        let m = 2 * n as i64;
        ensure(
            cert.word_image == AbelianImage::new(m + 1, n as i64 * (m + 1)),
            || format!("n={n}: {:?}", cert.word_image),
        )?;
    }
    let comm = boundary_commutator().abelianize();
    ensure(comm.is_zero(), || format!("[a,b] -> {comm:?}"))?;
    Ok("n=1..4 and [a,b]".into())
}

fn amitsur_levitzki() -> Check {
    for n in 1..=4 {
        let r = verify_standard_identity(&modp(n, 100), 2 * n).map_err(|e| e.to_string())?;
        passed(&r)?;
    }
    let mut attempts = Vec::new();
    for n in 2..=3 {
        let w = find_sharpness_witness(&modp(n, 1), SHARPNESS_ATTEMPTS)
            .map_err(|e| e.to_string())?
            .ok_or_else(|| format!("n={n}: no nonzero S_{} value", 2 * n - 1))?;
        attempts.push(format!("n={n} at attempt {}", w["attempt"]));
    }
    Ok(format!(
        "identity n=1..4; sharpness {}",
        attempts.join(", ")
    ))
}

fn compare_evaluators<S: Scalar>(ctx: S::Ctx, seed: u64, bound: u64) -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = 1 + (seed as usize % 6);
    let n = 1 + (seed as usize / 6 % 3);
    let mats: Vec<Matrix<S>> = (0..m)
        .map(|_| random_matrix::<S, _>(n, ctx, &mut rng, bound))
        .collect();
    let fast = al_sum_fast(&mats).map_err(|e| e.to_string())?;
    let naive = al_sum_naive(&mats, EnumerationCap::default()).map_err(|e| e.to_string())?;
    ensure(fast == naive, || {
        format!("seed {seed}: m={m}, n={n} disagree")
    })
}

fn evaluator_equivalence() -> Check {
    let p = PrimeModulus::new(1_000_003).map_err(|e| e.to_string())?;
    for seed in 0..200u64 {
        if seed % 2 == 0 {
            compare_evaluators::<Fp>(p, seed, 0)?;
        } else {
            compare_evaluators::<Rational>((), seed, 7)?;
        }
    }
    Ok("200 instances, m=1..6, both kinds".into())
}

fn sl2_relation() -> Check {
    let cfg = VerifyConfig {
        trials: 100,
        ..VerifyConfig::default()
    };
    passed(&verify_sl2_relation(&cfg).map_err(|e| e.to_string())?)?;
    Ok("100 pairs".into())
}

fn negative_control() -> Check {
    let mut notes = Vec::new();
    for n in 1..=2 {
        let r = verify_negative_control(&modp(n, 10)).map_err(|e| e.to_string())?;
        passed(&r)?;
        let details = r.details.unwrap_or_default();
        notes.push(format!(
            "n={n} nonzero at trial {}",
            details["truncated_nonzero"]["trial"]
        ));
    }
    Ok(notes.join(", "))
}

fn determinism() -> Check {
    let run = || -> Result<VerificationReport, String> {
        let out = Command::new(env!("CARGO_BIN_EXE_trace-kernel"))
            .args(["verify", "all", "--n", "2", "--seed", "42"])
            .env_clear()
            .output()
            .map_err(|e| e.to_string())?;
        ensure(out.status.success(), || {
            format!(
                "exit {:?}: {}",
                out.status.code(),
                String::from_utf8_lossy(&out.stderr)
            )
        })?;
        serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())
    };
    let first = run()?.without_timing();
    let second = run()?.without_timing();
    let a = first.to_json_pretty().map_err(|e| e.to_string())?;
    let b = second.to_json_pretty().map_err(|e| e.to_string())?;
    ensure(a == b, || "reports differ".into())?;
    Ok(format!("{} bytes identical", a.len()))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("kernel vanishes over F_p, n=1..4, 100 trials", kernel_modp),
        ("kernel vanishes over Q, n=1..3, 25 trials", kernel_rational),
        ("theta is nonzero with (2n)! unit terms", nonvanishing),
        (
            "classes pairwise distinct with block sequences",
            distinctness,
        ),
        ("homology images", homology),
        ("standard identity and sharpness", amitsur_levitzki),
        ("fast and naive evaluators agree", evaluator_equivalence),
        ("SL2 trace relation", sl2_relation),
        ("negative control", negative_control),
        ("verify all is deterministic", determinism),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let started = Instant::now();
        let result =
            catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = started.elapsed().as_secs_f64();
        match result {
            Ok(note) => println!("PASS  {:>2}. {name} ({note}; {secs:.1}s)", i + 1),
            Err(why) => {
                failures += 1;
                println!("FAIL  {:>2}. {name}: {why} ({secs:.1}s)", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failures,
        criteria.len()
    );
    if failures > 0 {
        std::process::exit(1);
    }
}
