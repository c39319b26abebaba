//! C ABI over `trace-kernel`.
//!
//! Chains are opaque `TkChain` handles owned by the caller and released with
//! [`tk_chain_free`]. Strings returned through `char **` out-parameters are
//! heap-allocated by Rust and must be released with [`tk_string_free`].
//! Every fallible call returns a [`TkStatus`]; on anything but
//! `TK_STATUS_OK` a message is available from [`tk_last_error`] on the same
//! thread. Panics never cross the boundary.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use trace_kernel::cli::CheckName;
use trace_kernel::{
    build_theta, Chain, EnumerationCap, Error, Fp, Matrix, PrimeModulus, Representation,
    ScalarKind, VerifyConfig, Word, MERSENNE_61,
};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TkStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    ResourceLimit = 3,
    SingularMatrix = 4,
    /// The check ran and its report says fail. The report is still returned.
    VerificationFailed = 5,
    CertificationFailed = 6,
    Internal = 99,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TkScalarKind {
    Modp = 0,
    Rational = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TkCheck {
    Kernel = 0,
    Al = 1,
    Distinct = 2,
    Homology = 3,
    Control = 4,
    Sl2 = 5,
    All = 6,
}

#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct TkVerifyParams {
    pub n: u32,
    pub trials: u32,
    pub kind: TkScalarKind,
    pub prime: u64,
    pub seed: u64,
    pub bound: u64,
    pub cap: u32,
    pub sharpness: bool,
}

/// Opaque chain handle.
pub struct TkChain {
    inner: Chain,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn status_of(e: &Error) -> TkStatus {
    match e {
        Error::Resource { .. } | Error::ResampleExhausted { .. } => TkStatus::ResourceLimit,
        Error::SingularMatrix => TkStatus::SingularMatrix,
        Error::CertificationFailure(_) => TkStatus::CertificationFailed,
        Error::Io(_) => TkStatus::Internal,
        _ => TkStatus::InvalidArgument,
    }
}

/// Runs `f`, recording any error or panic as the thread's last error.
fn guard(f: impl FnOnce() -> Result<TkStatus, (TkStatus, String)>) -> TkStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(status)) => status,
        Ok(Err((status, msg))) => {
            set_last_error(msg);
            status
        }
        Err(_) => {
            set_last_error("internal panic");
            TkStatus::Internal
        }
    }
}

fn fail(e: Error) -> (TkStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (TkStatus, String) {
    (TkStatus::NullPointer, format!("{what} is null"))
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, (TkStatus, String)> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| (TkStatus::InvalidArgument, format!("{what} is not UTF-8")))
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), (TkStatus, String)> {
    let c = CString::new(s).map_err(|_| (TkStatus::Internal, "string contains NUL".to_string()))?;
    *out = c.into_raw();
    Ok(())
}

/// Message for the most recent failure on this thread. The pointer stays
/// valid until the next `tk_*` call on the same thread.
#[no_mangle]
pub extern "C" fn tk_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` must come from a `tk_*` out-parameter and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn tk_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds Θ_n. `cap` bounds the enumerated degree 2n (0 selects the default of 10).
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn tk_theta_build(n: u32, cap: u32, out: *mut *mut TkChain) -> TkStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let cap = if cap == 0 {
            EnumerationCap::default()
        } else {
            EnumerationCap(cap as usize)
        };
        let inner = build_theta(n as usize, cap).map_err(fail)?;
        *out = Box::into_raw(Box::new(TkChain { inner }));
        Ok(TkStatus::Ok)
    })
}

/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tk_chain_from_json(
    json: *const c_char,
    out: *mut *mut TkChain,
) -> TkStatus {
    guard(|| {
        let s = read_str(json, "json")?;
        if out.is_null() {
            return Err(null("out"));
        }
        let inner = Chain::from_json(s).map_err(fail)?;
        *out = Box::into_raw(Box::new(TkChain { inner }));
        Ok(TkStatus::Ok)
    })
}

/// # Safety
/// `chain` must be null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn tk_chain_free(chain: *mut TkChain) {
    if !chain.is_null() {
        drop(Box::from_raw(chain));
    }
}

/// Number of classes with nonzero coefficient; 0 for a null handle.
///
/// # Safety
/// `chain` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn tk_chain_support_size(chain: *const TkChain) -> usize {
    chain.as_ref().map_or(0, |c| c.inner.support_size())
}

/// Serializes to the chain JSON format.
///
/// # Safety
/// `chain` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tk_chain_to_json(
    chain: *const TkChain,
    out: *mut *mut c_char,
) -> TkStatus {
    guard(|| {
        let c = chain.as_ref().ok_or_else(|| null("chain"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        write_string(out, c.inner.to_json().map_err(fail)?)?;
        Ok(TkStatus::Ok)
    })
}

/// Trace of the chain at `a ↦ A`, `b ↦ B` over F_p. `a` and `b` point to
/// `n*n` row-major residues; both matrices must be invertible mod `prime`.
///
/// # Safety
/// `a` and `b` must each point to `n*n` readable `uint64_t`; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tk_chain_trace_modp(
    chain: *const TkChain,
    n: u32,
    a: *const u64,
    b: *const u64,
    prime: u64,
    out: *mut u64,
) -> TkStatus {
    guard(|| {
        let c = chain.as_ref().ok_or_else(|| null("chain"))?;
        if a.is_null() || b.is_null() || out.is_null() {
            return Err(null("matrix or out"));
        }
        if n == 0 {
            return Err((TkStatus::InvalidArgument, "n must be at least 1".into()));
        }
        let ctx = PrimeModulus::new(prime).map_err(fail)?;
        let n = n as usize;
        let load = |p: *const u64| {
            let entries = std::slice::from_raw_parts(p, n * n);
            Matrix::<Fp>::from_fn(n, ctx, |i, j| Fp::new(entries[i * n + j], ctx))
        };
        let rho = Representation::new(load(a), load(b)).map_err(fail)?;
        *out = rho.trace_of_chain(&c.inner).residue();
        Ok(TkStatus::Ok)
    })
}

/// Canonical class string of a word over `a`, `A`, `b`, `B`.
///
/// # Safety
/// `word` must be NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tk_word_canonical_class(
    word: *const c_char,
    out: *mut *mut c_char,
) -> TkStatus {
    guard(|| {
        let w: Word = read_str(word, "word")?.parse().map_err(fail)?;
        if out.is_null() {
            return Err(null("out"));
        }
        write_string(out, w.canonical_class().to_string())?;
        Ok(TkStatus::Ok)
    })
}

/// # Safety
/// `u` and `v` must be NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tk_words_are_conjugate(
    u: *const c_char,
    v: *const c_char,
    out: *mut bool,
) -> TkStatus {
    guard(|| {
        let u: Word = read_str(u, "u")?.parse().map_err(fail)?;
        let v: Word = read_str(v, "v")?.parse().map_err(fail)?;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        *out = u.is_conjugate_to(&v);
        Ok(TkStatus::Ok)
    })
}

/// Exponent sums of `a` and `b`.
///
/// # Safety
/// `word` must be NUL-terminated; `exp_a` and `exp_b` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tk_word_abelianize(
    word: *const c_char,
    exp_a: *mut i64,
    exp_b: *mut i64,
) -> TkStatus {
    guard(|| {
        let w: Word = read_str(word, "word")?.parse().map_err(fail)?;
        let (ea, eb) = (exp_a.as_mut(), exp_b.as_mut());
        let (Some(ea), Some(eb)) = (ea, eb) else {
            return Err(null("exp_a or exp_b"));
        };
        let img = w.abelianize();
        *ea = img.exp_a;
        *eb = img.exp_b;
        Ok(TkStatus::Ok)
    })
}

/// Defaults matching the command line: n = 2, 100 trials over F_p with
/// p = 2^61 − 1, seed 0, bound 10, cap 10.
#[no_mangle]
pub extern "C" fn tk_verify_params_default() -> TkVerifyParams {
    TkVerifyParams {
        n: 2,
        trials: 100,
        kind: TkScalarKind::Modp,
        prime: MERSENNE_61,
        seed: 0,
        bound: 10,
        cap: 10,
        sharpness: false,
    }
}

/// Runs a check and writes its JSON report to `report_json`. Returns
/// `TK_STATUS_VERIFICATION_FAILED` with the report filled in when the check
/// fails; any other non-OK status means no report was produced.
///
/// # Safety
/// `params` must point to a valid struct; `report_json` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tk_verify(
    check: TkCheck,
    params: *const TkVerifyParams,
    report_json: *mut *mut c_char,
) -> TkStatus {
    guard(|| {
        let p = params.as_ref().ok_or_else(|| null("params"))?;
        if report_json.is_null() {
            return Err(null("report_json"));
        }
        let cfg = VerifyConfig {
            n: p.n as usize,
            trials: p.trials as usize,
            kind: match p.kind {
                TkScalarKind::Modp => ScalarKind::ModP,
                TkScalarKind::Rational => ScalarKind::Rational,
            },
            prime: p.prime,
            seed: p.seed,
            bound: p.bound,
            cap: EnumerationCap(p.cap as usize),
            sharpness: p.sharpness,
        };
        let check = match check {
            TkCheck::Kernel => CheckName::Kernel,
            TkCheck::Al => CheckName::Al,
            TkCheck::Distinct => CheckName::Distinct,
            TkCheck::Homology => CheckName::Homology,
            TkCheck::Control => CheckName::Control,
            TkCheck::Sl2 => CheckName::Sl2,
            TkCheck::All => CheckName::All,
        };
        let report = trace_kernel::cli::run_check(check, &cfg).map_err(fail)?;
        let json = report.to_json_pretty().map_err(|e| fail(e.into()))?;
        write_string(report_json, json)?;
        if report.passed() {
            Ok(TkStatus::Ok)
        } else {
            set_last_error(format!("check {} failed", report.check));
            Ok(TkStatus::VerificationFailed)
        }
    })
}
