use std::ffi::{CStr, CString};
use std::ptr;

use trace_kernel_ffi::*;

unsafe fn take_string(p: *mut std::ffi::c_char) -> String {
    let s = CStr::from_ptr(p).to_str().unwrap().to_owned();
    tk_string_free(p);
    s
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(tk_last_error()).to_str().unwrap().to_owned() }
}

#[test]
fn theta_round_trips_through_json() {
    unsafe {
        let mut chain = ptr::null_mut();
        assert_eq!(tk_theta_build(2, 0, &mut chain), TkStatus::Ok);
        assert_eq!(tk_chain_support_size(chain), 24);

        let mut json = ptr::null_mut();
        assert_eq!(tk_chain_to_json(chain, &mut json), TkStatus::Ok);
        let json = take_string(json);
        assert!(json.starts_with(r#"{"ring":"Z","terms":["#));

        let c_json = CString::new(json.clone()).unwrap();
        let mut again = ptr::null_mut();
        assert_eq!(
            tk_chain_from_json(c_json.as_ptr(), &mut again),
            TkStatus::Ok
        );
        let mut json2 = ptr::null_mut();
        assert_eq!(tk_chain_to_json(again, &mut json2), TkStatus::Ok);
        assert_eq!(take_string(json2), json);

        tk_chain_free(chain);
        tk_chain_free(again);
    }
}

#[test]
fn theta_trace_vanishes_mod_p() {
    unsafe {
        let mut chain = ptr::null_mut();
        assert_eq!(tk_theta_build(2, 0, &mut chain), TkStatus::Ok);
        let a = [3u64, 1, 4, 1];
        let b = [5u64, 9, 2, 6];
        let mut tr = 7u64;
        let status = tk_chain_trace_modp(chain, 2, a.as_ptr(), b.as_ptr(), 1_000_000_007, &mut tr);
        assert_eq!(status, TkStatus::Ok);
        assert_eq!(tr, 0);

        let singular = [1u64, 2, 2, 4];
        let status = tk_chain_trace_modp(
            chain,
            2,
            singular.as_ptr(),
            b.as_ptr(),
            1_000_000_007,
            &mut tr,
        );
        assert_eq!(status, TkStatus::SingularMatrix);
        tk_chain_free(chain);
    }
}

#[test]
fn word_helpers() {
    unsafe {
        let w = CString::new("ababba").unwrap();
        let mut out = ptr::null_mut();
        assert_eq!(tk_word_canonical_class(w.as_ptr(), &mut out), TkStatus::Ok);
        assert_eq!(take_string(out), "aababb");

        let u = CString::new("ab").unwrap();
        let v = CString::new("ba").unwrap();
        let mut conj = false;
        assert_eq!(
            tk_words_are_conjugate(u.as_ptr(), v.as_ptr(), &mut conj),
            TkStatus::Ok
        );
        assert!(conj);

        let comm = CString::new("abAB").unwrap();
        let (mut ea, mut eb) = (1i64, 1i64);
        assert_eq!(
            tk_word_abelianize(comm.as_ptr(), &mut ea, &mut eb),
            TkStatus::Ok
        );
        assert_eq!((ea, eb), (0, 0));
    }
}

#[test]
fn errors_are_reported_not_panicked() {
    unsafe {
        let mut chain = ptr::null_mut();
        assert_eq!(tk_theta_build(6, 10, &mut chain), TkStatus::ResourceLimit);
        assert!(chain.is_null());
        assert!(!last_error().is_empty());

        assert_eq!(tk_theta_build(1, 0, ptr::null_mut()), TkStatus::NullPointer);

        let bad = CString::new("abx").unwrap();
        let mut out = ptr::null_mut();
        assert_eq!(
            tk_word_canonical_class(bad.as_ptr(), &mut out),
            TkStatus::InvalidArgument
        );

        let bad_json = CString::new(r#"{"ring":"Q","terms":[]}"#).unwrap();
        assert_eq!(
            tk_chain_from_json(bad_json.as_ptr(), &mut chain),
            TkStatus::InvalidArgument
        );
        assert_eq!(tk_chain_support_size(ptr::null()), 0);
    }
}

#[test]
fn verify_returns_reports() {
    unsafe {
        let mut params = tk_verify_params_default();
        params.trials = 5;
        params.seed = 42;
        let mut report = ptr::null_mut();
        assert_eq!(
            tk_verify(TkCheck::Kernel, &params, &mut report),
            TkStatus::Ok
        );
        let json = take_string(report);
        assert!(json.contains(r#""outcome": "pass""#));

        params.prime = 15;
        let mut report = ptr::null_mut();
        assert_eq!(
            tk_verify(TkCheck::Kernel, &params, &mut report),
            TkStatus::InvalidArgument
        );
        assert!(report.is_null());
    }
}
