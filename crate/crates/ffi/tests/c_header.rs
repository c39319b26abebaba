//! Compiles a C program against the generated header and, when the static
//! library from a normal build is present, links and runs it.

use std::path::{Path, PathBuf};
use std::process::Command;

fn manifest_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn have_cc() -> bool {
    Command::new("cc").arg("--version").output().is_ok()
}

fn cc(args: &[&Path], extra: &[&str]) -> std::process::Output {
    let include = manifest_dir().join("include");
    Command::new("cc")
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(&include)
        .args(args)
        .args(extra)
        .output()
        .expect("running cc")
}

#[test]
fn header_compiles_as_c() {
    if !have_cc() {
        eprintln!("cc not found; skipping");
        return;
    }
    let src = manifest_dir().join("tests/smoke.c");
    let out = cc(&[&src], &["-fsyntax-only"]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
}

#[test]
fn c_program_links_and_runs() {
    let tmp = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let lib = tmp.parent().unwrap().join("debug/libtrace_kernel_ffi.a");
    if !have_cc() || !lib.exists() {
        eprintln!("cc or {} missing; skipping", lib.display());
        return;
    }
    let src = manifest_dir().join("tests/smoke.c");
    let exe = tmp.join("tk_smoke");
    let out = cc(
        &[&src, &lib],
        &["-o", exe.to_str().unwrap(), "-lpthread", "-ldl", "-lm"],
    );
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let run = Command::new(&exe).output().unwrap();
    assert!(run.status.success(), "exit {:?}", run.status.code());
    assert_eq!(String::from_utf8_lossy(&run.stdout).trim(), "ok");
}
