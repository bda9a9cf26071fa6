use lcdga_ffi::*;
use std::ffi::{c_char, CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

fn cs(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take(p: *mut c_char) -> String {
    let s = CStr::from_ptr(p).to_str().unwrap().to_string();
    lcdga_string_free(p);
    s
}

unsafe fn last_error() -> String {
    CStr::from_ptr(lcdga_last_error()).to_str().unwrap().to_string()
}

#[test]
fn d4_round_trip() {
    unsafe {
        let mut spec = ptr::null_mut();
        assert_eq!(lcdga_spec_from_family(cs("d4").as_ptr(), &mut spec), LcdgaStatus::Ok);
        let (mut n, mut r, mut m) = (0, 0, 0);
        assert_eq!(lcdga_spec_sizes(spec, &mut n, &mut r, &mut m), LcdgaStatus::Ok);
        assert_eq!((n, r, m), (4, 20, 4));
        let mut fill = ptr::null_mut();
        let pinches = cs("a9,a10,a11,a12,a13,a14,a15,a16");
        assert_eq!(lcdga_fill(spec, pinches.as_ptr(), &mut fill), LcdgaStatus::Ok);
        let mut rank = 0;
        assert_eq!(lcdga_filling_rank(fill, &mut rank), LcdgaStatus::Ok);
        assert_eq!(rank, 8);
        let mut out = ptr::null_mut();
        assert_eq!(lcdga_filling_value(fill, cs("a9").as_ptr(), &mut out), LcdgaStatus::Ok);
        assert_eq!(take(out), "s9");
        assert_eq!(lcdga_filling_value(fill, cs("t1").as_ptr(), &mut out), LcdgaStatus::Ok);
        assert_eq!(take(out), "-s11*s15");
        let mut cert = ptr::null_mut();
        assert_eq!(lcdga_certify(fill, cs("a11").as_ptr(), cs("a9").as_ptr(), 6, &mut cert), LcdgaStatus::Ok);
        let mut verdict = LcdgaVerdict::Inconclusive;
        assert_eq!(lcdga_certificate_verdict(cert, &mut verdict), LcdgaStatus::Ok);
        assert_eq!(verdict, LcdgaVerdict::EntireCertified);
        assert_eq!(lcdga_certificate_e(cert, 6, &mut out), LcdgaStatus::Ok);
        assert_eq!(take(out), "33461");
        assert_eq!(lcdga_certificate_e(cert, 7, &mut out), LcdgaStatus::InvalidInput);
        assert_eq!(lcdga_certificate_json(cert, &mut out), LcdgaStatus::Ok);
        let json = take(out);
        assert!(json.contains("\"verdict\":\"entire_certified\""));
        assert_eq!(lcdga_filling_json(fill, &mut out), LcdgaStatus::Ok);
        assert!(take(out).starts_with('{'));
        assert_eq!(lcdga_dga_json(spec, &mut out), LcdgaStatus::Ok);
        assert!(take(out).contains("\"differential\""));
        lcdga_certificate_free(cert);
        lcdga_filling_free(fill);
        lcdga_spec_free(spec);
    }
}

#[test]
fn error_codes() {
    unsafe {
        let mut spec = ptr::null_mut();
        assert_eq!(lcdga_spec_from_family(cs("e8").as_ptr(), &mut spec), LcdgaStatus::NotFound);
        assert!(last_error().contains("e8"));
        assert_eq!(lcdga_spec_from_family(ptr::null(), &mut spec), LcdgaStatus::NullPointer);
        assert_eq!(lcdga_spec_from_family(cs("d4").as_ptr(), ptr::null_mut()), LcdgaStatus::NullPointer);
        assert_eq!(lcdga_spec_from_braid(cs("1 x").as_ptr(), 2, &mut spec), LcdgaStatus::InvalidInput);
        let bad = [0xffu8, 0];
        assert_eq!(lcdga_spec_from_family(bad.as_ptr() as *const c_char, &mut spec), LcdgaStatus::InvalidUtf8);
        assert_eq!(lcdga_spec_from_braid(cs("1 1 2 1").as_ptr(), 3, &mut spec), LcdgaStatus::Ok);
        assert!(last_error().is_empty());
        let mut fill = ptr::null_mut();
        // The rest of the braid after a2 reads 2 1 1, which holds no half twist.
        assert_eq!(lcdga_fill(spec, cs("a2").as_ptr(), &mut fill), LcdgaStatus::NotProper);
        assert_eq!(lcdga_fill(spec, cs("a9").as_ptr(), &mut fill), LcdgaStatus::NotFound);
        assert_eq!(lcdga_fill(ptr::null(), cs("a1").as_ptr(), &mut fill), LcdgaStatus::NullPointer);
        lcdga_spec_free(spec);
        lcdga_spec_free(ptr::null_mut());
        lcdga_string_free(ptr::null_mut());
    }
}

#[test]
fn kalman_order_and_cli() {
    unsafe {
        let mut k = 0;
        assert_eq!(lcdga_kalman_order(2, 3, 12, &mut k), LcdgaStatus::Ok);
        assert_eq!(k, 5);
        assert_eq!(lcdga_kalman_order(2, 3, 4, &mut k), LcdgaStatus::Ok);
        assert_eq!(k, 0);
        let args = [cs("lcdga"), cs("monodromy"), cs("--family"), cs("torus:2,3"), cs("--order")];
        let argv: Vec<*const c_char> = args.iter().map(|a| a.as_ptr()).collect();
        let (mut code, mut out) = (-1, ptr::null_mut());
        assert_eq!(lcdga_cli_run(argv.len() as i32, argv.as_ptr(), &mut code, &mut out), LcdgaStatus::Ok);
        assert_eq!(code, 0);
        assert!(take(out).contains("order 5"));
    }
}

fn target_dir() -> PathBuf {
    let exe = std::env::current_exe().unwrap();
    exe.parent().and_then(Path::parent).unwrap().to_path_buf()
}

#[test]
fn header_compiles_and_links() {
    let crate_dir = Path::new(env!("CARGO_MANIFEST_DIR"));
    let include = crate_dir.join("include");
    assert!(include.join("lcdga.h").exists(), "build.rs writes include/lcdga.h");
    let status = Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only"])
        .arg("-I")
        .arg(&include)
        .arg(crate_dir.join("tests/smoke.c"))
        .status()
        .expect("a C compiler is available");
    assert!(status.success());
    // `cargo test` only builds the rlib; build the static library explicitly.
    let profile_dir = target_dir();
    let mut build = Command::new(option_env!("CARGO").unwrap_or("cargo"));
    build.args(["build", "--quiet", "-p", "lcdga-ffi", "--lib", "--target-dir"]).arg(profile_dir.parent().unwrap());
    if profile_dir.ends_with("release") {
        build.arg("--release");
    }
    assert!(build.status().unwrap().success());
    let lib = profile_dir.join("liblcdga_ffi.a");
    assert!(lib.exists(), "static library at {}", lib.display());
    let exe = target_dir().join("lcdga_ffi_smoke");
    let status = Command::new("cc")
        .args(["-std=c99", "-o"])
        .arg(&exe)
        .arg("-I")
        .arg(&include)
        .arg(crate_dir.join("tests/smoke.c"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm"])
        .status()
        .unwrap();
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "smoke exit {:?}", out.status.code());
    assert_eq!(String::from_utf8_lossy(&out.stdout), "ok\n");
}
