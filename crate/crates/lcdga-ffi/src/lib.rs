//! C ABI for `lcdga`. Objects are opaque handles released by the matching
//! `_free` function. Every fallible call
//! returns an [`LcdgaStatus`]; on failure, [`lcdga_last_error`] describes the
//! problem. Strings returned through `char **` are owned by the caller and
//! released with [`lcdga_string_free`].

use lcdga::braid::BraidWord;
use lcdga::distinguisher::{certificate_for, Certificate, Verdict};
use lcdga::fillings::{filling_augmentation, Filling};
use lcdga::monodromy::{kalman_map, order};
use lcdga::presets::parse_family;
use lcdga::spec::ClosureSpec;
use lcdga::Error;
use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

/// Result codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LcdgaStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidInput = 3,
    NotProper = 4,
    NotFound = 5,
    Internal = 6,
    Panic = 7,
}

/// Verdict of an orbit certificate.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LcdgaVerdict {
    EntireCertified = 0,
    MonotoneUpToK = 1,
    Inconclusive = 2,
}

/// A decorated closure of a positive braid.
pub struct LcdgaSpec(ClosureSpec);

/// A filling augmentation with its pinching sequence.
pub struct LcdgaFilling(Filling);

/// An orbit-entirety certificate.
pub struct LcdgaCertificate(Certificate);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> LcdgaStatus {
    match e {
        Error::NotProper(_) => LcdgaStatus::NotProper,
        Error::UnknownGenerator(_) | Error::UnknownFamily(_) => LcdgaStatus::NotFound,
        Error::Internal(_) => LcdgaStatus::Internal,
        _ => LcdgaStatus::InvalidInput,
    }
}

/// Runs `f`, translating errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), (LcdgaStatus, String)>) -> LcdgaStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            LcdgaStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("panic inside lcdga");
            LcdgaStatus::Panic
        }
    }
}

fn lib<T>(r: lcdga::Result<T>) -> Result<T, (LcdgaStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

/// # Safety
/// `p` must be null or a NUL-terminated string.
unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, (LcdgaStatus, String)> {
    if p.is_null() {
        return Err((LcdgaStatus::NullPointer, "null string argument".into()));
    }
    CStr::from_ptr(p).to_str().map_err(|_| (LcdgaStatus::InvalidUtf8, "argument is not UTF-8".into()))
}

fn out_ptr<T>(p: *mut T) -> Result<(), (LcdgaStatus, String)> {
    if p.is_null() {
        Err((LcdgaStatus::NullPointer, "null output pointer".into()))
    } else {
        Ok(())
    }
}

fn handle<'a, T>(p: *const T) -> Result<&'a T, (LcdgaStatus, String)> {
    // SAFETY: callers pass handles obtained from this library or null.
    unsafe { p.as_ref() }.ok_or_else(|| (LcdgaStatus::NullPointer, "null handle".into()))
}

fn give_string(s: String, out: *mut *mut c_char) -> Result<(), (LcdgaStatus, String)> {
    out_ptr(out)?;
    let c = CString::new(s).map_err(|_| (LcdgaStatus::Internal, "interior NUL in output".into()))?;
    // SAFETY: `out` is non-null and points to writable storage per the contract.
    unsafe { *out = c.into_raw() };
    Ok(())
}

/// Message for the most recent failed call on this thread; empty after a
/// successful call. Valid until the next call into the library.
#[no_mangle]
pub extern "C" fn lcdga_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Releases a string returned by the library.
///
/// # Safety
/// `s` must be null or a string returned through a `char **` out parameter.
#[no_mangle]
pub unsafe extern "C" fn lcdga_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Closure of a preset family such as `d4`, `lambda2`, `b11`, `torus:2,3`.
///
/// # Safety
/// `family` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lcdga_spec_from_family(family: *const c_char, out: *mut *mut LcdgaSpec) -> LcdgaStatus {
    guard(|| {
        out_ptr(out)?;
        let spec = lib(parse_family(text(family)?))?;
        *out = Box::into_raw(Box::new(LcdgaSpec(spec)));
        Ok(())
    })
}

/// Standard closure of a positive braid word such as `"1 2 1 1"`.
///
/// # Safety
/// `word` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lcdga_spec_from_braid(word: *const c_char, strands: usize, out: *mut *mut LcdgaSpec) -> LcdgaStatus {
    guard(|| {
        out_ptr(out)?;
        let w = lib(BraidWord::parse(text(word)?, strands))?;
        let spec = lib(ClosureSpec::standard("braid", w))?;
        *out = Box::into_raw(Box::new(LcdgaSpec(spec)));
        Ok(())
    })
}

/// # Safety
/// `spec` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lcdga_spec_free(spec: *mut LcdgaSpec) {
    if !spec.is_null() {
        drop(Box::from_raw(spec));
    }
}

/// Strand count, crossing count and component count.
///
/// # Safety
/// `spec` must be a live handle; the out pointers must be writable or null.
#[no_mangle]
pub unsafe extern "C" fn lcdga_spec_sizes(spec: *const LcdgaSpec, strands: *mut usize, crossings: *mut usize, components: *mut usize) -> LcdgaStatus {
    guard(|| {
        let s = &handle(spec)?.0;
        if !strands.is_null() {
            *strands = s.strands();
        }
        if !crossings.is_null() {
            *crossings = s.len();
        }
        if !components.is_null() {
            *components = s.component_count();
        }
        Ok(())
    })
}

/// Canonical JSON of the contact DGA of `spec`.
///
/// # Safety
/// `spec` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lcdga_dga_json(spec: *const LcdgaSpec, out: *mut *mut c_char) -> LcdgaStatus {
    guard(|| {
        let dga = lcdga::dga::ClosureDga::build(&handle(spec)?.0);
        give_string(lcdga::json::dga(&dga).to_string(), out)
    })
}

/// Filling augmentation for a comma-separated pinching sequence.
///
/// # Safety
/// `spec` must be a live handle, `pinches` a NUL-terminated string and `out`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn lcdga_fill(spec: *const LcdgaSpec, pinches: *const c_char, out: *mut *mut LcdgaFilling) -> LcdgaStatus {
    guard(|| {
        out_ptr(out)?;
        let s = &handle(spec)?.0;
        let names: Vec<&str> = text(pinches)?.split(',').map(str::trim).filter(|x| !x.is_empty()).collect();
        let f = lib(filling_augmentation(s, &names))?;
        *out = Box::into_raw(Box::new(LcdgaFilling(f)));
        Ok(())
    })
}

/// # Safety
/// `filling` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn lcdga_filling_free(filling: *mut LcdgaFilling) {
    if !filling.is_null() {
        drop(Box::from_raw(filling));
    }
}

/// Value of a crossing, chord or base point as canonical text.
///
/// # Safety
/// `filling` must be a live handle, `name` a NUL-terminated string and `out`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn lcdga_filling_value(filling: *const LcdgaFilling, name: *const c_char, out: *mut *mut c_char) -> LcdgaStatus {
    guard(|| {
        let aug = &handle(filling)?.0.augmentation;
        let v = lib(aug.value(text(name)?))?;
        give_string(v.to_string(), out)
    })
}

/// Free rank of the coefficient ring.
///
/// # Safety
/// `filling` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lcdga_filling_rank(filling: *const LcdgaFilling, out: *mut usize) -> LcdgaStatus {
    guard(|| {
        out_ptr(out)?;
        *out = handle(filling)?.0.augmentation.ring.rank();
        Ok(())
    })
}

/// Canonical JSON of the augmentation.
///
/// # Safety
/// `filling` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lcdga_filling_json(filling: *const LcdgaFilling, out: *mut *mut c_char) -> LcdgaStatus {
    guard(|| give_string(lcdga::json::augmentation(&handle(filling)?.0.augmentation).to_string(), out))
}

/// Orbit certificate for the over-type pair `(x, y)` up to `k_max`.
///
/// # Safety
/// `filling` must be a live handle, `x` and `y` NUL-terminated strings and
/// `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lcdga_certify(
    filling: *const LcdgaFilling,
    x: *const c_char,
    y: *const c_char,
    k_max: usize,
    out: *mut *mut LcdgaCertificate,
) -> LcdgaStatus {
    guard(|| {
        out_ptr(out)?;
        let aug = &handle(filling)?.0.augmentation;
        let cert = lib(certificate_for(aug, (text(x)?, text(y)?), k_max, None))?;
        *out = Box::into_raw(Box::new(LcdgaCertificate(cert)));
        Ok(())
    })
}

/// # Safety
/// `cert` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn lcdga_certificate_free(cert: *mut LcdgaCertificate) {
    if !cert.is_null() {
        drop(Box::from_raw(cert));
    }
}

/// # Safety
/// `cert` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lcdga_certificate_verdict(cert: *const LcdgaCertificate, out: *mut LcdgaVerdict) -> LcdgaStatus {
    guard(|| {
        out_ptr(out)?;
        *out = match handle(cert)?.0.verdict {
            Verdict::EntireCertified => LcdgaVerdict::EntireCertified,
            Verdict::MonotoneUpToK => LcdgaVerdict::MonotoneUpToK,
            Verdict::Inconclusive => LcdgaVerdict::Inconclusive,
        };
        Ok(())
    })
}

/// `E(k, y)` in decimal.
///
/// # Safety
/// `cert` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lcdga_certificate_e(cert: *const LcdgaCertificate, k: usize, out: *mut *mut c_char) -> LcdgaStatus {
    guard(|| {
        let e = &handle(cert)?.0.e;
        let v = e.get(k).ok_or_else(|| (LcdgaStatus::InvalidInput, format!("k = {k} exceeds k_max = {}", e.len() - 1)))?;
        give_string(v.to_string(), out)
    })
}

/// Canonical JSON of the certificate.
///
/// # Safety
/// `cert` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lcdga_certificate_json(cert: *const LcdgaCertificate, out: *mut *mut c_char) -> LcdgaStatus {
    guard(|| give_string(lcdga::json::certificate(&handle(cert)?.0).to_string(), out))
}

/// Order of the Kálmán loop on `T(p, q)`, searched up to `max_k`; writes 0
/// when no power up to `max_k` is the identity.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lcdga_kalman_order(p: usize, q: usize, max_k: usize, out: *mut usize) -> LcdgaStatus {
    guard(|| {
        out_ptr(out)?;
        let map = lib(kalman_map(p, q))?;
        *out = lib(order(&map, max_k))?.unwrap_or(0);
        Ok(())
    })
}

/// Runs a command-line invocation (`argv[0]` is the program name). Writes the
/// exit code and the standard output text.
///
/// # Safety
/// `argv` must hold `argc` NUL-terminated strings; the out pointers must be
/// writable.
#[no_mangle]
pub unsafe extern "C" fn lcdga_cli_run(argc: c_int, argv: *const *const c_char, exit_code: *mut c_int, out: *mut *mut c_char) -> LcdgaStatus {
    guard(|| {
        out_ptr(exit_code)?;
        if argv.is_null() && argc > 0 {
            return Err((LcdgaStatus::NullPointer, "null argv".into()));
        }
        let mut args = Vec::new();
        for i in 0..argc.max(0) as usize {
            args.push(text(*argv.add(i))?.to_string());
        }
        let outcome = lcdga::cli::run(args);
        *exit_code = outcome.code;
        let mut s = outcome.stdout;
        s.push_str(&outcome.stderr);
        give_string(s, out)
    })
}
