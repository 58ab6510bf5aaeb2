//! C ABI over the bohrlab workbench.
//!
//! Objects cross the boundary as opaque handles owned by the caller and
//! released with the matching `*_free`. Every fallible call returns a
//! [`BohrStatus`]; the message of the last failure on the calling thread is
//! available through [`bohr_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use bohrlab::cli::{run, RunConfig};
use bohrlab::modular::{coefficients_of_minus_j_minus, eval_j};
use bohrlab::{Error, TruncatedSeries, VerificationReport, C64};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BohrStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    InvalidRadius = 3,
    InvalidIndex = 4,
    DomainError = 5,
    EvaluationFailure = 6,
    UnknownSuite = 7,
    IoFailure = 8,
    VerificationError = 9,
    Panic = 10,
}

/// Truncated power series with certified tail.
pub struct BohrSeries(TruncatedSeries);

/// Verification report.
pub struct BohrReport(VerificationReport);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let msg = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn status_of(e: &Error) -> BohrStatus {
    match e {
        Error::InvalidRadius(_) => BohrStatus::InvalidRadius,
        Error::InvalidIndex { .. } => BohrStatus::InvalidIndex,
        Error::DomainError(_) | Error::PoleProximity(_) | Error::NonSchwarzInner(_) => BohrStatus::DomainError,
        Error::EvaluationFailure { .. } | Error::ZeroDerivative { .. } => BohrStatus::EvaluationFailure,
        Error::UnknownSuite(_) => BohrStatus::UnknownSuite,
        Error::IoFailure(_) => BohrStatus::IoFailure,
        Error::Config(_) => BohrStatus::InvalidArgument,
        _ => BohrStatus::VerificationError,
    }
}

/// Runs `f`, turning errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), (BohrStatus, String)>) -> BohrStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => BohrStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("panic inside bohrlab".to_string());
            BohrStatus::Panic
        }
    }
}

fn lift(e: Error) -> (BohrStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (BohrStatus, String) {
    (BohrStatus::NullPointer, format!("{what} is null"))
}

/// Copies the last error message of this thread into `buf` (NUL-terminated,
/// truncated to `len`). Returns the full message length, 0 if none.
///
/// # Safety
/// `buf` must be null or valid for `len` bytes.
#[no_mangle]
pub unsafe extern "C" fn bohr_last_error(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let e = e.borrow();
        let Some(msg) = e.as_ref() else { return 0 };
        let bytes = msg.as_bytes();
        if !buf.is_null() && len > 0 {
            let n = bytes.len().min(len - 1);
            ptr::copy_nonoverlapping(bytes.as_ptr() as *const c_char, buf, n);
            *buf.add(n) = 0;
        }
        bytes.len()
    })
}

/// Series from `len` coefficients `re[k] + i im[k]`, exact (no tail).
///
/// # Safety
/// `re` and `im` must be valid for `len` doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bohr_series_new(re: *const f64, im: *const f64, len: usize, out: *mut *mut BohrSeries) -> BohrStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        if len == 0 {
            return Err((BohrStatus::InvalidArgument, "series needs at least one coefficient".into()));
        }
        if re.is_null() || im.is_null() {
            return Err(null("coefficient array"));
        }
        let (re, im) = (std::slice::from_raw_parts(re, len), std::slice::from_raw_parts(im, len));
        let coeffs = re.iter().zip(im).map(|(&a, &b)| C64::new(a, b)).collect();
        *out = Box::into_raw(Box::new(BohrSeries(TruncatedSeries::exact(coeffs))));
        Ok(())
    })
}

/// # Safety
/// `s` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn bohr_series_free(s: *mut BohrSeries) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Truncation order, or 0 for a null handle.
///
/// # Safety
/// `s` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn bohr_series_order(s: *const BohrSeries) -> usize {
    s.as_ref().map_or(0, |s| s.0.order())
}

/// `Σ_{n >= from_index} |a_n| r^n`: the computed value and the certified
/// upper bound including the tail.
///
/// # Safety
/// `s` must be a live handle; `value` and `upper` writable or null.
#[no_mangle]
pub unsafe extern "C" fn bohr_series_majorant(
    s: *const BohrSeries,
    r: f64,
    from_index: usize,
    value: *mut f64,
    upper: *mut f64,
) -> BohrStatus {
    guard(|| {
        let s = s.as_ref().ok_or_else(|| null("series"))?;
        let v = s.0.bohr_majorant(r, from_index).map_err(lift)?;
        if !value.is_null() {
            *value = v.value;
        }
        if !upper.is_null() {
            *upper = v.upper;
        }
        Ok(())
    })
}

/// Product of two series as a new handle.
///
/// # Safety
/// `a`, `b` must be live handles; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn bohr_series_mul(a: *const BohrSeries, b: *const BohrSeries, out: *mut *mut BohrSeries) -> BohrStatus {
    guard(|| {
        let (a, b) = (a.as_ref().ok_or_else(|| null("a"))?, b.as_ref().ok_or_else(|| null("b"))?);
        if out.is_null() {
            return Err(null("out"));
        }
        *out = Box::into_raw(Box::new(BohrSeries(a.0.mul(&b.0))));
        Ok(())
    })
}

/// Partial sum at `z = re + i im`.
///
/// # Safety
/// `s` must be a live handle; outputs writable.
#[no_mangle]
pub unsafe extern "C" fn bohr_series_eval(s: *const BohrSeries, re: f64, im: f64, out_re: *mut f64, out_im: *mut f64) -> BohrStatus {
    guard(|| {
        let s = s.as_ref().ok_or_else(|| null("series"))?;
        if out_re.is_null() || out_im.is_null() {
            return Err(null("output"));
        }
        let v = s.0.eval(C64::new(re, im));
        (*out_re, *out_im) = (v.re, v.im);
        Ok(())
    })
}

/// The modular function `J(z)` for `|z| < 1`.
///
/// # Safety
/// Outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn bohr_eval_j(re: f64, im: f64, out_re: *mut f64, out_im: *mut f64) -> BohrStatus {
    guard(|| {
        if out_re.is_null() || out_im.is_null() {
            return Err(null("output"));
        }
        let v = eval_j(C64::new(re, im)).map_err(lift)?;
        (*out_re, *out_im) = (v.re, v.im);
        Ok(())
    })
}

/// Writes `M_0..M_{len-1}` of `-J(-z) = z Σ M_n z^n` into `out`.
///
/// # Safety
/// `out` must be valid for `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn bohr_modular_coefficients(out: *mut f64, len: usize) -> BohrStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        if len == 0 {
            return Ok(());
        }
        let exp = coefficients_of_minus_j_minus(len - 1);
        std::slice::from_raw_parts_mut(out, len).copy_from_slice(&exp.m_coeffs()[..len]);
        Ok(())
    })
}

/// Runs the comma-separated `suites` (e.g. `"classical,harmonic"` or
/// `"all"`) at truncation `order` with `seed`.
///
/// # Safety
/// `suites` must be a NUL-terminated string; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn bohr_report_run(suites: *const c_char, order: usize, seed: u64, out: *mut *mut BohrReport) -> BohrStatus {
    guard(|| {
        if suites.is_null() {
            return Err(null("suites"));
        }
        if out.is_null() {
            return Err(null("out"));
        }
        let text = CStr::from_ptr(suites).to_str().map_err(|e| (BohrStatus::InvalidArgument, e.to_string()))?;
        let cfg = RunConfig {
            order,
            seed,
            suites: text.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect(),
            ..RunConfig::default()
        };
        *out = Box::into_raw(Box::new(BohrReport(run(&cfg).map_err(lift)?)));
        Ok(())
    })
}

/// # Safety
/// `r` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn bohr_report_free(r: *mut BohrReport) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// # Safety
/// `r` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn bohr_report_passed(r: *const BohrReport) -> usize {
    r.as_ref().map_or(0, |r| r.0.summary.passed)
}

/// # Safety
/// `r` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn bohr_report_failed(r: *const BohrReport) -> usize {
    r.as_ref().map_or(0, |r| r.0.summary.failed)
}

/// The report as JSON; release with [`bohr_string_free`]. Null on a null
/// handle.
///
/// # Safety
/// `r` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn bohr_report_json(r: *const BohrReport) -> *mut c_char {
    match r.as_ref() {
        Some(r) => CString::new(r.0.to_json()).map_or(ptr::null_mut(), CString::into_raw),
        None => ptr::null_mut(),
    }
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn bohr_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
