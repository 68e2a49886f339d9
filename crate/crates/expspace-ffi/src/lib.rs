//! C ABI for the expspace library.
//!
//! Conventions:
//! - Every fallible function returns an [`ExpspaceStatus`]; outputs go
//!   through pointer arguments that are written only on `Ok`.
//! - On a non-`Ok` return the thread-local error message is set; retrieve it
//!   with [`expspace_last_error`] before calling anything else.
//! - Handles (`ExpspaceMultiExp`, `ExpspaceFit`) are opaque; create them with
//!   their `_new`/`_fit` constructors and release them with the matching
//!   `_free`. Passing a handle to any other library is undefined behavior.
//! - The library never unwinds across the boundary: internal panics abort.
//!
//! The matching header, `include/expspace.h`, is generated by cbindgen at
//! build time.

use std::cell::RefCell;
use std::ffi::CStr;
use std::os::raw::{c_char, c_uint};
use std::slice;

use expspace::contraction::ContractionModel;
use expspace::fitting::{annual_growth_rate, fit_mono_exponential, FitResult, TimeSeries};
use expspace::ingest::{parse_model, ModelConfig};
use expspace::mono;
use expspace::multiexp::MultiExpModel;
use expspace::oracle::{mrt_quadrature, simulate_doubling, QuadratureSpec};
use expspace::processes::ProcessSet;
use expspace::Error;

/// Outcome of a library call. Anything other than `Ok` leaves the output
/// arguments untouched and records a message readable via
/// `expspace_last_error`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExpspaceStatus {
    /// The call succeeded and the outputs are valid.
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// An argument lies outside the mathematical domain of the operation.
    Domain = 2,
    /// A model or series violates a structural invariant.
    Validation = 3,
    /// A numerical routine exhausted its budget or lost finiteness.
    Numerical = 4,
    /// A config string is malformed.
    Parse = 5,
    /// A file could not be read.
    Io = 6,
}

/// A multi-exponential probability model behind an opaque pointer.
pub struct ExpspaceMultiExp {
    inner: MultiExpModel,
}

/// The result of a log-linear exponential fit behind an opaque pointer.
pub struct ExpspaceFit {
    inner: FitResult,
}

thread_local! {
    static LAST_ERROR: RefCell<Vec<u8>> = const { RefCell::new(Vec::new()) };
}

fn set_last_error(message: &str) {
    LAST_ERROR.with(|slot| {
        let mut slot = slot.borrow_mut();
        slot.clear();
        // Interior NULs would truncate the C-side view; make them visible.
        slot.extend(message.bytes().map(|b| if b == 0 { b'?' } else { b }));
    });
}

fn record(error: &Error) -> ExpspaceStatus {
    set_last_error(&error.to_string());
    match error {
        Error::Domain(_) => ExpspaceStatus::Domain,
        Error::Validation(_) => ExpspaceStatus::Validation,
        Error::Numerical(_) => ExpspaceStatus::Numerical,
        Error::Parse { .. } => ExpspaceStatus::Parse,
        Error::Io { .. } => ExpspaceStatus::Io,
    }
}

fn null_argument(name: &str) -> ExpspaceStatus {
    set_last_error(&format!("argument '{name}' is null"));
    ExpspaceStatus::NullArgument
}

/// Writes a computed value through `out`, or reports why it could not.
unsafe fn deliver(result: Result<f64, Error>, out: *mut f64) -> ExpspaceStatus {
    if out.is_null() {
        return null_argument("out");
    }
    match result {
        Ok(value) => {
            *out = value;
            ExpspaceStatus::Ok
        }
        Err(error) => record(&error),
    }
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn expspace_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Copies the calling thread's most recent error message into `buf` as a
/// NUL-terminated string, truncating to `cap - 1` bytes, and returns the full
/// message length in bytes (excluding the terminator). With a null `buf` or
/// zero `cap` nothing is copied and only the length is returned; a return of
/// zero means no error has been recorded on this thread. The message is
/// meaningful only immediately after a call returned a non-`Ok` status.
///
/// # Safety
/// `buf` must be null or point to at least `cap` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn expspace_last_error(buf: *mut c_char, cap: usize) -> usize {
    LAST_ERROR.with(|slot| {
        let message = slot.borrow();
        if !buf.is_null() && cap > 0 {
            let n = message.len().min(cap - 1);
            std::ptr::copy_nonoverlapping(message.as_ptr() as *const c_char, buf, n);
            *buf.add(n) = 0;
        }
        message.len()
    })
}

/// Probability that the starting partition still holds the outcome after
/// scaled time `t_scaled`; `e^(-t_scaled)`.
///
/// # Safety
/// `out` must point to a writable double.
#[no_mangle]
pub unsafe extern "C" fn expspace_mono_probability(t_scaled: f64, out: *mut f64) -> ExpspaceStatus {
    deliver(mono::probability(t_scaled), out)
}

/// Entropy in nats accumulated by scaled time `t_scaled`; equals `t_scaled`.
///
/// # Safety
/// `out` must point to a writable double.
#[no_mangle]
pub unsafe extern "C" fn expspace_mono_entropy(t_scaled: f64, out: *mut f64) -> ExpspaceStatus {
    deliver(mono::entropy(t_scaled), out)
}

/// Combined rate constant of `len` simultaneous independent expansion
/// processes: the plain sum of the rates, after validating each.
///
/// # Safety
/// `rates` must point to `len` readable doubles; `out` must point to a
/// writable double.
#[no_mangle]
pub unsafe extern "C" fn expspace_combined_rate(
    rates: *const f64,
    len: usize,
    out: *mut f64,
) -> ExpspaceStatus {
    if rates.is_null() {
        return null_argument("rates");
    }
    let rates = slice::from_raw_parts(rates, len);
    deliver(
        ProcessSet::new(rates.to_vec()).map(|set| set.combined_rate()),
        out,
    )
}

/// Annual growth fraction `e^lambda - 1` for a per-year rate constant.
///
/// # Safety
/// `out` must point to a writable double.
#[no_mangle]
pub unsafe extern "C" fn expspace_annual_growth_rate(lambda: f64, out: *mut f64) -> ExpspaceStatus {
    deliver(annual_growth_rate(lambda), out)
}

/// Enumerates a sample space doubled `doublings` times (at most 20) and
/// writes the exact per-partition probability and Shannon entropy.
///
/// # Safety
/// `probability_out` and `entropy_out` must each point to a writable double.
#[no_mangle]
pub unsafe extern "C" fn expspace_simulate_doubling(
    doublings: c_uint,
    probability_out: *mut f64,
    entropy_out: *mut f64,
) -> ExpspaceStatus {
    if probability_out.is_null() {
        return null_argument("probability_out");
    }
    if entropy_out.is_null() {
        return null_argument("entropy_out");
    }
    match simulate_doubling(doublings) {
        Ok((p, h)) => {
            *probability_out = p;
            *entropy_out = h;
            ExpspaceStatus::Ok
        }
        Err(error) => record(&error),
    }
}

/// Largest time at which a contraction from `s0` alternatives is still
/// feasible: `ln(s0) / ln 2`.
///
/// # Safety
/// `out` must point to a writable double.
#[no_mangle]
pub unsafe extern "C" fn expspace_contraction_t_max(s0: u64, out: *mut f64) -> ExpspaceStatus {
    deliver(ContractionModel::new(s0).map(|m| m.t_max()), out)
}

/// Per-partition probability `e^(t ln 2) / s0` of a contracting space,
/// rejecting times past the stopping point.
///
/// # Safety
/// `out` must point to a writable double.
#[no_mangle]
pub unsafe extern "C" fn expspace_contraction_probability(
    s0: u64,
    t: f64,
    out: *mut f64,
) -> ExpspaceStatus {
    deliver(ContractionModel::new(s0).and_then(|m| m.probability(t)), out)
}

/// Entropy change `-t ln 2` of a contracting space, rejecting times past the
/// stopping point.
///
/// # Safety
/// `out` must point to a writable double.
#[no_mangle]
pub unsafe extern "C" fn expspace_contraction_entropy(
    s0: u64,
    t: f64,
    out: *mut f64,
) -> ExpspaceStatus {
    deliver(ContractionModel::new(s0).and_then(|m| m.entropy(t)), out)
}

/// Builds a multi-exponential model from parallel `weights` and `rates`
/// arrays of length `len`. Requirements match the library: positive finite
/// entries, pairwise-distinct rates with the largest equal to 1, and weights
/// summing to 1 within 1e-9 (they are renormalized on construction). On
/// success `*out` owns the model; release it with `expspace_multiexp_free`.
///
/// # Safety
/// `weights` and `rates` must each point to `len` readable doubles; `out`
/// must point to a writable pointer slot.
#[no_mangle]
pub unsafe extern "C" fn expspace_multiexp_new(
    weights: *const f64,
    rates: *const f64,
    len: usize,
    out: *mut *mut ExpspaceMultiExp,
) -> ExpspaceStatus {
    if weights.is_null() {
        return null_argument("weights");
    }
    if rates.is_null() {
        return null_argument("rates");
    }
    if out.is_null() {
        return null_argument("out");
    }
    let weights = slice::from_raw_parts(weights, len);
    let rates = slice::from_raw_parts(rates, len);
    let pairs: Vec<(f64, f64)> = weights.iter().copied().zip(rates.iter().copied()).collect();
    match MultiExpModel::try_from(pairs) {
        Ok(inner) => {
            *out = Box::into_raw(Box::new(ExpspaceMultiExp { inner }));
            ExpspaceStatus::Ok
        }
        Err(error) => record(&error),
    }
}

/// Builds a multi-exponential model from config text containing
/// `component = weight,rate` lines (comments with `#` allowed). On success
/// `*out` owns the model; release it with `expspace_multiexp_free`.
///
/// # Safety
/// `text` must be a valid NUL-terminated string; `out` must point to a
/// writable pointer slot.
#[no_mangle]
pub unsafe extern "C" fn expspace_multiexp_from_config(
    text: *const c_char,
    out: *mut *mut ExpspaceMultiExp,
) -> ExpspaceStatus {
    if text.is_null() {
        return null_argument("text");
    }
    if out.is_null() {
        return null_argument("out");
    }
    let text = match CStr::from_ptr(text).to_str() {
        Ok(s) => s,
        Err(_) => {
            set_last_error("config text is not valid UTF-8");
            return ExpspaceStatus::Parse;
        }
    };
    match parse_model(text, "config") {
        Ok(ModelConfig::MultiExp(inner)) => {
            *out = Box::into_raw(Box::new(ExpspaceMultiExp { inner }));
            ExpspaceStatus::Ok
        }
        Ok(other) => {
            set_last_error(&format!(
                "config holds a {} model; this constructor needs component entries",
                other.kind()
            ));
            ExpspaceStatus::Validation
        }
        Err(error) => record(&error),
    }
}

/// Releases a model created by `expspace_multiexp_new` or
/// `expspace_multiexp_from_config`. A null pointer is ignored.
///
/// # Safety
/// `model` must be null or a pointer previously returned by one of this
/// library's multiexp constructors, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn expspace_multiexp_free(model: *mut ExpspaceMultiExp) {
    if !model.is_null() {
        drop(Box::from_raw(model));
    }
}

/// Number of exponential components in the model; 0 for a null handle.
///
/// # Safety
/// `model` must be null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn expspace_multiexp_components(model: *const ExpspaceMultiExp) -> usize {
    if model.is_null() {
        0
    } else {
        (*model).inner.components().len()
    }
}

/// Mixture probability `sum A_i e^(-c_i T)` at scaled time `t_scaled`.
///
/// # Safety
/// `model` must be a live handle from this library; `out` must point to a
/// writable double.
#[no_mangle]
pub unsafe extern "C" fn expspace_multiexp_probability(
    model: *const ExpspaceMultiExp,
    t_scaled: f64,
    out: *mut f64,
) -> ExpspaceStatus {
    if model.is_null() {
        return null_argument("model");
    }
    deliver((*model).inner.probability(t_scaled), out)
}

/// Mixture entropy `-ln p` in nats at scaled time `t_scaled`, evaluated
/// stably even where the probability underflows.
///
/// # Safety
/// `model` must be a live handle from this library; `out` must point to a
/// writable double.
#[no_mangle]
pub unsafe extern "C" fn expspace_multiexp_entropy(
    model: *const ExpspaceMultiExp,
    t_scaled: f64,
    out: *mut f64,
) -> ExpspaceStatus {
    if model.is_null() {
        return null_argument("model");
    }
    deliver((*model).inner.entropy(t_scaled), out)
}

/// Late-time entropy asymptote `c_n T - ln A_n` from the slowest component.
///
/// # Safety
/// `model` must be a live handle from this library; `out` must point to a
/// writable double.
#[no_mangle]
pub unsafe extern "C" fn expspace_multiexp_entropy_asymptote(
    model: *const ExpspaceMultiExp,
    t_scaled: f64,
    out: *mut f64,
) -> ExpspaceStatus {
    if model.is_null() {
        return null_argument("model");
    }
    deliver(Ok((*model).inner.entropy_asymptote(t_scaled)), out)
}

/// Entropy at `t_scaled` as a fraction of the entropy at `t_max`.
///
/// # Safety
/// `model` must be a live handle from this library; `out` must point to a
/// writable double.
#[no_mangle]
pub unsafe extern "C" fn expspace_multiexp_normalized_entropy(
    model: *const ExpspaceMultiExp,
    t_scaled: f64,
    t_max: f64,
    out: *mut f64,
) -> ExpspaceStatus {
    if model.is_null() {
        return null_argument("model");
    }
    deliver((*model).inner.normalized_entropy(t_scaled, t_max), out)
}

/// Mean residence time in scaled-time units, by the closed form
/// `(sum A_i/c_i^2) / (sum A_i/c_i)`.
///
/// # Safety
/// `model` must be a live handle from this library; `out` must point to a
/// writable double.
#[no_mangle]
pub unsafe extern "C" fn expspace_multiexp_mrt(
    model: *const ExpspaceMultiExp,
    out: *mut f64,
) -> ExpspaceStatus {
    if model.is_null() {
        return null_argument("model");
    }
    deliver(Ok((*model).inner.mean_residence_time()), out)
}

/// Mean residence time by adaptive quadrature, as an independent
/// cross-check of the closed form. `rel_tol` and `truncation` configure the
/// integrator; pass 1e-6 and 1e-9 for the defaults.
///
/// # Safety
/// `model` must be a live handle from this library; `out` must point to a
/// writable double.
#[no_mangle]
pub unsafe extern "C" fn expspace_multiexp_mrt_quadrature(
    model: *const ExpspaceMultiExp,
    rel_tol: f64,
    truncation: f64,
    out: *mut f64,
) -> ExpspaceStatus {
    if model.is_null() {
        return null_argument("model");
    }
    let result =
        QuadratureSpec::new(rel_tol, truncation).and_then(|spec| mrt_quadrature(&(*model).inner, &spec));
    deliver(result, out)
}

/// Fits `v(t) = s0 e^(lambda t)` to parallel `times`/`values` arrays of
/// length `len` by least squares on `ln v`. Requires `len >= 2`, strictly
/// increasing times, and positive values. On success `*out` owns the fit;
/// release it with `expspace_fit_free` and read it with the `expspace_fit_*`
/// getters.
///
/// # Safety
/// `times` and `values` must each point to `len` readable doubles; `out`
/// must point to a writable pointer slot.
#[no_mangle]
pub unsafe extern "C" fn expspace_fit_new(
    times: *const f64,
    values: *const f64,
    len: usize,
    out: *mut *mut ExpspaceFit,
) -> ExpspaceStatus {
    if times.is_null() {
        return null_argument("times");
    }
    if values.is_null() {
        return null_argument("values");
    }
    if out.is_null() {
        return null_argument("out");
    }
    let times = slice::from_raw_parts(times, len);
    let values = slice::from_raw_parts(values, len);
    let points: Vec<(f64, f64)> = times.iter().copied().zip(values.iter().copied()).collect();
    let fitted = TimeSeries::new("0", points).and_then(|series| fit_mono_exponential(&series));
    match fitted {
        Ok(inner) => {
            *out = Box::into_raw(Box::new(ExpspaceFit { inner }));
            ExpspaceStatus::Ok
        }
        Err(error) => record(&error),
    }
}

/// Releases a fit created by `expspace_fit_new`. A null pointer is ignored.
///
/// # Safety
/// `fit` must be null or a pointer previously returned by
/// `expspace_fit_new`, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn expspace_fit_free(fit: *mut ExpspaceFit) {
    if !fit.is_null() {
        drop(Box::from_raw(fit));
    }
}

/// Estimated initial size `s0` of a fit.
///
/// # Safety
/// `fit` must be a live handle from `expspace_fit_new`; `out` must point to
/// a writable double.
#[no_mangle]
pub unsafe extern "C" fn expspace_fit_s0(
    fit: *const ExpspaceFit,
    out: *mut f64,
) -> ExpspaceStatus {
    if fit.is_null() {
        return null_argument("fit");
    }
    deliver(Ok((*fit).inner.s0_hat), out)
}

/// Estimated rate constant `lambda` of a fit.
///
/// # Safety
/// `fit` must be a live handle from `expspace_fit_new`; `out` must point to
/// a writable double.
#[no_mangle]
pub unsafe extern "C" fn expspace_fit_lambda(
    fit: *const ExpspaceFit,
    out: *mut f64,
) -> ExpspaceStatus {
    if fit.is_null() {
        return null_argument("fit");
    }
    deliver(Ok((*fit).inner.lambda_hat), out)
}

/// Log-space coefficient of determination of a fit, in `[0, 1]`.
///
/// # Safety
/// `fit` must be a live handle from `expspace_fit_new`; `out` must point to
/// a writable double.
#[no_mangle]
pub unsafe extern "C" fn expspace_fit_r_squared(
    fit: *const ExpspaceFit,
    out: *mut f64,
) -> ExpspaceStatus {
    if fit.is_null() {
        return null_argument("fit");
    }
    deliver(Ok((*fit).inner.r_squared), out)
}
