//! C ABI over `mixmean`.
//!
//! Weight sequences live behind an opaque `MmWeights` handle created by
//! [`mm_weights_new`] and released with [`mm_weights_free`]. Every other call
//! returns an [`MmStatus`] and writes its results through out-pointers; on a
//! non-OK status, [`mm_last_error_message`] describes the failure on the
//! calling thread. The generated header is `include/mixmean.h`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use mixmean::{
    boundary_bound, certify, critical_weight, extended_conditions, holland_condition,
    interior_bound, nanjundiah_condition, objective_f, popoviciu_increment, power_mean,
    rado_increment, ratio_form_lhs, Error, Exponent, Route, SampleVector, SearchConfig,
    WeightSequence, YPoint,
};

/// Status codes returned by every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MmStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidInput = 2,
    NotApplicable = 3,
    OutOfRange = 4,
    Internal = 5,
}

/// Certification route, mirroring `mixmean::Route`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MmRoute {
    Holland = 0,
    Extended = 1,
    NumericOnly = 2,
    RefutedNumeric = 3,
}

impl From<Route> for MmRoute {
    fn from(r: Route) -> Self {
        match r {
            Route::Holland => MmRoute::Holland,
            Route::Extended => MmRoute::Extended,
            Route::NumericOnly => MmRoute::NumericOnly,
            Route::RefutedNumeric => MmRoute::RefutedNumeric,
        }
    }
}

/// Opaque weight sequence handle.
pub struct MmWeights {
    inner: WeightSequence,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn status_of(err: &Error) -> MmStatus {
    match err {
        Error::NotApplicable(_) | Error::TooShort { .. } | Error::DimensionGuard { .. } => {
            MmStatus::NotApplicable
        }
        Error::IndexOutOfRange { .. } | Error::OutOfBox { .. } | Error::BoundaryPoint { .. } => {
            MmStatus::OutOfRange
        }
        _ => MmStatus::InvalidInput,
    }
}

type Outcome = Result<(), MmStatus>;

fn fail(err: Error) -> MmStatus {
    let status = status_of(&err);
    set_last_error(err.to_string());
    status
}

/// Runs `body`, turning errors and panics into a status code.
fn guard<F: FnOnce() -> Outcome>(body: F) -> MmStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => MmStatus::Ok,
        Ok(Err(status)) => status,
        Err(_) => {
            set_last_error("internal panic".into());
            MmStatus::Internal
        }
    }
}

fn null_pointer(what: &str) -> MmStatus {
    set_last_error(format!("{what} is NULL"));
    MmStatus::NullPointer
}

/// # Safety
/// `data` must be NULL (only with `len == 0`) or point to `len` readable doubles.
unsafe fn read_slice<'a>(data: *const f64, len: usize, what: &str) -> Result<&'a [f64], MmStatus> {
    if len == 0 {
        return Ok(&[]);
    }
    if data.is_null() {
        return Err(null_pointer(what));
    }
    Ok(std::slice::from_raw_parts(data, len))
}

/// # Safety
/// `handle` must be NULL or a live pointer from [`mm_weights_new`].
unsafe fn weights<'a>(handle: *const MmWeights) -> Result<&'a WeightSequence, MmStatus> {
    handle
        .as_ref()
        .map(|h| &h.inner)
        .ok_or_else(|| null_pointer("weights handle"))
}

fn write_out<T>(out: *mut T, value: T, what: &str) -> Outcome {
    if out.is_null() {
        return Err(null_pointer(what));
    }
    // SAFETY: non-null, and callers promise it is writable.
    unsafe { out.write(value) };
    Ok(())
}

fn samples(w: &WeightSequence, x: &[f64]) -> Result<SampleVector, MmStatus> {
    let sample = SampleVector::new(x.to_vec()).map_err(fail)?;
    if sample.len() != w.len() {
        return Err(fail(Error::LengthMismatch {
            left: w.len(),
            right: sample.len(),
        }));
    }
    Ok(sample)
}

/// Creates a weight sequence from `len` positive doubles.
///
/// # Safety
/// `w` must point to `len` readable doubles and `out` must be writable.
/// The handle must be released with [`mm_weights_free`].
#[no_mangle]
pub unsafe extern "C" fn mm_weights_new(
    w: *const f64,
    len: usize,
    out: *mut *mut MmWeights,
) -> MmStatus {
    guard(|| {
        let values = read_slice(w, len, "w")?;
        let inner = WeightSequence::new(values.to_vec()).map_err(fail)?;
        let handle = Box::into_raw(Box::new(MmWeights { inner }));
        write_out(out, handle, "out").inspect_err(|_| {
            drop(Box::from_raw(handle));
        })
    })
}

/// Releases a handle. NULL is ignored.
///
/// # Safety
/// `handle` must come from [`mm_weights_new`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn mm_weights_free(handle: *mut MmWeights) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

/// Number of weights, or 0 for NULL.
///
/// # Safety
/// `handle` must be NULL or live.
#[no_mangle]
pub unsafe extern "C" fn mm_weights_len(handle: *const MmWeights) -> usize {
    handle.as_ref().map_or(0, |h| h.inner.len())
}

/// Weighted power mean with probability weights `q` (summing to 1).
///
/// # Safety
/// `q` and `x` must each point to `len` doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mm_power_mean(
    q: *const f64,
    x: *const f64,
    len: usize,
    r: f64,
    out: *mut f64,
) -> MmStatus {
    guard(|| {
        let q = read_slice(q, len, "q")?;
        let x = read_slice(x, len, "x")?;
        let r = Exponent::new(r).map_err(fail)?;
        let v = power_mean(q, x, r).map_err(fail)?;
        write_out(out, v, "out")
    })
}

/// Rado increment at level `k` (2 <= k <= n).
///
/// # Safety
/// `x` must point to `len` doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mm_rado_increment(
    handle: *const MmWeights,
    x: *const f64,
    len: usize,
    s: f64,
    k: usize,
    out: *mut f64,
) -> MmStatus {
    guard(|| {
        let w = weights(handle)?;
        let x = samples(w, read_slice(x, len, "x")?)?;
        let s = Exponent::new(s).map_err(fail)?;
        let v = rado_increment(w, &x, s, k).map_err(fail)?;
        write_out(out, v, "out")
    })
}

/// Popoviciu (log-domain) increment at level `k`.
///
/// # Safety
/// As [`mm_rado_increment`].
#[no_mangle]
pub unsafe extern "C" fn mm_popoviciu_increment(
    handle: *const MmWeights,
    x: *const f64,
    len: usize,
    k: usize,
    out: *mut f64,
) -> MmStatus {
    guard(|| {
        let w = weights(handle)?;
        let x = samples(w, read_slice(x, len, "x")?)?;
        let v = popoviciu_increment(w, &x, k).map_err(fail)?;
        write_out(out, v, "out")
    })
}

/// Left side of the ratio form of the level-n inequality; at most 1 when it holds.
///
/// # Safety
/// As [`mm_rado_increment`].
#[no_mangle]
pub unsafe extern "C" fn mm_ratio_form_lhs(
    handle: *const MmWeights,
    x: *const f64,
    len: usize,
    out: *mut f64,
) -> MmStatus {
    guard(|| {
        let w = weights(handle)?;
        let x = samples(w, read_slice(x, len, "x")?)?;
        let v = ratio_form_lhs(w, &x).map_err(fail)?;
        write_out(out, v, "out")
    })
}

/// Nanjundiah's condition. `out_holds` receives the verdict.
///
/// # Safety
/// `handle` must be live; `out_holds` writable.
#[no_mangle]
pub unsafe extern "C" fn mm_nanjundiah_condition(
    handle: *const MmWeights,
    out_holds: *mut bool,
) -> MmStatus {
    guard(|| {
        let report = nanjundiah_condition(weights(handle)?).map_err(fail)?;
        write_out(out_holds, report.holds, "out_holds")
    })
}

/// Holland's condition: the single margin `W_{n-1}^2 - w_n S_{n-2}` and its verdict.
///
/// # Safety
/// `handle` must be live; both out-pointers writable.
#[no_mangle]
pub unsafe extern "C" fn mm_holland_condition(
    handle: *const MmWeights,
    out_margin: *mut f64,
    out_holds: *mut bool,
) -> MmStatus {
    guard(|| {
        let report = holland_condition(weights(handle)?).map_err(fail)?;
        write_out(out_margin, report.margins[0].value, "out_margin")?;
        write_out(out_holds, report.holds, "out_holds")
    })
}

/// The four extended-condition margins (a)..(d) and the verdict. Needs n >= 3.
///
/// # Safety
/// `out_margins` must point to 4 writable doubles; `out_holds` writable.
#[no_mangle]
pub unsafe extern "C" fn mm_extended_conditions(
    handle: *const MmWeights,
    out_margins: *mut f64,
    out_holds: *mut bool,
) -> MmStatus {
    guard(|| {
        let report = extended_conditions(weights(handle)?).map_err(fail)?;
        if out_margins.is_null() {
            return Err(null_pointer("out_margins"));
        }
        for (i, m) in report.margins.iter().enumerate() {
            out_margins.add(i).write(m.value);
        }
        write_out(out_holds, report.holds, "out_holds")
    })
}

/// Critical last weight `W_{n-1}^2 / S_{n-2}` for a head `w_1..w_{n-1}`.
///
/// # Safety
/// `head` must be live; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn mm_critical_weight(head: *const MmWeights, out: *mut f64) -> MmStatus {
    guard(|| {
        let v = critical_weight(weights(head)?).map_err(fail)?;
        write_out(out, v, "out")
    })
}

/// Reduced objective at `y` (length n-1, inside the box).
///
/// # Safety
/// `y` must point to `len` doubles; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn mm_objective_f(
    handle: *const MmWeights,
    y: *const f64,
    len: usize,
    out: *mut f64,
) -> MmStatus {
    guard(|| {
        let w = weights(handle)?;
        let point = YPoint::new(w, read_slice(y, len, "y")?.to_vec()).map_err(fail)?;
        let v = objective_f(w, &point).map_err(fail)?;
        write_out(out, v, "out")
    })
}

/// Larger of the face suprema of the reduced objective `g`. Needs n >= 3.
///
/// # Safety
/// `handle` must be live; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn mm_boundary_bound(handle: *const MmWeights, out: *mut f64) -> MmStatus {
    guard(|| {
        let v = boundary_bound(weights(handle)?).map_err(fail)?;
        write_out(out, v, "out")
    })
}

/// Bound on interior stationary values; only when Holland's condition fails.
///
/// # Safety
/// `handle` must be live; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn mm_interior_bound(handle: *const MmWeights, out: *mut f64) -> MmStatus {
    guard(|| {
        let v = interior_bound(weights(handle)?).map_err(fail)?;
        write_out(out, v, "out")
    })
}

/// Runs certification. `resolution == 0` picks the lattice size automatically.
///
/// # Safety
/// `handle` must be live; out-pointers writable.
#[no_mangle]
pub unsafe extern "C" fn mm_certify(
    handle: *const MmWeights,
    resolution: usize,
    out_route: *mut MmRoute,
    out_slack: *mut f64,
) -> MmStatus {
    guard(|| {
        let w = weights(handle)?;
        let res = (resolution != 0).then_some(resolution);
        let cert = certify(w, res, &SearchConfig::default()).map_err(fail)?;
        write_out(out_route, cert.route.into(), "out_route")?;
        write_out(out_slack, cert.slack, "out_slack")
    })
}

/// Certificate as a JSON string. Free it with [`mm_string_free`].
///
/// # Safety
/// `handle` must be live; `out_json` writable.
#[no_mangle]
pub unsafe extern "C" fn mm_certify_json(
    handle: *const MmWeights,
    resolution: usize,
    out_json: *mut *mut c_char,
) -> MmStatus {
    guard(|| {
        let w = weights(handle)?;
        let res = (resolution != 0).then_some(resolution);
        let cert = certify(w, res, &SearchConfig::default()).map_err(fail)?;
        let text = serde_json::to_string(&cert).map_err(|e| {
            set_last_error(e.to_string());
            MmStatus::Internal
        })?;
        let c = CString::new(text).map_err(|_| MmStatus::Internal)?;
        let raw = c.into_raw();
        write_out(out_json, raw, "out_json").inspect_err(|_| {
            drop(CString::from_raw(raw));
        })
    })
}

/// Frees a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn mm_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failure on this thread, or NULL. Valid until the
/// next failing call on the same thread.
#[no_mangle]
pub extern "C" fn mm_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Copy of the last error, for Rust-side callers and tests.
pub fn last_error() -> Option<String> {
    let p = mm_last_error_message();
    if p.is_null() {
        None
    } else {
        // SAFETY: points into the thread-local CString.
        Some(unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned())
    }
}
