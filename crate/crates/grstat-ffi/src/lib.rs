//! C ABI for the greatest-root statistics library.
//!
//! Conventions: every fallible call returns a [`GrsStatus`]; results come
//! back through out-pointers; the Tracy-Widom table is an opaque handle
//! created with [`grs_tw_table_new`] and released with [`grs_tw_table_free`].
//! All functions are safe to call from multiple threads.

use std::ffi::c_char;

use grstat::approx;
use grstat::edge_scaling::{self};
use grstat::params::{Ensemble, StatParams};
use grstat::special::{tw_table, TwTable};

/// Result code of a C-ABI call.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GrsStatus {
    /// Success.
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// An argument was outside its domain.
    InvalidArgument = 2,
    /// The computation failed numerically.
    NumericalError = 3,
}

/// Opaque tabulated Tracy-Widom distribution (beta = 1 or 2).
pub struct GrsTwTable {
    inner: TwTable,
}

fn ensemble_from(complex_data: bool) -> Ensemble {
    if complex_data {
        Ensemble::Complex
    } else {
        Ensemble::Real
    }
}

fn stat_params(p: u32, m: u32, n: u32) -> Result<StatParams, GrsStatus> {
    StatParams::new(p, m, n).map_err(|_| GrsStatus::InvalidArgument)
}

/// Creates a Tracy-Widom table for `beta_index` (1 or 2). On success writes
/// a handle to `out`; release it with [`grs_tw_table_free`].
///
/// # Safety
/// `out` must be a valid pointer to writable memory for one pointer.
#[no_mangle]
pub unsafe extern "C" fn grs_tw_table_new(beta_index: u32, out: *mut *mut GrsTwTable) -> GrsStatus {
    if out.is_null() {
        return GrsStatus::NullPointer;
    }
    if beta_index != 1 && beta_index != 2 {
        return GrsStatus::InvalidArgument;
    }
    match tw_table(beta_index as u8) {
        Ok(table) => {
            let boxed = Box::new(GrsTwTable { inner: table.clone() });
            unsafe { out.write(Box::into_raw(boxed)) };
            GrsStatus::Ok
        }
        Err(_) => GrsStatus::NumericalError,
    }
}

/// Releases a table created by [`grs_tw_table_new`]. Null is a no-op.
///
/// # Safety
/// `table` must be a pointer previously returned by [`grs_tw_table_new`]
/// that has not been freed yet.
#[no_mangle]
pub unsafe extern "C" fn grs_tw_table_free(table: *mut GrsTwTable) {
    if !table.is_null() {
        drop(unsafe { Box::from_raw(table) });
    }
}

/// F_beta(s) from a table handle.
///
/// # Safety
/// `table` must be a live handle from [`grs_tw_table_new`]; `out` must be
/// valid for one f64 write.
#[no_mangle]
pub unsafe extern "C" fn grs_tw_cdf(table: *const GrsTwTable, s: f64, out: *mut f64) -> GrsStatus {
    if table.is_null() || out.is_null() {
        return GrsStatus::NullPointer;
    }
    if !s.is_finite() {
        return GrsStatus::InvalidArgument;
    }
    let value = unsafe { &(*table).inner }.cdf(s);
    unsafe { out.write(value) };
    GrsStatus::Ok
}

/// Quantile of F_beta from a table handle; `prob` must lie in (0, 1).
///
/// # Safety
/// As for [`grs_tw_cdf`].
#[no_mangle]
pub unsafe extern "C" fn grs_tw_quantile(
    table: *const GrsTwTable,
    prob: f64,
    out: *mut f64,
) -> GrsStatus {
    if table.is_null() || out.is_null() {
        return GrsStatus::NullPointer;
    }
    match unsafe { &(*table).inner }.quantile(prob) {
        Ok(q) => {
            unsafe { out.write(q) };
            GrsStatus::Ok
        }
        Err(_) => GrsStatus::InvalidArgument,
    }
}

/// Logit-scale centering and scaling constants for (p, m, n).
///
/// # Safety
/// `out_center` and `out_scale` must each be valid for one f64 write.
#[no_mangle]
pub unsafe extern "C" fn grs_logit_scaling(
    p: u32,
    m: u32,
    n: u32,
    complex_data: bool,
    out_center: *mut f64,
    out_scale: *mut f64,
) -> GrsStatus {
    if out_center.is_null() || out_scale.is_null() {
        return GrsStatus::NullPointer;
    }
    let params = match stat_params(p, m, n) {
        Ok(s) => s,
        Err(st) => return st,
    };
    match edge_scaling::logit_scaling(&params, ensemble_from(complex_data)) {
        Ok(e) => {
            unsafe {
                out_center.write(e.center);
                out_scale.write(e.scale);
            }
            GrsStatus::Ok
        }
        Err(_) => GrsStatus::InvalidArgument,
    }
}

/// Theta-scale centering and scaling constants (real ensemble).
///
/// # Safety
/// As for [`grs_logit_scaling`].
#[no_mangle]
pub unsafe extern "C" fn grs_theta_scaling(
    p: u32,
    m: u32,
    n: u32,
    out_center: *mut f64,
    out_scale: *mut f64,
) -> GrsStatus {
    if out_center.is_null() || out_scale.is_null() {
        return GrsStatus::NullPointer;
    }
    let params = match stat_params(p, m, n) {
        Ok(s) => s,
        Err(st) => return st,
    };
    match edge_scaling::theta_scaling(&params) {
        Ok(e) => {
            unsafe {
                out_center.write(e.center);
                out_scale.write(e.scale);
            }
            GrsStatus::Ok
        }
        Err(_) => GrsStatus::InvalidArgument,
    }
}

/// Upper-tail p-value of an observed greatest root `theta` in (0, 1).
///
/// # Safety
/// `out` must be valid for one f64 write.
#[no_mangle]
pub unsafe extern "C" fn grs_pvalue(
    p: u32,
    m: u32,
    n: u32,
    complex_data: bool,
    theta: f64,
    out: *mut f64,
) -> GrsStatus {
    if out.is_null() {
        return GrsStatus::NullPointer;
    }
    let params = match stat_params(p, m, n) {
        Ok(s) => s,
        Err(st) => return st,
    };
    match approx::greatest_root_pvalue(&params, theta, ensemble_from(complex_data)) {
        Ok(v) => {
            unsafe { out.write(v) };
            GrsStatus::Ok
        }
        Err(approx::ApproxError::ThetaDomain { .. }) => GrsStatus::InvalidArgument,
        Err(approx::ApproxError::Scaling(_)) => GrsStatus::InvalidArgument,
        Err(_) => GrsStatus::NumericalError,
    }
}

/// Critical value of the greatest root at significance level `alpha`:
/// the returned theta satisfies P(root > theta) = alpha.
///
/// # Safety
/// `out` must be valid for one f64 write.
#[no_mangle]
pub unsafe extern "C" fn grs_critical_value(
    p: u32,
    m: u32,
    n: u32,
    complex_data: bool,
    alpha: f64,
    out: *mut f64,
) -> GrsStatus {
    if out.is_null() {
        return GrsStatus::NullPointer;
    }
    if !(alpha > 0.0 && alpha < 1.0) {
        return GrsStatus::InvalidArgument;
    }
    let params = match stat_params(p, m, n) {
        Ok(s) => s,
        Err(st) => return st,
    };
    match approx::greatest_root_quantile(&params, 1.0 - alpha, ensemble_from(complex_data)) {
        Ok(v) => {
            unsafe { out.write(v) };
            GrsStatus::Ok
        }
        Err(approx::ApproxError::Scaling(_)) => GrsStatus::InvalidArgument,
        Err(_) => GrsStatus::NumericalError,
    }
}

/// P(smallest root <= theta) under the reflected approximation.
///
/// # Safety
/// `out` must be valid for one f64 write.
#[no_mangle]
pub unsafe extern "C" fn grs_smallest_root_cdf(
    p: u32,
    m: u32,
    n: u32,
    theta: f64,
    out: *mut f64,
) -> GrsStatus {
    if out.is_null() {
        return GrsStatus::NullPointer;
    }
    let params = match stat_params(p, m, n) {
        Ok(s) => s,
        Err(st) => return st,
    };
    match approx::smallest_root_cdf(&params, theta) {
        Ok(v) => {
            unsafe { out.write(v) };
            GrsStatus::Ok
        }
        Err(approx::ApproxError::ThetaDomain { .. }) | Err(approx::ApproxError::Scaling(_)) => {
            GrsStatus::InvalidArgument
        }
        Err(_) => GrsStatus::NumericalError,
    }
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn grs_status_message(status: GrsStatus) -> *const c_char {
    let bytes: &'static [u8] = match status {
        GrsStatus::Ok => b"ok\0",
        GrsStatus::NullPointer => b"null pointer argument\0",
        GrsStatus::InvalidArgument => b"invalid argument\0",
        GrsStatus::NumericalError => b"numerical error\0",
    };
    bytes.as_ptr().cast()
}

/// Library version as a static C string.
#[no_mangle]
pub extern "C" fn grs_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
