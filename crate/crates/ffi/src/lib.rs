//! C ABI for `regamma`.
//!
//! All state lives in an opaque [`RegammaContext`] created by
//! [`regamma_context_new`] and released by [`regamma_context_free`]. Every
//! evaluation returns a [`RegammaStatus`] and writes its result through an out
//! pointer; nothing panics across the boundary.

use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};

use regamma::{ConditionFlag, Error, GammaValue, HankelContour, MethodTag, QuadratureConfig};

/// Tolerance and contour settings shared by calls on one context.
pub struct RegammaContext {
    cfg: QuadratureConfig,
    contour: HankelContour,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegammaStatus {
    Ok = 0,
    NullPointer = 1,
    IntegerArgument = 2,
    NonPositiveArgument = 3,
    Overflow = 4,
    Pole = 5,
    InvalidConfig = 6,
    ContourDegenerate = 7,
    InvalidArgument = 8,
    Internal = 9,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegammaMethod {
    RealAxis = 0,
    PowerSubst = 1,
    LogForm = 2,
    CauchySaalschutz = 3,
    Hankel = 4,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegammaFlag {
    Ok = 0,
    NearIntegerAmplification = 1,
    ToleranceNotMet = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegammaResult {
    pub value: f64,
    pub abs_error: f64,
    pub evaluations: u64,
    pub flag: RegammaFlag,
    /// Non-zero when the value came from a closed form, not quadrature.
    pub exact: u8,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegammaComplex {
    pub re: f64,
    pub im: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegammaComplexResult {
    pub value: RegammaComplex,
    pub abs_error: f64,
    pub evaluations: u64,
    pub flag: RegammaFlag,
}

impl From<&Error> for RegammaStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::IntegerArgument(_) => RegammaStatus::IntegerArgument,
            Error::NonPositiveArgument(_) => RegammaStatus::NonPositiveArgument,
            Error::Overflow(_) => RegammaStatus::Overflow,
            Error::Pole(_) => RegammaStatus::Pole,
            Error::InvalidConfig(_) => RegammaStatus::InvalidConfig,
            Error::ContourDegenerate(_) => RegammaStatus::ContourDegenerate,
            Error::InvalidArgument(_) | Error::Io(_) => RegammaStatus::InvalidArgument,
        }
    }
}

fn flag(f: ConditionFlag) -> RegammaFlag {
    match f {
        ConditionFlag::Ok => RegammaFlag::Ok,
        ConditionFlag::NearIntegerAmplification => RegammaFlag::NearIntegerAmplification,
        ConditionFlag::ToleranceNotMet => RegammaFlag::ToleranceNotMet,
    }
}

fn method_from_raw(raw: i32) -> Option<MethodTag> {
    Some(match raw {
        0 => MethodTag::RealAxis,
        1 => MethodTag::PowerSubst,
        2 => MethodTag::LogForm,
        3 => MethodTag::CauchySaalschutz,
        4 => MethodTag::Hankel,
        _ => return None,
    })
}

fn result_of(v: &GammaValue) -> RegammaResult {
    RegammaResult {
        value: v.value,
        abs_error: v.abs_error(),
        evaluations: v.evaluations() as u64,
        flag: flag(v.condition_flag()),
        exact: v.is_exact() as u8,
    }
}

/// Run `body` with a borrowed context, mapping errors and panics to a status.
fn guarded<T>(
    ctx: *const RegammaContext,
    out: *mut T,
    body: impl FnOnce(&RegammaContext) -> regamma::Result<T>,
) -> RegammaStatus {
    if ctx.is_null() || out.is_null() {
        return RegammaStatus::NullPointer;
    }
    // SAFETY: non-null and, per the API contract, obtained from regamma_context_new
    let ctx = unsafe { &*ctx };
    match catch_unwind(AssertUnwindSafe(|| body(ctx))) {
        Ok(Ok(v)) => {
            // SAFETY: non-null, caller provides writable storage for one T
            unsafe { out.write(v) };
            RegammaStatus::Ok
        }
        Ok(Err(e)) => RegammaStatus::from(&e),
        Err(_) => RegammaStatus::Internal,
    }
}

/// New context with relative tolerance `1e-8` and the default contour.
/// Free it with `regamma_context_free`.
#[no_mangle]
pub extern "C" fn regamma_context_new() -> *mut RegammaContext {
    Box::into_raw(Box::new(RegammaContext {
        cfg: QuadratureConfig::default(),
        contour: HankelContour::default(),
    }))
}

/// Release a context. Null is ignored.
///
/// # Safety
/// `ctx` must come from `regamma_context_new` and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn regamma_context_free(ctx: *mut RegammaContext) {
    if !ctx.is_null() {
        drop(Box::from_raw(ctx));
    }
}

/// # Safety
/// `ctx` must be a live context.
#[no_mangle]
pub unsafe extern "C" fn regamma_context_set_eps_rel(
    ctx: *mut RegammaContext,
    eps_rel: f64,
) -> RegammaStatus {
    if ctx.is_null() {
        return RegammaStatus::NullPointer;
    }
    let cfg = QuadratureConfig::with_eps_rel(eps_rel);
    match cfg.validate() {
        Ok(()) => {
            (*ctx).cfg = cfg;
            RegammaStatus::Ok
        }
        Err(e) => RegammaStatus::from(&e),
    }
}

/// Ray angle `delta` in `(π/2, π)` and arc radius `r0 > 0`; the outer radius
/// stays automatic.
///
/// # Safety
/// `ctx` must be a live context.
#[no_mangle]
pub unsafe extern "C" fn regamma_context_set_contour(
    ctx: *mut RegammaContext,
    delta: f64,
    r0: f64,
) -> RegammaStatus {
    if ctx.is_null() {
        return RegammaStatus::NullPointer;
    }
    let contour = HankelContour::with_angle_and_radius(delta, r0);
    match contour.validate() {
        Ok(()) => {
            (*ctx).contour = contour;
            RegammaStatus::Ok
        }
        Err(e) => RegammaStatus::from(&e),
    }
}

/// `1/Γ(z)` by `method` (a `RegammaMethod` value).
///
/// # Safety
/// `ctx` must be a live context and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn regamma_recip_gamma(
    ctx: *const RegammaContext,
    z: f64,
    method: i32,
    out: *mut RegammaResult,
) -> RegammaStatus {
    guarded(ctx, out, |c| {
        let m = method_from_raw(method)
            .ok_or_else(|| Error::InvalidArgument(format!("method {method}")))?;
        regamma::recip_gamma(z, &c.cfg, m).map(|v| result_of(&v))
    })
}

/// `Γ(z)`.
///
/// # Safety
/// `ctx` must be a live context and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn regamma_gamma(
    ctx: *const RegammaContext,
    z: f64,
    out: *mut RegammaResult,
) -> RegammaStatus {
    guarded(ctx, out, |c| {
        regamma::gamma(z, &c.cfg).map(|v| result_of(&v))
    })
}

/// `Γ(-z)` for non-integer `z > 0`.
///
/// # Safety
/// `ctx` must be a live context and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn regamma_gamma_negative(
    ctx: *const RegammaContext,
    z: f64,
    out: *mut RegammaResult,
) -> RegammaStatus {
    guarded(ctx, out, |c| {
        regamma::gamma_negative(z, &c.cfg).map(|v| result_of(&v))
    })
}

/// `Γ(-z)` from the integral with one more subtracted term.
///
/// # Safety
/// `ctx` must be a live context and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn regamma_gamma_cauchy_saalschutz(
    ctx: *const RegammaContext,
    z: f64,
    out: *mut RegammaResult,
) -> RegammaStatus {
    guarded(ctx, out, |c| {
        regamma::gamma_cauchy_saalschutz(z, &c.cfg).map(|v| result_of(&v))
    })
}

/// `1/Γ(-z)` for `z > 0`.
///
/// # Safety
/// `ctx` must be a live context and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn regamma_recip_gamma_neg_reflection(
    ctx: *const RegammaContext,
    z: f64,
    out: *mut RegammaResult,
) -> RegammaStatus {
    guarded(ctx, out, |c| {
        regamma::recip_gamma_neg_reflection(z, &c.cfg).map(|v| result_of(&v))
    })
}

/// `Γ(a)/Γ(b)` for `a, b > 0`.
///
/// # Safety
/// `ctx` must be a live context and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn regamma_gamma_ratio(
    ctx: *const RegammaContext,
    a: f64,
    b: f64,
    out: *mut RegammaResult,
) -> RegammaStatus {
    guarded(ctx, out, |c| {
        regamma::gamma_ratio(a, b, &c.cfg).map(|v| result_of(&v))
    })
}

/// `1/Γ(z)` along the context's Hankel contour; the imaginary part should be
/// round-off.
///
/// # Safety
/// `ctx` must be a live context and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn regamma_hankel_recip_gamma(
    ctx: *const RegammaContext,
    z: f64,
    out: *mut RegammaComplexResult,
) -> RegammaStatus {
    guarded(ctx, out, |c| {
        regamma::hankel_recip_gamma(z, &c.contour, &c.cfg).map(|r| RegammaComplexResult {
            value: RegammaComplex {
                re: r.value.re,
                im: r.value.im,
            },
            abs_error: r.abs_error_estimate,
            evaluations: r.evaluations as u64,
            flag: flag(r.condition_flag),
        })
    })
}

/// Inverse Laplace transform of `Γ(k+1)/s^{k+1}` at `t`, i.e. `t^k`.
///
/// # Safety
/// `ctx` must be a live context and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn regamma_inverse_laplace_monomial(
    ctx: *const RegammaContext,
    k: f64,
    t: f64,
    out: *mut f64,
) -> RegammaStatus {
    guarded(ctx, out, |c| {
        regamma::inverse_laplace_monomial(k, t, &c.contour, &c.cfg)
    })
}

/// Static description of a status code (a `RegammaStatus` value). Never null.
#[no_mangle]
pub extern "C" fn regamma_status_message(status: i32) -> *const c_char {
    let s: &'static CStr = match status {
        0 => c"ok",
        1 => c"null pointer argument",
        2 => c"integer argument where a non-integer is required",
        3 => c"argument must be positive",
        4 => c"result overflows double precision",
        5 => c"pole of the Gamma function",
        6 => c"invalid tolerance settings",
        7 => c"degenerate contour",
        8 => c"invalid argument",
        9 => c"internal error",
        _ => c"unknown status",
    };
    s.as_ptr()
}

/// Library version, e.g. `"0.1.0"`.
#[no_mangle]
pub extern "C" fn regamma_version() -> *const c_char {
    const VERSION: &CStr =
        match CStr::from_bytes_with_nul(concat!(env!("CARGO_PKG_VERSION"), "\0").as_bytes()) {
            Ok(v) => v,
            Err(_) => c"unknown",
        };
    VERSION.as_ptr()
}
