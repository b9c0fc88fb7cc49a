use std::ffi::CStr;
use std::ptr;

use regamma_ffi::*;

fn empty() -> RegammaResult {
    RegammaResult {
        value: f64::NAN,
        abs_error: f64::NAN,
        evaluations: 0,
        flag: RegammaFlag::Ok,
        exact: 0,
    }
}

struct Ctx(*mut RegammaContext);

impl Ctx {
    fn new() -> Self {
        let p = regamma_context_new();
        assert!(!p.is_null());
        Ctx(p)
    }
}

impl Drop for Ctx {
    fn drop(&mut self) {
        unsafe { regamma_context_free(self.0) };
    }
}

#[test]
fn recip_gamma_through_every_method() {
    let ctx = Ctx::new();
    for m in [
        RegammaMethod::RealAxis,
        RegammaMethod::PowerSubst,
        RegammaMethod::LogForm,
        RegammaMethod::CauchySaalschutz,
        RegammaMethod::Hankel,
    ] {
        let mut out = empty();
        let s = unsafe { regamma_recip_gamma(ctx.0, 0.5, m as i32, &mut out) };
        assert_eq!(s, RegammaStatus::Ok, "{m:?}");
        assert!((out.value - 0.564_189_583_547_756_3).abs() < 1e-9, "{m:?}");
        assert_eq!(out.flag, RegammaFlag::Ok);
        assert_eq!(out.exact, 0);
        assert!(out.evaluations > 0);
    }
    let mut out = empty();
    let s = unsafe { regamma_recip_gamma(ctx.0, 3.0, 0, &mut out) };
    assert_eq!(s, RegammaStatus::Ok);
    assert_eq!((out.value, out.exact, out.evaluations), (0.5, 1, 0));
}

#[test]
fn other_functions() {
    let ctx = Ctx::new();
    let mut out = empty();
    unsafe {
        assert_eq!(regamma_gamma(ctx.0, 5.0, &mut out), RegammaStatus::Ok);
        assert_eq!(out.value, 24.0);
        assert_eq!(
            regamma_gamma_negative(ctx.0, 0.5, &mut out),
            RegammaStatus::Ok
        );
        assert!((out.value + 3.544_907_701_811_032).abs() < 1e-9);
        assert_eq!(
            regamma_gamma_cauchy_saalschutz(ctx.0, 1.5, &mut out),
            RegammaStatus::Ok
        );
        assert!((out.value - 2.363_271_801_207_355).abs() < 1e-9);
        assert_eq!(
            regamma_recip_gamma_neg_reflection(ctx.0, 1.5, &mut out),
            RegammaStatus::Ok
        );
        assert!((out.value - 0.423_142_187_660_817_2).abs() < 1e-9);
        assert_eq!(
            regamma_gamma_ratio(ctx.0, 2.5, 1.5, &mut out),
            RegammaStatus::Ok
        );
        assert!((out.value - 1.5).abs() < 1e-7);

        let mut c = RegammaComplexResult {
            value: RegammaComplex { re: 0.0, im: 0.0 },
            abs_error: 0.0,
            evaluations: 0,
            flag: RegammaFlag::Ok,
        };
        assert_eq!(
            regamma_hankel_recip_gamma(ctx.0, 2.5, &mut c),
            RegammaStatus::Ok
        );
        assert!((c.value.re - 0.752_252_778_063_675).abs() < 1e-9);
        assert!(c.value.im.abs() < 1e-9);

        let mut t = 0.0;
        assert_eq!(
            regamma_inverse_laplace_monomial(ctx.0, 1.5, 2.0, &mut t),
            RegammaStatus::Ok
        );
        assert!((t - 2f64.powf(1.5)).abs() < 1e-8);
    }
}

#[test]
fn errors_map_to_status_codes() {
    let ctx = Ctx::new();
    let mut out = empty();
    unsafe {
        assert_eq!(regamma_gamma(ctx.0, -2.0, &mut out), RegammaStatus::Pole);
        assert_eq!(
            regamma_gamma(ctx.0, 200.0, &mut out),
            RegammaStatus::Overflow
        );
        assert_eq!(
            regamma_gamma_negative(ctx.0, 2.0, &mut out),
            RegammaStatus::IntegerArgument
        );
        assert_eq!(
            regamma_gamma_ratio(ctx.0, -1.0, 2.5, &mut out),
            RegammaStatus::NonPositiveArgument
        );
        assert_eq!(
            regamma_recip_gamma(ctx.0, 0.5, 17, &mut out),
            RegammaStatus::InvalidArgument
        );
        assert!(
            out.value.is_nan(),
            "failed calls leave the output untouched"
        );
        assert_eq!(
            regamma_recip_gamma(ptr::null(), 0.5, 0, &mut out),
            RegammaStatus::NullPointer
        );
        assert_eq!(
            regamma_gamma(ctx.0, 0.5, ptr::null_mut()),
            RegammaStatus::NullPointer
        );
        assert_eq!(
            regamma_context_set_eps_rel(ctx.0, -1.0),
            RegammaStatus::InvalidConfig
        );
        assert_eq!(
            regamma_context_set_contour(ctx.0, 2.5, 0.0),
            RegammaStatus::ContourDegenerate
        );
        assert_eq!(
            regamma_context_set_contour(ctx.0, 1.0, 0.5),
            RegammaStatus::InvalidArgument
        );
        assert_eq!(
            regamma_context_set_eps_rel(ptr::null_mut(), 1e-8),
            RegammaStatus::NullPointer
        );
        regamma_context_free(ptr::null_mut());
    }
}

#[test]
fn context_settings_take_effect() {
    let ctx = Ctx::new();
    let mut loose = empty();
    let mut tight = empty();
    unsafe {
        assert_eq!(regamma_context_set_eps_rel(ctx.0, 1e-15), RegammaStatus::Ok);
        regamma_recip_gamma(ctx.0, 0.5, 0, &mut tight);
        assert_eq!(tight.flag, RegammaFlag::ToleranceNotMet);
        assert_eq!(regamma_context_set_eps_rel(ctx.0, 1e-4), RegammaStatus::Ok);
        regamma_recip_gamma(ctx.0, 0.5, 0, &mut loose);
        assert_ne!(loose.flag, RegammaFlag::ToleranceNotMet);
        assert!(loose.evaluations < tight.evaluations);

        assert_eq!(regamma_context_set_eps_rel(ctx.0, 1e-8), RegammaStatus::Ok);
        let mut a = RegammaComplexResult {
            value: RegammaComplex { re: 0.0, im: 0.0 },
            abs_error: 0.0,
            evaluations: 0,
            flag: RegammaFlag::Ok,
        };
        let mut b = a;
        regamma_hankel_recip_gamma(ctx.0, 1.5, &mut a);
        assert_eq!(
            regamma_context_set_contour(ctx.0, 2.0, 0.25),
            RegammaStatus::Ok
        );
        regamma_hankel_recip_gamma(ctx.0, 1.5, &mut b);
        assert_ne!(a.evaluations, 0);
        assert!((a.value.re - b.value.re).abs() < 1e-9);
    }
}

#[test]
fn messages_and_version() {
    for code in 0..=10 {
        let s = unsafe { CStr::from_ptr(regamma_status_message(code)) };
        assert!(!s.to_bytes().is_empty());
    }
    let s = unsafe { CStr::from_ptr(regamma_status_message(RegammaStatus::Pole as i32)) };
    assert_eq!(s.to_str().unwrap(), "pole of the Gamma function");
    let v = unsafe { CStr::from_ptr(regamma_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}
