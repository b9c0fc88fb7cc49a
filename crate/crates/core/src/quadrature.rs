//! Adaptive quadrature for the regularized kernel on `[0, ∞)`.
//!
//! The kernel `(e^{-x} - e_{n-1}(-x)) x^{-z}` has an integrable algebraic
//! singularity `x^{-{z}}` at the origin and a polynomial tail decaying only like
//! `x^{-1-{z}}`. The integral is assembled from three parts:
//!
//! 1. `[0, split]` after the substitution `x = u^{1/(1-{z})}`, which makes the
//!    integrand bounded;
//! 2. `[split, R]` with geometric breakpoints;
//! 3. `[R, ∞)` in closed form for the polynomial part, with the exponential part
//!    bounded and pushed below tolerance by choosing `R`.
//!
//! Panels use an embedded 10-point Gauss / 21-point Kronrod pair and the engine
//! always bisects the panel with the largest error estimate.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::kernel::{exp_remainder, scaled_exp_remainder, sin_pi, ArgDecomposition};

/// Truncation radius of the semi-infinite tail.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TailRadius {
    Auto,
    Fixed(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    pub eps_rel: f64,
    pub eps_abs: f64,
    pub max_subdivisions: usize,
    pub split_point: f64,
    pub tail_truncation_radius: TailRadius,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            eps_rel: 1e-8,
            eps_abs: 1e-300,
            max_subdivisions: 200,
            split_point: 1.0,
            tail_truncation_radius: TailRadius::Auto,
        }
    }
}

impl QuadratureConfig {
    pub fn with_eps_rel(eps_rel: f64) -> Self {
        Self {
            eps_rel,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.eps_rel > 0.0 && self.eps_rel < 1.0) {
            return Err(Error::InvalidConfig(format!(
                "eps_rel must lie in (0, 1), got {}",
                self.eps_rel
            )));
        }
        if !(self.eps_abs >= 0.0) {
            return Err(Error::InvalidConfig(format!(
                "eps_abs must be non-negative, got {}",
                self.eps_abs
            )));
        }
        if self.max_subdivisions < 1 {
            return Err(Error::InvalidConfig(
                "max_subdivisions must be at least 1".into(),
            ));
        }
        if !(self.split_point > 0.0 && self.split_point.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "split_point must be positive, got {}",
                self.split_point
            )));
        }
        if let TailRadius::Fixed(r) = self.tail_truncation_radius {
            if !(r > self.split_point && r.is_finite()) {
                return Err(Error::InvalidConfig(format!(
                    "tail radius {r} must exceed the split point {}",
                    self.split_point
                )));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConditionFlag {
    Ok,
    NearIntegerAmplification,
    ToleranceNotMet,
}

impl ConditionFlag {
    pub fn as_str(&self) -> &'static str {
        match self {
            ConditionFlag::Ok => "ok",
            ConditionFlag::NearIntegerAmplification => "near_integer_amplification",
            ConditionFlag::ToleranceNotMet => "tolerance_not_met",
        }
    }

    /// Combines two flags, keeping the more severe one.
    pub fn worst(self, other: ConditionFlag) -> ConditionFlag {
        fn rank(f: ConditionFlag) -> u8 {
            match f {
                ConditionFlag::Ok => 0,
                ConditionFlag::NearIntegerAmplification => 1,
                ConditionFlag::ToleranceNotMet => 2,
            }
        }
        if rank(other) > rank(self) {
            other
        } else {
            self
        }
    }
}

impl std::fmt::Display for ConditionFlag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegralResult {
    pub value: f64,
    pub abs_error_estimate: f64,
    pub evaluations: usize,
    pub condition_flag: ConditionFlag,
}

// Gauss–Kronrod 10/21 nodes on [-1, 1]; odd indices are the Gauss nodes.
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

/// Values the panel engine can integrate: reals and complex numbers.
pub(crate) trait PanelValue:
    Copy + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self>
{
    fn zero() -> Self;
    fn magnitude(self) -> f64;
    fn is_finite_value(self) -> bool;
}

impl PanelValue for f64 {
    fn zero() -> Self {
        0.0
    }
    fn magnitude(self) -> f64 {
        self.abs()
    }
    fn is_finite_value(self) -> bool {
        self.is_finite()
    }
}

impl PanelValue for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn magnitude(self) -> f64 {
        self.norm()
    }
    fn is_finite_value(self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
}

/// One interval of an integration problem with its own integrand.
pub(crate) struct Segment<'a, T> {
    pub f: &'a dyn Fn(f64) -> T,
    pub a: f64,
    pub b: f64,
}

impl<'a, T> Segment<'a, T> {
    pub fn new(f: &'a dyn Fn(f64) -> T, a: f64, b: f64) -> Self {
        Self { f, a, b }
    }
}

struct Panel<T> {
    segment: usize,
    a: f64,
    b: f64,
    value: T,
    error: f64,
}

impl<T> PartialEq for Panel<T> {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl<T> Eq for Panel<T> {}
impl<T> PartialOrd for Panel<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<T> Ord for Panel<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// Single Gauss–Kronrod panel: returns (Kronrod value, error estimate).
fn gauss_kronrod<T: PanelValue>(f: &dyn Fn(f64) -> T, a: f64, b: f64) -> (T, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[10];
    let mut gauss = T::zero();
    let mut abs_sum = fc.magnitude() * WGK[10];
    let mut samples = [(T::zero(), T::zero()); 10];
    for (j, sample) in samples.iter_mut().enumerate() {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        kronrod = kronrod + (f1 + f2) * WGK[j];
        abs_sum += WGK[j] * (f1.magnitude() + f2.magnitude());
        if j % 2 == 1 {
            gauss = gauss + (f1 + f2) * WG[j / 2];
        }
        *sample = (f1, f2);
    }
    let mean = kronrod * 0.5;
    let mut asc = WGK[10] * (fc - mean).magnitude();
    for (j, (f1, f2)) in samples.iter().enumerate() {
        asc += WGK[j] * ((*f1 - mean).magnitude() + (*f2 - mean).magnitude());
    }
    let scale = half.abs();
    let result = kronrod * half;
    let res_abs = abs_sum * scale;
    let res_asc = asc * scale;
    let mut err = ((kronrod - gauss) * half).magnitude();
    if res_asc != 0.0 && err != 0.0 {
        err = res_asc * (200.0 * err / res_asc).powf(1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * res_abs);
    }
    if !result.is_finite_value() {
        err = f64::INFINITY;
    }
    (result, err)
}

pub(crate) const GK_POINTS: usize = 21;

pub(crate) struct Adaptive<T> {
    pub value: T,
    pub error: f64,
    pub evaluations: usize,
    pub converged: bool,
}

/// Worst-first adaptive bisection over a set of segments.
///
/// `offset` is a closed-form contribution added to the total; the relative
/// tolerance applies to the full sum. `extra_error` is a fixed error budget
/// (e.g. a truncation bound) that counts against the tolerance.
pub(crate) fn adaptive<T: PanelValue>(
    segments: &[Segment<'_, T>],
    offset: T,
    extra_error: f64,
    cfg: &QuadratureConfig,
) -> Adaptive<T> {
    let mut heap = BinaryHeap::new();
    let mut frozen_value = T::zero();
    let mut frozen_error = 0.0;
    let mut evaluations = 0;
    for (i, seg) in segments.iter().enumerate() {
        if seg.b <= seg.a {
            continue;
        }
        let (value, error) = gauss_kronrod(seg.f, seg.a, seg.b);
        evaluations += GK_POINTS;
        heap.push(Panel {
            segment: i,
            a: seg.a,
            b: seg.b,
            value,
            error,
        });
    }
    let mut subdivisions = 0;
    let (value, error, converged) = loop {
        let mut total = offset + frozen_value;
        let mut err = extra_error + frozen_error;
        for p in heap.iter() {
            total = total + p.value;
            err += p.error;
        }
        let tol = cfg.eps_abs.max(cfg.eps_rel * total.magnitude());
        if err <= tol {
            break (total, err, true);
        }
        if subdivisions >= cfg.max_subdivisions {
            break (total, err, false);
        }
        let Some(worst) = heap.pop() else {
            break (total, err, false);
        };
        let mid = 0.5 * (worst.a + worst.b);
        if !(mid > worst.a && mid < worst.b) {
            // panel at floating-point resolution; keep its estimate as is
            frozen_value = frozen_value + worst.value;
            frozen_error += worst.error;
            continue;
        }
        let f = segments[worst.segment].f;
        let (v1, e1) = gauss_kronrod(f, worst.a, mid);
        let (v2, e2) = gauss_kronrod(f, mid, worst.b);
        evaluations += 2 * GK_POINTS;
        subdivisions += 1;
        heap.push(Panel {
            segment: worst.segment,
            a: worst.a,
            b: mid,
            value: v1,
            error: e1,
        });
        heap.push(Panel {
            segment: worst.segment,
            a: mid,
            b: worst.b,
            value: v2,
            error: e2,
        });
    };
    Adaptive {
        value,
        error,
        evaluations,
        converged,
    }
}

/// Breakpoints `a, a·ratio, a·ratio², ..., b` (last one clamped to `b`).
pub(crate) fn geometric_breakpoints(a: f64, b: f64, ratio: f64) -> Vec<f64> {
    debug_assert!(a > 0.0 && b > a && ratio > 1.0);
    let mut points = vec![a];
    let mut x = a;
    loop {
        x *= ratio;
        if x >= b * (1.0 - 1e-12) {
            break;
        }
        points.push(x);
    }
    points.push(b);
    points
}

/// Adaptive integration of `f` over `[a, b]`.
pub fn integrate_finite<F>(f: F, a: f64, b: f64, cfg: &QuadratureConfig) -> Result<IntegralResult>
where
    F: Fn(f64) -> f64,
{
    cfg.validate()?;
    if !(a < b) {
        return Err(Error::InvalidArgument(format!(
            "integration bounds must satisfy a < b, got [{a}, {b}]"
        )));
    }
    let seg = [Segment::new(&f, a, b)];
    Ok(finish(adaptive(&seg, 0.0, 0.0, cfg)))
}

pub(crate) fn finish(run: Adaptive<f64>) -> IntegralResult {
    IntegralResult {
        value: run.value,
        abs_error_estimate: run.error,
        evaluations: run.evaluations,
        condition_flag: if run.converged {
            ConditionFlag::Ok
        } else {
            ConditionFlag::ToleranceNotMet
        },
    }
}

/// `∫_R^∞ -e_{order-1}(-x) x^{-z} dx` in closed form.
///
/// Each exponent `k - z + 1` is negative as long as `order < z`.
pub(crate) fn polynomial_tail(z: f64, order: u32, radius: f64) -> f64 {
    let mut sum = 0.0;
    let mut coeff = 1.0; // (-1)^k / k!
    for k in 0..order {
        if k > 0 {
            coeff *= -1.0 / k as f64;
        }
        let p = k as f64 - z + 1.0;
        sum += coeff * radius.powf(p) / p;
    }
    sum
}

/// Closed-form tail of the polynomial part of the kernel beyond `radius`.
pub fn polynomial_tail_closed_form(arg: &ArgDecomposition, radius: f64) -> f64 {
    polynomial_tail(arg.z, arg.n, radius)
}

/// Bound on `∫_R^∞ e^{-x} x^{-z} dx`.
pub(crate) fn exponential_tail_bound(z: f64, radius: f64) -> f64 {
    (-radius - z * radius.ln()).exp()
}

pub(crate) fn initial_tail_radius(cfg: &QuadratureConfig) -> f64 {
    match cfg.tail_truncation_radius {
        TailRadius::Fixed(r) => r,
        TailRadius::Auto => (4.0 * cfg.split_point).max(32.0),
    }
}

const MAX_TAIL_DOUBLINGS: usize = 6;

/// Runs `pass(radius)` with a growing tail radius until the bound on the
/// neglected exponential tail (second tuple element) is well below tolerance.
/// A fixed radius is used as is.
pub(crate) fn extend_tail<F>(cfg: &QuadratureConfig, mut pass: F) -> IntegralResult
where
    F: FnMut(f64) -> (Adaptive<f64>, f64),
{
    let fixed = matches!(cfg.tail_truncation_radius, TailRadius::Fixed(_));
    let mut radius = initial_tail_radius(cfg);
    let mut spent = 0;
    for attempt in 0..=MAX_TAIL_DOUBLINGS {
        let (run, bound) = pass(radius);
        let small_enough = bound <= 0.01 * cfg.eps_rel * run.value.abs();
        let mut result = finish(run);
        spent += result.evaluations;
        result.evaluations = spent;
        if fixed || small_enough {
            return result;
        }
        if attempt == MAX_TAIL_DOUBLINGS {
            result.condition_flag = ConditionFlag::ToleranceNotMet;
            return result;
        }
        radius *= 2.0;
    }
    unreachable!("loop returns on its last attempt")
}

/// `∫_lower^∞ (e^{-x} - e_{order-1}(-x)) x^{-z} dx`.
///
/// With `lower == 0` the integrand must be integrable at the origin
/// (`order > z - 1`) and the origin panel is integrated after the substitution
/// that absorbs `x^{order-z}`. The polynomial tail converges only for
/// `order < z`. Both hold exactly when `order = [z]`.
pub(crate) fn kernel_integral(
    z: f64,
    order: u32,
    lower: f64,
    cfg: &QuadratureConfig,
) -> Result<IntegralResult> {
    cfg.validate()?;
    if !(z > 0.0) || order as f64 >= z {
        return Err(Error::InvalidArgument(format!(
            "tail of order {order} diverges for z = {z}"
        )));
    }
    if !(lower >= 0.0) {
        return Err(Error::InvalidArgument(format!(
            "lower limit {lower} is negative"
        )));
    }
    let alpha = order as f64 - z;
    if lower == 0.0 && alpha <= -1.0 {
        return Err(Error::InvalidArgument(format!(
            "kernel of order {order} is not integrable at the origin for z = {z}"
        )));
    }
    let split = cfg.split_point.max(lower);
    let sign = if order.is_multiple_of(2) { 1.0 } else { -1.0 };

    // x = u^p with p = 1/(1+alpha); x^alpha dx = p du exactly.
    let p = 1.0 / (1.0 + alpha);
    let origin = |u: f64| {
        let x = u.powf(p);
        sign * p * scaled_exp_remainder(-x, order).unwrap_or(f64::NAN)
    };
    let full = |x: f64| exp_remainder(-x, order).unwrap_or(f64::NAN) * x.powf(-z);

    Ok(extend_tail(cfg, |radius| {
        let radius = radius.max(split);
        let mut segments: Vec<Segment<'_, f64>> = Vec::new();
        if lower == 0.0 {
            segments.push(Segment::new(&origin, 0.0, split.powf(1.0 + alpha)));
        } else if lower < split {
            let pts = geometric_breakpoints(lower, split, 2.0);
            for w in pts.windows(2) {
                segments.push(Segment::new(&full, w[0], w[1]));
            }
        }
        if radius > split {
            let pts = geometric_breakpoints(split, radius, 2.0);
            for w in pts.windows(2) {
                segments.push(Segment::new(&full, w[0], w[1]));
            }
        }
        let tail = polynomial_tail(z, order, radius);
        let bound = exponential_tail_bound(z, radius);
        (adaptive(&segments, tail, bound, cfg), bound)
    }))
}

/// `I(z) = ∫₀^∞ (e^{-x} - e_{n-1}(-x)) x^{-z} dx` for a decomposed argument.
///
/// The result is flagged `near_integer_amplification` when the integral's
/// relative error, amplified through `sin(πz)/π`, can exceed `1e-6` of the
/// final reciprocal Gamma value.
pub fn integrate_regularized_kernel(
    arg: &ArgDecomposition,
    cfg: &QuadratureConfig,
) -> Result<IntegralResult> {
    let result = kernel_integral(arg.z, arg.n, 0.0, cfg)?;
    Ok(flag_near_integer(result, arg.z, cfg))
}

/// `|I|·eps_rel > 1e-6·|sin(πz)·I/π|`, simplified by dividing out `|I|`.
pub(crate) fn near_integer(z: f64, cfg: &QuadratureConfig) -> bool {
    cfg.eps_rel * std::f64::consts::PI > 1e-6 * sin_pi(z).abs()
}

pub(crate) fn flag_near_integer(
    mut result: IntegralResult,
    z: f64,
    cfg: &QuadratureConfig,
) -> IntegralResult {
    if result.condition_flag == ConditionFlag::Ok && near_integer(z, cfg) {
        result.condition_flag = ConditionFlag::NearIntegerAmplification;
    }
    result
}
