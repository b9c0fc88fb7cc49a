//! Public evaluation API for `1/Γ`, `Γ` at negative arguments and `Γ(A)/Γ(B)`.
//!
//! Every non-integer positive argument goes through one of the integral
//! representations below; integers take an exact factorial path and negative
//! non-integers are reflected once so quadrature only ever sees `z > 0`.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::hankel::{self, HankelContour};
use crate::kernel::{decompose, exp_remainder, scaled_exp_remainder, sin_pi, ArgDecomposition};
use crate::quadrature::{
    adaptive, exponential_tail_bound, extend_tail, flag_near_integer, geometric_breakpoints,
    integrate_regularized_kernel, kernel_integral, polynomial_tail, ConditionFlag, IntegralResult,
    QuadratureConfig, Segment,
};

/// Which representation produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MethodTag {
    RealAxis,
    PowerSubst,
    LogForm,
    CauchySaalschutz,
    Hankel,
}

impl MethodTag {
    pub const ALL: [MethodTag; 5] = [
        MethodTag::RealAxis,
        MethodTag::PowerSubst,
        MethodTag::LogForm,
        MethodTag::CauchySaalschutz,
        MethodTag::Hankel,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            MethodTag::RealAxis => "real_axis",
            MethodTag::PowerSubst => "power_subst",
            MethodTag::LogForm => "log_form",
            MethodTag::CauchySaalschutz => "cauchy_saalschutz",
            MethodTag::Hankel => "hankel",
        }
    }
}

impl fmt::Display for MethodTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for MethodTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "real" | "real_axis" => Ok(MethodTag::RealAxis),
            "power" | "power_subst" => Ok(MethodTag::PowerSubst),
            "log" | "log_form" => Ok(MethodTag::LogForm),
            "cs" | "cauchy_saalschutz" => Ok(MethodTag::CauchySaalschutz),
            "hankel" => Ok(MethodTag::Hankel),
            other => Err(Error::InvalidArgument(format!("unknown method '{other}'"))),
        }
    }
}

/// Where a value came from: a quadrature run or an exact closed form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Provenance {
    Quadrature(IntegralResult),
    Exact,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaValue {
    pub value: f64,
    pub method: MethodTag,
    pub quadrature: Provenance,
}

impl GammaValue {
    fn exact(value: f64, method: MethodTag) -> Self {
        Self {
            value,
            method,
            quadrature: Provenance::Exact,
        }
    }

    fn from_quadrature(value: f64, method: MethodTag, q: IntegralResult) -> Self {
        Self {
            value,
            method,
            quadrature: Provenance::Quadrature(q),
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.quadrature, Provenance::Exact)
    }

    pub fn condition_flag(&self) -> ConditionFlag {
        match self.quadrature {
            Provenance::Quadrature(q) => q.condition_flag,
            Provenance::Exact => ConditionFlag::Ok,
        }
    }

    /// Absolute error of `value`, propagated from the quadrature's relative error.
    pub fn abs_error(&self) -> f64 {
        match self.quadrature {
            Provenance::Quadrature(q) => relative_error(&q) * self.value.abs(),
            Provenance::Exact => 0.0,
        }
    }

    pub fn evaluations(&self) -> usize {
        match self.quadrature {
            Provenance::Quadrature(q) => q.evaluations,
            Provenance::Exact => 0,
        }
    }
}

fn relative_error(q: &IntegralResult) -> f64 {
    if q.value == 0.0 {
        q.abs_error_estimate
    } else {
        q.abs_error_estimate / q.value.abs()
    }
}

fn check_finite(z: f64) -> Result<()> {
    if z.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("non-finite argument {z}")))
    }
}

/// `1/(m-1)!` for a positive integer `m`, by sequential division.
fn recip_factorial_of_pred(m: f64) -> f64 {
    let mut v = 1.0;
    let mut k = 2.0;
    while k < m {
        v /= k;
        k += 1.0;
    }
    v
}

/// Reciprocal Gamma function.
///
/// Positive integers return `1/(m-1)!` exactly, zero and negative integers
/// return exactly `0`, negative non-integers are reflected through
/// `1/Γ(z) = sin(πz)/π · Γ(1-z)`.
pub fn recip_gamma(z: f64, cfg: &QuadratureConfig, method: MethodTag) -> Result<GammaValue> {
    cfg.validate()?;
    check_finite(z)?;
    if z.floor() == z {
        if z <= 0.0 {
            return Ok(GammaValue::exact(0.0, method));
        }
        return Ok(GammaValue::exact(recip_factorial_of_pred(z), method));
    }
    if z < 0.0 {
        let mirrored = recip_gamma(1.0 - z, cfg, method)?;
        let value = sin_pi(z) / (PI * mirrored.value);
        return Ok(GammaValue { value, ..mirrored });
    }
    match method {
        MethodTag::RealAxis => {
            let d = decompose(z)?;
            let q = integrate_regularized_kernel(&d, cfg)?;
            Ok(GammaValue::from_quadrature(
                sin_pi(z) / PI * q.value,
                method,
                q,
            ))
        }
        MethodTag::PowerSubst => recip_gamma_power_subst(z, cfg),
        MethodTag::LogForm => recip_gamma_log_form(z, cfg),
        MethodTag::CauchySaalschutz => {
            // Γ(z) Γ(-z) = -π / (z sin(πz))
            let g = gamma_cauchy_saalschutz(z, cfg)?;
            let value = -z * sin_pi(z) * g.value / PI;
            Ok(GammaValue { value, ..g })
        }
        MethodTag::Hankel => {
            let r = hankel::hankel_recip_gamma(z, &HankelContour::default(), cfg)?;
            Ok(GammaValue::from_quadrature(
                r.value.re,
                method,
                IntegralResult {
                    value: r.value.re,
                    abs_error_estimate: r.abs_error_estimate,
                    evaluations: r.evaluations,
                    condition_flag: r.condition_flag,
                },
            ))
        }
    }
}

/// `1/Γ(-z) = -sin(πz)/π · Γ(z+1)` for `z > 0`; exactly `0` at positive integers.
pub fn recip_gamma_neg_reflection(z: f64, cfg: &QuadratureConfig) -> Result<GammaValue> {
    cfg.validate()?;
    if z > 0.0 && z.floor() == z {
        return Ok(GammaValue::exact(0.0, MethodTag::RealAxis));
    }
    decompose(z)?;
    let shifted = recip_gamma(z + 1.0, cfg, MethodTag::RealAxis)?;
    let value = -sin_pi(z) / (PI * shifted.value);
    Ok(GammaValue { value, ..shifted })
}

/// Reciprocal Gamma through the substitution `u = x^z`:
///
/// ```text
/// 1/Γ(z) = sin(πz)/(πz) ∫₀^∞ u^{1/z-2} (e^{-u^{1/z}} - Σ_{k<n} (-1)^k u^{k/z}/k!) du
/// ```
///
/// The integral is evaluated in the `u` variable. The stretch `[0, u_min]` next
/// to the origin uses the first three terms of the remainder's Taylor series in
/// closed form; above it the integrand is a near power law handled on
/// geometric panels.
pub fn recip_gamma_power_subst(z: f64, cfg: &QuadratureConfig) -> Result<GammaValue> {
    cfg.validate()?;
    let d = decompose(z)?;
    let q = power_subst_integral(&d, cfg);
    let q = flag_near_integer(q, z, cfg);
    Ok(GammaValue::from_quadrature(
        sin_pi(z) / PI * q.value,
        MethodTag::PowerSubst,
        q,
    ))
}

/// `∫₀^∞ g(u) du` with `g(u) = (e^{-x} - e_{n-1}(-x)) u^{1/z-2} / z`, `x = u^{1/z}`.
fn power_subst_integral(d: &ArgDecomposition, cfg: &QuadratureConfig) -> IntegralResult {
    let (z, n, frac) = (d.z, d.n, d.frac);
    let split = cfg.split_point;
    let x_min = (1e-6 * split).max(10f64.powf(-280.0 / z));
    let u_min = x_min.powf(z);
    let u_split = split.powf(z);

    // ∫₀^{u_min} in closed form: (-1)^n Σ_j (-1)^j x^{j+1-f} / ((j+1-f) (n+j)!)
    let mut head = 0.0;
    let mut inv_fact = crate::kernel::inv_factorial(n);
    for j in 0..3u32 {
        if j > 0 {
            inv_fact /= (n + j) as f64;
        }
        let e = j as f64 + 1.0 - frac;
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        head += sign * x_min.powf(e) / e * inv_fact;
    }
    if n % 2 == 1 {
        head = -head;
    }

    let g = |u: f64| {
        let x = u.powf(1.0 / z);
        exp_remainder(-x, n).unwrap_or(f64::NAN) * u.powf(1.0 / z - 2.0) / z
    };

    extend_tail(cfg, |radius| {
        let radius = radius.max(2.0 * split);
        let u_radius = radius.powf(z);
        let mut segments: Vec<Segment<'_, f64>> = Vec::new();
        let ratio = (u_split / u_min).powf(1.0 / 48.0).max(2.0);
        for w in geometric_breakpoints(u_min, u_split, ratio).windows(2) {
            segments.push(Segment::new(&g, w[0], w[1]));
        }
        let ratio = (u_radius / u_split).powf(1.0 / 64.0).max(2.0);
        for w in geometric_breakpoints(u_split, u_radius, ratio).windows(2) {
            segments.push(Segment::new(&g, w[0], w[1]));
        }
        // polynomial part beyond u_radius: Σ (-1)^k U^{(k+1-z)/z} / (k! (k+1-z))
        let mut tail = 0.0;
        let mut coeff = 1.0;
        for k in 0..n {
            if k > 0 {
                coeff *= -1.0 / k as f64;
            }
            let e = k as f64 + 1.0 - z;
            tail += coeff * u_radius.powf(e / z) / e;
        }
        let bound = exponential_tail_bound(z, radius);
        (adaptive(&segments, head + tail, bound, cfg), bound)
    })
}

/// Reciprocal Gamma from the modified Euler integral of the second kind:
///
/// ```text
/// 1/Γ(z) = sin(πz)/π ∫₀¹ (1 - e_{n-1}(log u)/u) / (log 1/u)^z du
/// ```
///
/// Near `u = 1` the integrand behaves like `(1-u)^{-{z}}` and is integrated
/// after `u = 1 - t^{1/(1-{z})}`. Near `u = 0` it decays only like
/// `1/(u (log 1/u)^{1+{z}})`; the stretch below `u = e^{-R}` is added in
/// closed form and the rest is integrated on panels `[e^{-k-1}, e^{-k}]`.
pub fn recip_gamma_log_form(z: f64, cfg: &QuadratureConfig) -> Result<GammaValue> {
    cfg.validate()?;
    let d = decompose(z)?;
    let q = log_form_integral(&d, cfg);
    let q = flag_near_integer(q, z, cfg);
    Ok(GammaValue::from_quadrature(
        sin_pi(z) / PI * q.value,
        MethodTag::LogForm,
        q,
    ))
}

fn log_form_integral(d: &ArgDecomposition, cfg: &QuadratureConfig) -> IntegralResult {
    let (z, n, frac) = (d.z, d.n, d.frac);
    let split = cfg.split_point;
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    let p = 1.0 / (1.0 - frac);

    // u = 1 - σ, σ = t^p
    let near_one = |t: f64| {
        let sigma = t.powf(p);
        let x = -(-sigma).ln_1p();
        let ratio = if sigma > 0.0 { x / sigma } else { 1.0 };
        sign * p * scaled_exp_remainder(-x, n).unwrap_or(f64::NAN) * ratio.powf(-frac)
            / (1.0 - sigma)
    };
    let h = |u: f64| {
        let log_u = u.ln();
        exp_remainder(log_u, n).unwrap_or(f64::NAN) / u * (-log_u).powf(-z)
    };
    let t_split = (-(-split).exp_m1()).powf(1.0 - frac);

    extend_tail(cfg, |radius| {
        let radius = radius.max(split + 1.0);
        let mut segments: Vec<Segment<'_, f64>> = vec![Segment::new(&near_one, 0.0, t_split)];
        let mut x = split;
        while x < radius {
            let next = (x + 1.0).min(radius);
            segments.push(Segment::new(&h, (-next).exp(), (-x).exp()));
            x = next;
        }
        let tail = polynomial_tail(z, n, radius);
        let bound = exponential_tail_bound(z, radius);
        (adaptive(&segments, tail, bound, cfg), bound)
    })
}

/// `Γ(-z) = -(1/z) ∫₀^∞ (e^{-x} - e_{n-1}(-x)) x^{-z} dx` for non-integer `z > 0`.
pub fn gamma_negative(z: f64, cfg: &QuadratureConfig) -> Result<GammaValue> {
    cfg.validate()?;
    let d = decompose(z)?;
    let q = integrate_regularized_kernel(&d, cfg)?;
    Ok(GammaValue::from_quadrature(
        -q.value / z,
        MethodTag::RealAxis,
        q,
    ))
}

/// `Γ(-z) = ∫₀^∞ (e^{-τ} - e_n(-τ)) τ^{-z-1} dτ` with `n = [z]`.
///
/// Note the truncation order is `n`, one higher than in [`gamma_negative`]; the
/// integrand still behaves like `τ^{-{z}}` at the origin.
pub fn gamma_cauchy_saalschutz(z: f64, cfg: &QuadratureConfig) -> Result<GammaValue> {
    cfg.validate()?;
    let d = decompose(z)?;
    let q = kernel_integral(z + 1.0, d.n + 1, 0.0, cfg)?;
    let q = flag_near_integer(q, z, cfg);
    Ok(GammaValue::from_quadrature(
        q.value,
        MethodTag::CauchySaalschutz,
        q,
    ))
}

/// `Γ(a) = ∫₀¹ (-log v)^{a-1} dv`.
///
/// `[1/2, 1]` is integrated after `v = 1 - t^{1/a}` (removes `(1-v)^{a-1}`),
/// `[0, 1/2]` after `v = w^4` on panels halving towards the origin.
pub fn gamma_euler_integral(a: f64, cfg: &QuadratureConfig) -> Result<IntegralResult> {
    cfg.validate()?;
    check_finite(a)?;
    if a <= 0.0 {
        return Err(Error::NonPositiveArgument(a));
    }
    const POWER: f64 = 4.0;
    let q = 1.0 / a;
    let near_one = |t: f64| {
        let sigma = t.powf(q);
        let y = -(-sigma).ln_1p();
        let ratio = if sigma > 0.0 { y / sigma } else { 1.0 };
        q * ratio.powf(a - 1.0)
    };
    let near_zero = |w: f64| {
        let y = -POWER * w.ln();
        y.powf(a - 1.0) * POWER * w.powf(POWER - 1.0)
    };
    let mut segments: Vec<Segment<'_, f64>> = vec![Segment::new(&near_one, 0.0, 0.5f64.powf(a))];
    let w_top = 0.5f64.powf(1.0 / POWER);
    let mut hi = w_top;
    for _ in 0..60 {
        let lo = hi / 2.0;
        segments.push(Segment::new(&near_zero, lo, hi));
        hi = lo;
    }
    segments.push(Segment::new(&near_zero, 0.0, hi));
    Ok(crate::quadrature::finish(adaptive(
        &segments, 0.0, 0.0, cfg,
    )))
}

/// `Γ(A)/Γ(B)` as `(1/Γ(B)) · Γ(A)`, each factor a one-dimensional integral.
pub fn gamma_ratio(a: f64, b: f64, cfg: &QuadratureConfig) -> Result<GammaValue> {
    cfg.validate()?;
    check_finite(a)?;
    check_finite(b)?;
    if a <= 0.0 {
        return Err(Error::NonPositiveArgument(a));
    }
    if b <= 0.0 {
        return Err(Error::NonPositiveArgument(b));
    }
    let recip_b = recip_gamma(b, cfg, MethodTag::LogForm)?;
    let gamma_a = gamma_euler_integral(a, cfg)?;
    let value = recip_b.value * gamma_a.value;
    let (rel_b, evals_b, flag_b) = match recip_b.quadrature {
        Provenance::Quadrature(q) => (relative_error(&q), q.evaluations, q.condition_flag),
        Provenance::Exact => (0.0, 0, ConditionFlag::Ok),
    };
    let combined = IntegralResult {
        value,
        abs_error_estimate: value.abs() * (rel_b + relative_error(&gamma_a)),
        evaluations: evals_b + gamma_a.evaluations,
        condition_flag: flag_b.worst(gamma_a.condition_flag),
    };
    Ok(GammaValue::from_quadrature(
        value,
        MethodTag::LogForm,
        combined,
    ))
}

/// Largest `m` with `(m-1)!` finite in double precision.
const MAX_FACTORIAL_ARG: f64 = 171.0;

/// `Γ(z) = 1 / (1/Γ(z))`; positive integers via the exact factorial.
pub fn gamma(z: f64, cfg: &QuadratureConfig) -> Result<GammaValue> {
    gamma_with_method(z, cfg, MethodTag::RealAxis)
}

/// [`gamma`] with the reciprocal computed by a chosen representation.
pub fn gamma_with_method(z: f64, cfg: &QuadratureConfig, method: MethodTag) -> Result<GammaValue> {
    cfg.validate()?;
    check_finite(z)?;
    if z.floor() == z {
        if z <= 0.0 {
            return Err(Error::Pole(z));
        }
        if z > MAX_FACTORIAL_ARG {
            return Err(Error::Overflow(z));
        }
        let mut v = 1.0;
        let mut k = 2.0;
        while k < z {
            v *= k;
            k += 1.0;
        }
        return Ok(GammaValue::exact(v, method));
    }
    let r = recip_gamma(z, cfg, method)?;
    if r.value == 0.0 {
        return Err(Error::Overflow(z));
    }
    Ok(GammaValue {
        value: 1.0 / r.value,
        ..r
    })
}
