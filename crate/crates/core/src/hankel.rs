//! The regularized reciprocal Gamma along a Hankel contour.
//!
//! ```text
//! 1/Γ(z) = 1/(2πi) ∫_{Ha⁻} (e^τ - e_{n-1}(τ)) τ^{-z} dτ
//! ```
//!
//! The contour comes in from `-∞` along the ray `arg τ = -δ`, circles the
//! origin counterclockwise on `|τ| = r0` and leaves along `arg τ = +δ`. Powers
//! use the principal branch, cut along the negative real axis; with
//! `π/2 < δ < π` the contour never touches the cut.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::gamma;
use crate::kernel::{decompose, inv_factorial};
use crate::quadrature::{
    adaptive, geometric_breakpoints, Adaptive, ConditionFlag, PanelValue, QuadratureConfig,
    Segment, TailRadius,
};

pub type ComplexValue = Complex64;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HankelContour {
    /// Ray angle, strictly between `π/2` and `π`.
    pub delta: f64,
    /// Radius of the arc around the origin.
    pub r0: f64,
    /// Outer truncation radius of the rays; `None` picks it from the tolerance.
    pub radius: Option<f64>,
    /// Subdivision budget for the whole contour.
    pub nodes: usize,
}

impl Default for HankelContour {
    fn default() -> Self {
        Self {
            delta: 3.0 * PI / 4.0,
            r0: 0.5,
            radius: None,
            nodes: 400,
        }
    }
}

impl HankelContour {
    pub fn with_angle_and_radius(delta: f64, r0: f64) -> Self {
        Self {
            delta,
            r0,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.delta > FRAC_PI_2 && self.delta < PI) {
            return Err(Error::InvalidArgument(format!(
                "ray angle {} must lie strictly between π/2 and π",
                self.delta
            )));
        }
        if !(self.r0.is_finite() && self.r0 > f64::MIN_POSITIVE.sqrt()) {
            return Err(Error::ContourDegenerate(format!("arc radius {}", self.r0)));
        }
        if let Some(r) = self.radius {
            if !(r.is_finite() && r - self.r0 > 1e-9 * r) {
                return Err(Error::ContourDegenerate(format!(
                    "ray length {} - {} is below node resolution",
                    r, self.r0
                )));
            }
        }
        if self.nodes == 0 {
            return Err(Error::ContourDegenerate("zero node budget".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContourResult {
    pub value: ComplexValue,
    pub abs_error_estimate: f64,
    pub evaluations: usize,
    pub condition_flag: ConditionFlag,
}

/// `e^w - e_{n-1}(w)` for complex `w`, with the same tail-series switch as the
/// real kernel.
pub(crate) fn complex_remainder(w: Complex64, n: u32) -> Complex64 {
    if n == 0 {
        return w.exp();
    }
    if w.norm() <= (n as f64 / 2.0).max(1.0) {
        let mut term = w.powu(n) * inv_factorial(n);
        let mut sum = term;
        let mut k = n as f64;
        loop {
            k += 1.0;
            term = term * w / k;
            if term.norm() < f64::EPSILON / 2.0 * sum.norm() || term.norm() == 0.0 {
                break;
            }
            sum += term;
        }
        return sum;
    }
    let mut poly = Complex64::new(0.0, 0.0);
    let mut term = Complex64::new(1.0, 0.0);
    for k in 0..n {
        if k > 0 {
            term = term * w / k as f64;
        }
        poly += term;
    }
    w.exp() - poly
}

/// Kernel at `τ = r e^{iθ}` with `τ^{-z} = r^{-z} e^{-iθz}` and the exponential
/// argument scaled by `t`.
fn scaled_kernel(r: f64, theta: f64, z: f64, order: u32, t: f64) -> Complex64 {
    let tau = Complex64::from_polar(r, theta);
    complex_remainder(tau * t, order) * r.powf(-z) * Complex64::from_polar(1.0, -theta * z)
}

/// `(e^τ - e_{n-1}(τ)) τ^{-z}` on the ray `τ = r e^{iδ}`.
///
/// With `-δ` this is the kernel on the mirrored ray; the two are complex
/// conjugates of each other for real `z`.
pub fn ray_kernel(r: f64, delta: f64, z: f64, n: u32) -> ComplexValue {
    scaled_kernel(r, delta, z, n, 1.0)
}

/// Difference of the kernels on the rays `r e^{iδ}` and `r e^{-iδ}` in closed form:
///
/// ```text
/// -(2i/r^z) [ e^{r cos δ} sin(δz - r sin δ)
///             - (Σ_{k<n} cos(δk) r^k/k!) sin(δz)
///             + (Σ_{k<n} sin(δk) r^k/k!) cos(δz) ]
/// ```
pub fn ray_difference_kernel(r: f64, delta: f64, z: f64, n: u32) -> ComplexValue {
    let mut cos_sum = 0.0;
    let mut sin_sum = 0.0;
    let mut power = 1.0; // r^k / k!
    for k in 0..n {
        if k > 0 {
            power *= r / k as f64;
        }
        let angle = delta * k as f64;
        cos_sum += angle.cos() * power;
        sin_sum += angle.sin() * power;
    }
    let bracket = (r * delta.cos()).exp() * (delta * z - delta.sin() * r).sin()
        - cos_sum * (delta * z).sin()
        + sin_sum * (delta * z).cos();
    Complex64::new(0.0, -2.0 * bracket * r.powf(-z))
}

fn default_radius(contour: &HankelContour, t: f64) -> f64 {
    (4.0 * contour.r0).max(40.0 / (t * contour.delta.cos().abs()))
}

/// Geometric panels on `[r0, radius]`.
fn ray_breakpoints(r0: f64, radius: f64) -> Vec<f64> {
    geometric_breakpoints(r0, radius, 2.0)
}

/// `∫_{Ha⁻} (e^{ts} - e_{order-1}(ts)) s^{-z} ds / (2πi)`.
fn contour_integral(
    z: f64,
    order: u32,
    t: f64,
    contour: &HankelContour,
    cfg: &QuadratureConfig,
) -> Result<ContourResult> {
    cfg.validate()?;
    contour.validate()?;
    let delta = contour.delta;
    let r0 = contour.r0;
    let rot_up = Complex64::from_polar(1.0, delta);
    let rot_down = Complex64::from_polar(1.0, -delta);
    let upper = |r: f64| rot_up * scaled_kernel(r, delta, z, order, t);
    let lower = |r: f64| -rot_down * scaled_kernel(r, -delta, z, order, t);
    let arc = |theta: f64| {
        Complex64::new(0.0, r0)
            * Complex64::from_polar(1.0, theta)
            * scaled_kernel(r0, theta, z, order, t)
    };
    let engine_cfg = QuadratureConfig {
        max_subdivisions: contour.nodes,
        ..*cfg
    };
    let two_pi_i = Complex64::new(0.0, 2.0 * PI);

    let pass = |radius: f64| -> (Adaptive<Complex64>, f64) {
        let mut segments: Vec<Segment<'_, Complex64>> = Vec::new();
        let pts = ray_breakpoints(r0, radius);
        for w in pts.windows(2) {
            segments.push(Segment::new(&lower, w[0], w[1]));
        }
        segments.push(Segment::new(&arc, -delta, 0.0));
        segments.push(Segment::new(&arc, 0.0, delta));
        for w in pts.windows(2) {
            segments.push(Segment::new(&upper, w[0], w[1]));
        }
        // ∫_{S}^{∞} -c s^a ds = c S^{a+1}/(a+1) outward on the upper ray,
        // the negative (inward) on the lower ray.
        let mut tail = Complex64::new(0.0, 0.0);
        let mut coeff = 1.0;
        for j in 0..order {
            if j > 0 {
                coeff *= t / j as f64;
            }
            let a1 = j as f64 - z + 1.0;
            let mag = coeff * radius.powf(a1) / a1;
            tail +=
                Complex64::from_polar(mag, delta * a1) - Complex64::from_polar(mag, -delta * a1);
        }
        let bound =
            2.0 * (t * radius * delta.cos()).exp() * radius.powf(-z) / (t * delta.cos().abs());
        (adaptive(&segments, tail, bound, &engine_cfg), bound)
    };

    let fixed =
        contour.radius.is_some() || matches!(cfg.tail_truncation_radius, TailRadius::Fixed(_));
    let mut radius = contour.radius.unwrap_or_else(|| default_radius(contour, t));
    let mut spent = 0;
    for attempt in 0..8 {
        let (run, bound) = pass(radius);
        spent += run.evaluations;
        let small_enough = bound <= 0.01 * cfg.eps_rel * run.value.magnitude();
        if fixed || small_enough || attempt == 7 {
            let flag = if run.converged && (fixed || small_enough) {
                ConditionFlag::Ok
            } else {
                ConditionFlag::ToleranceNotMet
            };
            return Ok(ContourResult {
                value: run.value / two_pi_i,
                abs_error_estimate: run.error / (2.0 * PI),
                evaluations: spent,
                condition_flag: flag,
            });
        }
        radius *= 2.0;
    }
    unreachable!("loop returns on its last attempt")
}

/// `1/Γ(z)` from the regularized Hankel integral; the imaginary part of the
/// result should vanish to within the quadrature error.
pub fn hankel_recip_gamma(
    z: f64,
    contour: &HankelContour,
    cfg: &QuadratureConfig,
) -> Result<ContourResult> {
    let d = decompose(z)?;
    contour_integral(z, d.n, 1.0, contour, cfg)
}

/// Contribution of the arc `|τ| = r0` alone, normalized by `1/(2πi)`.
pub fn arc_contribution(
    z: f64,
    contour: &HankelContour,
    cfg: &QuadratureConfig,
) -> Result<ComplexValue> {
    let d = decompose(z)?;
    arc_contribution_with_order(z, d.n, contour, cfg)
}

/// As [`arc_contribution`] but with an explicit truncation order, so the
/// unregularized kernel (`order = 0`) can be examined.
pub fn arc_contribution_with_order(
    z: f64,
    order: u32,
    contour: &HankelContour,
    cfg: &QuadratureConfig,
) -> Result<ComplexValue> {
    cfg.validate()?;
    contour.validate()?;
    let r0 = contour.r0;
    let arc = |theta: f64| {
        Complex64::new(0.0, r0)
            * Complex64::from_polar(1.0, theta)
            * scaled_kernel(r0, theta, z, order, 1.0)
    };
    let segments = [
        Segment::new(&arc, -contour.delta, 0.0),
        Segment::new(&arc, 0.0, contour.delta),
    ];
    let run = adaptive(&segments, Complex64::new(0.0, 0.0), 0.0, cfg);
    Ok(run.value / Complex64::new(0.0, 2.0 * PI))
}

/// `1/(2πi) ∫_∞^0 (Ker_A - Ker_B) dr` using [`ray_difference_kernel`], i.e. the
/// two rays without the arc, with the rays running all the way into the origin.
///
/// The polynomial part beyond the truncation radius is added in closed form.
pub fn ray_pair_integral(z: f64, delta: f64, cfg: &QuadratureConfig) -> Result<ComplexValue> {
    cfg.validate()?;
    let d = decompose(z)?;
    if !(delta > FRAC_PI_2 && delta <= PI) {
        return Err(Error::InvalidArgument(format!(
            "ray angle {delta} outside (π/2, π]"
        )));
    }
    let n = d.n;
    let p = 1.0 / (1.0 - d.frac);
    let split = cfg.split_point;
    // r = w^p absorbs the r^{-{z}} singularity
    let origin = |w: f64| {
        let r = w.powf(p);
        if r == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        ray_difference_kernel(r, delta, z, n) * (p * r.powf(d.frac))
    };
    let full = |r: f64| ray_difference_kernel(r, delta, z, n);
    let radius = (4.0 * split).max(40.0 / delta.cos().abs());
    let mut segments: Vec<Segment<'_, Complex64>> =
        vec![Segment::new(&origin, 0.0, split.powf(1.0 - d.frac))];
    for w in geometric_breakpoints(split, radius, 2.0).windows(2) {
        segments.push(Segment::new(&full, w[0], w[1]));
    }
    let mut tail = 0.0;
    let mut coeff = 1.0;
    for k in 0..n {
        if k > 0 {
            coeff /= k as f64;
        }
        let a1 = k as f64 - z + 1.0;
        tail += (delta * (k as f64 - z)).sin() * coeff * radius.powf(a1) / (-a1);
    }
    let tail = Complex64::new(0.0, -2.0 * tail);
    let bound = 2.0 * (radius * delta.cos()).exp() * radius.powf(-z);
    let run = adaptive(&segments, tail, bound, cfg);
    Ok(-run.value / Complex64::new(0.0, 2.0 * PI))
}

/// Inverse Laplace transform of `Γ(k+1)/s^{k+1}` at `t`, which should be `t^k`:
///
/// ```text
/// 1/(2πi) ∫_{Ha⁻} Γ(k+1) (e^{ts} - e_{[k]}(ts)) / s^{k+1} ds
/// ```
pub fn inverse_laplace_monomial(
    k: f64,
    t: f64,
    contour: &HankelContour,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    Ok(inverse_laplace_contour(k, t, contour, cfg)?.value.re)
}

/// [`inverse_laplace_monomial`] with the complex value and error bookkeeping.
pub fn inverse_laplace_contour(
    k: f64,
    t: f64,
    contour: &HankelContour,
    cfg: &QuadratureConfig,
) -> Result<ContourResult> {
    let d = decompose(k)?;
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::InvalidArgument(format!("time {t} must be positive")));
    }
    let integral = contour_integral(k + 1.0, d.n + 1, t, contour, cfg)?;
    let gamma_k1 = gamma::gamma(k + 1.0, cfg)?;
    let rel_gamma = gamma_k1.abs_error() / gamma_k1.value.abs();
    let value = integral.value * gamma_k1.value;
    Ok(ContourResult {
        value,
        abs_error_estimate: integral.abs_error_estimate * gamma_k1.value.abs()
            + rel_gamma * value.norm(),
        evaluations: integral.evaluations + gamma_k1.evaluations(),
        condition_flag: integral.condition_flag.worst(gamma_k1.condition_flag()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gamma::{recip_gamma, MethodTag};
    use crate::quadrature::integrate_regularized_kernel;

    fn cfg() -> QuadratureConfig {
        QuadratureConfig::default()
    }

    #[test]
    fn contour_validation() {
        assert!(HankelContour::default().validate().is_ok());
        let c = HankelContour::with_angle_and_radius(PI, 0.5);
        assert!(matches!(c.validate(), Err(Error::InvalidArgument(_))));
        let c = HankelContour::with_angle_and_radius(1.0, 0.5);
        assert!(c.validate().is_err());
        let c = HankelContour::with_angle_and_radius(2.5, 0.0);
        assert!(matches!(c.validate(), Err(Error::ContourDegenerate(_))));
        let c = HankelContour {
            radius: Some(0.5),
            ..HankelContour::default()
        };
        assert!(matches!(c.validate(), Err(Error::ContourDegenerate(_))));
        assert!(matches!(
            hankel_recip_gamma(0.5, &c, &cfg()),
            Err(Error::ContourDegenerate(_))
        ));
    }

    #[test]
    fn half_value() {
        let r = hankel_recip_gamma(0.5, &HankelContour::default(), &cfg()).unwrap();
        assert!((r.value.re - 0.564_189_583_547_756_3).abs() < 1e-9);
        assert!(r.value.im.abs() < 1e-9);
        assert_eq!(r.condition_flag, ConditionFlag::Ok);
    }

    #[test]
    fn agrees_with_real_axis() {
        let h = hankel_recip_gamma(2.5, &HankelContour::default(), &cfg()).unwrap();
        let real = recip_gamma(2.5, &cfg(), MethodTag::RealAxis).unwrap().value;
        assert!((h.value.re - real).abs() <= 1e-6);
        assert!(h.value.im.abs() <= 1e-8);
    }

    #[test]
    fn contour_invariance_grid() {
        let cfg = cfg();
        for z in [0.5, 1.5, 3.3] {
            let reference = hankel_recip_gamma(z, &HankelContour::default(), &cfg)
                .unwrap()
                .value;
            let real = recip_gamma(z, &cfg, MethodTag::RealAxis).unwrap().value;
            for delta in [2.0, 2.5, 3.0] {
                for r0 in [0.25, 0.5, 1.0] {
                    let c = HankelContour::with_angle_and_radius(delta, r0);
                    let v = hankel_recip_gamma(z, &c, &cfg).unwrap().value;
                    assert!((v - reference).norm() <= 10.0 * cfg.eps_rel * reference.norm());
                    assert!((v.re - real).abs() <= 1e-6);
                    assert!(v.im.abs() <= 1e-7);
                }
            }
        }
    }

    #[test]
    fn fixed_outer_radius() {
        let c = HankelContour {
            radius: Some(40.0),
            ..HankelContour::default()
        };
        let r = hankel_recip_gamma(0.5, &c, &cfg()).unwrap();
        assert!((r.value.re - 0.564_189_583_547_756_3).abs() < 1e-9);
    }

    #[test]
    fn arc_radius_does_not_matter() {
        let a = hankel_recip_gamma(
            1.5,
            &HankelContour::with_angle_and_radius(3.0 * PI / 4.0, 0.5),
            &cfg(),
        )
        .unwrap();
        let b = hankel_recip_gamma(
            1.5,
            &HankelContour::with_angle_and_radius(3.0 * PI / 4.0, 1.0),
            &cfg(),
        )
        .unwrap();
        assert!((a.value - b.value).norm() <= 1e-8);
    }

    #[test]
    fn difference_kernel_at_the_cut() {
        let v = ray_difference_kernel(1.0, PI, 0.5, 0);
        let want = Complex64::new(0.0, -2.0 * (-1f64).exp());
        assert!((v - want).norm() < 1e-15);
    }

    #[test]
    fn difference_kernel_vanishes_at_integer_z_on_the_cut() {
        // at δ = π only the sin(πz) terms survive, and sin(πm) = 0
        for m in 1..4u32 {
            for r in [0.3, 1.0, 4.0] {
                let v = ray_difference_kernel(r, PI, m as f64, m);
                let scale = (1..m).map(|k| r.powi(k as i32)).sum::<f64>() + 1.0;
                assert!(
                    v.norm() < 1e-14 * scale * r.powf(-(m as f64)),
                    "m={m} r={r}"
                );
            }
        }
    }

    #[test]
    fn difference_kernel_matches_direct_evaluation() {
        for (r, delta, z, n) in [(0.7, 2.9, 1.5, 1), (2.3, 2.0, 3.3, 3), (0.1, 2.5, 0.4, 0)] {
            let direct = ray_kernel(r, delta, z, n) - ray_kernel(r, -delta, z, n);
            let closed = ray_difference_kernel(r, delta, z, n);
            assert!(
                (direct - closed).norm() < 1e-13 * direct.norm().max(1.0),
                "r={r}"
            );
        }
    }

    #[test]
    fn mirrored_rays_are_conjugate() {
        for r in [0.05, 0.4, 1.0, 3.7, 20.0] {
            for (z, n) in [(0.5, 0), (1.5, 1), (3.3, 3)] {
                let a = ray_kernel(r, 2.4, z, n);
                let b = ray_kernel(r, -2.4, z, n);
                assert_eq!(a, b.conj(), "r={r} z={z}");
            }
        }
    }

    #[test]
    fn ray_pair_approaches_real_axis_at_the_cut() {
        for z in [0.5, 1.5] {
            let pair = ray_pair_integral(z, PI - 1e-3, &cfg()).unwrap();
            let d = decompose(z).unwrap();
            let i = integrate_regularized_kernel(&d, &cfg()).unwrap().value;
            let want = crate::kernel::sin_pi(z) / PI * i;
            assert!(
                ((pair.re - want) / want).abs() <= 1e-4,
                "z={z}: {pair} vs {want}"
            );
        }
    }

    fn fitted_exponent(z: f64, order: u32) -> f64 {
        let radii = [1e-1, 1e-2, 1e-3];
        let pts: Vec<(f64, f64)> = radii
            .iter()
            .map(|&r0| {
                let c = HankelContour::with_angle_and_radius(3.0 * PI / 4.0, r0);
                let v = arc_contribution_with_order(z, order, &c, &cfg()).unwrap();
                (r0.ln(), v.norm().ln())
            })
            .collect();
        let n = pts.len() as f64;
        let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
        let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
        let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
        let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
        sxy / sxx
    }

    #[test]
    fn arc_vanishes_for_regularized_kernel() {
        for z in [0.5, 1.5, 2.3] {
            let slope = fitted_exponent(z, decompose(z).unwrap().n);
            let want = 1.0 - decompose(z).unwrap().frac;
            assert!((slope - want).abs() < 0.1, "z={z} slope={slope}");
        }
        let c = HankelContour::with_angle_and_radius(3.0 * PI / 4.0, 1e-2);
        assert!(arc_contribution(0.5, &c, &cfg()).unwrap().norm() <= 1e-2f64.sqrt());
    }

    #[test]
    fn arc_persists_without_regularization() {
        assert!(fitted_exponent(1.5, 0) <= 0.0);
    }

    #[test]
    fn inverse_laplace_examples() {
        let c = HankelContour::default();
        for (k, t, want) in [
            (1.5, 2.0, 2.828_427_124_746_19),
            (0.5, 1.0, 1.0),
            (2.5, 0.5, 0.176_776_695_296_636_9),
        ] {
            let v = inverse_laplace_monomial(k, t, &c, &cfg()).unwrap();
            assert!(((v - want) / want).abs() < 1e-7, "k={k} t={t}: {v}");
        }
        assert!(inverse_laplace_monomial(2.0, 1.0, &c, &cfg()).is_err());
        assert!(inverse_laplace_monomial(1.5, 0.0, &c, &cfg()).is_err());
    }
}
