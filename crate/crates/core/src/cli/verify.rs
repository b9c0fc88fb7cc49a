//! Property checks with one `key=value` line per check.

use std::f64::consts::PI;
use std::io::Write;

use super::{io_error, EXIT_OK, EXIT_USAGE};
use crate::error::Result;
use crate::gamma::{gamma_cauchy_saalschutz, gamma_negative, gamma_ratio, recip_gamma, MethodTag};
use crate::hankel::{hankel_recip_gamma, inverse_laplace_monomial, HankelContour};
use crate::oracle::gamma_lanczos;
use crate::quadrature::QuadratureConfig;

struct Check {
    name: &'static str,
    at: String,
    measured: f64,
    tol: Option<f64>,
}

impl Check {
    fn new(name: &'static str, at: String, measured: f64, tol: f64) -> Self {
        Self {
            name,
            at,
            measured,
            tol: Some(tol),
        }
    }

    fn info(name: &'static str, at: String, measured: f64) -> Self {
        Self {
            name,
            at,
            measured,
            tol: None,
        }
    }

    fn passed(&self) -> bool {
        match self.tol {
            Some(t) => self.measured <= t,
            None => true,
        }
    }

    fn line(&self) -> String {
        match self.tol {
            Some(t) => format!(
                "check={} at={} measured={:.3e} tol={:.1e} status={}",
                self.name,
                self.at,
                self.measured,
                t,
                if self.passed() { "pass" } else { "fail" }
            ),
            None => format!(
                "check={} at={} measured={:.3e} status=info",
                self.name, self.at, self.measured
            ),
        }
    }
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

/// Any evaluation error turns into an infinite discrepancy so it fails.
fn or_inf(r: Result<f64>) -> f64 {
    r.unwrap_or(f64::INFINITY)
}

const EQUIVALENCE_GRID: [f64; 5] = [0.3, 1.7, 2.5, 3.9, 6.1];

fn core_checks(cfg: &QuadratureConfig) -> Vec<Check> {
    let mut checks = Vec::new();

    let mut worst = 0.0f64;
    let mut where_worst = String::new();
    for i in 1..100 {
        let z = i as f64 / 10.0;
        if (z - z.round()).abs() < 0.05 + 1e-12 {
            continue;
        }
        let e = or_inf((|| {
            let v = recip_gamma(z, cfg, MethodTag::RealAxis)?.value;
            Ok(rel(v, 1.0 / gamma_lanczos(z)?))
        })());
        if e >= worst {
            worst = e;
            where_worst = format!("{z:.1}");
        }
    }
    checks.push(Check::new("golden_values", where_worst, worst, 1e-7));

    let methods = [
        MethodTag::RealAxis,
        MethodTag::PowerSubst,
        MethodTag::LogForm,
        MethodTag::Hankel,
    ];
    for z in EQUIVALENCE_GRID {
        let vals: Vec<f64> = methods
            .iter()
            .map(|&m| recip_gamma(z, cfg, m).map(|v| v.value).unwrap_or(f64::NAN))
            .collect();
        let mut spread = 0.0f64;
        for a in &vals {
            for b in &vals {
                let d = rel(*a, *b);
                spread = if d.is_nan() {
                    f64::INFINITY
                } else {
                    spread.max(d)
                };
            }
        }
        checks.push(Check::new("equivalence", format!("{z}"), spread, 1e-6));
        let im =
            or_inf(hankel_recip_gamma(z, &HankelContour::default(), cfg).map(|r| r.value.im.abs()));
        checks.push(Check::new("hankel_imaginary", format!("{z}"), im, 1e-7));
    }

    for z in [0.4, 1.6, 2.2, 4.8] {
        let e = or_inf((|| {
            let want = -PI / (z * (PI * z).sin() * gamma_lanczos(z)?);
            let a = gamma_negative(z, cfg)?.value;
            let b = gamma_cauchy_saalschutz(z, cfg)?.value;
            Ok(rel(a, want).max(rel(b, want)).max(rel(a, b)))
        })());
        checks.push(Check::new("negative_argument", format!("{z}"), e, 1e-7));
    }

    for z in [0.3, 0.7, 1.2, 2.8, 4.6, 7.9] {
        let e = or_inf((|| {
            let a = recip_gamma(z, cfg, MethodTag::RealAxis)?.value;
            let b = recip_gamma(z + 1.0, cfg, MethodTag::RealAxis)?.value;
            Ok(((a - z * b) / a).abs())
        })());
        checks.push(Check::new("recurrence", format!("{z}"), e, 1e-7));
    }
    for z in [0.1, 0.25, 0.4, 0.45] {
        let e = or_inf((|| {
            let a = recip_gamma(z, cfg, MethodTag::RealAxis)?.value;
            let b = recip_gamma(1.0 - z, cfg, MethodTag::RealAxis)?.value;
            Ok((1.0 / a / b * (PI * z).sin() / PI - 1.0).abs())
        })());
        checks.push(Check::new("reflection", format!("{z}"), e, 1e-6));
    }

    for (a, b, want, tol) in [(2.5, 1.5, 1.5, 1e-7), (0.5, 2.5, 4.0 / 3.0, 1e-6)] {
        let e = or_inf(gamma_ratio(a, b, cfg).map(|v| (v.value - want).abs()));
        checks.push(Check::new("gamma_ratio", format!("{a}/{b}"), e, tol));
    }

    for k in [0.5, 1.5, 2.5] {
        for t in [0.5, 1.0, 2.0] {
            let e = or_inf(
                inverse_laplace_monomial(k, t, &HankelContour::default(), cfg)
                    .map(|v| rel(v, t.powf(k))),
            );
            checks.push(Check::new(
                "inverse_laplace",
                format!("k={k},t={t}"),
                e,
                1e-6,
            ));
        }
    }
    checks
}

fn hankel_checks(cfg: &QuadratureConfig) -> Vec<Check> {
    let mut checks = Vec::new();
    for z in [0.5, 1.5, 3.3] {
        let reference = hankel_recip_gamma(z, &HankelContour::default(), cfg).map(|r| r.value);
        let mut spread = 0.0f64;
        for delta in [2.0, 2.5, 3.0] {
            for r0 in [0.25, 0.5, 1.0] {
                let c = HankelContour::with_angle_and_radius(delta, r0);
                let d = match (&reference, hankel_recip_gamma(z, &c, cfg)) {
                    (Ok(a), Ok(b)) => (b.value - a).norm() / a.norm(),
                    _ => f64::INFINITY,
                };
                spread = spread.max(d);
            }
        }
        checks.push(Check::new(
            "contour_invariance",
            format!("{z}"),
            spread,
            10.0 * cfg.eps_rel,
        ));
    }
    checks
}

fn near_integer_report(cfg: &QuadratureConfig) -> Vec<Check> {
    let mut checks = Vec::new();
    for m in 1..=5 {
        for offset in [-1e-3, 1e-3] {
            let z = m as f64 + offset;
            let e = or_inf((|| {
                let v = recip_gamma(z, cfg, MethodTag::RealAxis)?.value;
                Ok(rel(v, 1.0 / gamma_lanczos(z)?))
            })());
            checks.push(Check::info("near_integer_accuracy", format!("{z}"), e));
        }
    }
    checks
}

pub fn cmd_verify(
    hankel: bool,
    near_integer: bool,
    cfg: &QuadratureConfig,
    out: &mut dyn Write,
) -> Result<i32> {
    let mut checks = core_checks(cfg);
    if hankel {
        checks.extend(hankel_checks(cfg));
    }
    if near_integer {
        checks.extend(near_integer_report(cfg));
    }
    let failed = checks.iter().filter(|c| !c.passed()).count();
    let mut text = String::new();
    for c in &checks {
        text.push_str(&c.line());
        text.push('\n');
    }
    text.push_str(&format!(
        "summary checks={} failed={}\n",
        checks.len(),
        failed
    ));
    out.write_all(text.as_bytes())
        .map_err(|e| io_error("stdout", e))?;
    Ok(if failed == 0 { EXIT_OK } else { EXIT_USAGE })
}
