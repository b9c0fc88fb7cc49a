//! Grid evaluation and CSV output.

use std::fmt::Write as _;
use std::path::Path;

use clap::ValueEnum;
use rayon::prelude::*;

use super::{evaluate, Extras, FnKind};
use crate::error::{Error, Result};
use crate::gamma::{GammaValue, MethodTag};
use crate::quadrature::QuadratureConfig;

pub const CSV_HEADER: &str = "z,value,abs_err,method,flag";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Preset {
    /// `1/Γ(-z)` on `(0, 6)`.
    Fig1,
    /// `1/Γ(z)` on `(0, 10)`.
    Fig3,
    /// `Γ(-z)` on `(0, 5)`.
    Fig4,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSpec {
    pub z_min: f64,
    pub z_max: f64,
    pub step: f64,
    pub function: FnKind,
    pub method: MethodTag,
    pub integer_exclusion_radius: f64,
}

impl Default for SweepSpec {
    fn default() -> Self {
        Self {
            z_min: 0.1,
            z_max: 9.9,
            step: 0.1,
            function: FnKind::RecipGamma,
            method: MethodTag::RealAxis,
            integer_exclusion_radius: 1e-6,
        }
    }
}

impl SweepSpec {
    /// Grids over the open intervals, endpoints excluded.
    pub fn preset(p: Preset) -> Self {
        let (lo, hi, step, function) = match p {
            Preset::Fig1 => (0.0, 6.0, 0.02, FnKind::RecipGammaNeg),
            Preset::Fig3 => (0.0, 10.0, 0.05, FnKind::RecipGamma),
            Preset::Fig4 => (0.0, 5.0, 0.02, FnKind::GammaNeg),
        };
        Self {
            z_min: lo + step,
            z_max: hi - step,
            step,
            function,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.z_min.is_finite() && self.z_max.is_finite() && self.z_min < self.z_max) {
            return Err(Error::InvalidArgument(format!(
                "sweep range [{}, {}]",
                self.z_min, self.z_max
            )));
        }
        if !(self.step > 0.0 && self.step.is_finite()) {
            return Err(Error::InvalidArgument(format!("sweep step {}", self.step)));
        }
        if !(self.integer_exclusion_radius >= 0.0 && self.integer_exclusion_radius < 0.5) {
            return Err(Error::InvalidArgument(format!(
                "integer radius {}",
                self.integer_exclusion_radius
            )));
        }
        if matches!(self.function, FnKind::GammaRatio | FnKind::InvLaplace) {
            return Err(Error::InvalidArgument(
                "sweeps support recip-gamma, gamma, gamma-neg and recip-gamma-neg".into(),
            ));
        }
        Ok(())
    }

    /// Grid points `z_min + i·step`, snapped to the nearest integer when
    /// within the exclusion radius.
    pub fn grid(&self) -> Vec<f64> {
        let count = ((self.z_max - self.z_min) / self.step + 1e-9).floor() as usize;
        (0..=count)
            .map(|i| {
                let z = self.z_min + i as f64 * self.step;
                let m = z.round();
                if (z - m).abs() <= self.integer_exclusion_radius {
                    m
                } else {
                    z
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub z: f64,
    pub value: f64,
    pub abs_err: f64,
    pub method: MethodTag,
    pub flag: String,
}

fn row(z: f64, spec: &SweepSpec, cfg: &QuadratureConfig) -> SweepRow {
    let result: Result<GammaValue> = match spec.function {
        // Γ(-m) is a pole; the evaluator itself only reports the integer argument
        FnKind::GammaNeg if z.floor() == z => Err(Error::Pole(-z)),
        f => evaluate(f, z, spec.method, cfg, &Extras::default()),
    };
    match result {
        Ok(v) => SweepRow {
            z,
            value: v.value,
            abs_err: v.abs_error(),
            method: v.method,
            flag: v.condition_flag().as_str().to_string(),
        },
        Err(e) => SweepRow {
            z,
            value: f64::NAN,
            abs_err: f64::NAN,
            method: spec.method,
            flag: match e {
                Error::Pole(_) => "pole",
                Error::Overflow(_) => "overflow",
                _ => "error",
            }
            .to_string(),
        },
    }
}

/// Evaluate every grid point; rows come back in grid order.
pub fn run_sweep(spec: &SweepSpec, cfg: &QuadratureConfig) -> Result<Vec<SweepRow>> {
    spec.validate()?;
    cfg.validate()?;
    Ok(spec
        .grid()
        .into_par_iter()
        .map(|z| row(z, spec, cfg))
        .collect())
}

fn number(x: f64) -> String {
    if x.is_nan() {
        "nan".to_string()
    } else if x.is_infinite() {
        if x > 0.0 { "inf" } else { "-inf" }.to_string()
    } else {
        format!("{x:.16e}")
    }
}

pub fn render_csv(rows: &[SweepRow]) -> String {
    let mut s = String::with_capacity(64 * (rows.len() + 1));
    s.push_str(CSV_HEADER);
    s.push('\n');
    for r in rows {
        let _ = writeln!(
            s,
            "{},{},{},{},{}",
            number(r.z),
            number(r.value),
            number(r.abs_err),
            r.method,
            r.flag
        );
    }
    s
}

pub fn write_csv(path: &Path, rows: &[SweepRow]) -> Result<()> {
    std::fs::write(path, render_csv(rows))
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}
