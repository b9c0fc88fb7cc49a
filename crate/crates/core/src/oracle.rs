//! Independent reference implementations.
//!
//! Nothing in the evaluation modules depends on this one; it exists so tests,
//! `verify` and `bench` have something to compare against that shares no code
//! path with the integral representations.

use std::f64::consts::PI;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleConfig {
    pub product_terms: usize,
    pub brute_panels: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            product_terms: 100_000,
            brute_panels: 1_000_000,
        }
    }
}

// Lanczos approximation with g = 7 and nine coefficients, the set published by
// Godfrey (also reproduced in Numerical Recipes 3rd ed. and on Wikipedia).
const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Gamma function by the Lanczos approximation, reflected for `z < 1/2`.
pub fn gamma_lanczos(z: f64) -> Result<f64> {
    if z <= 0.0 && z.floor() == z {
        return Err(Error::Pole(z));
    }
    if z < 0.5 {
        // Γ(z) Γ(1-z) = π / sin(πz)
        return Ok(PI / ((PI * z).sin() * gamma_lanczos(1.0 - z)?));
    }
    let x = z - 1.0;
    let mut a = LANCZOS_COEFFS[0];
    let t = x + LANCZOS_G + 0.5;
    for (i, c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        a += c / (x + i as f64);
    }
    Ok((2.0 * PI).sqrt() * t.powf(x + 0.5) * (-t).exp() * a)
}

/// Truncated Euler product `z(z+1)...(z+T) / (T^z T!)`.
///
/// Written as `z · Π_{j=1}^{T} (1 + z/j) · T^{-z}` and accumulated in log space,
/// so the value converges to `1/Γ(z)` at rate `O(1/T)` without overflow.
pub fn recip_gamma_product(z: f64, terms: usize) -> f64 {
    let terms = terms.max(1);
    let mut log_mag = 0.0;
    let mut sign = if z < 0.0 { -1.0 } else { 1.0 };
    if z == 0.0 {
        return 0.0;
    }
    log_mag += z.abs().ln();
    for j in 1..=terms {
        let factor = z / j as f64;
        if factor == -1.0 {
            return 0.0;
        }
        if factor < -1.0 {
            sign = -sign;
            log_mag += (-1.0 - factor).ln();
        } else {
            log_mag += factor.ln_1p();
        }
    }
    log_mag -= z * (terms as f64).ln();
    sign * log_mag.exp()
}

/// Composite midpoint rule with `panels` equal panels.
pub fn brute_force_integral<F>(f: F, a: f64, b: f64, panels: usize) -> f64
where
    F: Fn(f64) -> f64,
{
    let panels = panels.max(1);
    let h = (b - a) / panels as f64;
    let mut sum = 0.0;
    let mut compensation = 0.0;
    for i in 0..panels {
        // Kahan summation keeps a million-panel sum at round-off level.
        let y = f(a + (i as f64 + 0.5) * h) - compensation;
        let t = sum + y;
        compensation = (t - sum) - y;
        sum = t;
    }
    sum * h
}
