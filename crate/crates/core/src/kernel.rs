//! Building blocks of the regularized integrand.
//!
//! The numerator of every real-axis representation is an exponential remainder
//! `e^x - e_{n-1}(x)`, which vanishes to order `n` at the origin. Near zero the
//! direct subtraction loses most of its digits, so small arguments are summed
//! from the Taylor tail instead.

use crate::error::{Error, Result};

/// A positive non-integer argument split into integer and fractional parts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArgDecomposition {
    pub z: f64,
    /// Integer part `[z]`, also the truncation order of the regularizing polynomial.
    pub n: u32,
    /// Fractional part `{z}`, strictly inside `(0, 1)`.
    pub frac: f64,
}

impl ArgDecomposition {
    /// Exponent of the integrand's algebraic singularity at the origin.
    pub fn origin_exponent(&self) -> f64 {
        -self.frac
    }
}

/// Splits `z` into `[z]` and `{z}`.
///
/// Integers are detected exactly (`floor(z) == z`); no epsilon snapping.
pub fn decompose(z: f64) -> Result<ArgDecomposition> {
    if !z.is_finite() {
        return Err(Error::InvalidArgument(format!("non-finite argument {z}")));
    }
    if z <= 0.0 {
        return Err(Error::NonPositiveArgument(z));
    }
    let floor = z.floor();
    if floor == z {
        return Err(Error::IntegerArgument(z));
    }
    if floor > u32::MAX as f64 {
        return Err(Error::InvalidArgument(format!("argument {z} is too large")));
    }
    Ok(ArgDecomposition {
        z,
        n: floor as u32,
        frac: z - floor,
    })
}

/// `e_n(x) = Σ_{k=0}^{n} x^k / k!`, with `e_{-1} = 0`.
pub fn truncated_exp(x: f64, n: i32) -> f64 {
    if n < 0 {
        return 0.0;
    }
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..=n {
        term *= x / k as f64;
        sum += term;
    }
    sum
}

/// How an exponential remainder was evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RemainderMethod {
    SeriesTail,
    Direct,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelEval {
    pub x: f64,
    pub value: f64,
    pub method_used: RemainderMethod,
}

/// Largest `|x|` for which the remainder is summed from its Taylor tail.
pub fn series_switch(n: u32) -> f64 {
    (n as f64 / 2.0).max(1.0)
}

/// `Σ_{k≥n} x^(k-n) / k!`, i.e. the remainder divided by `x^n`.
fn scaled_tail_series(x: f64, n: u32) -> f64 {
    let mut lead = 1.0;
    for k in 2..=n {
        lead /= k as f64;
    }
    let mut term = lead;
    let mut sum = lead;
    let mut k = n as f64;
    loop {
        k += 1.0;
        term *= x / k;
        if term.abs() < f64::EPSILON / 2.0 * sum.abs() || term == 0.0 {
            break;
        }
        sum += term;
    }
    sum
}

/// Evaluates `e^x - e_{n-1}(x)` and records the path taken.
pub fn exp_remainder_eval(x: f64, n: u32) -> Result<KernelEval> {
    if n == 0 {
        let value = x.exp();
        if value.is_infinite() {
            return Err(Error::Overflow(x));
        }
        return Ok(KernelEval {
            x,
            value,
            method_used: RemainderMethod::Direct,
        });
    }
    if x.abs() <= series_switch(n) {
        let value = if x == 0.0 {
            0.0
        } else {
            x.powi(n as i32) * scaled_tail_series(x, n)
        };
        return Ok(KernelEval {
            x,
            value,
            method_used: RemainderMethod::SeriesTail,
        });
    }
    let e = x.exp();
    if e.is_infinite() {
        return Err(Error::Overflow(x));
    }
    Ok(KernelEval {
        x,
        value: e - truncated_exp(x, n as i32 - 1),
        method_used: RemainderMethod::Direct,
    })
}

/// `e^x - e_{n-1}(x)`, accurate to near machine precision on both sides of the origin.
pub fn exp_remainder(x: f64, n: u32) -> Result<f64> {
    exp_remainder_eval(x, n).map(|e| e.value)
}

/// `(e^x - e_{n-1}(x)) / x^n`, finite at `x = 0` where it equals `1/n!`.
///
/// Used wherever `x^n` itself may underflow (the origin panels of the quadrature).
pub fn scaled_exp_remainder(x: f64, n: u32) -> Result<f64> {
    if n == 0 {
        return exp_remainder(x, 0);
    }
    if x.abs() <= series_switch(n) {
        return Ok(scaled_tail_series(x, n));
    }
    Ok(exp_remainder(x, n)? / x.powi(n as i32))
}

/// Falling factorial `(z)_n = z (z-1) ... (z-n+1)`; the empty product is 1.
pub fn falling_factorial(z: f64, n: u32) -> f64 {
    (0..n).fold(1.0, |acc, k| acc * (z - k as f64))
}

/// `sin(πx)` with the argument reduced exactly, so it vanishes at integers.
pub fn sin_pi(x: f64) -> f64 {
    let r = x - 2.0 * (x / 2.0).floor(); // [0, 2)
    let (r, sign) = if r >= 1.0 { (r - 1.0, -1.0) } else { (r, 1.0) };
    let v = if r <= 0.5 {
        (std::f64::consts::PI * r).sin()
    } else {
        (std::f64::consts::PI * (1.0 - r)).sin()
    };
    sign * v
}

/// `1/n!` by running division; underflows gracefully for very large `n`.
pub(crate) fn inv_factorial(n: u32) -> f64 {
    (2..=n).fold(1.0, |acc, k| acc / k as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use num_traits::{One, ToPrimitive, Zero};
    use proptest::prelude::*;

    /// e^x - e_{n-1}(x) by subtracting two long Taylor sums in 400-bit fixed point.
    fn remainder_oracle(x: f64, n: u32) -> f64 {
        const BITS: usize = 400;
        let (mantissa, exponent, sign) = num_traits::Float::integer_decode(x);
        let m = BigInt::from(mantissa) * i64::from(sign);
        let mut term = BigInt::one() << BITS;
        let mut full = BigInt::zero();
        let mut truncated = BigInt::zero();
        for k in 0..120u32 {
            if k > 0 {
                term *= &m;
                term = if exponent < 0 {
                    term >> (-exponent) as usize
                } else {
                    term << exponent as usize
                };
                term /= k;
            }
            full += &term;
            if k < n {
                truncated += &term;
            }
        }
        BigRational::new(full - truncated, BigInt::one() << BITS)
            .to_f64()
            .unwrap()
    }

    #[test]
    fn decompose_examples() {
        let d = decompose(2.5).unwrap();
        assert_eq!((d.n, d.frac), (2, 0.5));
        let d = decompose(0.25).unwrap();
        assert_eq!((d.n, d.frac), (0, 0.25));
        assert_eq!(decompose(3.0), Err(Error::IntegerArgument(3.0)));
        assert_eq!(decompose(0.0), Err(Error::NonPositiveArgument(0.0)));
        assert_eq!(decompose(-1.5), Err(Error::NonPositiveArgument(-1.5)));
        assert!(decompose(f64::NAN).is_err());
    }

    #[test]
    fn truncated_exp_examples() {
        assert_eq!(truncated_exp(1.0, 2), 2.5);
        assert_eq!(truncated_exp(-2.0, 1), -1.0);
        assert_eq!(truncated_exp(7.3, -1), 0.0);
        assert_eq!(truncated_exp(7.3, 0), 1.0);
    }

    #[test]
    fn truncated_exp_large_order_does_not_overflow() {
        let v = truncated_exp(1.0, 170);
        assert!((v - std::f64::consts::E).abs() < 1e-15);
    }

    #[test]
    fn exp_remainder_examples() {
        for x in [-3.0, -0.1, 0.0, 0.7, 12.0] {
            assert_eq!(exp_remainder(x, 0).unwrap(), x.exp());
        }
        for n in 1..6 {
            assert_eq!(exp_remainder(0.0, n).unwrap(), 0.0);
        }
        let v = exp_remainder(-0.5, 2).unwrap();
        assert!((v - 0.106_530_659_712_633_42).abs() < 1e-16);
    }

    #[test]
    fn exp_remainder_overflow() {
        assert_eq!(exp_remainder(800.0, 3), Err(Error::Overflow(800.0)));
        assert_eq!(exp_remainder(800.0, 0), Err(Error::Overflow(800.0)));
        // the series branch never overflows
        assert!(exp_remainder(0.5, 3).is_ok());
    }

    #[test]
    fn method_switch_follows_threshold() {
        assert_eq!(
            exp_remainder_eval(-0.9, 1).unwrap().method_used,
            RemainderMethod::SeriesTail
        );
        assert_eq!(
            exp_remainder_eval(-1.1, 1).unwrap().method_used,
            RemainderMethod::Direct
        );
        assert_eq!(
            exp_remainder_eval(-3.9, 8).unwrap().method_used,
            RemainderMethod::SeriesTail
        );
        assert_eq!(
            exp_remainder_eval(-4.1, 8).unwrap().method_used,
            RemainderMethod::Direct
        );
    }

    #[test]
    fn series_matches_extended_precision_subtraction() {
        let mut worst: f64 = 0.0;
        for n in 1..=8u32 {
            for i in 0..=79 {
                let x = -0.01 - (4.0 - 0.01) * i as f64 / 79.0;
                let got = exp_remainder(x, n).unwrap();
                let want = remainder_oracle(x, n);
                worst = worst.max(((got - want) / want).abs());
            }
        }
        assert!(worst <= 1e-13, "worst relative deviation {worst:e}");
    }

    #[test]
    fn leading_order_at_origin() {
        for n in 0..=6u32 {
            let nfact: f64 = (1..=n).map(f64::from).product();
            for k in 2..=6 {
                for sign in [-1.0, 1.0] {
                    let x = sign * 10f64.powi(-k);
                    let scaled = exp_remainder(x, n).unwrap() / x.powi(n as i32) * nfact;
                    assert!(
                        (scaled - 1.0).abs() <= 10.0 * x.abs(),
                        "n={n} x={x} scaled={scaled}"
                    );
                }
            }
        }
    }

    #[test]
    fn derivative_lowers_the_order() {
        let h = 1e-5;
        for x in [-2.0, -0.5, 0.5] {
            for n in 1..6u32 {
                let d = (exp_remainder(x + h, n + 1).unwrap()
                    - exp_remainder(x - h, n + 1).unwrap())
                    / (2.0 * h);
                let want = exp_remainder(x, n).unwrap();
                assert!(((d - want) / want).abs() <= 1e-6, "x={x} n={n}");
            }
        }
    }

    #[test]
    fn scaled_remainder_at_origin() {
        assert_eq!(scaled_exp_remainder(0.0, 3).unwrap(), 1.0 / 6.0);
        assert_eq!(scaled_exp_remainder(1e-300, 4).unwrap(), 1.0 / 24.0);
        let x = -2.7;
        let direct = exp_remainder(x, 5).unwrap() / x.powi(5);
        assert!((scaled_exp_remainder(x, 5).unwrap() - direct).abs() < 1e-15);
    }

    #[test]
    fn sin_pi_is_exact_at_integers() {
        for m in -5..=5 {
            assert_eq!(sin_pi(m as f64), 0.0);
        }
        assert_eq!(sin_pi(0.5), 1.0);
        assert_eq!(sin_pi(1.5), -1.0);
        assert_eq!(sin_pi(-0.5), -1.0);
        assert!((sin_pi(2.3) - (std::f64::consts::PI * 0.3).sin()).abs() < 1e-15);
        let x = 1.0 + 1e-8;
        assert!((sin_pi(x) + std::f64::consts::PI * (x - 1.0)).abs() < 1e-22);
    }

    #[test]
    fn falling_factorial_examples() {
        assert_eq!(falling_factorial(5.0, 3), 60.0);
        assert_eq!(falling_factorial(0.5, 1), 0.5);
        assert_eq!(falling_factorial(2.5, 0), 1.0);
        assert_eq!(inv_factorial(4), 1.0 / 24.0);
    }

    proptest! {
        #[test]
        fn decomposition_reconstructs(z in 1e-6f64..500.0) {
            prop_assume!(z.floor() != z);
            let d = decompose(z).unwrap();
            prop_assert_eq!(d.n as f64 + d.frac, z);
            prop_assert!(d.frac > 0.0 && d.frac < 1.0);
        }

        #[test]
        fn remainder_plus_polynomial_is_exp(x in -6.0f64..6.0, n in 0u32..10) {
            let lhs = exp_remainder(x, n).unwrap() + truncated_exp(x, n as i32 - 1);
            let scale = x.exp().abs().max(truncated_exp(x.abs(), n as i32));
            prop_assert!((lhs - x.exp()).abs() <= 1e-14 * scale);
        }
    }
}
