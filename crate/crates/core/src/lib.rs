//! Reciprocal Gamma evaluation through regularized hypersingular integrals.
//!
//! The central identity is
//!
//! ```text
//! 1/Γ(z) = sin(πz)/π · ∫₀^∞ (e^{-x} - e_{n-1}(-x)) / x^z dx,   n = [z]
//! ```
//!
//! where `e_m` is the degree-`m` Taylor polynomial of the exponential. Subtracting
//! the truncated exponential makes the integral converge at both ends for every
//! non-integer `z > 0`, so the Euler integral extends to arguments where it
//! ordinarily diverges.
//!
//! Module map:
//!
//! - [`kernel`]: truncated exponentials, exponential remainders, falling factorials.
//! - [`quadrature`]: adaptive Gauss–Kronrod engine and the semi-infinite kernel integral.
//! - [`gamma`]: public evaluation API over every real-axis representation.
//! - [`hankel`]: the same function along a Hankel contour in the complex plane.
//! - [`oracle`]: independent references (Lanczos, Euler product, midpoint rule).
//! - [`cli`]: the `regamma` command-line front end.

// Published quadrature and Lanczos constants are kept at their printed length,
// and `!(x > 0.0)` style checks are there to reject NaN.
#![allow(clippy::excessive_precision, clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod gamma;
pub mod hankel;
pub mod kernel;
pub mod oracle;
pub mod quadrature;

pub use error::{Error, Result};
pub use gamma::{
    gamma, gamma_cauchy_saalschutz, gamma_euler_integral, gamma_negative, gamma_ratio,
    gamma_with_method, recip_gamma, recip_gamma_log_form, recip_gamma_neg_reflection,
    recip_gamma_power_subst, GammaValue, MethodTag, Provenance,
};
pub use hankel::{
    arc_contribution, hankel_recip_gamma, inverse_laplace_contour, inverse_laplace_monomial,
    ray_difference_kernel, ComplexValue, ContourResult, HankelContour,
};
pub use kernel::{decompose, exp_remainder, falling_factorial, truncated_exp, ArgDecomposition};
pub use quadrature::{
    integrate_finite, integrate_regularized_kernel, polynomial_tail_closed_form, ConditionFlag,
    IntegralResult, QuadratureConfig, TailRadius,
};
