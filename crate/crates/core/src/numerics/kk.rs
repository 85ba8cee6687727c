//! Kramers-Kronig rotation of a causal response onto the imaginary axis.

use crate::error::{Error, Result};
use crate::numerics::quad::{integrate_semi_infinite, QuadratureSpec};

/// sigma(i xi) = (2/pi) int_0^inf dw w Im sigma(w) / (w^2 + xi^2).
///
/// `im_sigma` must be the imaginary part of a response that is analytic in
/// the upper half-plane and decays at infinity; `spec.map_scale` should sit
/// near max(xi, structure scale of im_sigma).
pub fn kramers_kronig_imag_axis<F>(im_sigma: F, xi: f64, spec: &QuadratureSpec) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    if !(xi.is_finite() && xi >= 0.0) {
        return Err(Error::domain(format!(
            "kramers_kronig_imag_axis requires xi >= 0, got {xi:e}"
        )));
    }
    let xi2 = xi * xi;
    let r = integrate_semi_infinite(|w| w * im_sigma(w) / (w * w + xi2), spec)?;
    Ok(r.value * std::f64::consts::FRAC_2_PI)
}

/// sigma(i xi) = (2/pi) int_0^inf dw xi Re sigma(w) / (w^2 + xi^2).
///
/// Equivalent rotation written against the absorptive (real) part; unlike the
/// imaginary-part form it stays convergent when Re sigma tends to a nonzero
/// constant, which is what the step-like sheet conductivities below do.
pub fn imag_axis_from_absorptive<F>(re_sigma: F, xi: f64, spec: &QuadratureSpec) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    if !(xi.is_finite() && xi > 0.0) {
        return Err(Error::domain(format!(
            "imag_axis_from_absorptive requires xi > 0, got {xi:e}"
        )));
    }
    let xi2 = xi * xi;
    let r = integrate_semi_infinite(|w| xi * re_sigma(w) / (w * w + xi2), spec)?;
    Ok(r.value * std::f64::consts::FRAC_2_PI)
}
