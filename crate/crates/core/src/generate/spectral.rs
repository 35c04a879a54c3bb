use std::f64::consts::PI;

use statrs::function::gamma::gamma;

use crate::error::{Error, Result};

/// Spectral density of unit-variance fractional Gaussian noise on `(0, π]`.
///
/// `f(λ) = C(H) (1 - cos λ) Σ_{|k| ≤ terms} |λ + 2kπ|^{-2H-1}` with
/// `C(H) = Γ(2H+1) sin(πH) / π`, which normalizes `∫_{-π}^{π} f = 1`.
pub fn fgn_spectral_density(hurst: f64, lambda: f64, terms: u32) -> Result<f64> {
    if !(hurst > 0.0 && hurst < 1.0) {
        return Err(Error::domain(format!("Hurst parameter {hurst} outside (0, 1)")));
    }
    if !(lambda > 0.0 && lambda <= PI) {
        return Err(Error::domain(format!("frequency {lambda} outside (0, π]")));
    }
    if terms == 0 {
        return Err(Error::domain("at least one aliasing term is required"));
    }
    let expo = -2.0 * hurst - 1.0;
    let mut series = lambda.powf(expo);
    for k in 1..=terms {
        let shift = 2.0 * PI * f64::from(k);
        series += (lambda + shift).abs().powf(expo) + (lambda - shift).abs().powf(expo);
    }
    let c = gamma(2.0 * hurst + 1.0) * (PI * hurst).sin() / PI;
    Ok(c * (1.0 - lambda.cos()) * series)
}
