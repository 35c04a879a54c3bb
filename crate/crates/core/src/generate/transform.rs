use std::f64::consts::SQRT_2;

use serde::{Deserialize, Serialize};
use statrs::function::erf::erfc;

use crate::error::{Error, Result};
use crate::series::TimeSeries;

/// Pointwise marginal transform applied to a Gaussian path.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum TransformSpec {
    Identity,
    /// Centered, unit-variance Pareto(beta, scale_k) marginals.
    Pareto { beta: f64, scale_k: f64 },
}

impl TransformSpec {
    pub fn pareto(beta: f64, scale_k: f64) -> Result<Self> {
        let t = TransformSpec::Pareto { beta, scale_k };
        t.validate()?;
        Ok(t)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            TransformSpec::Identity => Ok(()),
            TransformSpec::Pareto { beta, scale_k } => {
                if !(beta > 2.0 && beta.is_finite()) {
                    return Err(Error::domain(format!("Pareto shape {beta} must exceed 2")));
                }
                if !(scale_k > 0.0 && scale_k.is_finite()) {
                    return Err(Error::domain(format!("Pareto scale {scale_k} must be positive")));
                }
                Ok(())
            }
        }
    }

    /// Image of one Gaussian value.
    pub fn apply_one(&self, x: f64) -> f64 {
        match *self {
            TransformSpec::Identity => x,
            TransformSpec::Pareto { beta, scale_k } => {
                let sd = (beta * scale_k * scale_k / ((beta - 1.0).powi(2) * (beta - 2.0))).sqrt();
                let mean = beta * scale_k / (beta - 1.0);
                (scale_k * standard_normal_cdf(x).powf(-1.0 / beta) - mean) / sd
            }
        }
    }
}

/// `Φ(x) = erfc(-x/√2) / 2`.
pub fn standard_normal_cdf(x: f64) -> f64 {
    0.5 * erfc(-x / SQRT_2)
}

pub fn apply_transform(series: &TimeSeries, t: &TransformSpec) -> Result<TimeSeries> {
    t.validate()?;
    if matches!(t, TransformSpec::Identity) {
        return Ok(series.clone());
    }
    series.map_values(series.values().iter().map(|&x| t.apply_one(x)).collect())
}

/// Adds `h` to every observation with (1-based) index greater than `⌊n·tau⌋`.
pub fn apply_mean_shift(series: &TimeSeries, h: f64, tau: f64) -> Result<TimeSeries> {
    if !(tau > 0.0 && tau < 1.0) {
        return Err(Error::domain(format!("shift location {tau} outside (0, 1)")));
    }
    if !h.is_finite() {
        return Err(Error::domain("shift height must be finite"));
    }
    if h == 0.0 {
        return Ok(series.clone());
    }
    let mut values = series.values().to_vec();
    shift_in_place(&mut values, h, tau);
    series.map_values(values)
}

pub(crate) fn shift_in_place(values: &mut [f64], h: f64, tau: f64) {
    let start = crate::changepoint::floor_fraction(values.len(), tau);
    for v in values.iter_mut().skip(start) {
        *v += h;
    }
}
