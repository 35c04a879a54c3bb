use serde::{Deserialize, Serialize};
use statrs::function::gamma::gamma;

use crate::error::{Error, Result};

/// Autocovariance of unit-variance fractional Gaussian noise at lag `k`.
pub fn fgn_covariance(hurst: f64, k: u64) -> Result<f64> {
    check_hurst(hurst)?;
    Ok(fgn_cov_unchecked(hurst, k))
}

pub(crate) fn fgn_cov_unchecked(hurst: f64, k: u64) -> f64 {
    if k == 0 {
        return 1.0;
    }
    let h2 = 2.0 * hurst;
    let k = k as f64;
    0.5 * ((k - 1.0).powf(h2) - 2.0 * k.powf(h2) + (k + 1.0).powf(h2))
}

/// Autocovariance of a Gaussian FARIMA(0, d, 0) process at lag `k`.
///
/// Lag zero is `sigma2 * Γ(1-2d) / Γ(1-d)^2`; further lags follow the ratio
/// recurrence `γ(k+1) = γ(k) (k+d) / (k+1-d)`, which never evaluates Γ at
/// large arguments.
pub fn farima_covariance(d: f64, sigma2: f64, k: u64) -> Result<f64> {
    check_farima(d, sigma2)?;
    let mut acc = farima_variance(d, sigma2);
    for j in 0..k {
        let j = j as f64;
        acc *= (j + d) / (j + 1.0 - d);
    }
    Ok(acc)
}

fn farima_variance(d: f64, sigma2: f64) -> f64 {
    let g = gamma(1.0 - d);
    sigma2 * gamma(1.0 - 2.0 * d) / (g * g)
}

fn check_hurst(hurst: f64) -> Result<()> {
    if hurst > 0.0 && hurst < 1.0 {
        Ok(())
    } else {
        Err(Error::domain(format!("Hurst parameter {hurst} outside (0, 1)")))
    }
}

fn check_farima(d: f64, sigma2: f64) -> Result<()> {
    if !(d > 0.0 && d < 0.5) {
        return Err(Error::domain(format!("FARIMA memory parameter {d} outside (0, 0.5)")));
    }
    if !(sigma2 > 0.0 && sigma2.is_finite()) {
        return Err(Error::domain(format!("innovation variance {sigma2} must be positive")));
    }
    Ok(())
}

/// The Gaussian process underlying a subordinated series.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum GaussianModel {
    /// Fractional Gaussian noise with unit variance.
    Fgn { hurst: f64 },
    /// FARIMA(0, d, 0) driven by Gaussian white noise of variance `sigma2`.
    Farima { d: f64, sigma2: f64 },
}

impl GaussianModel {
    pub fn fgn(hurst: f64) -> Result<Self> {
        check_hurst(hurst)?;
        Ok(GaussianModel::Fgn { hurst })
    }

    pub fn farima(d: f64, sigma2: f64) -> Result<Self> {
        check_farima(d, sigma2)?;
        Ok(GaussianModel::Farima { d, sigma2 })
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            GaussianModel::Fgn { hurst } => check_hurst(hurst),
            GaussianModel::Farima { d, sigma2 } => check_farima(d, sigma2),
        }
    }

    /// Decay exponent `D` of the covariances: `2 - 2H` or `1 - 2d`.
    pub fn memory_exponent(&self) -> f64 {
        match *self {
            GaussianModel::Fgn { hurst } => 2.0 - 2.0 * hurst,
            GaussianModel::Farima { d, .. } => 1.0 - 2.0 * d,
        }
    }

    /// Hurst index implied by the covariance decay (rank-one subordination).
    pub fn hurst(&self) -> f64 {
        1.0 - self.memory_exponent() / 2.0
    }

    /// Covariances at lags `0..n`.
    pub fn autocovariances(&self, n: usize) -> Result<Vec<f64>> {
        self.validate()?;
        Ok(match *self {
            GaussianModel::Fgn { hurst } => (0..n as u64).map(|k| fgn_cov_unchecked(hurst, k)).collect(),
            GaussianModel::Farima { d, sigma2 } => {
                let mut out = Vec::with_capacity(n);
                let mut acc = farima_variance(d, sigma2);
                for j in 0..n {
                    out.push(acc);
                    let j = j as f64;
                    acc *= (j + d) / (j + 1.0 - d);
                }
                out
            }
        })
    }

    pub fn describe(&self) -> String {
        match *self {
            GaussianModel::Fgn { hurst } => format!("fgn(H={hurst})"),
            GaussianModel::Farima { d, sigma2 } => format!("farima(d={d},sigma2={sigma2})"),
        }
    }
}
