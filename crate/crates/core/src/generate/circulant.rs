use std::sync::Arc;

use rand::Rng;
use rand_distr::StandardNormal;
use rustfft::num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use super::GaussianModel;
use crate::error::{Error, Result};
use crate::rng::replication_rng;
use crate::series::TimeSeries;

/// Relative tolerance below which negative circulant eigenvalues are treated as round-off.
const EIGEN_TOL: f64 = 1e-8;

/// Exact sampler for a stationary Gaussian vector of fixed length.
///
/// The covariance sequence `c_0..c_{n-1}` is embedded in the first row
/// `(c_0, …, c_{n-1}, c_{n-2}, …, c_1)` of a circulant of order `2(n-1)`.
/// Its eigenvalues are the FFT of that row; the real part of the FFT of
/// `sqrt(λ_j / m) (Z_j + i Z'_j)` then has covariance exactly `c`.
pub struct CirculantEmbedding {
    n: usize,
    variance: f64,
    scale: Vec<f64>,
    fft: Option<Arc<dyn Fft<f64>>>,
    clamped: usize,
}

impl CirculantEmbedding {
    pub fn new(model: &GaussianModel, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::domain("path length must be positive"));
        }
        let acv = model.autocovariances(n)?;
        Self::from_autocovariances(&acv)
    }

    pub fn from_autocovariances(acv: &[f64]) -> Result<Self> {
        let n = acv.len();
        if n == 0 {
            return Err(Error::domain("empty covariance sequence"));
        }
        if n <= 1 {
            return Ok(Self { n, variance: acv[0], scale: Vec::new(), fft: None, clamped: 0 });
        }
        let m = 2 * (n - 1);
        let mut row: Vec<Complex64> = Vec::with_capacity(m);
        row.extend(acv.iter().map(|&c| Complex64::new(c, 0.0)));
        row.extend(acv[1..n - 1].iter().rev().map(|&c| Complex64::new(c, 0.0)));
        let fft = FftPlanner::new().plan_fft_forward(m);
        fft.process(&mut row);

        let max_eig = row.iter().map(|z| z.re).fold(f64::NEG_INFINITY, f64::max);
        let tol = EIGEN_TOL * max_eig.abs();
        let mut clamped = 0;
        let mut scale = Vec::with_capacity(m);
        for z in &row {
            let mut eig = z.re;
            if eig < 0.0 {
                if eig < -tol {
                    return Err(Error::Embedding { eigenvalue: eig, tolerance: tol });
                }
                clamped += 1;
                eig = 0.0;
            }
            scale.push((eig / m as f64).sqrt());
        }
        Ok(Self { n, variance: acv[0], scale, fft: Some(fft), clamped })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Number of slightly negative eigenvalues that were set to zero.
    pub fn clamped_eigenvalues(&self) -> usize {
        self.clamped
    }

    /// Draws one path, consuming `2·2(n-1)` normals (one when `n == 1`).
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<f64> {
        let Some(fft) = &self.fft else {
            let z: f64 = rng.sample(StandardNormal);
            return vec![self.variance.sqrt() * z];
        };
        let mut buf: Vec<Complex64> = self
            .scale
            .iter()
            .map(|&s| {
                let re: f64 = rng.sample(StandardNormal);
                let im: f64 = rng.sample(StandardNormal);
                Complex64::new(s * re, s * im)
            })
            .collect();
        fft.process(&mut buf);
        buf.truncate(self.n);
        buf.into_iter().map(|z| z.re).collect()
    }
}

/// Exact draw of `(ξ_1, …, ξ_n)` for the model, reproducible from `seed`.
pub fn generate_gaussian_path(model: &GaussianModel, n: usize, seed: u64) -> Result<TimeSeries> {
    let embedding = CirculantEmbedding::new(model, n)?;
    let mut rng = replication_rng(seed, 0);
    let values = embedding.sample(&mut rng);
    Ok(TimeSeries::new(values)?.with_seed(seed).with_provenance(model.describe()))
}
