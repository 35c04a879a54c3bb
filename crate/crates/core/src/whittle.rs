//! Local Whittle estimation of the Hurst parameter.

use std::f64::consts::PI;

use rustfft::num_complex::Complex;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const H_MIN: f64 = 0.01;
const H_MAX: f64 = 0.99;
const GRID_POINTS: usize = 199;
const GOLDEN_TOL: f64 = 1e-5;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WhittleEstimate {
    pub hurst: f64,
    pub m: usize,
    pub objective: f64,
}

/// `I(λ_j) = |Σ_t (X_t - X̄) e^{-itλ_j}|² / (2πn)` for `j = 1..=⌊n/2⌋`.
pub fn periodogram(values: &[f64]) -> Result<Vec<f64>> {
    let n = values.len();
    if n < 4 {
        return Err(Error::domain(format!("periodogram needs at least 4 observations, got {n}")));
    }
    if let Some(i) = values.iter().position(|v| !v.is_finite()) {
        return Err(Error::domain(format!("observation {} is not finite", i + 1)));
    }
    let mean = values.iter().sum::<f64>() / n as f64;
    let mut buf: Vec<Complex<f64>> = values.iter().map(|&v| Complex::new(v - mean, 0.0)).collect();
    FftPlanner::new().plan_fft_forward(n).process(&mut buf);
    let norm = 2.0 * PI * n as f64;
    Ok(buf[1..=n / 2].iter().map(|z| z.norm_sqr() / norm).collect())
}

/// `⌊n^{2/3}⌋`, the bandwidth used throughout.
pub fn default_bandwidth(n: usize) -> usize {
    let m = (n as f64).powf(2.0 / 3.0);
    // Guard perfect cubes such as 1000^{2/3} = 99.999…
    (m + 1e-9 * m).floor() as usize
}

struct Objective {
    log_lambda: Vec<f64>,
    scaled: Vec<f64>,
    mean_log_lambda: f64,
    log_scale: f64,
}

impl Objective {
    fn new(values: &[f64], m: usize) -> Result<Self> {
        let n = values.len();
        let pg = periodogram(values)?;
        let top = pg[..m].iter().copied().fold(0.0f64, f64::max);
        if top <= 0.0 {
            return Err(Error::Estimation(format!("the first {m} periodogram ordinates are all zero")));
        }
        // Dividing by the largest ordinate makes the argmin exactly invariant
        // to rescaling by powers of two.
        let scaled: Vec<f64> = pg[..m].iter().map(|v| v / top).collect();
        let log_lambda: Vec<f64> = (1..=m).map(|j| (2.0 * PI * j as f64 / n as f64).ln()).collect();
        let mean_log_lambda = log_lambda.iter().sum::<f64>() / m as f64;
        Ok(Self { log_lambda, scaled, mean_log_lambda, log_scale: top.ln() })
    }

    fn eval(&self, h: f64) -> f64 {
        let e = 2.0 * h - 1.0;
        let s: f64 = self
            .log_lambda
            .iter()
            .zip(&self.scaled)
            .map(|(l, i)| (e * l).exp() * i)
            .sum();
        (s / self.scaled.len() as f64).ln() - e * self.mean_log_lambda
    }
}

/// Minimizes `R(H) = log(m⁻¹ Σ λ_j^{2H-1} I(λ_j)) - (2H-1) m⁻¹ Σ log λ_j` over
/// `[0.01, 0.99]`: a grid scan locates the basin, golden-section search refines it.
pub fn local_whittle(values: &[f64], m: usize) -> Result<WhittleEstimate> {
    let n = values.len();
    if m < 2 || 2 * m >= n {
        return Err(Error::domain(format!("bandwidth m={m} must satisfy 2 <= m < n/2 (n={n})")));
    }
    let obj = Objective::new(values, m)?;
    let step = (H_MAX - H_MIN) / (GRID_POINTS - 1) as f64;
    let grid = |i: usize| H_MIN + step * i as f64;
    let mut best = (0usize, f64::INFINITY);
    for i in 0..GRID_POINTS {
        let v = obj.eval(grid(i));
        if v < best.1 {
            best = (i, v);
        }
    }
    let mut a = grid(best.0.saturating_sub(1));
    let mut b = grid((best.0 + 1).min(GRID_POINTS - 1));
    let ratio = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - ratio * (b - a);
    let mut d = a + ratio * (b - a);
    let (mut fc, mut fd) = (obj.eval(c), obj.eval(d));
    while b - a > GOLDEN_TOL {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - ratio * (b - a);
            fc = obj.eval(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + ratio * (b - a);
            fd = obj.eval(d);
        }
    }
    let mid = 0.5 * (a + b);
    let (mut hurst, mut value) = (mid, obj.eval(mid));
    if best.1 < value {
        hurst = grid(best.0);
        value = best.1;
    }
    Ok(WhittleEstimate { hurst, m, objective: value + obj.log_scale })
}

/// [`local_whittle`] with `m = ⌊n^{2/3}⌋`.
pub fn local_whittle_default(values: &[f64]) -> Result<WhittleEstimate> {
    local_whittle(values, default_bandwidth(values.len()))
}
