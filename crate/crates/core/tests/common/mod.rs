//! Literal evaluations of the statistics, written straight from their
//! definitions with no algebraic shortcuts. Quadratic or worse; test use only.
#![allow(dead_code)]

use lrdcp::TwoChangeForm;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `R_i = Σ_j 1{X_j ≤ X_i}` over `values`.
pub fn ranks_le(values: &[f64]) -> Vec<f64> {
    values
        .iter()
        .map(|&xi| values.iter().filter(|&&xj| xj <= xi).count() as f64)
        .collect()
}

/// `1 + #{j: X_j < X_i}`.
pub fn ranks_min(values: &[f64]) -> Vec<f64> {
    values
        .iter()
        .map(|&xi| 1.0 + values.iter().filter(|&&xj| xj < xi).count() as f64)
        .collect()
}

/// `#{j: X_j < X_i} + #{j: X_j = X_i} / 2`.
pub fn midranks(values: &[f64]) -> Vec<f64> {
    values
        .iter()
        .map(|&xi| {
            let less = values.iter().filter(|&&xj| xj < xi).count() as f64;
            let eq = values.iter().filter(|&&xj| xj == xi).count() as f64;
            less + eq / 2.0
        })
        .collect()
}

/// `Σ_{t=from}^{to} S_t(j, k)²` with `S_t(j, k) = Σ_{h=j}^{t} (R_h - R̄_{j,k})`, 1-based.
pub fn sum_s_squared(r: &[f64], j: usize, k: usize, from: usize, to: usize) -> f64 {
    let mean = (j..=k).map(|h| r[h - 1]).sum::<f64>() / (k - j + 1) as f64;
    (from..=to)
        .map(|t| {
            let s: f64 = (j..=t).map(|h| r[h - 1] - mean).sum();
            s * s
        })
        .sum()
}

/// `G_n(k)` for `k = lo..=hi`, given ranks.
pub fn profile(r: &[f64], lo: usize, hi: usize) -> Vec<f64> {
    let n = r.len();
    (lo..=hi)
        .map(|k| {
            let total: f64 = r.iter().sum();
            let num: f64 = r[..k].iter().sum::<f64>() - k as f64 / n as f64 * total;
            let den = (sum_s_squared(r, 1, k, 1, k) + sum_s_squared(r, k + 1, n, k + 1, n)) / n as f64;
            num / den.sqrt()
        })
        .collect()
}

pub fn window(n: usize, tau1: f64, tau2: f64) -> (usize, usize) {
    let lo = lrdcp::changepoint::floor_fraction(n, tau1).max(1);
    let hi = lrdcp::changepoint::floor_fraction(n, tau2).min(n - 1);
    (lo, hi)
}

/// `G_n(k1, k2)` in the requested form.
pub fn two_change_value(x: &[f64], k1: usize, k2: usize, form: TwoChangeForm) -> f64 {
    let n = x.len();
    let r1 = ranks_le(&x[..k2]);
    let r2 = ranks_le(&x[k1..]);
    let (norm1, norm2) = match form {
        TwoChangeForm::Subsample => (k2 as f64, (n - k1) as f64),
        _ => (n as f64, n as f64),
    };
    let num1 = r1[..k1].iter().sum::<f64>() - k1 as f64 / k2 as f64 * r1.iter().sum::<f64>();
    let den1 = (sum_s_squared(&r1, 1, k1, 1, k1) + sum_s_squared(&r1, k1 + 1, k2, k1 + 1, k2)) / norm1;
    // r2 is indexed from observation k1 + 1; shift indices accordingly.
    let m = n - k1;
    let j = k2 - k1;
    let num2 = r2[..j].iter().sum::<f64>() - j as f64 / m as f64 * r2.iter().sum::<f64>();
    let right = match form {
        TwoChangeForm::Display => sum_s_squared(&r2, 1, m, j + 1, m),
        _ => sum_s_squared(&r2, j + 1, m, j + 1, m),
    };
    let den2 = (sum_s_squared(&r2, 1, j, 1, j) + right) / norm2;
    num1.abs() / den1.sqrt() + num2.abs() / den2.sqrt()
}

/// `(sup, argmax)` over `Ω_n`.
pub fn two_change(x: &[f64], tau1: f64, tau2: f64, eps: f64, form: TwoChangeForm) -> (f64, (usize, usize)) {
    let n = x.len();
    let (lo, hi) = window(n, tau1, tau2);
    let gap = lrdcp::changepoint::floor_fraction(n, eps).max(1);
    let mut best = (f64::NEG_INFINITY, (0, 0));
    for k1 in lo..=hi {
        for k2 in (k1 + gap)..=hi {
            let v = two_change_value(x, k1, k2, form);
            if v > best.0 {
                best = (v, (k1, k2));
            }
        }
    }
    best
}

/// `Σ_{i≤k} Σ_{j>k} (1{X_i ≤ X_j} - 1/2)`.
pub fn wilcoxon_centered(x: &[f64], k: usize) -> f64 {
    let mut s = 0.0;
    for i in 0..k {
        for j in k..x.len() {
            s += if x[i] <= x[j] { 0.5 } else { -0.5 };
        }
    }
    s
}

pub fn classical(x: &[f64], hurst: f64, tau1: f64, tau2: f64) -> f64 {
    let n = x.len();
    let (lo, hi) = window(n, tau1, tau2);
    let d = (n as f64).powf(hurst);
    (lo..=hi)
        .map(|k| wilcoxon_centered(x, k).abs() / (n as f64 * d))
        .fold(0.0, f64::max)
}

pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1e-300)
}

pub fn random_series(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.random::<f64>() * 10.0 - 5.0).collect()
}

/// Integer-valued series with many ties.
pub fn tied_series(rng: &mut ChaCha8Rng, n: usize, levels: i32) -> Vec<f64> {
    (0..n).map(|_| f64::from(rng.random_range(0..levels))).collect()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Data directory for the published example series.
pub fn data_dir() -> std::path::PathBuf {
    match std::env::var("LRDCP_DATA_DIR") {
        Ok(d) => d.into(),
        Err(_) => std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data"),
    }
}
