use serde::{Deserialize, Serialize};

use super::ranks::doubled_ranks;
use super::{check_finite, check_length, Argmax, ChangePointConfig, RankVector, TestStatistic};
use crate::bridge::{BridgePath, ExactPath};
use crate::error::{Error, Result};

/// Signed values `G_n(k)` for `k = first, first + 1, …`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WilcoxonProfile {
    pub first: usize,
    pub values: Vec<f64>,
}

/// Self-normalized rank CUSUM `G_n(k)` over the admissible split window.
///
/// With rank partial sums `P_t`, the numerator is the gap of `P_k` from the
/// chord `(k/n) P_n`, and each normalizing sum `Σ_t S_t²` is the squared
/// deviation of `P` from the chord of its own segment. Both are O(1) per `k`
/// after O(n) prefix sums, and are evaluated in exact integer arithmetic.
pub fn sn_wilcoxon_profile(ranks: &RankVector, tau1: f64, tau2: f64) -> Result<WilcoxonProfile> {
    let cfg = ChangePointConfig { tau1, tau2, ..Default::default() };
    cfg.validate()?;
    let n = ranks.len();
    check_length(n)?;
    let (lo, hi) = cfg.split_window(n)?;
    let path = ExactPath::from_steps(ranks.doubled(), n as i64 + 1);
    profile_on_path(&path, n, lo, hi)
}

pub(crate) fn profile_on_path(path: &ExactPath, n: usize, lo: usize, hi: usize) -> Result<WilcoxonProfile> {
    let mut values = Vec::with_capacity(hi - lo + 1);
    for k in lo..=hi {
        let left = path.chord_ss_scaled(0, k, 0, k);
        let right = path.chord_ss_scaled(k, n, k, n);
        if left == 0 && right == 0 {
            return Err(Error::degenerate(format!("k={k}")));
        }
        let denom = (path.bridge_ss(0, k) + path.bridge_ss(k, n)) / n as f64;
        values.push(path.chord_gap(0, k, n) / denom.sqrt());
    }
    Ok(WilcoxonProfile { first: lo, values })
}

/// `T_n(τ1, τ2) = max_k |G_n(k)|`, on ranks or midranks per `config.tie_mode`.
pub fn sn_wilcoxon_stat(values: &[f64], config: &ChangePointConfig) -> Result<TestStatistic> {
    config.validate()?;
    check_finite(values)?;
    let n = values.len();
    if n < 4 {
        return Err(Error::domain(format!("need at least 4 observations, got {n}")));
    }
    check_length(n)?;
    let (lo, hi) = config.split_window(n)?;
    let path = ExactPath::from_steps(&doubled_ranks(values, config.tie_mode), n as i64 + 1);
    let profile = profile_on_path(&path, n, lo, hi)?;
    Ok(max_abs(profile))
}

pub(crate) fn max_abs(profile: WilcoxonProfile) -> TestStatistic {
    let mut best = (0usize, f64::NEG_INFINITY);
    for (i, v) in profile.values.iter().enumerate() {
        if v.abs() > best.1 {
            best = (i, v.abs());
        }
    }
    TestStatistic {
        value: best.1,
        argmax: Argmax::Single(profile.first + best.0),
        profile: Some(profile.values),
    }
}
