//! Rank-based change-point statistics.
//!
//! * [`sn_wilcoxon_stat`]: self-normalized Wilcoxon statistic for a single
//!   change in location, optionally on midranks.
//! * [`sn_wilcoxon_two_change`]: its extension to two change points.
//! * [`classical_wilcoxon_stat`]: the Wilcoxon-type statistic normalized by
//!   `n^{1+Ĥ}` instead of self-normalization.

mod classical;
mod fenwick;
mod ranks;
mod single;
mod two_change;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use classical::{classical_wilcoxon_stat, wilcoxon_counts};
pub use fenwick::Fenwick;
pub use ranks::{compute_ranks, RankVector};
pub use single::{sn_wilcoxon_profile, sn_wilcoxon_stat, WilcoxonProfile};
pub use two_change::{sn_wilcoxon_two_change, TwoChangeForm};

/// How tied observations are ranked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TieMode {
    /// `1 + #{j: X_j < X_i}`; ties share the smallest rank of their group.
    #[default]
    Standard,
    /// `#{j: X_j < X_i} + #{j: X_j = X_i} / 2`.
    Midrank,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChangePointConfig {
    pub tau1: f64,
    pub tau2: f64,
    /// Minimal separation of the two candidate change points (two-change test only).
    pub epsilon: f64,
    pub tie_mode: TieMode,
    pub alpha: f64,
}

impl Default for ChangePointConfig {
    fn default() -> Self {
        Self { tau1: 0.15, tau2: 0.85, epsilon: 0.15, tie_mode: TieMode::Standard, alpha: 0.05 }
    }
}

impl ChangePointConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.tau1 > 0.0 && self.tau1 < self.tau2 && self.tau2 < 1.0) {
            return Err(Error::config(format!(
                "need 0 < tau1 < tau2 < 1, got tau1={} tau2={}",
                self.tau1, self.tau2
            )));
        }
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(Error::config(format!("level {} outside (0, 1)", self.alpha)));
        }
        Ok(())
    }

    pub fn validate_two_change(&self) -> Result<()> {
        self.validate()?;
        if !(self.epsilon > 0.0 && self.epsilon < self.tau2 - self.tau1) {
            return Err(Error::config(format!(
                "need 0 < epsilon < tau2 - tau1, got epsilon={}",
                self.epsilon
            )));
        }
        Ok(())
    }

    /// Admissible split indices `[max(⌊nτ1⌋, 1), min(⌊nτ2⌋, n-1)]`.
    pub fn split_window(&self, n: usize) -> Result<(usize, usize)> {
        let lo = floor_fraction(n, self.tau1).max(1);
        let hi = floor_fraction(n, self.tau2).min(n.saturating_sub(1));
        if n < 2 || lo > hi {
            return Err(Error::config(format!(
                "empty split window for n={n}, tau1={}, tau2={}",
                self.tau1, self.tau2
            )));
        }
        Ok((lo, hi))
    }
}

/// `⌊n·x⌋`, robust to products that land a hair below an integer.
pub fn floor_fraction(n: usize, x: f64) -> usize {
    let v = n as f64 * x;
    (v + 1e-9 * v.abs().max(1.0)).floor().max(0.0) as usize
}

/// Location of the maximizing split(s).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Argmax {
    Single(usize),
    Pair(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TestStatistic {
    pub value: f64,
    pub argmax: Argmax,
    /// Per-split values for single-change statistics, starting at the first admissible split.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub profile: Option<Vec<f64>>,
}

pub(crate) fn check_finite(values: &[f64]) -> Result<()> {
    match values.iter().position(|v| !v.is_finite()) {
        Some(i) => Err(Error::domain(format!("observation {} is not finite", i + 1))),
        None => Ok(()),
    }
}

pub(crate) fn check_length(n: usize) -> Result<()> {
    if n > crate::bridge::ExactPath::MAX_STEPS {
        return Err(Error::domain(format!(
            "series of length {n} exceeds the supported maximum {}",
            crate::bridge::ExactPath::MAX_STEPS
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn window_is_clamped() {
        let cfg = ChangePointConfig::default();
        assert_eq!(cfg.split_window(100).unwrap(), (15, 85));
        assert_eq!(cfg.split_window(4).unwrap(), (1, 3));
        assert!(cfg.split_window(1).is_err());
    }

    #[test]
    fn floor_fraction_survives_round_off() {
        assert_eq!(floor_fraction(100, 0.29), 29);
        assert_eq!(floor_fraction(8, 0.25), 2);
        assert_eq!(floor_fraction(10, 0.15), 1);
    }

    #[test]
    fn config_validation() {
        let mut cfg = ChangePointConfig::default();
        assert!(cfg.validate_two_change().is_ok());
        cfg.epsilon = 0.8;
        assert!(cfg.validate_two_change().is_err());
        cfg = ChangePointConfig { tau1: 0.6, tau2: 0.4, ..Default::default() };
        assert!(cfg.validate().is_err());
    }
}
