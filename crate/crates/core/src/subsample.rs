//! Sampling-window (subsampling) estimation of a statistic's distribution.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::changepoint::{
    classical_wilcoxon_stat, sn_wilcoxon_stat, sn_wilcoxon_two_change, ChangePointConfig, TestStatistic, TieMode,
    TwoChangeForm,
};
use crate::error::{Error, Result};
use crate::whittle::local_whittle_default;

/// How the block length is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BlockRule {
    /// `l = ⌊n^γ⌋`.
    Gamma(f64),
    Fixed(usize),
}

impl Default for BlockRule {
    fn default() -> Self {
        BlockRule::Gamma(0.4)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockLength {
    pub l: usize,
    /// Set when `γ ≥ (1 + D̂)/2`, i.e. blocks grow faster than the theory allows.
    pub growth_warning: bool,
}

/// Block length for a sample of size `n`, clamped to `[2, n-2]` for the γ rule.
///
/// `d_hint` is an estimate of the memory exponent `D = 2 - 2H`.
pub fn block_length(n: usize, rule: BlockRule, d_hint: Option<f64>) -> Result<BlockLength> {
    if n < 4 {
        return Err(Error::domain(format!("subsampling needs at least 4 observations, got {n}")));
    }
    match rule {
        BlockRule::Fixed(l) => {
            if l < 2 || l > n - 2 {
                return Err(Error::config(format!("block length {l} outside [2, {}]", n - 2)));
            }
            let gamma = (l as f64).ln() / (n as f64).ln();
            Ok(BlockLength { l, growth_warning: violates_growth(gamma, d_hint) })
        }
        BlockRule::Gamma(gamma) => {
            if !(gamma > 0.0 && gamma < 1.0) {
                return Err(Error::config(format!("block exponent {gamma} outside (0, 1)")));
            }
            let raw = (n as f64).powf(gamma);
            let l = ((raw + 1e-9 * raw).floor() as usize).clamp(2, n - 2);
            Ok(BlockLength { l, growth_warning: violates_growth(gamma, d_hint) })
        }
    }
}

fn violates_growth(gamma: f64, d_hint: Option<f64>) -> bool {
    d_hint.is_some_and(|d| gamma >= (1.0 + d) / 2.0)
}

/// Window statistics `T_l(X_i, …, X_{i+l-1})`, sorted.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SubsampleDistribution {
    stats: Vec<f64>,
    pub l: usize,
    pub n: usize,
    /// Windows whose statistic was undefined.
    pub dropped: usize,
}

impl SubsampleDistribution {
    pub fn stats(&self) -> &[f64] {
        &self.stats
    }

    pub fn len(&self) -> usize {
        self.stats.len()
    }

    pub fn is_empty(&self) -> bool {
        self.stats.is_empty()
    }

    /// `F̂(t)`: fraction of stored statistics `≤ t`.
    pub fn ecdf(&self, t: f64) -> f64 {
        self.stats.partition_point(|&s| s <= t) as f64 / self.stats.len() as f64
    }

    /// Smallest stored value `t` with `F̂(t) ≥ q`.
    pub fn quantile(&self, q: f64) -> Result<f64> {
        if !(q > 0.0 && q < 1.0) {
            return Err(Error::domain(format!("quantile level {q} outside (0, 1)")));
        }
        let count = self.stats.len();
        let needed = (q * count as f64 - 1e-9).ceil().max(1.0) as usize;
        Ok(self.stats[needed.min(count) - 1])
    }

    /// Fraction of window statistics at or above `value`.
    pub fn exceedance(&self, value: f64) -> f64 {
        let below = self.stats.partition_point(|&s| s < value);
        (self.stats.len() - below) as f64 / self.stats.len() as f64
    }
}

/// Evaluates `stat` on every window of length `l`. Degenerate windows are
/// dropped and counted; other errors abort. Results do not depend on the
/// parallel schedule.
pub fn subsample_distribution<F>(values: &[f64], l: usize, stat: F) -> Result<SubsampleDistribution>
where
    F: Fn(&[f64]) -> Result<f64> + Sync,
{
    let n = values.len();
    if l < 2 || l >= n {
        return Err(Error::config(format!("block length {l} outside [2, {}]", n.saturating_sub(1))));
    }
    let outcomes: Vec<Result<f64>> = values.par_windows(l).map(&stat).collect();
    let mut stats = Vec::with_capacity(outcomes.len());
    let mut dropped = 0;
    for outcome in outcomes {
        match outcome {
            Ok(v) => stats.push(v),
            Err(e) if e.is_degenerate() => dropped += 1,
            Err(e) => return Err(e),
        }
    }
    if stats.is_empty() {
        return Err(Error::Estimation(format!("all {dropped} subsample windows are degenerate")));
    }
    stats.sort_by(f64::total_cmp);
    Ok(SubsampleDistribution { stats, l, n, dropped })
}

/// Which change-point statistic a test uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    #[default]
    Single,
    SingleMidrank,
    TwoChange,
    /// Wilcoxon statistic normalized by `n^{1+Ĥ}`; subsample windows reuse
    /// the full-sample Hurst estimate.
    Classical,
}

impl Variant {
    pub fn min_len(self) -> usize {
        4
    }
}

/// A change-point statistic ready for evaluation on any window.
#[derive(Debug, Clone, Copy)]
pub struct StatSpec {
    pub variant: Variant,
    pub config: ChangePointConfig,
    pub form: TwoChangeForm,
    /// Hurst estimate for [`Variant::Classical`].
    pub hurst: Option<f64>,
}

impl StatSpec {
    pub fn new(variant: Variant, config: ChangePointConfig) -> Self {
        Self { variant, config, form: TwoChangeForm::default(), hurst: None }
    }

    pub fn with_form(mut self, form: TwoChangeForm) -> Self {
        self.form = form;
        self
    }

    pub fn with_hurst(mut self, hurst: f64) -> Self {
        self.hurst = Some(hurst);
        self
    }

    pub fn evaluate(&self, values: &[f64]) -> Result<TestStatistic> {
        match self.variant {
            Variant::Single => sn_wilcoxon_stat(values, &ChangePointConfig { tie_mode: TieMode::Standard, ..self.config }),
            Variant::SingleMidrank => {
                sn_wilcoxon_stat(values, &ChangePointConfig { tie_mode: TieMode::Midrank, ..self.config })
            }
            Variant::TwoChange => sn_wilcoxon_two_change(values, &self.config, self.form),
            Variant::Classical => {
                let h = self
                    .hurst
                    .ok_or_else(|| Error::config("the classical statistic needs a Hurst estimate"))?;
                classical_wilcoxon_stat(values, h, &self.config)
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Calibration {
    Subsampling,
    AsymptoticTable,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Decision {
    Reject,
    Retain,
}

impl Decision {
    pub fn from_threshold(value: f64, threshold: f64) -> Self {
        if value > threshold {
            Decision::Reject
        } else {
            Decision::Retain
        }
    }

    pub fn rejects(self) -> bool {
        self == Decision::Reject
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TestReport {
    pub statistic: TestStatistic,
    pub threshold: f64,
    pub level: f64,
    pub decision: Decision,
    pub calibration: Calibration,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub block_length: Option<usize>,
    pub dropped_windows: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p_proxy: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hurst_estimate: Option<f64>,
    /// Set when the block length outgrows the memory-dependent bound.
    pub growth_warning: bool,
}

/// Compares the full-sample statistic with the `1 - α` quantile of its
/// sampling-window distribution.
pub fn subsampling_test(
    values: &[f64],
    config: &ChangePointConfig,
    rule: BlockRule,
    variant: Variant,
) -> Result<TestReport> {
    subsampling_test_with(values, StatSpec::new(variant, *config), rule)
}

/// [`subsampling_test`] with full control over the statistic.
pub fn subsampling_test_with(values: &[f64], mut spec: StatSpec, rule: BlockRule) -> Result<TestReport> {
    spec.config.validate()?;
    let n = values.len();
    if n < spec.variant.min_len() {
        return Err(Error::domain(format!("need at least 4 observations, got {n}")));
    }
    // The Hurst estimate only feeds the growth warning, except for the
    // classical statistic where it is part of the normalization.
    let hurst = match spec.hurst {
        Some(h) => Some(h),
        None => local_whittle_default(values).ok().map(|e| e.hurst),
    };
    if spec.variant == Variant::Classical {
        let h = hurst.ok_or_else(|| Error::Estimation("could not estimate the Hurst parameter".into()))?;
        spec.hurst = Some(h.clamp(0.01, 0.99));
    }
    let d_hint = hurst.map(|h| (2.0 - 2.0 * h).clamp(0.0, 1.0));
    let block = block_length(n, rule, d_hint)?;
    let statistic = spec.evaluate(values)?;
    let dist = subsample_distribution(values, block.l, |w| spec.evaluate(w).map(|s| s.value))?;
    let threshold = dist.quantile(1.0 - spec.config.alpha)?;
    Ok(TestReport {
        decision: Decision::from_threshold(statistic.value, threshold),
        p_proxy: Some(dist.exceedance(statistic.value)),
        statistic,
        threshold,
        level: spec.config.alpha,
        calibration: Calibration::Subsampling,
        block_length: Some(block.l),
        dropped_windows: dist.dropped,
        hurst_estimate: hurst,
        growth_warning: block.growth_warning,
    })
}
