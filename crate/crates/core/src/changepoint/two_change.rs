use serde::{Deserialize, Serialize};

use super::{check_finite, check_length, floor_fraction, Argmax, ChangePointConfig, TestStatistic, TieMode};
use crate::bridge::{BridgePath, ExactPath};
use crate::error::{Error, Result};

/// Normalization of the two terms of the two-change statistic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TwoChangeForm {
    /// Each term is the single-change statistic of its own subsample
    /// (`X_1..X_{k2}` split at `k1`, and `X_{k1+1}..X_n` split at `k2`),
    /// normalized by the subsample length.
    #[default]
    Subsample,
    /// Both terms normalized by `1/n`; the last segment of the second term
    /// is measured against the partial sums of the whole suffix `X_{k1+1}..X_n`.
    Display,
    /// Both terms normalized by `1/n`, every segment measured against its own
    /// bridge. This is the form whose limit is the simulated two-change
    /// functional, so it is the one to compare with tabulated critical values.
    Limit,
}

impl TwoChangeForm {
    fn normalizer(self, n: usize, sub: usize) -> f64 {
        match self {
            TwoChangeForm::Subsample => sub as f64,
            TwoChangeForm::Display | TwoChangeForm::Limit => n as f64,
        }
    }
}

/// Admissible pairs `(k1, k2)`: `lo ≤ k1 < k2 ≤ hi`, `k2 - k1 ≥ gap`.
#[derive(Debug, Clone, Copy)]
struct PairRegion {
    lo: usize,
    hi: usize,
    gap: usize,
}

impl PairRegion {
    fn new(n: usize, cfg: &ChangePointConfig) -> Result<Self> {
        let (lo, hi) = cfg.split_window(n)?;
        let gap = floor_fraction(n, cfg.epsilon).max(1);
        if lo + gap > hi {
            return Err(Error::config(format!(
                "no admissible change-point pair for n={n}, tau1={}, tau2={}, epsilon={}",
                cfg.tau1, cfg.tau2, cfg.epsilon
            )));
        }
        // A pair whose segments all have length one has a zero normalizer
        // whatever the data; such windows are too short for this statistic.
        if gap == 1 && (lo == 1 || hi + 1 >= n) {
            return Err(Error::config(format!(
                "n={n} is too short for the two-change statistic with tau1={}, tau2={}, epsilon={}",
                cfg.tau1, cfg.tau2, cfg.epsilon
            )));
        }
        Ok(Self { lo, hi, gap })
    }

    fn k1_max(&self) -> usize {
        self.hi - self.gap
    }

    fn row_len(&self, k1: usize) -> usize {
        self.hi - k1 - self.gap + 1
    }

    fn offsets(&self) -> (Vec<usize>, usize) {
        let mut offs = Vec::with_capacity(self.k1_max() - self.lo + 1);
        let mut total = 0;
        for k1 in self.lo..=self.k1_max() {
            offs.push(total);
            total += self.row_len(k1);
        }
        (offs, total)
    }
}

/// Inserts `x` into a rank vector of the current subsample, updating the
/// ranks of existing members in place; returns the doubled rank of `x`.
fn insert_rank(members: &[f64], ranks: &mut [i64], x: f64, tie_mode: TieMode) -> i64 {
    let mut less = 0i64;
    let mut equal = 0i64;
    for (r, &v) in ranks.iter_mut().zip(members) {
        if v < x {
            less += 1;
        } else if v == x {
            equal += 1;
            if tie_mode == TieMode::Midrank {
                *r += 1;
            }
        } else {
            *r += 2;
        }
    }
    match tie_mode {
        TieMode::Standard => 2 * (less + 1),
        TieMode::Midrank => 2 * less + equal + 1,
    }
}

fn term(gap: f64, ss_first: i128, ss_second: i128, denom_first: f64, denom_second: f64, norm: f64) -> Option<f64> {
    if ss_first == 0 && ss_second == 0 {
        return None;
    }
    let ss = ss_first as f64 / (denom_first * denom_first) + ss_second as f64 / (denom_second * denom_second);
    Some(gap.abs() / (ss / norm).sqrt())
}

/// `T_n(τ1, τ2, ε) = sup_{Ω_n} G_n(k1, k2)`.
///
/// For every `k2` the prefix ranks of `X_1..X_{k2}` are updated in place as
/// `X_{k2}` is appended, then every admissible `k1` is an O(1) query on the
/// prefix-sum path. A second pass grows the suffix `X_{k1+1}..X_n` from the
/// right. Total cost is O(n²) time and O(|Ω_n|) memory.
pub fn sn_wilcoxon_two_change(
    values: &[f64],
    config: &ChangePointConfig,
    form: TwoChangeForm,
) -> Result<TestStatistic> {
    config.validate_two_change()?;
    check_finite(values)?;
    let n = values.len();
    if n < 4 {
        return Err(Error::domain(format!("need at least 4 observations, got {n}")));
    }
    check_length(n)?;
    let region = PairRegion::new(n, config)?;
    let (offsets, total) = region.offsets();
    let mut first_terms = vec![0.0f64; total];
    let tie_mode = config.tie_mode;

    // Prefix pass: term for the subsample X_1..X_{k2} split at k1.
    let mut ranks: Vec<i64> = Vec::with_capacity(n);
    let mut path = ExactPath::default();
    for k2 in 1..=region.hi {
        let x = values[k2 - 1];
        let r = insert_rank(&values[..k2 - 1], &mut ranks, x, tie_mode);
        ranks.push(r);
        if k2 < region.lo + region.gap {
            continue;
        }
        path.rebuild(ranks.iter().copied(), k2 as i64 + 1);
        let norm = form.normalizer(n, k2);
        for k1 in region.lo..=k2 - region.gap {
            let gap = path.chord_gap(0, k1, k2);
            let left = path.chord_ss_scaled(0, k1, 0, k1);
            let right = path.chord_ss_scaled(k1, k2, k1, k2);
            let t = term(gap, left, right, k1 as f64, (k2 - k1) as f64, norm)
                .ok_or_else(|| Error::degenerate(format!("(k1={k1}, k2={k2}) in the first term")))?;
            first_terms[offsets[k1 - region.lo] + (k2 - k1 - region.gap)] = t;
        }
    }

    // Suffix pass: term for X_{k1+1}..X_n split at k2, in local coordinates.
    let mut best = (f64::NEG_INFINITY, 0usize, 0usize);
    let mut suffix_ranks: Vec<i64> = Vec::with_capacity(n);
    for start in (region.lo..n).rev() {
        // `suffix_ranks` holds the ranks of values[start+1..n] back to front.
        let x = values[start];
        let r = insert_rank_rev(&values[start + 1..], &mut suffix_ranks, x, tie_mode);
        suffix_ranks.push(r);
        let k1 = start;
        if k1 > region.k1_max() {
            continue;
        }
        let m = n - k1;
        path.rebuild(suffix_ranks.iter().rev().copied(), m as i64 + 1);
        let norm = form.normalizer(n, m);
        for k2 in k1 + region.gap..=region.hi {
            let j = k2 - k1;
            let gap = path.chord_gap(0, j, m);
            let left = path.chord_ss_scaled(0, j, 0, j);
            let t = match form {
                TwoChangeForm::Subsample | TwoChangeForm::Limit => {
                    let right = path.chord_ss_scaled(j, m, j, m);
                    term(gap, left, right, j as f64, (m - j) as f64, norm)
                }
                TwoChangeForm::Display => {
                    let right = path.chord_ss_scaled(0, m, j + 1, m);
                    term(gap, left, right, j as f64, m as f64, norm)
                }
            }
            .ok_or_else(|| Error::degenerate(format!("(k1={k1}, k2={k2}) in the second term")))?;
            let total = first_terms[offsets[k1 - region.lo] + (k2 - k1 - region.gap)] + t;
            if total > best.0 || (total == best.0 && (k1, k2) < (best.1, best.2)) {
                best = (total, k1, k2);
            }
        }
    }
    Ok(TestStatistic { value: best.0, argmax: Argmax::Pair(best.1, best.2), profile: None })
}

/// Like [`insert_rank`] for a suffix whose ranks are stored back to front.
fn insert_rank_rev(members: &[f64], ranks_rev: &mut [i64], x: f64, tie_mode: TieMode) -> i64 {
    let mut less = 0i64;
    let mut equal = 0i64;
    for (r, &v) in ranks_rev.iter_mut().rev().zip(members) {
        if v < x {
            less += 1;
        } else if v == x {
            equal += 1;
            if tie_mode == TieMode::Midrank {
                *r += 1;
            }
        } else {
            *r += 2;
        }
    }
    match tie_mode {
        TieMode::Standard => 2 * (less + 1),
        TieMode::Midrank => 2 * less + equal + 1,
    }
}
