use super::fenwick::Fenwick;
use super::{check_finite, Argmax, ChangePointConfig, TestStatistic};
use crate::error::{Error, Result};

/// `C_k = Σ_{i≤k} Σ_{j>k} 1{X_i ≤ X_j}` for `k = 0..=n`.
///
/// Moving `X_k` from the right sample to the left one removes the pairs
/// `(i < k, k)` and adds the pairs `(k, j > k)`, so every step is two
/// order-statistic queries: O(n log n) in total.
pub fn wilcoxon_counts(values: &[f64]) -> Result<Vec<u64>> {
    check_finite(values)?;
    let n = values.len();
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    sorted.dedup();
    let code: Vec<usize> = values
        .iter()
        .map(|v| sorted.partition_point(|s| s < v))
        .collect();
    let mut all = Fenwick::new(sorted.len());
    for &c in &code {
        all.add(c, 1);
    }
    let mut left = Fenwick::new(sorted.len());
    let mut counts = Vec::with_capacity(n + 1);
    counts.push(0u64);
    let mut current = 0u64;
    for (k, &c) in code.iter().enumerate() {
        // Left elements at or below X_k.
        let lost = left.prefix(c);
        // Right elements (excluding X_k itself) at or above X_k.
        let right_below = all.prefix_before(c) - left.prefix_before(c);
        let right_total = (n - k) as u64;
        let gained = right_total - right_below - 1;
        current = current + gained - lost;
        left.add(c, 1);
        counts.push(current);
    }
    Ok(counts)
}

/// `max_k |C_k - k(n-k)/2| / n^{1+Ĥ}` over the split window.
pub fn classical_wilcoxon_stat(
    values: &[f64],
    hurst: f64,
    config: &ChangePointConfig,
) -> Result<TestStatistic> {
    config.validate()?;
    if !(hurst > 0.0 && hurst < 1.0) {
        return Err(Error::domain(format!("Hurst estimate {hurst} outside (0, 1)")));
    }
    let n = values.len();
    if n < 4 {
        return Err(Error::domain(format!("need at least 4 observations, got {n}")));
    }
    let counts = wilcoxon_counts(values)?;
    let (lo, hi) = config.split_window(n)?;
    let scale = n as f64 * (n as f64).powf(hurst);
    let mut profile = Vec::with_capacity(hi - lo + 1);
    let mut best = (lo, f64::NEG_INFINITY);
    for k in lo..=hi {
        // 2 C_k - k(n-k) is an exact integer.
        let centered = 2 * counts[k] as i128 - (k * (n - k)) as i128;
        let v = centered as f64 / 2.0 / scale;
        if v.abs() > best.1 {
            best = (k, v.abs());
        }
        profile.push(v);
    }
    Ok(TestStatistic { value: best.1, argmax: Argmax::Single(best.0), profile: Some(profile) })
}
