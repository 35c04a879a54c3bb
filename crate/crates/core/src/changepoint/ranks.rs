use serde::{Deserialize, Serialize};

use super::{check_finite, TieMode};
use crate::error::Result;

/// Ranks of a sample, stored doubled so midranks stay integral.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankVector {
    doubled: Vec<i64>,
    tie_mode: TieMode,
}

impl RankVector {
    pub fn tie_mode(&self) -> TieMode {
        self.tie_mode
    }

    pub fn len(&self) -> usize {
        self.doubled.len()
    }

    pub fn is_empty(&self) -> bool {
        self.doubled.is_empty()
    }

    pub fn get(&self, i: usize) -> f64 {
        self.doubled[i] as f64 / 2.0
    }

    pub fn to_vec(&self) -> Vec<f64> {
        self.doubled.iter().map(|&d| d as f64 / 2.0).collect()
    }

    pub fn sum(&self) -> f64 {
        self.doubled.iter().sum::<i64>() as f64 / 2.0
    }

    pub(crate) fn doubled(&self) -> &[i64] {
        &self.doubled
    }
}

/// Ranks in O(n log n) by sorting.
pub fn compute_ranks(values: &[f64], tie_mode: TieMode) -> Result<RankVector> {
    check_finite(values)?;
    Ok(RankVector { doubled: doubled_ranks(values, tie_mode), tie_mode })
}

pub(crate) fn doubled_ranks(values: &[f64], tie_mode: TieMode) -> Vec<i64> {
    let n = values.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut out = vec![0i64; n];
    let mut start = 0;
    while start < n {
        let v = values[order[start]];
        let mut end = start + 1;
        while end < n && values[order[end]] == v {
            end += 1;
        }
        let rank = match tie_mode {
            TieMode::Standard => 2 * (start as i64 + 1),
            TieMode::Midrank => 2 * start as i64 + (end - start) as i64,
        };
        for &i in &order[start..end] {
            out[i] = rank;
        }
        start = end;
    }
    out
}
