//! Monte-Carlo critical values of the limit distributions (Hermite rank one,
//! i.e. functionals of fractional Brownian motion) and the tabulated
//! two-change critical values.

use std::io::{Read, Write};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bridge::{BridgePath, FloatPath};
use crate::changepoint::{floor_fraction, ChangePointConfig, TwoChangeForm};
use crate::error::{Error, Result};
use crate::generate::{CirculantEmbedding, GaussianModel};
use crate::rng::replication_rng;

/// Upper-tail levels reported in every table.
pub const LEVELS: [f64; 3] = [0.10, 0.05, 0.01];

/// `|∫ J_1 dF|` for continuous marginals.
pub const HERMITE_ONE_CONSTANT: f64 = 0.282_094_791_773_878_14; // 1 / (2√π)

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Provenance {
    EmbeddedTable1,
    Simulated,
}

impl Provenance {
    fn as_str(self) -> &'static str {
        match self {
            Provenance::EmbeddedTable1 => "EMBEDDED_TABLE1",
            Provenance::Simulated => "SIMULATED",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CriticalRow {
    pub hurst: f64,
    pub level: f64,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriticalValueTable {
    pub provenance: Provenance,
    /// Path grid size `M`.
    pub grid: Option<usize>,
    pub reps: Option<usize>,
    pub seed: Option<u64>,
    pub rows: Vec<CriticalRow>,
}

/// Result of an interpolated lookup.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Lookup {
    pub value: f64,
    /// The requested Hurst parameter lay outside the table and was clamped.
    pub clamped: bool,
}

#[derive(Serialize, Deserialize)]
struct CsvRow {
    hurst: f64,
    level: f64,
    value: f64,
    provenance: String,
    #[serde(rename = "M")]
    grid: Option<usize>,
    reps: Option<usize>,
    seed: Option<u64>,
}

impl CriticalValueTable {
    pub fn hursts(&self) -> Vec<f64> {
        let mut hs: Vec<f64> = self.rows.iter().map(|r| r.hurst).collect();
        hs.sort_by(f64::total_cmp);
        hs.dedup();
        hs
    }

    pub fn get(&self, hurst: f64, level: f64) -> Option<f64> {
        self.rows
            .iter()
            .find(|r| r.hurst == hurst && (r.level - level).abs() < 1e-12)
            .map(|r| r.value)
    }

    /// Linear interpolation in `H` at a tabulated level, clamping `H` to the table range.
    pub fn interpolate(&self, hurst: f64, level: f64) -> Result<Lookup> {
        if !hurst.is_finite() {
            return Err(Error::domain("Hurst parameter must be finite"));
        }
        let mut pts: Vec<(f64, f64)> = self
            .rows
            .iter()
            .filter(|r| (r.level - level).abs() < 1e-12)
            .map(|r| (r.hurst, r.value))
            .collect();
        if pts.is_empty() {
            return Err(Error::domain(format!("level {level} is not tabulated")));
        }
        pts.sort_by(|a, b| a.0.total_cmp(&b.0));
        let (first, last) = (pts[0], pts[pts.len() - 1]);
        if hurst <= first.0 {
            return Ok(Lookup { value: first.1, clamped: hurst < first.0 });
        }
        if hurst >= last.0 {
            return Ok(Lookup { value: last.1, clamped: hurst > last.0 });
        }
        let i = pts.partition_point(|p| p.0 <= hurst);
        let (lo, hi) = (pts[i - 1], pts[i]);
        let w = (hurst - lo.0) / (hi.0 - lo.0);
        Ok(Lookup { value: lo.1 + w * (hi.1 - lo.1), clamped: false })
    }

    /// `1% > 5% > 10%` within every row.
    pub fn is_ordered(&self) -> bool {
        self.hursts().into_iter().all(|h| {
            let v: Vec<Option<f64>> = LEVELS.iter().map(|&l| self.get(h, l)).collect();
            match (v[0], v[1], v[2]) {
                (Some(a), Some(b), Some(c)) => a < b && b < c,
                _ => true,
            }
        })
    }

    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut wr = csv::Writer::from_writer(w);
        for r in &self.rows {
            wr.serialize(CsvRow {
                hurst: r.hurst,
                level: r.level,
                value: r.value,
                provenance: self.provenance.as_str().into(),
                grid: self.grid,
                reps: self.reps,
                seed: self.seed,
            })
            .map_err(csv_error)?;
        }
        wr.flush()?;
        Ok(())
    }

    pub fn read_csv<R: Read>(r: R) -> Result<Self> {
        let mut rd = csv::Reader::from_reader(r);
        let mut table: Option<Self> = None;
        for (i, rec) in rd.deserialize::<CsvRow>().enumerate() {
            let row = rec.map_err(|e| Error::Parse { line: i + 2, message: e.to_string() })?;
            let provenance = match row.provenance.as_str() {
                "EMBEDDED_TABLE1" => Provenance::EmbeddedTable1,
                "SIMULATED" => Provenance::Simulated,
                other => {
                    return Err(Error::Parse { line: i + 2, message: format!("unknown provenance {other:?}") })
                }
            };
            let t = table.get_or_insert_with(|| Self {
                provenance,
                grid: row.grid,
                reps: row.reps,
                seed: row.seed,
                rows: Vec::new(),
            });
            t.rows.push(CriticalRow { hurst: row.hurst, level: row.level, value: row.value });
        }
        table.ok_or_else(|| Error::Parse { line: 1, message: "no rows".into() })
    }
}

fn csv_error(e: csv::Error) -> Error {
    Error::Io(std::io::Error::other(e.to_string()))
}

const TABLE1: [(f64, [f64; 3]); 6] = [
    (0.501, [17.79, 19.76, 24.13]),
    (0.6, [19.80, 22.38, 27.68]),
    (0.7, [22.08, 24.95, 30.46]),
    (0.8, [24.24, 27.61, 34.04]),
    (0.9, [26.50, 30.11, 37.78]),
    (0.999, [28.28, 32.32, 41.24]),
];

/// Published critical values of the two-change limit for `[τ1, τ2] = [0.15, 0.85]`, `ε = 0.15`.
pub fn table1() -> CriticalValueTable {
    let rows = TABLE1
        .iter()
        .flat_map(|&(hurst, vals)| {
            LEVELS.iter().zip(vals).map(move |(&level, value)| CriticalRow { hurst, level, value })
        })
        .collect();
    CriticalValueTable {
        provenance: Provenance::EmbeddedTable1,
        grid: Some(1000),
        reps: Some(10_000),
        seed: None,
        rows,
    }
}

/// Interpolated two-change critical value.
pub fn table1_lookup(hurst: f64, level: f64) -> Result<Lookup> {
    table1().interpolate(hurst, level)
}

/// Monte-Carlo settings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LimitSettings {
    /// Path grid size `M`.
    pub grid: usize,
    pub reps: usize,
    pub seed: u64,
}

impl Default for LimitSettings {
    fn default() -> Self {
        Self { grid: 1000, reps: 10_000, seed: 1 }
    }
}

/// A functional of a fractional Brownian motion path on `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum LimitFunctional {
    /// Limit of the self-normalized single-change statistic.
    Single { tau1: f64, tau2: f64 },
    /// Limit of the two-change statistic in the given finite-sample form.
    TwoChange { tau1: f64, tau2: f64, epsilon: f64, form: TwoChangeForm },
    /// `scale · sup |Z(λ) - λZ(1)|` for standard fBm `Z`; with
    /// `scale = 1/(2√π)` this is the limit of the classical Wilcoxon statistic.
    Classical { tau1: f64, tau2: f64, scale: f64 },
}

impl LimitFunctional {
    pub fn single(config: &ChangePointConfig) -> Self {
        LimitFunctional::Single { tau1: config.tau1, tau2: config.tau2 }
    }

    pub fn two_change(config: &ChangePointConfig, form: TwoChangeForm) -> Self {
        LimitFunctional::TwoChange { tau1: config.tau1, tau2: config.tau2, epsilon: config.epsilon, form }
    }

    pub fn classical(config: &ChangePointConfig) -> Self {
        LimitFunctional::Classical { tau1: config.tau1, tau2: config.tau2, scale: HERMITE_ONE_CONSTANT }
    }

    fn validate(&self) -> Result<()> {
        let cfg = |tau1, tau2, epsilon| ChangePointConfig { tau1, tau2, epsilon, ..Default::default() };
        match *self {
            LimitFunctional::Single { tau1, tau2 } => cfg(tau1, tau2, 0.15).validate(),
            LimitFunctional::TwoChange { tau1, tau2, epsilon, .. } => cfg(tau1, tau2, epsilon).validate_two_change(),
            LimitFunctional::Classical { tau1, tau2, scale } => {
                if !(scale > 0.0 && scale.is_finite()) {
                    return Err(Error::config(format!("scale {scale} must be positive")));
                }
                cfg(tau1, tau2, 0.15).validate()
            }
        }
    }

    /// Evaluates the functional on the grid path `Z(i/M)`, `i = 0..=M`.
    fn evaluate(&self, path: &FloatPath) -> f64 {
        let m = path.last();
        let mf = m as f64;
        let window = |tau1: f64, tau2: f64| (floor_fraction(m, tau1).max(1), floor_fraction(m, tau2).min(m - 1));
        match *self {
            LimitFunctional::Single { tau1, tau2 } => {
                let (lo, hi) = window(tau1, tau2);
                (lo..=hi)
                    .map(|k| {
                        let ss = (path.bridge_ss(0, k) + path.bridge_ss(k, m)) / mf;
                        path.chord_gap(0, k, m).abs() / ss.sqrt()
                    })
                    .fold(0.0, f64::max)
            }
            LimitFunctional::TwoChange { tau1, tau2, epsilon, form } => {
                let (lo, hi) = window(tau1, tau2);
                let gap = floor_fraction(m, epsilon).max(1);
                let mut best = 0.0f64;
                for k1 in lo..=hi.saturating_sub(gap) {
                    let left = path.bridge_ss(0, k1);
                    for k2 in k1 + gap..=hi {
                        let middle = path.bridge_ss(k1, k2);
                        let (n1, n2) = match form {
                            TwoChangeForm::Subsample => (k2 as f64, (m - k1) as f64),
                            TwoChangeForm::Display | TwoChangeForm::Limit => (mf, mf),
                        };
                        let right = match form {
                            TwoChangeForm::Display => path.chord_ss(k1, m, k2 + 1, m),
                            _ => path.bridge_ss(k2, m),
                        };
                        let t1 = path.chord_gap(0, k1, k2).abs() / ((left + middle) / n1).sqrt();
                        let t2 = path.chord_gap(k1, k2, m).abs() / ((middle + right) / n2).sqrt();
                        best = best.max(t1 + t2);
                    }
                }
                best
            }
            LimitFunctional::Classical { tau1, tau2, scale } => {
                let (lo, hi) = window(tau1, tau2);
                scale * (lo..=hi).map(|k| path.chord_gap(0, k, m).abs()).fold(0.0, f64::max)
            }
        }
    }
}

/// Sorted Monte-Carlo draws of `functional` under fBm with Hurst parameter `hurst`.
pub fn simulate_limit_draws(functional: &LimitFunctional, hurst: f64, settings: &LimitSettings) -> Result<Vec<f64>> {
    functional.validate()?;
    if settings.grid < 100 {
        return Err(Error::config(format!("grid size {} below 100", settings.grid)));
    }
    if settings.reps == 0 {
        return Err(Error::config("at least one replication is needed"));
    }
    let model = GaussianModel::fgn(hurst)?;
    let embedding = CirculantEmbedding::new(&model, settings.grid)?;
    // Standard fBm on the unit interval: Var Z(1) = 1.
    let scale = (settings.grid as f64).powf(-hurst);
    let mut draws: Vec<f64> = (0..settings.reps)
        .into_par_iter()
        .map(|rep| {
            let mut rng = replication_rng(settings.seed, rep as u64);
            let increments = embedding.sample(&mut rng);
            let mut levels = Vec::with_capacity(settings.grid + 1);
            let mut z = 0.0;
            levels.push(0.0);
            for x in increments {
                z += x;
                levels.push(z * scale);
            }
            functional.evaluate(&FloatPath::new(levels))
        })
        .collect();
    draws.sort_by(f64::total_cmp);
    Ok(draws)
}

/// Empirical upper-`level` quantile: smallest draw whose ECDF reaches `1 - level`.
pub fn upper_quantile(sorted: &[f64], level: f64) -> Result<f64> {
    if sorted.is_empty() {
        return Err(Error::Estimation("no draws".into()));
    }
    if !(level > 0.0 && level < 1.0) {
        return Err(Error::domain(format!("level {level} outside (0, 1)")));
    }
    let q = 1.0 - level;
    let idx = (q * sorted.len() as f64 - 1e-9).ceil().max(1.0) as usize;
    Ok(sorted[idx.min(sorted.len()) - 1])
}

/// Critical values at 10%, 5% and 1% for each Hurst parameter.
pub fn simulate_critical_values(
    functional: &LimitFunctional,
    hursts: &[f64],
    settings: &LimitSettings,
) -> Result<CriticalValueTable> {
    let mut rows = Vec::with_capacity(hursts.len() * LEVELS.len());
    for &h in hursts {
        let draws = simulate_limit_draws(functional, h, settings)?;
        for &level in &LEVELS {
            rows.push(CriticalRow { hurst: h, level, value: upper_quantile(&draws, level)? });
        }
    }
    Ok(CriticalValueTable {
        provenance: Provenance::Simulated,
        grid: Some(settings.grid),
        reps: Some(settings.reps),
        seed: Some(settings.seed),
        rows,
    })
}

pub fn simulate_sn_limit(hurst: f64, tau1: f64, tau2: f64, settings: &LimitSettings) -> Result<CriticalValueTable> {
    simulate_critical_values(&LimitFunctional::Single { tau1, tau2 }, &[hurst], settings)
}

/// Two-change limit in the form whose finite-sample counterpart is [`TwoChangeForm::Limit`].
pub fn simulate_two_change_limit(
    hurst: f64,
    tau1: f64,
    tau2: f64,
    epsilon: f64,
    settings: &LimitSettings,
) -> Result<CriticalValueTable> {
    let f = LimitFunctional::TwoChange { tau1, tau2, epsilon, form: TwoChangeForm::Limit };
    simulate_critical_values(&f, &[hurst], settings)
}

pub fn simulate_classical_limit(
    hurst: f64,
    tau1: f64,
    tau2: f64,
    scale: f64,
    settings: &LimitSettings,
) -> Result<CriticalValueTable> {
    simulate_critical_values(&LimitFunctional::Classical { tau1, tau2, scale }, &[hurst], settings)
}
