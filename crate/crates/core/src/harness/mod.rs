//! Rejection-rate experiments and reproduction of the published tables.

mod published;

use std::fmt::Write as _;
use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::changepoint::{
    classical_wilcoxon_stat, sn_wilcoxon_stat, sn_wilcoxon_two_change, ChangePointConfig, TieMode, TwoChangeForm,
};
use crate::error::{Error, Result};
use crate::generate::{shift_in_place, CirculantEmbedding, GaussianModel, TransformSpec};
use crate::limit::{
    simulate_critical_values, table1, CriticalValueTable, LimitFunctional, LimitSettings, Lookup, LEVELS,
};
use crate::rng::{derive_seed, replication_rng};
use crate::subsample::{
    subsampling_test_with, BlockRule, Calibration, Decision, StatSpec, TestReport, Variant,
};
use crate::whittle::local_whittle_default;

/// Hurst parameters at which limit critical values are tabulated.
pub const HURST_GRID: [f64; 6] = [0.501, 0.6, 0.7, 0.8, 0.9, 0.999];

/// Environment variable holding the default worker count.
pub const WORKERS_ENV: &str = "LRDCP_WORKERS";

/// Runs `f` on a dedicated pool of `workers` threads (or the count in
/// `LRDCP_WORKERS`); falls back to the global pool when neither is set.
pub fn with_workers<T, F>(workers: Option<usize>, f: F) -> Result<T>
where
    T: Send,
    F: FnOnce() -> T + Send,
{
    let workers = match workers {
        Some(w) => Some(w),
        None => match std::env::var(WORKERS_ENV) {
            Ok(v) => Some(
                v.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::config(format!("{WORKERS_ENV}={v:?} is not a worker count")))?,
            ),
            Err(_) => None,
        },
    };
    match workers {
        None => Ok(f()),
        Some(0) => Err(Error::config("worker count must be positive")),
        Some(w) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(w)
                .build()
                .map_err(|e| Error::config(format!("cannot start {w} workers: {e}")))?;
            Ok(pool.install(f))
        }
    }
}

/// Critical values of the limit distributions, interpolated in `H`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticCalibrator {
    pub single: CriticalValueTable,
    pub two_change: CriticalValueTable,
    pub classical: CriticalValueTable,
}

impl AsymptoticCalibrator {
    /// Simulates the single-change and classical tables on [`HURST_GRID`].
    /// The two-change table is the published one for the default window and
    /// is simulated otherwise.
    pub fn simulate(config: &ChangePointConfig, settings: &LimitSettings) -> Result<Self> {
        let single = simulate_critical_values(&LimitFunctional::single(config), &HURST_GRID, settings)?;
        let classical = simulate_critical_values(&LimitFunctional::classical(config), &HURST_GRID, settings)?;
        let default = ChangePointConfig::default();
        let two_change = if (config.tau1, config.tau2, config.epsilon) == (default.tau1, default.tau2, default.epsilon) {
            table1()
        } else {
            simulate_critical_values(
                &LimitFunctional::two_change(config, TwoChangeForm::Limit),
                &HURST_GRID,
                settings,
            )?
        };
        Ok(Self { single, two_change, classical })
    }

    pub fn table(&self, variant: Variant) -> &CriticalValueTable {
        match variant {
            Variant::Single | Variant::SingleMidrank => &self.single,
            Variant::TwoChange => &self.two_change,
            Variant::Classical => &self.classical,
        }
    }

    pub fn threshold(&self, variant: Variant, hurst: f64, alpha: f64) -> Result<Lookup> {
        if !LEVELS.iter().any(|l| (l - alpha).abs() < 1e-12) {
            return Err(Error::config(format!(
                "asymptotic calibration is tabulated at levels 0.10, 0.05 and 0.01 only, not {alpha}"
            )));
        }
        self.table(variant).interpolate(hurst, alpha)
    }
}

/// Estimates `H` by local Whittle (`m = ⌊n^{2/3}⌋`), clamps it to the
/// tabulated range and compares the statistic with the interpolated limit
/// critical value. The two-change statistic is evaluated in
/// [`TwoChangeForm::Limit`], the form the tables refer to.
pub fn asymptotic_test(
    values: &[f64],
    variant: Variant,
    config: &ChangePointConfig,
    calibrator: &AsymptoticCalibrator,
) -> Result<TestReport> {
    config.validate()?;
    let raw = local_whittle_default(values)?.hurst;
    let hurst = raw.clamp(HURST_GRID[0], HURST_GRID[HURST_GRID.len() - 1]);
    let statistic = match variant {
        Variant::Single => sn_wilcoxon_stat(values, &ChangePointConfig { tie_mode: TieMode::Standard, ..*config })?,
        Variant::SingleMidrank => {
            sn_wilcoxon_stat(values, &ChangePointConfig { tie_mode: TieMode::Midrank, ..*config })?
        }
        Variant::TwoChange => sn_wilcoxon_two_change(values, config, TwoChangeForm::Limit)?,
        Variant::Classical => classical_wilcoxon_stat(values, hurst, config)?,
    };
    let threshold = calibrator.threshold(variant, hurst, config.alpha)?.value;
    Ok(TestReport {
        decision: Decision::from_threshold(statistic.value, threshold),
        statistic,
        threshold,
        level: config.alpha,
        calibration: Calibration::AsymptoticTable,
        block_length: None,
        dropped_windows: 0,
        p_proxy: None,
        hurst_estimate: Some(raw),
        growth_warning: false,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CalibrationSpec {
    Subsampling(BlockRule),
    Asymptotic,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub model: GaussianModel,
    pub transform: TransformSpec,
    pub n: usize,
    pub replications: usize,
    /// Level-shift height; `0` simulates the hypothesis.
    pub shift_h: f64,
    /// The shift starts after observation `⌊n·τ⌋`.
    pub shift_tau: f64,
    pub calibration: CalibrationSpec,
    pub variant: Variant,
    /// Window, tie handling and level.
    pub changepoint: ChangePointConfig,
    pub seed: u64,
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        self.model.validate()?;
        self.transform.validate()?;
        self.changepoint.validate()?;
        if self.replications == 0 {
            return Err(Error::config("at least one replication is needed"));
        }
        if self.n < 4 {
            return Err(Error::config(format!("sample size {} below 4", self.n)));
        }
        if !(self.shift_tau > 0.0 && self.shift_tau < 1.0) || !self.shift_h.is_finite() {
            return Err(Error::config("shift needs finite height and location in (0, 1)"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RejectionRate {
    pub rejections: usize,
    pub replications: usize,
    pub rate: f64,
}

/// Simulates `replications` series and returns how often the test rejects.
///
/// Replication `i` draws from stream `i` of `config.seed`, so the result does
/// not depend on the number of workers.
pub fn run_rejection_experiment(
    config: &ExperimentConfig,
    calibrator: Option<&AsymptoticCalibrator>,
) -> Result<RejectionRate> {
    config.validate()?;
    if config.calibration == CalibrationSpec::Asymptotic && calibrator.is_none() {
        return Err(Error::config("asymptotic calibration needs critical-value tables"));
    }
    let embedding = CirculantEmbedding::new(&config.model, config.n)?;
    let decisions: Vec<bool> = (0..config.replications)
        .into_par_iter()
        .map(|rep| {
            replicate(config, &embedding, calibrator, rep as u64)
                .map_err(|e| Error::Replication { index: rep as u64, source: Box::new(e) })
        })
        .collect::<Result<_>>()?;
    let rejections = decisions.iter().filter(|&&d| d).count();
    Ok(RejectionRate {
        rejections,
        replications: config.replications,
        rate: rejections as f64 / config.replications as f64,
    })
}

fn replicate(
    config: &ExperimentConfig,
    embedding: &CirculantEmbedding,
    calibrator: Option<&AsymptoticCalibrator>,
    rep: u64,
) -> Result<bool> {
    let mut rng = replication_rng(config.seed, rep);
    let mut x = embedding.sample(&mut rng);
    if config.transform != TransformSpec::Identity {
        for v in &mut x {
            *v = config.transform.apply_one(*v);
        }
    }
    if config.shift_h != 0.0 {
        shift_in_place(&mut x, config.shift_h, config.shift_tau);
    }
    let report = match config.calibration {
        CalibrationSpec::Subsampling(rule) => {
            subsampling_test_with(&x, StatSpec::new(config.variant, config.changepoint), rule)?
        }
        CalibrationSpec::Asymptotic => {
            asymptotic_test(&x, config.variant, &config.changepoint, calibrator.expect("checked above"))?
        }
    };
    Ok(report.decision.rejects())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TableId {
    T1,
    T2,
    T3,
    T4,
    T5,
}

impl TableId {
    pub fn number(self) -> u64 {
        match self {
            TableId::T1 => 1,
            TableId::T2 => 2,
            TableId::T3 => 3,
            TableId::T4 => 4,
            TableId::T5 => 5,
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().trim_start_matches('T') {
            "1" => Ok(TableId::T1),
            "2" => Ok(TableId::T2),
            "3" => Ok(TableId::T3),
            "4" => Ok(TableId::T4),
            "5" => Ok(TableId::T5),
            _ => Err(Error::config(format!("unknown table {s:?}; expected T1..T5"))),
        }
    }

    fn rows(self) -> &'static [published::PublishedRow] {
        match self {
            TableId::T1 => &[],
            TableId::T2 => published::TABLE2,
            TableId::T3 => published::TABLE3,
            TableId::T4 => published::TABLE4,
            TableId::T5 => published::TABLE5,
        }
    }

    fn variant(self) -> Variant {
        match self {
            TableId::T4 | TableId::T5 => Variant::Classical,
            _ => Variant::Single,
        }
    }

    fn transform(self) -> TransformSpec {
        match self {
            TableId::T3 | TableId::T5 => TransformSpec::Pareto { beta: 3.0, scale_k: 1.0 },
            _ => TransformSpec::Identity,
        }
    }

    /// Cells whose values hinge on the unstated classical normalization.
    fn convention_sensitive(self) -> bool {
        matches!(self, TableId::T4 | TableId::T5)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scale {
    Full,
    Desk,
}

impl Scale {
    pub fn parse(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "full" => Ok(Scale::Full),
            "desk" => Ok(Scale::Desk),
            _ => Err(Error::config(format!("unknown scale {s:?}; expected full or desk"))),
        }
    }

    pub fn replications(self) -> usize {
        match self {
            Scale::Full => 5000,
            Scale::Desk => 1000,
        }
    }

    pub fn limit_settings(self, seed: u64) -> LimitSettings {
        match self {
            Scale::Full => LimitSettings { grid: 1000, reps: 10_000, seed },
            Scale::Desk => LimitSettings { grid: 500, reps: 2000, seed },
        }
    }

    /// Allowed deviation from a published rejection rate `p`.
    pub fn rate_tolerance(self, p: f64, reps: usize) -> f64 {
        match self {
            Scale::Desk => 0.03,
            Scale::Full => (3.0 * (p * (1.0 - p) / reps as f64).sqrt()).max(0.005),
        }
    }

    /// Allowed deviation from a published critical value.
    pub fn critical_tolerance(self) -> f64 {
        match self {
            Scale::Desk => 1.5,
            Scale::Full => 0.75,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellResult {
    pub hurst: f64,
    pub n: usize,
    /// Block length, or empty for asymptotic calibration.
    pub block: Option<usize>,
    pub calibration: String,
    pub h: f64,
    pub tau: f64,
    pub replications: usize,
    pub rejections: usize,
    pub rate: f64,
    pub published: f64,
    pub diff: f64,
    pub tolerance: f64,
    pub within: bool,
    pub convention_sensitive: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RejectionTable {
    pub table: TableId,
    pub scale: Scale,
    pub seed: u64,
    pub cells: Vec<CellResult>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriticalCell {
    pub hurst: f64,
    pub level: f64,
    pub simulated: f64,
    pub published: f64,
    pub diff: f64,
    pub tolerance: f64,
    pub within: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriticalReport {
    pub scale: Scale,
    pub table: CriticalValueTable,
    pub cells: Vec<CriticalCell>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Reproduction {
    Rejection(RejectionTable),
    Critical(CriticalReport),
}

impl Reproduction {
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut wr = csv::Writer::from_writer(w);
        match self {
            Reproduction::Rejection(t) => {
                for c in &t.cells {
                    wr.serialize(c).map_err(csv_error)?;
                }
            }
            Reproduction::Critical(r) => {
                for c in &r.cells {
                    wr.serialize(c).map_err(csv_error)?;
                }
            }
        }
        wr.flush()?;
        Ok(())
    }

    /// Human-readable comparison with the published values.
    pub fn diff_report(&self) -> String {
        let mut out = String::new();
        match self {
            Reproduction::Rejection(t) => {
                let gated: Vec<&CellResult> = t.cells.iter().filter(|c| !c.convention_sensitive).collect();
                let misses = t.cells.iter().filter(|c| !c.within).count();
                let _ = writeln!(
                    out,
                    "Table {} ({:?}, seed {}): {} cells, {} outside tolerance",
                    t.table.number(),
                    t.scale,
                    t.seed,
                    t.cells.len(),
                    misses
                );
                if gated.is_empty() && !t.cells.is_empty() {
                    let _ = writeln!(
                        out,
                        "note: classical-test cells depend on an unstated normalization; differences are reported, not gated"
                    );
                }
                for c in &t.cells {
                    let block = c.block.map_or_else(|| "asym".to_string(), |l| l.to_string());
                    let _ = writeln!(
                        out,
                        "{} H={:<5} n={:<4} l={:<4} h={:<3} tau={:<4} published={:.3} sim={:.3} diff={:+.3}",
                        if c.within { "ok  " } else { "MISS" },
                        c.hurst,
                        c.n,
                        block,
                        c.h,
                        c.tau,
                        c.published,
                        c.rate,
                        c.diff
                    );
                }
            }
            Reproduction::Critical(r) => {
                let misses = r.cells.iter().filter(|c| !c.within).count();
                let _ = writeln!(out, "Table 1 ({:?}): {} cells, {} outside tolerance", r.scale, r.cells.len(), misses);
                for c in &r.cells {
                    let _ = writeln!(
                        out,
                        "{} H={:<5} level={:<4} published={:.2} sim={:.2} diff={:+.2}",
                        if c.within { "ok  " } else { "MISS" },
                        c.hurst,
                        c.level,
                        c.published,
                        c.simulated,
                        c.diff
                    );
                }
            }
        }
        out
    }
}

fn csv_error(e: csv::Error) -> Error {
    Error::Io(std::io::Error::other(e.to_string()))
}

/// Re-simulates Table 1 (two-change limit critical values).
pub fn reproduce_table1(settings: &LimitSettings, scale: Scale) -> Result<CriticalReport> {
    let published = table1();
    let f = LimitFunctional::two_change(&ChangePointConfig::default(), TwoChangeForm::Limit);
    let hursts = published.hursts();
    let simulated = simulate_critical_values(&f, &hursts, settings)?;
    let tolerance = scale.critical_tolerance();
    let cells = simulated
        .rows
        .iter()
        .map(|r| {
            let reference = published.get(r.hurst, r.level).expect("same grid");
            let diff = r.value - reference;
            CriticalCell {
                hurst: r.hurst,
                level: r.level,
                simulated: r.value,
                published: reference,
                diff,
                tolerance,
                within: diff.abs() <= tolerance,
            }
        })
        .collect();
    Ok(CriticalReport { scale, table: simulated, cells })
}

/// Runs the full grid of a published table.
pub fn reproduce_table(id: TableId, scale: Scale, seed: u64) -> Result<Reproduction> {
    if id == TableId::T1 {
        return reproduce_table1(&scale.limit_settings(seed), scale).map(Reproduction::Critical);
    }
    let cp = ChangePointConfig::default();
    let calibrator = AsymptoticCalibrator::simulate(&cp, &scale.limit_settings(derive_seed(seed, &[id.number(), 0])))?;
    let reps = scale.replications();
    let mut cells = Vec::new();
    for &(hurst, n, block, rates) in id.rows() {
        // Every cell of an (H, n) group reuses the same simulated paths.
        let group_seed = derive_seed(seed, &[id.number(), (hurst * 1000.0).round() as u64, n as u64]);
        for (&(h, tau), &reference) in published::COLUMNS.iter().zip(&rates) {
            let config = ExperimentConfig {
                model: GaussianModel::fgn(hurst)?,
                transform: id.transform(),
                n,
                replications: reps,
                shift_h: h,
                shift_tau: tau,
                calibration: match block {
                    Some(l) => CalibrationSpec::Subsampling(BlockRule::Fixed(l)),
                    None => CalibrationSpec::Asymptotic,
                },
                variant: id.variant(),
                changepoint: cp,
                seed: group_seed,
            };
            let result = run_rejection_experiment(&config, Some(&calibrator))?;
            let diff = result.rate - reference;
            let tolerance = scale.rate_tolerance(reference, reps);
            cells.push(CellResult {
                hurst,
                n,
                block,
                calibration: if block.is_some() { "subsampling" } else { "asymptotic" }.into(),
                h,
                tau,
                replications: reps,
                rejections: result.rejections,
                rate: result.rate,
                published: reference,
                diff,
                tolerance,
                within: diff.abs() <= tolerance,
                convention_sensitive: id.convention_sensitive(),
            });
        }
    }
    Ok(Reproduction::Rejection(RejectionTable { table: id, scale, seed, cells }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(calibration: CalibrationSpec, h: f64) -> ExperimentConfig {
        ExperimentConfig {
            model: GaussianModel::fgn(0.7).unwrap(),
            transform: TransformSpec::Identity,
            n: 120,
            replications: 40,
            shift_h: h,
            shift_tau: 0.5,
            calibration,
            variant: Variant::Single,
            changepoint: ChangePointConfig::default(),
            seed: 3,
        }
    }

    #[test]
    fn published_tables_have_full_grids() {
        for id in [TableId::T2, TableId::T3, TableId::T4, TableId::T5] {
            let rows = id.rows();
            assert_eq!(rows.len(), 32);
            assert_eq!(rows.iter().filter(|r| r.2.is_none()).count(), 8);
            for r in rows {
                assert!(r.3.iter().all(|p| (0.0..=1.0).contains(p)));
            }
        }
    }

    #[test]
    fn experiments_are_deterministic_across_worker_counts() {
        let cfg = small(CalibrationSpec::Subsampling(BlockRule::Fixed(10)), 1.0);
        let a = with_workers(Some(1), || run_rejection_experiment(&cfg, None)).unwrap().unwrap();
        let b = with_workers(Some(3), || run_rejection_experiment(&cfg, None)).unwrap().unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn large_shift_is_found_more_often() {
        let null = run_rejection_experiment(&small(CalibrationSpec::Subsampling(BlockRule::Fixed(10)), 0.0), None).unwrap();
        let alt = run_rejection_experiment(&small(CalibrationSpec::Subsampling(BlockRule::Fixed(10)), 3.0), None).unwrap();
        assert!(alt.rate > null.rate + 0.3, "{null:?} {alt:?}");
    }

    #[test]
    fn asymptotic_needs_tables() {
        assert!(run_rejection_experiment(&small(CalibrationSpec::Asymptotic, 0.0), None).is_err());
    }

    #[test]
    fn table_ids_parse() {
        assert_eq!(TableId::parse("t3").unwrap(), TableId::T3);
        assert_eq!(TableId::parse("2").unwrap(), TableId::T2);
        assert!(TableId::parse("T9").is_err());
        assert_eq!(Scale::parse("DESK").unwrap(), Scale::Desk);
    }

    #[test]
    fn asymptotic_levels_are_restricted() {
        let cal = AsymptoticCalibrator {
            single: table1(),
            two_change: table1(),
            classical: table1(),
        };
        assert!(cal.threshold(Variant::TwoChange, 0.7, 0.05).is_ok());
        assert!(cal.threshold(Variant::TwoChange, 0.7, 0.2).is_err());
    }
}
