//! `lrdcp`: change-point tests for long-range-dependent series.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lrdcp::harness::{
    asymptotic_test, reproduce_table, with_workers, AsymptoticCalibrator, Scale, TableId, HURST_GRID, WORKERS_ENV,
};
use lrdcp::limit::{simulate_critical_values, table1_lookup, LimitFunctional, LimitSettings, LEVELS};
use lrdcp::subsample::{subsampling_test_with, StatSpec};
use lrdcp::whittle::{default_bandwidth, local_whittle};
use lrdcp::{
    apply_mean_shift, apply_transform, generate_gaussian_path, load_series, Argmax,
    BlockRule, ChangePointConfig, Error, GaussianModel, SeriesFormat, TestReport, TransformSpec, TwoChangeForm,
    Variant,
};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "lrdcp", version, about = "Self-normalized Wilcoxon change-point tests under long-range dependence")]
struct Cli {
    /// Worker threads for Monte-Carlo and subsampling loops (default: $LRDCP_WORKERS, else all cores).
    #[arg(long, global = true, env = WORKERS_ENV)]
    workers: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a (transformed, shifted) Gaussian path and write it as one column.
    Simulate(SimulateArgs),
    /// Run a change-point test on a series.
    Test(TestArgs),
    /// Local Whittle estimate of the Hurst parameter.
    Whittle(WhittleArgs),
    /// Look up or simulate limit critical values.
    #[command(subcommand)]
    CriticalValues(CriticalCommand),
    /// Reproduce a published table and print the diff against it.
    Reproduce(ReproduceArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelKind {
    Fgn,
    Farima,
}

#[derive(Args)]
struct SimulateArgs {
    #[arg(long, value_enum, default_value = "fgn")]
    model: ModelKind,
    /// Hurst parameter of fGn.
    #[arg(long, default_value_t = 0.7)]
    hurst: f64,
    /// Memory parameter of FARIMA(0, d, 0).
    #[arg(long, default_value_t = 0.25)]
    d: f64,
    /// Innovation variance of FARIMA(0, d, 0).
    #[arg(long, default_value_t = 1.0)]
    sigma2: f64,
    #[arg(long, short)]
    n: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Map the marginals to centered, standardized Pareto(beta, k).
    #[arg(long)]
    pareto_beta: Option<f64>,
    #[arg(long, default_value_t = 1.0, requires = "pareto_beta")]
    pareto_k: f64,
    /// Height of a level shift added after the fraction `shift-tau` of the sample.
    #[arg(long, default_value_t = 0.0)]
    shift_h: f64,
    #[arg(long, default_value_t = 0.5)]
    shift_tau: f64,
    /// Output file (default: stdout).
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    OneColumn,
    TimeValue,
}

impl From<FormatArg> for SeriesFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::OneColumn => SeriesFormat::OneColumn,
            FormatArg::TimeValue => SeriesFormat::TimeValueCsv,
        }
    }
}

#[derive(Args)]
struct InputArgs {
    /// Series file.
    file: PathBuf,
    #[arg(long, value_enum, default_value = "one-column")]
    format: FormatArg,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VariantArg {
    Single,
    Midrank,
    TwoChange,
    Classical,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Single => Variant::Single,
            VariantArg::Midrank => Variant::SingleMidrank,
            VariantArg::TwoChange => Variant::TwoChange,
            VariantArg::Classical => Variant::Classical,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum CalibrationArg {
    Subsample,
    Asymptotic,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormArg {
    Subsample,
    Display,
    Limit,
}

impl From<FormArg> for TwoChangeForm {
    fn from(f: FormArg) -> Self {
        match f {
            FormArg::Subsample => TwoChangeForm::Subsample,
            FormArg::Display => TwoChangeForm::Display,
            FormArg::Limit => TwoChangeForm::Limit,
        }
    }
}

#[derive(Args)]
struct WindowArgs {
    #[arg(long, default_value_t = 0.15)]
    tau1: f64,
    #[arg(long, default_value_t = 0.85)]
    tau2: f64,
    /// Minimal separation of the two change points (two-change variant).
    #[arg(long, default_value_t = 0.15)]
    epsilon: f64,
}

#[derive(Args)]
struct TestArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, value_enum, default_value = "single")]
    variant: VariantArg,
    #[arg(long, value_enum, default_value = "subsample")]
    calibration: CalibrationArg,
    /// Block length exponent: l = floor(n^gamma).
    #[arg(long, default_value_t = 0.4, conflicts_with = "block")]
    gamma: f64,
    /// Fixed block length.
    #[arg(long)]
    block: Option<usize>,
    #[arg(long, default_value_t = 0.05)]
    alpha: f64,
    #[command(flatten)]
    window: WindowArgs,
    /// Normalization of the two-change statistic under subsampling.
    #[arg(long, value_enum, default_value = "subsample")]
    form: FormArg,
    /// Seed of the limit simulation behind asymptotic calibration.
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Path grid of the limit simulation.
    #[arg(long, default_value_t = 1000)]
    limit_grid: usize,
    /// Replications of the limit simulation.
    #[arg(long, default_value_t = 10_000)]
    limit_reps: usize,
    /// Print the report as JSON.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct WhittleArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Number of Fourier frequencies (default floor(n^(2/3))).
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum CriticalCommand {
    /// Interpolate the published two-change table.
    Lookup {
        #[arg(long)]
        hurst: f64,
        #[arg(long, default_value_t = 0.05)]
        level: f64,
    },
    /// Simulate a table of 10%, 5% and 1% critical values as CSV.
    Simulate(CriticalSimulateArgs),
}

#[derive(Args)]
struct CriticalSimulateArgs {
    #[arg(long, value_enum, default_value = "two-change")]
    functional: FunctionalArg,
    /// Hurst parameters (default: 0.501,0.6,0.7,0.8,0.9,0.999).
    #[arg(long, value_delimiter = ',')]
    hurst: Vec<f64>,
    #[command(flatten)]
    window: WindowArgs,
    #[arg(long, default_value_t = 1000)]
    grid: usize,
    #[arg(long, default_value_t = 10_000)]
    reps: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FunctionalArg {
    Single,
    TwoChange,
    Classical,
}

#[derive(Clone, Copy, ValueEnum)]
enum ScaleArg {
    Desk,
    Full,
}

#[derive(Args)]
struct ReproduceArgs {
    /// Table number, 1 to 5.
    #[arg(long)]
    table: String,
    #[arg(long, value_enum, default_value = "desk")]
    scale: ScaleArg,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Write the cell-level CSV here.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

/// JSON shape of a single test.
#[derive(Serialize)]
struct JsonReport<'a> {
    variant: &'static str,
    statistic: f64,
    argmax: Argmax,
    threshold: f64,
    level: f64,
    decision: lrdcp::subsample::Decision,
    calibration: lrdcp::subsample::Calibration,
    block_length: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    hurst_estimate: Option<f64>,
    dropped_windows: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    p_proxy: Option<f64>,
    growth_warning: bool,
    seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    provenance: Option<&'a str>,
}

fn exit_code(err: &Error) -> u8 {
    match err.root() {
        Error::Io(_) | Error::Parse { .. } => 3,
        Error::Degenerate { .. } => 4,
        Error::Config(_) => 5,
        Error::Domain(_) => 6,
        Error::Estimation(_) => 7,
        Error::Embedding { .. } => 8,
        Error::Replication { .. } => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let workers = cli.workers;
    match with_workers(workers, || run(cli.command)).and_then(|r| r) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("lrdcp: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn run(command: Command) -> lrdcp::Result<()> {
    match command {
        Command::Simulate(a) => simulate(a),
        Command::Test(a) => test(a),
        Command::Whittle(a) => whittle(a),
        Command::CriticalValues(c) => critical_values(c),
        Command::Reproduce(a) => reproduce(a),
    }
}

fn sink(path: Option<&Path>) -> lrdcp::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn load(input: &InputArgs) -> lrdcp::Result<lrdcp::TimeSeries> {
    load_series(&input.file, input.format.into()).map_err(|e| match e {
        Error::Io(io) => Error::Io(io::Error::new(io.kind(), format!("{}: {io}", input.file.display()))),
        other => other,
    })
}

fn simulate(a: SimulateArgs) -> lrdcp::Result<()> {
    let model = match a.model {
        ModelKind::Fgn => GaussianModel::fgn(a.hurst)?,
        ModelKind::Farima => GaussianModel::farima(a.d, a.sigma2)?,
    };
    let mut series = generate_gaussian_path(&model, a.n, a.seed)?;
    if let Some(beta) = a.pareto_beta {
        series = apply_transform(&series, &TransformSpec::pareto(beta, a.pareto_k)?)?;
    }
    series = apply_mean_shift(&series, a.shift_h, a.shift_tau)?;
    let mut out = sink(a.output.as_deref())?;
    writeln!(out, "# {} n={} seed={}", model.describe(), a.n, a.seed)?;
    for v in series.values() {
        // `{}` is the shortest representation that parses back to the same f64.
        writeln!(out, "{v}")?;
    }
    out.flush()?;
    Ok(())
}

fn config(window: &WindowArgs, alpha: f64, variant: VariantArg) -> ChangePointConfig {
    ChangePointConfig {
        tau1: window.tau1,
        tau2: window.tau2,
        epsilon: window.epsilon,
        tie_mode: if variant == VariantArg::Midrank { lrdcp::TieMode::Midrank } else { lrdcp::TieMode::Standard },
        alpha,
    }
}

fn test(a: TestArgs) -> lrdcp::Result<()> {
    let series = load(&a.input)?;
    let cfg = config(&a.window, a.alpha, a.variant);
    let variant = Variant::from(a.variant);
    let report: TestReport = match a.calibration {
        CalibrationArg::Subsample => {
            let rule = match a.block {
                Some(l) => BlockRule::Fixed(l),
                None => BlockRule::Gamma(a.gamma),
            };
            subsampling_test_with(series.values(), StatSpec::new(variant, cfg).with_form(a.form.into()), rule)?
        }
        CalibrationArg::Asymptotic => {
            let settings = LimitSettings { grid: a.limit_grid, reps: a.limit_reps, seed: a.seed };
            let calibrator = AsymptoticCalibrator::simulate(&cfg, &settings)?;
            asymptotic_test(series.values(), variant, &cfg, &calibrator)?
        }
    };
    let variant_name = match a.variant {
        VariantArg::Single => "single",
        VariantArg::Midrank => "midrank",
        VariantArg::TwoChange => "two-change",
        VariantArg::Classical => "classical",
    };
    let mut out = sink(None)?;
    if a.json {
        let json = JsonReport {
            variant: variant_name,
            statistic: report.statistic.value,
            argmax: report.statistic.argmax,
            threshold: report.threshold,
            level: report.level,
            decision: report.decision,
            calibration: report.calibration,
            block_length: report.block_length,
            hurst_estimate: report.hurst_estimate,
            dropped_windows: report.dropped_windows,
            p_proxy: report.p_proxy,
            growth_warning: report.growth_warning,
            seed: a.seed,
            provenance: series.provenance(),
        };
        serde_json::to_writer_pretty(&mut out, &json).map_err(|e| Error::Io(e.into()))?;
        writeln!(out)?;
    } else {
        let argmax = match report.statistic.argmax {
            Argmax::Single(k) => format!("k = {k}"),
            Argmax::Pair(k1, k2) => format!("(k1, k2) = ({k1}, {k2})"),
        };
        writeln!(out, "variant        {variant_name}")?;
        writeln!(out, "n              {}", series.len())?;
        writeln!(out, "statistic      {:.6}", report.statistic.value)?;
        writeln!(out, "argmax         {argmax}")?;
        writeln!(out, "threshold      {:.6} (level {})", report.threshold, report.level)?;
        match report.block_length {
            Some(l) => writeln!(out, "calibration    subsampling, l = {l}, {} windows dropped", report.dropped_windows)?,
            None => writeln!(out, "calibration    asymptotic table")?,
        }
        if let Some(h) = report.hurst_estimate {
            writeln!(out, "hurst estimate {h:.4}")?;
        }
        if let Some(p) = report.p_proxy {
            writeln!(out, "exceedance     {p:.4}")?;
        }
        writeln!(out, "decision       {:?}", report.decision)?;
        if report.growth_warning {
            writeln!(out, "warning: block length grows faster than the memory-dependent bound")?;
        }
    }
    out.flush()?;
    Ok(())
}

fn whittle(a: WhittleArgs) -> lrdcp::Result<()> {
    let series = load(&a.input)?;
    let m = a.m.unwrap_or_else(|| default_bandwidth(series.len()));
    let est = local_whittle(series.values(), m)?;
    let mut out = sink(None)?;
    if a.json {
        serde_json::to_writer_pretty(&mut out, &est).map_err(|e| Error::Io(e.into()))?;
        writeln!(out)?;
    } else {
        writeln!(out, "H = {:.6} (m = {}, d = {:.6})", est.hurst, est.m, est.hurst - 0.5)?;
    }
    out.flush()?;
    Ok(())
}

fn critical_values(c: CriticalCommand) -> lrdcp::Result<()> {
    match c {
        CriticalCommand::Lookup { hurst, level } => {
            if !LEVELS.iter().any(|l| (l - level).abs() < 1e-12) {
                return Err(Error::Config(format!("level {level} is not tabulated; use 0.10, 0.05 or 0.01")));
            }
            let lookup = table1_lookup(hurst, level)?;
            if lookup.clamped {
                eprintln!("lrdcp: warning: H = {hurst} lies outside [0.501, 0.999] and was clamped");
            }
            println!("{:.4}", lookup.value);
            Ok(())
        }
        CriticalCommand::Simulate(a) => {
            let cfg = config(&a.window, 0.05, VariantArg::Single);
            let functional = match a.functional {
                FunctionalArg::Single => LimitFunctional::single(&cfg),
                FunctionalArg::TwoChange => LimitFunctional::two_change(&cfg, TwoChangeForm::Limit),
                FunctionalArg::Classical => LimitFunctional::classical(&cfg),
            };
            let hursts = if a.hurst.is_empty() { HURST_GRID.to_vec() } else { a.hurst };
            let settings = LimitSettings { grid: a.grid, reps: a.reps, seed: a.seed };
            let table = simulate_critical_values(&functional, &hursts, &settings)?;
            let mut out = sink(a.output.as_deref())?;
            table.write_csv(&mut out)?;
            out.flush()?;
            Ok(())
        }
    }
}

fn reproduce(a: ReproduceArgs) -> lrdcp::Result<()> {
    let id = TableId::parse(&a.table)?;
    let scale = match a.scale {
        ScaleArg::Desk => Scale::Desk,
        ScaleArg::Full => Scale::Full,
    };
    let result = reproduce_table(id, scale, a.seed)?;
    if let Some(path) = &a.output {
        result.write_csv(File::create(path)?)?;
    }
    print!("{}", result.diff_report());
    Ok(())
}
