//! Acceptance gate. Prints one PASS/FAIL/SKIP line per criterion and exits
//! non-zero if any criterion fails. Tolerances are pinned below.

mod common;

use std::time::Instant;

use common::*;
use lrdcp::generate::CirculantEmbedding;
use lrdcp::harness::{
    reproduce_table1, run_rejection_experiment, with_workers, CalibrationSpec, ExperimentConfig, Scale,
};
use lrdcp::limit::LimitSettings;
use lrdcp::rng::replication_rng;
use lrdcp::subsample::{subsample_distribution, subsampling_test, Decision};
use lrdcp::whittle::{local_whittle, local_whittle_default};
use lrdcp::{
    classical_wilcoxon_stat, compute_ranks, sn_wilcoxon_profile, sn_wilcoxon_stat, sn_wilcoxon_two_change,
    BlockRule, ChangePointConfig, GaussianModel, SeriesFormat, TieMode, TransformSpec, TwoChangeForm, Variant,
};
use rand::Rng;
use statrs::function::gamma::ln_gamma;

const ORACLE_REL_TOL: f64 = 1e-9;
const FIDELITY_SES: f64 = 3.0;
const TABLE1_TOL: f64 = 1.5;
const RATE_TOL: f64 = 0.03;
const DATA_TOL: f64 = 1e-3;
const WHITTLE_TOL: f64 = 0.005;

enum Outcome {
    Pass(String),
    Fail(String),
    Skip(String),
}

fn check(pass: bool, detail: String) -> Outcome {
    if pass {
        Outcome::Pass(detail)
    } else {
        Outcome::Fail(detail)
    }
}

fn main() {
    let criteria: Vec<(u32, &str, fn() -> Outcome)> = vec![
        (1, "oracle equivalence of optimized statistics", c1_oracles),
        (2, "rank-sum identities", c2_rank_identities),
        (3, "generator autocovariance fidelity", c3_generator),
        (4, "Table 1 critical values (desk scale)", c4_table1),
        (5, "Table 2 spot cells (desk scale)", c5_table2),
        (6, "Table 3 spot cell (desk scale)", c6_table3),
        (7, "data-example regression", c7_data),
        (8, "subsampling consistency drift", c8_consistency),
        (9, "invariances and determinism", c9_invariance),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (id, name, run) in criteria {
        if !filter.is_empty() && !filter.iter().any(|f| f == &id.to_string()) {
            continue;
        }
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        let (tag, detail) = match outcome {
            Outcome::Pass(d) => ("PASS", d),
            Outcome::Fail(d) => {
                failed += 1;
                ("FAIL", d)
            }
            Outcome::Skip(d) => ("SKIP", d),
        };
        println!("[{tag}] criterion {id}: {name} ({secs:.1}s): {detail}");
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}

fn distinct_series(rng: &mut rand_chacha::ChaCha8Rng, n: usize) -> Vec<f64> {
    // Continuous draws; ties have probability zero but are excluded anyway.
    loop {
        let x = random_series(rng, n);
        let mut s = x.clone();
        s.sort_by(f64::total_cmp);
        if s.windows(2).all(|w| w[0] < w[1]) {
            return x;
        }
    }
}

fn c1_oracles() -> Outcome {
    let mut rng = rng(101);
    let cfg = ChangePointConfig::default();
    let mut worst = 0.0f64;
    let mut bad = Vec::new();
    let rel = |a: f64, b: f64, scale: f64| (a - b).abs() / scale.max(1e-300);
    for i in 0..100 {
        // Single-change profile on the literal display.
        let n = rng.random_range(4..=50);
        let x = distinct_series(&mut rng, n);
        let (lo, hi) = window(n, cfg.tau1, cfg.tau2);
        let want = profile(&ranks_le(&x), lo, hi);
        let got = sn_wilcoxon_profile(&compute_ranks(&x, TieMode::Standard).unwrap(), cfg.tau1, cfg.tau2).unwrap();
        let scale = want.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        for (g, w) in got.values.iter().zip(&want) {
            let e = rel(*g, *w, scale);
            worst = worst.max(e);
            if e > ORACLE_REL_TOL {
                bad.push(format!("single #{i}"));
            }
        }

        // Two-change statistic, literal display and the two alternative normalizations.
        let n = rng.random_range(14..=40);
        let x = distinct_series(&mut rng, n);
        for form in [TwoChangeForm::Display, TwoChangeForm::Subsample, TwoChangeForm::Limit] {
            let (want, _) = two_change(&x, cfg.tau1, cfg.tau2, cfg.epsilon, form);
            let got = sn_wilcoxon_two_change(&x, &cfg, form).unwrap().value;
            let e = rel(got, want, want.abs());
            worst = worst.max(e);
            if e > ORACLE_REL_TOL {
                bad.push(format!("two-change {form:?} #{i}"));
            }
        }

        // Classical statistic, with ties allowed.
        let n = rng.random_range(4..=50);
        let x = tied_series(&mut rng, n, 12);
        let h = rng.random_range(0.51..0.99);
        let want = classical(&x, h, cfg.tau1, cfg.tau2);
        let got = classical_wilcoxon_stat(&x, h, &cfg).unwrap().value;
        let e = rel(got, want, want.abs());
        worst = worst.max(e);
        if e > ORACLE_REL_TOL {
            bad.push(format!("classical #{i}"));
        }
    }
    check(bad.is_empty(), format!("100 instances per statistic, worst relative error {worst:.2e}, failures {bad:?}"))
}

fn c2_rank_identities() -> Outcome {
    let mut rng = rng(202);
    let mut failures = 0;
    for _ in 0..1000 {
        let n = rng.random_range(1..=200);
        let x = distinct_series(&mut rng, n);
        let s = compute_ranks(&x, TieMode::Standard).unwrap();
        let nn = n as f64;
        let ok_std = s.sum() == nn * (nn + 1.0) / 2.0;
        let mut sorted = s.to_vec();
        sorted.sort_by(f64::total_cmp);
        let ok_perm = sorted.iter().enumerate().all(|(i, r)| *r == (i + 1) as f64);
        let levels = rng.random_range(1..=10);
        let t = tied_series(&mut rng, n, levels);
        let ok_mid = compute_ranks(&t, TieMode::Midrank).unwrap().sum() == nn * nn / 2.0;
        if !(ok_std && ok_perm && ok_mid) {
            failures += 1;
        }
    }
    check(failures == 0, format!("1000 fuzzed inputs, {failures} violations"))
}

fn fgn_cov(h: f64, k: f64) -> f64 {
    0.5 * ((k - 1.0).abs().powf(2.0 * h) - 2.0 * k.powf(2.0 * h) + (k + 1.0).powf(2.0 * h))
}

fn farima_cov(d: f64, k: f64) -> f64 {
    (ln_gamma(1.0 - 2.0 * d) + ln_gamma(k + d) - ln_gamma(d) - ln_gamma(1.0 - d) - ln_gamma(k + 1.0 - d)).exp()
}

fn c3_generator() -> Outcome {
    const N: usize = 4096;
    const REPS: usize = 200;
    const LAGS: usize = 6;
    let mut models: Vec<(GaussianModel, Vec<f64>)> = [0.6, 0.7, 0.8, 0.9]
        .iter()
        .map(|&h| (GaussianModel::fgn(h).unwrap(), (0..LAGS).map(|k| fgn_cov(h, k as f64)).collect()))
        .collect();
    models.push((GaussianModel::farima(0.25, 1.0).unwrap(), (0..LAGS).map(|k| farima_cov(0.25, k as f64)).collect()));
    let mut misses = Vec::new();
    let mut worst = 0.0f64;
    for (mi, (model, want)) in models.iter().enumerate() {
        let emb = CirculantEmbedding::new(model, N).unwrap();
        let est: Vec<[f64; LAGS]> = (0..REPS)
            .map(|r| {
                let x = emb.sample(&mut replication_rng(3000 + mi as u64, r as u64));
                let mut out = [0.0; LAGS];
                for (k, o) in out.iter_mut().enumerate() {
                    *o = (0..N - k).map(|t| x[t] * x[t + k]).sum::<f64>() / (N - k) as f64;
                }
                out
            })
            .collect();
        for k in 0..LAGS {
            let mean = est.iter().map(|e| e[k]).sum::<f64>() / REPS as f64;
            let var = est.iter().map(|e| (e[k] - mean).powi(2)).sum::<f64>() / (REPS - 1) as f64;
            let se = (var / REPS as f64).sqrt();
            let z = (mean - want[k]).abs() / se;
            worst = worst.max(z);
            if z > FIDELITY_SES {
                misses.push(format!("{} lag {k}: z={z:.2}", model.describe()));
            }
        }
    }
    check(misses.is_empty(), format!("30 lag checks, largest |z| {worst:.2}, misses {misses:?}"))
}

fn c4_table1() -> Outcome {
    let settings = LimitSettings { grid: 500, reps: 2000, seed: 2024 };
    let report = reproduce_table1(&settings, Scale::Desk).unwrap();
    let worst = report.cells.iter().map(|c| c.diff.abs()).fold(0.0, f64::max);
    let misses: Vec<String> = report
        .cells
        .iter()
        .filter(|c| c.diff.abs() > TABLE1_TOL)
        .map(|c| format!("H={} {}%: {:.2} vs {:.2}", c.hurst, c.level * 100.0, c.simulated, c.published))
        .collect();
    let cell = |h: f64, l: f64| report.cells.iter().find(|c| c.hurst == h && c.level == l).unwrap().simulated;
    check(
        misses.is_empty(),
        format!(
            "18 cells, max |diff| {worst:.2} (H=0.6 5%: {:.2} vs 22.38; H=0.9 10%: {:.2} vs 26.50), misses {misses:?}",
            cell(0.6, 0.05),
            cell(0.9, 0.10)
        ),
    )
}

fn rate(hurst: f64, n: usize, l: usize, h: f64, transform: TransformSpec, seed: u64) -> f64 {
    let cfg = ExperimentConfig {
        model: GaussianModel::fgn(hurst).unwrap(),
        transform,
        n,
        replications: 1000,
        shift_h: h,
        shift_tau: 0.5,
        calibration: CalibrationSpec::Subsampling(BlockRule::Fixed(l)),
        variant: Variant::Single,
        changepoint: ChangePointConfig::default(),
        seed,
    };
    run_rejection_experiment(&cfg, None).unwrap().rate
}

fn c5_table2() -> Outcome {
    let cells = [
        ((0.6, 300, 17, 0.0), 0.064),
        ((0.6, 300, 17, 1.0), 0.964),
        ((0.9, 500, 22, 0.0), 0.067),
    ];
    let mut detail = Vec::new();
    let mut ok = true;
    for ((hurst, n, l, h), published) in cells {
        let r = rate(hurst, n, l, h, TransformSpec::Identity, 5000 + n as u64);
        ok &= (r - published).abs() <= RATE_TOL;
        detail.push(format!("H={hurst} n={n} l={l} h={h}: {r:.3} vs {published}"));
    }
    check(ok, detail.join("; "))
}

fn c6_table3() -> Outcome {
    let pareto = TransformSpec::pareto(3.0, 1.0).unwrap();
    let r = rate(0.7, 500, 12, 0.0, pareto, 6000);
    check((r - 0.066).abs() <= RATE_TOL, format!("Pareto(3,1) H=0.7 n=500 l=12 h=0: {r:.3} vs 0.066"))
}

fn c7_data() -> Outcome {
    let dir = data_dir();
    let load = |name: &str| lrdcp::load_series(dir.join(name), SeriesFormat::OneColumn).ok();
    let cfg = ChangePointConfig::default();
    let mut notes = Vec::new();
    let mut ok = true;
    let mut checked = 0;
    fn approx(notes: &mut Vec<String>, ok: &mut bool, label: &str, got: f64, want: f64, tol: f64) {
        let pass = (got - want).abs() <= tol;
        *ok &= pass;
        notes.push(format!("{label} {got:.6} vs {want}{}", if pass { "" } else { " MISS" }));
    }
    if let Some(nile) = load("nile.csv") {
        checked += 1;
        let x = nile.values();
        approx(&mut notes, &mut ok, "Nile T_n", sn_wilcoxon_stat(x, &cfg).unwrap().value, 13.48729, DATA_TOL);
        approx(&mut notes, &mut ok, "Nile Whittle", local_whittle_default(x).unwrap().hurst, 0.962, WHITTLE_TOL);
        approx(
            &mut notes,
            &mut ok,
            "Nile two-change",
            sn_wilcoxon_two_change(x, &cfg, TwoChangeForm::Subsample).unwrap().value,
            27.09477,
            DATA_TOL,
        );
        let strict = ChangePointConfig { alpha: 0.01, ..cfg };
        let report = subsampling_test(x, &strict, BlockRule::Fixed(10), Variant::Single).unwrap();
        let reject = report.decision == Decision::Reject;
        ok &= reject;
        notes.push(format!("Nile l=10 alpha=0.01 {:?}", report.decision));
    }
    if let Some(temp) = load("temperature.csv") {
        checked += 1;
        let x = temp.values();
        approx(&mut notes, &mut ok, "temperature T_n", sn_wilcoxon_stat(x, &cfg).unwrap().value, 18.98636, DATA_TOL);
        approx(
            &mut notes,
            &mut ok,
            "temperature two-change",
            sn_wilcoxon_two_change(x, &cfg, TwoChangeForm::Subsample).unwrap().value,
            17.88404,
            DATA_TOL,
        );
        approx(&mut notes, &mut ok, "temperature Whittle", local_whittle_default(x).unwrap().hurst, 0.811, WHITTLE_TOL);
    }
    if let Some(eth) = load("ethernet.csv") {
        checked += 1;
        let x = eth.values();
        approx(&mut notes, &mut ok, "Ethernet T_n", sn_wilcoxon_stat(x, &cfg).unwrap().value, 3.270726, DATA_TOL);
        approx(
            &mut notes,
            &mut ok,
            "Ethernet two-change",
            sn_wilcoxon_two_change(x, &cfg, TwoChangeForm::Subsample).unwrap().value,
            15.24527,
            DATA_TOL,
        );
        approx(&mut notes, &mut ok, "Ethernet Whittle", local_whittle_default(x).unwrap().hurst, 0.845, WHITTLE_TOL);
        let loose = ChangePointConfig { alpha: 0.10, ..cfg };
        for gamma in [0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9] {
            let report = subsampling_test(x, &loose, BlockRule::Gamma(gamma), Variant::Single).unwrap();
            ok &= report.decision == Decision::Retain;
        }
        notes.push("Ethernet subsampling decisions checked for gamma 0.3..0.9".into());
    }
    let missing: Vec<&str> = ["nile.csv", "temperature.csv", "ethernet.csv"]
        .into_iter()
        .filter(|f| !dir.join(f).exists())
        .collect();
    if !missing.is_empty() {
        notes.push(format!("not supplied in {}: {}", dir.display(), missing.join(", ")));
    }
    match (checked, ok) {
        (0, _) => Outcome::Skip(notes.join("; ")),
        (_, false) => Outcome::Fail(notes.join("; ")),
        (_, true) => Outcome::Pass(notes.join("; ")),
    }
}

/// Sup distance between two empirical distribution functions.
fn kolmogorov(a: &[f64], b: &[f64]) -> f64 {
    let (mut i, mut j, mut d) = (0, 0, 0.0f64);
    while i < a.len() && j < b.len() {
        let t = a[i].min(b[j]);
        while i < a.len() && a[i] <= t {
            i += 1;
        }
        while j < b.len() && b[j] <= t {
            j += 1;
        }
        d = d.max((i as f64 / a.len() as f64 - j as f64 / b.len() as f64).abs());
    }
    d
}

fn c8_consistency() -> Outcome {
    let model = GaussianModel::fgn(0.7).unwrap();
    let cfg = ChangePointConfig::default();
    let stat = |w: &[f64]| sn_wilcoxon_stat(w, &cfg).map(|s| s.value);
    let mut means = Vec::new();
    for (n, seed) in [(500usize, 81u64), (4000, 82)] {
        let l = lrdcp::block_length(n, BlockRule::Gamma(0.4), None).unwrap().l;
        let small = CirculantEmbedding::new(&model, l).unwrap();
        let mut reference: Vec<f64> =
            (0..10_000).map(|r| stat(&small.sample(&mut replication_rng(seed, r))).unwrap()).collect();
        reference.sort_by(f64::total_cmp);
        let big = CirculantEmbedding::new(&model, n).unwrap();
        let mean = (0..50)
            .map(|r| {
                let x = big.sample(&mut replication_rng(seed + 100, r));
                let dist = subsample_distribution(&x, l, stat).unwrap();
                kolmogorov(dist.stats(), &reference)
            })
            .sum::<f64>()
            / 50.0;
        means.push((n, l, mean));
    }
    let detail = means.iter().map(|(n, l, d)| format!("n={n} l={l}: {d:.4}")).collect::<Vec<_>>().join("; ");
    check(means[1].2 < means[0].2, format!("mean Kolmogorov distance {detail}"))
}

fn c9_invariance() -> Outcome {
    let mut rng = rng(909);
    let cfg = ChangePointConfig::default();
    let mut notes = Vec::new();
    let mut ok = true;

    let mut rank_ok = true;
    for _ in 0..50 {
        let n = rng.random_range(14..=80);
        let x = random_series(&mut rng, n);
        for map in [|v: f64| v.exp(), |v: f64| v * v * v + 2.0 * v, |v: f64| (v / 7.0).atan() * 3.0 - 1.0] {
            let y: Vec<f64> = x.iter().map(|&v| map(v)).collect();
            rank_ok &= sn_wilcoxon_stat(&x, &cfg).unwrap() == sn_wilcoxon_stat(&y, &cfg).unwrap();
            let mid = ChangePointConfig { tie_mode: TieMode::Midrank, ..cfg };
            rank_ok &= sn_wilcoxon_stat(&x, &mid).unwrap() == sn_wilcoxon_stat(&y, &mid).unwrap();
            for form in [TwoChangeForm::Subsample, TwoChangeForm::Display, TwoChangeForm::Limit] {
                rank_ok &= sn_wilcoxon_two_change(&x, &cfg, form).unwrap()
                    == sn_wilcoxon_two_change(&y, &cfg, form).unwrap();
            }
            rank_ok &= classical_wilcoxon_stat(&x, 0.8, &cfg).unwrap() == classical_wilcoxon_stat(&y, 0.8, &cfg).unwrap();
        }
    }
    ok &= rank_ok;
    notes.push(format!("rank statistics under increasing maps: {}", if rank_ok { "exact" } else { "MISMATCH" }));

    // Integer data of dyadic length keep the mean and the FFT inputs exact
    // under integer shifts and power-of-two rescaling.
    let mut whittle_ok = true;
    for _ in 0..10 {
        let x: Vec<f64> = (0..1024).map(|_| f64::from(rng.random_range(-500..500))).collect();
        let base = local_whittle(&x, 101).unwrap().hurst;
        for c in [0.25, 2.0, 1024.0] {
            let y: Vec<f64> = x.iter().map(|v| v * c).collect();
            whittle_ok &= local_whittle(&y, 101).unwrap().hurst == base;
        }
        for shift in [-3.0, 17.0, 4096.0] {
            let y: Vec<f64> = x.iter().map(|v| v + shift).collect();
            whittle_ok &= local_whittle(&y, 101).unwrap().hurst == base;
        }
    }
    ok &= whittle_ok;
    notes.push(format!("Whittle scale/location argmin: {}", if whittle_ok { "exact" } else { "MISMATCH" }));

    let x = lrdcp::generate_gaussian_path(&GaussianModel::fgn(0.75).unwrap(), 400, 77).unwrap();
    let report = |w| {
        with_workers(Some(w), || {
            let r = subsampling_test(x.values(), &cfg, BlockRule::Gamma(0.5), Variant::TwoChange).unwrap();
            serde_json::to_string(&r).unwrap()
        })
        .unwrap()
    };
    let experiment = |w| {
        let e = ExperimentConfig {
            model: GaussianModel::fgn(0.7).unwrap(),
            transform: TransformSpec::Identity,
            n: 200,
            replications: 64,
            shift_h: 0.5,
            shift_tau: 0.25,
            calibration: CalibrationSpec::Subsampling(BlockRule::Gamma(0.5)),
            variant: Variant::Single,
            changepoint: cfg,
            seed: 5,
        };
        with_workers(Some(w), || run_rejection_experiment(&e, None).unwrap()).unwrap()
    };
    let det_ok = report(1) == report(4) && report(4) == report(2) && experiment(1) == experiment(6);
    ok &= det_ok;
    notes.push(format!("worker-count determinism: {}", if det_ok { "byte-exact" } else { "MISMATCH" }));
    check(ok, notes.join("; "))
}
