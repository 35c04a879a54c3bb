//! Long-range-dependent series and self-normalized Wilcoxon change-point tests.
//!
//! The crate covers simulation of subordinated Gaussian long-memory series,
//! rank-based change-point statistics, subsampling calibration, local Whittle
//! estimation of the Hurst parameter, and Monte-Carlo critical values of the
//! limit distributions.

mod bridge;
pub mod changepoint;
pub mod error;
pub mod generate;
pub mod harness;
pub mod io;
pub mod limit;
pub mod rng;
pub mod series;
pub mod subsample;
pub mod whittle;

pub use changepoint::{
    classical_wilcoxon_stat, compute_ranks, sn_wilcoxon_profile, sn_wilcoxon_stat, sn_wilcoxon_two_change,
    Argmax, ChangePointConfig, RankVector, TestStatistic, TieMode, TwoChangeForm,
};
pub use error::{Error, Result};
pub use generate::{apply_mean_shift, apply_transform, generate_gaussian_path, GaussianModel, TransformSpec};
pub use series::TimeSeries;
pub use io::{load_series, SeriesFormat};
pub use subsample::{block_length, subsample_distribution, subsampling_test, BlockRule, SubsampleDistribution, TestReport, Variant};
pub use whittle::{local_whittle, periodogram, WhittleEstimate};
