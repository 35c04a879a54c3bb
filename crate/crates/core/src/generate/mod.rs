//! Stationary Gaussian processes with long-memory covariances, marginal
//! transforms, and level-shift injection.

mod circulant;
mod covariance;
mod spectral;
mod transform;

pub use circulant::{generate_gaussian_path, CirculantEmbedding};
pub use covariance::{farima_covariance, fgn_covariance, GaussianModel};
pub use spectral::fgn_spectral_density;
pub use transform::{apply_mean_shift, apply_transform, standard_normal_cdf, TransformSpec};
pub(crate) use transform::shift_in_place;
