//! Independent validators: direct quadrature of the fluctuation-dissipation
//! integrals, a classical Gaussian-process sampler and numeric Fourier
//! inversion. Nothing here calls the closed forms of the other modules.

mod fd;
mod fourier;
mod sampler;

pub use fd::{chain_characteristic_quadrature, quad_correlation, quad_green, quad_msd, quad_velocity_variance, response_imag};
pub use fourier::{numeric_inverse_fourier, numeric_inverse_fourier_2d, FourierWindow};
pub use sampler::{classical_covariance, ks_distance, sample_classical, TrajectoryEnsemble};
