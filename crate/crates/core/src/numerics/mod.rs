//! Special functions, quadrature and Gaussian integrals.

mod gauss;
mod quad;
mod vfunc;

pub use gauss::{gaussian_moment_2d, QuadraticForm2};
pub use quad::{integrate, integrate_semi_infinite, integrate_with, Estimate, SemiInfinite};
pub use vfunc::{gauss_legendre, v_function, v_real, v_with_derivatives, EULER_GAMMA, SERIES_RADIUS};
