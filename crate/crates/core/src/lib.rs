//! Quantum Brownian motion of an oscillator (or free particle) coupled to a
//! linear passive heat bath: Green functions, mean square displacement,
//! measured distributions for chains of Gaussian measurements and Wigner
//! functions of several prepared states.
//!
//! Units are left to the caller. Every constant (mass, ħ, kT) is explicit in
//! [`bath::BathParameters`].

pub mod bath;
pub mod error;
pub mod measure;
pub mod numerics;
pub mod oracle;
pub mod wigner;

pub use error::{Error, Result};
pub use num_complex::Complex64;
