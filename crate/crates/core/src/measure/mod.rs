//! Measured distributions for chains of imprecise position measurements.

mod chain;
mod dist;
mod pdist;
mod spin;

pub use chain::{chain_characteristic, joint_distribution, BivariateGaussian, Chain, ChainCharacteristic, JointDistribution};
pub use dist::{GaussianSum1D, GaussianTerm};
pub use pdist::{
    cat_decoherence_time, cat_pdist, conditional_pdist, displaced_conditional, displaced_pair_decoherence_time,
    displaced_pair_pdist, CatDistribution, ConditionalGaussian,
};
pub use spin::{spin_measurement_demo, SpinDemo};

use crate::{Error, Result};

/// The state-preparing measurement families.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MeasurementKind {
    /// Gaussian slit of width σ centered at x₁.
    GaussianSlit { width: f64, center: f64 },
    /// Two Gaussian slits of width σ₁ a distance d apart.
    SlitPair { width: f64, separation: f64, center: f64 },
    /// Coherent-state preparation at (x₀, v₀).
    CoherentDisplacement { position: f64, velocity: f64 },
    /// Cosine superposition of coherent states displaced by ±d/2.
    CoherentPairCosine { separation: f64 },
    /// Ideal squeeze with parameter r.
    Squeeze { r: f64 },
}

/// A measurement and the time at which it acts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasurementSpec {
    pub kind: MeasurementKind,
    pub time: f64,
}

impl MeasurementSpec {
    pub fn gaussian_slit(width: f64, center: f64, time: f64) -> Self {
        MeasurementSpec { kind: MeasurementKind::GaussianSlit { width, center }, time }
    }

    pub fn slit_pair(width: f64, separation: f64, time: f64) -> Self {
        MeasurementSpec { kind: MeasurementKind::SlitPair { width, separation, center: 0.0 }, time }
    }

    /// Checks the kind-specific ranges. A Gaussian slit of zero width passes here; chains decide where that is allowed.
    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidParameter(m.into()));
        if !self.time.is_finite() {
            return bad("measurement time must be finite");
        }
        match self.kind {
            MeasurementKind::GaussianSlit { width, center } => {
                if !(width >= 0.0 && width.is_finite()) || !center.is_finite() {
                    return bad("slit width must be finite and nonnegative");
                }
            }
            MeasurementKind::SlitPair { width, separation, center } => {
                if !(width > 0.0 && width.is_finite()) {
                    return bad("slit width must be positive");
                }
                if !(separation > 0.0 && separation.is_finite()) {
                    return bad("slit separation must be positive");
                }
                if !center.is_finite() {
                    return bad("slit center must be finite");
                }
            }
            MeasurementKind::CoherentDisplacement { position, velocity } => {
                if !position.is_finite() || !velocity.is_finite() {
                    return bad("displacement must be finite");
                }
            }
            MeasurementKind::CoherentPairCosine { separation } => {
                if !(separation > 0.0 && separation.is_finite()) {
                    return bad("pair separation must be positive");
                }
            }
            MeasurementKind::Squeeze { r } => {
                if !r.is_finite() {
                    return bad("squeeze parameter must be finite");
                }
            }
        }
        Ok(())
    }
}
