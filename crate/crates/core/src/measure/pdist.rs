//! Position distributions following a state-preparing measurement.

use std::f64::consts::LN_2;

use super::{GaussianSum1D, GaussianTerm, MeasurementKind, MeasurementSpec};
use crate::bath::EquilibriumKernel;
use crate::{Error, Result};

/// Gaussian with center x̄ and variance w².
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConditionalGaussian {
    pub center: f64,
    pub variance: f64,
}

impl ConditionalGaussian {
    pub fn distribution(&self) -> GaussianSum1D {
        GaussianSum1D::gaussian(self.center, self.variance)
    }
}

fn lag(spec: &MeasurementSpec, t: f64) -> Result<f64> {
    let lag = t - spec.time;
    if !(lag >= 0.0) {
        return Err(Error::Domain(format!("observation time {t} precedes the preparation at {}", spec.time)));
    }
    Ok(lag)
}

/// Spread w² after a Gaussian slit of variance σ₁², given s, c, G at the lag.
fn slit_spread(kernel: &EquilibriumKernel, s1: f64, lag: f64) -> Result<(f64, f64)> {
    let hbar = kernel.hbar();
    let g = kernel.green(lag)[0];
    let noncommuting = hbar * hbar * g * g / (4.0 * s1);
    let s = kernel.msd(lag)?;
    if kernel.is_free() {
        return Ok((1.0, s1 + s + noncommuting));
    }
    let x2 = kernel.position_variance()?;
    let c = x2 - 0.5 * s;
    // ⟨x²⟩ − c²/(⟨x²⟩+σ₁²) rewritten with ⟨x²⟩ − c = s/2
    let w2 = (0.5 * s * (x2 + c) + x2 * s1) / (x2 + s1) + noncommuting;
    Ok((c / (x2 + s1), w2))
}

/// Distribution at time t following a Gaussian slit.
pub fn conditional_pdist(kernel: &EquilibriumKernel, prep: &MeasurementSpec, t: f64) -> Result<ConditionalGaussian> {
    prep.validate()?;
    let MeasurementKind::GaussianSlit { width, center } = prep.kind else {
        return Err(Error::Unsupported("conditional distributions need a Gaussian slit".into()));
    };
    if width == 0.0 {
        return Err(Error::InvalidParameter("a preparing slit needs positive width".into()));
    }
    let (gain, variance) = slit_spread(kernel, width * width, lag(prep, t)?)?;
    Ok(ConditionalGaussian { center: gain * center, variance })
}

/// Distribution at lag t after preparing the ground state displaced to x₀.
pub fn displaced_conditional(kernel: &EquilibriumKernel, x0: f64, t: f64) -> Result<ConditionalGaussian> {
    let x2 = kernel.position_variance()?;
    Ok(ConditionalGaussian { center: kernel.correlation(t)? * x0 / x2, variance: x2 })
}

/// Two-peak distribution with its attenuation coefficient.
#[derive(Debug, Clone, PartialEq)]
pub struct CatDistribution {
    pub distribution: GaussianSum1D,
    /// Interference amplitude over twice the geometric mean of the direct terms.
    pub attenuation: f64,
}

/// Peaks at ±d̄/2 of variance w², interference weight e^{log_e} e^{b²/2w²}
/// and cosine frequency b/w², all normalized by 2(1 + e^{log_e}).
fn pair(log_e: f64, dbar: f64, w2: f64, b: f64, log_attenuation: f64) -> CatDistribution {
    let log_norm = -LN_2 - log_e.exp().ln_1p();
    let interference = GaussianTerm {
        log_weight: LN_2 + log_norm + log_e + b * b / (2.0 * w2),
        mean: 0.0,
        variance: w2,
        frequency: b / w2,
        phase: 0.0,
    };
    CatDistribution {
        distribution: GaussianSum1D::new(vec![
            GaussianTerm::plain(log_norm, 0.5 * dbar, w2),
            GaussianTerm::plain(log_norm, -0.5 * dbar, w2),
            interference,
        ]),
        attenuation: log_attenuation.exp(),
    }
}

fn pair_geometry(prep: &MeasurementSpec) -> Result<(f64, f64)> {
    prep.validate()?;
    let MeasurementKind::SlitPair { width, separation, center } = prep.kind else {
        return Err(Error::Unsupported("cat distributions need a slit pair".into()));
    };
    if center != 0.0 {
        return Err(Error::InvalidParameter("the slit pair must be centered at zero".into()));
    }
    Ok((width, separation))
}

/// Distribution at time t following a slit pair.
pub fn cat_pdist(kernel: &EquilibriumKernel, prep: &MeasurementSpec, t: f64) -> Result<CatDistribution> {
    let (width, d) = pair_geometry(prep)?;
    let lag = lag(prep, t)?;
    let s1 = width * width;
    let hbar = kernel.hbar();
    let g = kernel.green(lag)[0];
    let b = hbar * g * d / (4.0 * s1);
    let (gain, w2) = slit_spread(kernel, s1, lag)?;
    let dbar = gain * d;
    if kernel.is_free() {
        let s = kernel.msd(lag)?;
        let log_e = -d * d / (8.0 * s1);
        return Ok(pair(log_e, dbar, w2, b, -s * d * d / (8.0 * s1 * w2)));
    }
    let x2 = kernel.position_variance()?;
    let log_e = -x2 * d * d / (8.0 * s1 * (x2 + s1));
    let log_a = log_e + b * b / (2.0 * w2) + dbar * dbar / (8.0 * w2);
    Ok(pair(log_e, dbar, w2, b, log_a))
}

/// Distribution at lag t after the displaced pair of separation d₀.
pub fn displaced_pair_pdist(kernel: &EquilibriumKernel, d0: f64, t: f64) -> Result<CatDistribution> {
    if !(d0 > 0.0 && d0.is_finite()) {
        return Err(Error::InvalidParameter("pair separation must be positive".into()));
    }
    let x2 = kernel.position_variance()?;
    let c = kernel.correlation(t)?;
    let g = kernel.green(t)[0];
    let hbar = kernel.hbar();
    let log_e = -d0 * d0 / (8.0 * x2);
    let ratio = c / x2;
    let commutator = hbar * g / (2.0 * x2);
    let log_a = log_e * (1.0 - ratio * ratio - commutator * commutator);
    Ok(pair(log_e, ratio * d0, x2, hbar * g * d0 / (4.0 * x2), log_a))
}

/// Short-time decoherence scale of the free-particle slit pair.
pub fn cat_decoherence_time(kernel: &EquilibriumKernel, prep: &MeasurementSpec) -> Result<f64> {
    let (width, d) = pair_geometry(prep)?;
    if !kernel.is_free() {
        return Err(Error::Unsupported("the slit-pair decoherence time is defined for the free particle".into()));
    }
    Ok(2.0 * width * width / (kernel.velocity_variance()?.sqrt() * d))
}

/// Short-time decoherence scale of the displaced pair.
pub fn displaced_pair_decoherence_time(kernel: &EquilibriumKernel, d0: f64) -> Result<f64> {
    let x2 = kernel.position_variance()?;
    let v2 = kernel.velocity_variance()?;
    let hbar = kernel.hbar();
    let m = kernel.mass();
    let excess = v2 - hbar * hbar / (4.0 * m * m * x2);
    if excess <= 0.0 {
        return Err(Error::Unphysical("no velocity spread beyond the uncertainty minimum".into()));
    }
    Ok(2.0 * x2 / (excess.sqrt() * d0))
}
