//! Prepared states: equilibrium, coherent, coherent pair, squeezed and cat.

use std::f64::consts::{LN_2, PI};

use super::characteristic::{CharacteristicFactor, FactorKind, WignerCharacteristic};
use super::sum::{Modulation, WignerGaussianSum, WignerTerm};
use crate::bath::{BathParameters, EquilibriumKernel, Model};
use crate::measure::{CatDistribution, GaussianSum1D, GaussianTerm, MeasurementKind, MeasurementSpec};
use crate::numerics::QuadraticForm2;
use crate::{Complex64, Error, Result};

/// A Wigner function with the characteristic function it inverts.
#[derive(Debug, Clone, PartialEq)]
pub struct PreparedWigner {
    pub wigner: WignerGaussianSum,
    pub characteristic: WignerCharacteristic,
}

fn check_lag(t: f64) -> Result<()> {
    if !(t >= 0.0 && t.is_finite()) {
        return Err(Error::Domain(format!("elapsed time must be finite and nonnegative, got {t}")));
    }
    Ok(())
}

fn check_separation(d: f64) -> Result<()> {
    if !(d > 0.0 && d.is_finite()) {
        return Err(Error::InvalidParameter(format!("separation must be positive, got {d}")));
    }
    Ok(())
}

// diag(⟨x²⟩, m²⟨ẋ²⟩)
fn equilibrium_form(kernel: &EquilibriumKernel) -> Result<QuadraticForm2> {
    let x2 = kernel.position_variance()?;
    let v2 = kernel.velocity_variance()?;
    let m = kernel.mass();
    Ok(QuadraticForm2::new(x2, 0.0, m * m * v2))
}

fn gaussian_state(kernel: &EquilibriumKernel, form: QuadraticForm2, center: (f64, f64)) -> Result<PreparedWigner> {
    let characteristic =
        WignerCharacteristic { hbar: kernel.hbar(), form, center, factors: vec![CharacteristicFactor::one(0.0)] };
    let wigner = WignerGaussianSum::new(vec![WignerTerm::gaussian(0.0, center, form)], kernel.hbar())?;
    Ok(PreparedWigner { wigner, characteristic })
}

pub fn equilibrium_characteristic(kernel: &EquilibriumKernel) -> Result<WignerCharacteristic> {
    Ok(equilibrium_wigner(kernel)?.characteristic)
}

pub fn equilibrium_wigner(kernel: &EquilibriumKernel) -> Result<PreparedWigner> {
    gaussian_state(kernel, equilibrium_form(kernel)?, (0.0, 0.0))
}

/// Center (x̄, v̄) of the coherent state prepared at (x₀, v₀), after time t.
pub fn coherent_center(kernel: &EquilibriumKernel, x0: f64, v0: f64, t: f64) -> Result<(f64, f64)> {
    check_lag(t)?;
    let m = kernel.mass();
    let [g, dg, ddg] = kernel.green(t);
    Ok((m * dg * x0 + m * g * v0, m * ddg * x0 + m * dg * v0))
}

pub fn coherent_wigner(kernel: &EquilibriumKernel, x0: f64, v0: f64, t: f64) -> Result<PreparedWigner> {
    let (x, v) = coherent_center(kernel, x0, v0, t)?;
    gaussian_state(kernel, equilibrium_form(kernel)?, (x, kernel.mass() * v))
}

/// Coherent-state pair at ±d/2 with its interference analytics.
#[derive(Debug, Clone, PartialEq)]
pub struct CoherentPair {
    pub state: PreparedWigner,
    /// A(t): the interference peak carries 2e^{−A} relative to the outer peaks.
    pub decay_exponent: f64,
    /// Φ = phase_q·q + phase_p·p.
    pub phase_q: f64,
    pub phase_p: f64,
    pub attenuation: f64,
}

/// A(t) of the coherent pair.
pub fn coherent_pair_exponent(kernel: &EquilibriumKernel, d: f64, t: f64) -> Result<f64> {
    check_separation(d)?;
    check_lag(t)?;
    let x2 = kernel.position_variance()?;
    let v2 = kernel.velocity_variance()?;
    let [_, ds, dds] = kernel.msd_derivatives(t)?;
    let (m, h) = (kernel.mass(), kernel.hbar());
    Ok(m * m * d * d * v2 / (2.0 * h * h) * (1.0 - ds * ds / (4.0 * x2 * v2) - dds * dds / (4.0 * v2 * v2)))
}

/// Attenuation of the interference term in the position distribution;
/// zero when the velocity variance diverges.
pub fn coherent_pair_attenuation(kernel: &EquilibriumKernel, d: f64, t: f64) -> Result<f64> {
    check_separation(d)?;
    check_lag(t)?;
    let x2 = kernel.position_variance()?;
    let v2 = match kernel.velocity_variance() {
        Ok(v) => v,
        Err(Error::Divergence(_)) => return Ok(0.0),
        Err(e) => return Err(e),
    };
    let (m, h) = (kernel.mass(), kernel.hbar());
    let [_, dg, _] = kernel.green(t);
    let [_, ds, _] = kernel.msd_derivatives(t)?;
    let bracket = 4.0 * m * m * v2 * x2 / (h * h) - m * m * ds * ds / (h * h) - m * m * dg * dg;
    Ok((-bracket * d * d / (8.0 * x2)).exp())
}

pub fn coherent_pair(kernel: &EquilibriumKernel, d: f64, t: f64) -> Result<CoherentPair> {
    let a = coherent_pair_exponent(kernel, d, t)?;
    let form = equilibrium_form(kernel)?;
    let (x2, v2) = (form.a11, form.a22);
    let (m, h) = (kernel.mass(), kernel.hbar());
    let [_, dg, ddg] = kernel.green(t);
    let [_, ds, dds] = kernel.msd_derivatives(t)?;
    let v2 = v2 / (m * m);
    let log_e = -m * m * v2 * d * d / (2.0 * h * h);
    let log_norm = -LN_2 - log_e.exp().ln_1p();
    let peak = (0.5 * m * dg * d, 0.5 * m * m * ddg * d);
    let phase_q = m * ds * d / (2.0 * h * x2);
    let phase_p = dds * d / (2.0 * h * v2);
    let wigner = WignerGaussianSum::new(
        vec![
            WignerTerm::gaussian(log_norm, peak, form),
            WignerTerm::gaussian(log_norm, (-peak.0, -peak.1), form),
            WignerTerm {
                log_weight: log_norm + LN_2 - a,
                center: (0.0, 0.0),
                covariance: form,
                modulation: Modulation::Cos { kq: phase_q, kp: phase_p, phase: 0.0 },
            },
        ],
        h,
    )?;
    let norm = -log_e.exp().ln_1p();
    let characteristic = WignerCharacteristic {
        hbar: h,
        form,
        center: (0.0, 0.0),
        factors: vec![
            CharacteristicFactor {
                log_weight: norm,
                kind: FactorKind::Cos,
                coeff_p: m * d * dg / (2.0 * h),
                coeff_q: m * m * d * ddg / (2.0 * h),
            },
            CharacteristicFactor {
                log_weight: norm + log_e,
                kind: FactorKind::Cosh,
                coeff_p: m * d * ds / (2.0 * h * h),
                coeff_q: m * m * d * dds / (2.0 * h * h),
            },
        ],
    };
    Ok(CoherentPair {
        state: PreparedWigner { wigner, characteristic },
        decay_exponent: a,
        phase_q,
        phase_p,
        attenuation: coherent_pair_attenuation(kernel, d, t)?,
    })
}

/// Position distribution of the coherent pair.
pub fn coherent_pair_pdist(kernel: &EquilibriumKernel, d: f64, t: f64) -> Result<CatDistribution> {
    let attenuation = coherent_pair_attenuation(kernel, d, t)?;
    let x2 = kernel.position_variance()?;
    let (m, h) = (kernel.mass(), kernel.hbar());
    let [_, dg, _] = kernel.green(t);
    let [_, ds, _] = kernel.msd_derivatives(t)?;
    let shift = 0.5 * m * dg * d;
    let log_norm = match kernel.velocity_variance() {
        Ok(v2) => -LN_2 - (-m * m * v2 * d * d / (2.0 * h * h)).exp().ln_1p(),
        Err(Error::Divergence(_)) => -LN_2,
        Err(e) => return Err(e),
    };
    let mut terms = vec![GaussianTerm::plain(log_norm, shift, x2), GaussianTerm::plain(log_norm, -shift, x2)];
    if attenuation > 0.0 {
        terms.push(GaussianTerm {
            log_weight: log_norm + LN_2 + attenuation.ln() - shift * shift / (2.0 * x2),
            mean: 0.0,
            variance: x2,
            frequency: m * ds * d / (2.0 * h * x2),
            phase: 0.0,
        });
    }
    Ok(CatDistribution { distribution: GaussianSum1D::new(terms), attenuation })
}

/// Master-equation exponent (mω₀d²/4ħ)(1 − e^{−γt}) with ω₀ = √(K/m), γ = Re μ̃(ω₀)/m.
pub fn weisskopf_wigner_exponent(params: &BathParameters, d: f64, t: f64) -> Result<f64> {
    params.validate()?;
    check_separation(d)?;
    check_lag(t)?;
    if params.is_free() {
        return Err(Error::Unsupported("the Weisskopf-Wigner exponent needs an oscillator".into()));
    }
    let m = params.mass;
    let w0 = (params.spring / m).sqrt();
    let gamma = params.memory(Complex64::new(w0, 0.0)).re / m;
    Ok(m * w0 * d * d / (4.0 * params.hbar) * -(-gamma * t).exp_m1())
}

/// Short-time coherent-pair decoherence scale τ√(πħ/ζd²) of the relaxation-time model.
pub fn coherent_pair_decoherence_time(params: &BathParameters, d: f64) -> Result<f64> {
    params.validate()?;
    check_separation(d)?;
    if params.model != Model::SingleRelaxationTime || params.friction == 0.0 {
        return Err(Error::Unsupported("needs the relaxation-time model with friction".into()));
    }
    Ok(params.relaxation * (PI * params.hbar / (params.friction * d * d)).sqrt())
}

/// (A₁₁, A₁₂, A₂₂) of the ideally squeezed state after time t.
pub fn squeezed_coefficients(kernel: &EquilibriumKernel, r: f64, t: f64) -> Result<QuadraticForm2> {
    check_lag(t)?;
    if !r.is_finite() {
        return Err(Error::InvalidParameter("squeeze parameter must be finite".into()));
    }
    if kernel.params().model != Model::SingleRelaxationTime {
        return Err(Error::Unsupported(
            "the ideal squeeze needs G̈(0) = 0, which the Ohmic model violates".into(),
        ));
    }
    let x2 = kernel.position_variance()?;
    let v2 = kernel.velocity_variance()?;
    let m = kernel.mass();
    let [g, dg, ddg] = kernel.green(t);
    let [s, ds, dds] = kernel.msd_derivatives(t)?;
    let shrink = -(-r).exp_m1();
    let grow = r.exp_m1();
    let (al, be) = (shrink * m * dg, grow * m * g);
    let (al_dot, be_dot) = (shrink * m * ddg, grow * m * dg);
    let a11 = (1.0 - al).powi(2) * x2 + be * be * v2 + al * s + be * ds;
    let a12 = m
        * (-(1.0 - al) * al_dot * x2 + be * be_dot * v2 + 0.5 * al_dot * s + 0.5 * (al + be_dot) * ds + 0.5 * be * dds);
    let a22 = m * m * (v2 + al_dot * al_dot * x2 + be_dot * be_dot * v2 + al_dot * ds + be_dot * dds);
    Ok(QuadraticForm2::new(a11, a12, a22))
}

pub fn squeezed_wigner(kernel: &EquilibriumKernel, r: f64, t: f64) -> Result<PreparedWigner> {
    gaussian_state(kernel, squeezed_coefficients(kernel, r, t)?, (0.0, 0.0))
}

/// Cat-state Wigner function and its interference exponent A.
#[derive(Debug, Clone, PartialEq)]
pub struct CatWigner {
    pub state: PreparedWigner,
    /// The interference term carries 2e^{−A} relative to either outer peak.
    pub decay_exponent: f64,
}

fn cat_characteristic(
    hbar: f64,
    form: QuadraticForm2,
    log_e: f64,
    cos_coeff: (f64, f64),
    cosh_coeff: (f64, f64),
) -> WignerCharacteristic {
    let norm = -log_e.exp().ln_1p();
    WignerCharacteristic {
        hbar,
        form,
        center: (0.0, 0.0),
        factors: vec![
            CharacteristicFactor { log_weight: norm, kind: FactorKind::Cos, coeff_p: cos_coeff.0, coeff_q: cos_coeff.1 },
            CharacteristicFactor {
                log_weight: norm + log_e,
                kind: FactorKind::Cosh,
                coeff_p: cosh_coeff.0,
                coeff_q: cosh_coeff.1,
            },
        ],
    }
}

// A from the term weights: outer peaks first, interference last
fn interference_exponent(w: &WignerGaussianSum) -> f64 {
    let peak = w.terms[0].log_weight;
    let cross = w.terms[w.terms.len() - 1].log_weight;
    peak + LN_2 - cross
}

/// Slit-pair cat state after time t; the free particle uses its explicit limit.
pub fn cat_wigner(kernel: &EquilibriumKernel, prep: &MeasurementSpec, t: f64) -> Result<CatWigner> {
    prep.validate()?;
    let MeasurementKind::SlitPair { width, separation: d, center } = prep.kind else {
        return Err(Error::Unsupported("cat states need a slit pair".into()));
    };
    if center != 0.0 {
        return Err(Error::InvalidParameter("the slit pair must be centered at zero".into()));
    }
    let t = t - prep.time;
    check_lag(t)?;
    let (m, h) = (kernel.mass(), kernel.hbar());
    let s1 = width * width;
    let v2 = kernel.velocity_variance()?;
    let [g, dg, _] = kernel.green(t);
    let [s, ds, _] = kernel.msd_derivatives(t)?;
    let noise = h * h / (4.0 * s1);
    let cosh_coeff = (g * d / (4.0 * s1), m * dg * d / (4.0 * s1));
    if kernel.is_free() {
        let form = QuadraticForm2::new(
            s1 + s + noise * g * g,
            m * (0.5 * ds + noise * g * dg),
            m * m * (v2 + noise * dg * dg),
        );
        let log_e = -d * d / (8.0 * s1);
        let characteristic = cat_characteristic(h, form, log_e, (d / (2.0 * h), 0.0), cosh_coeff);
        let det = form.det();
        let kq = (g * form.a22 - m * dg * form.a12) / det * h * d / (4.0 * s1);
        let kp = (m * dg * form.a11 - g * form.a12) / det * h * d / (4.0 * s1);
        let residual = (form.a11 - noise * g * g) * (form.a22 - noise * m * m * dg * dg)
            - (form.a12 - noise * m * g * dg).powi(2);
        let a = residual / det * d * d / (8.0 * s1);
        let log_norm = -LN_2 - log_e.exp().ln_1p();
        let wigner = WignerGaussianSum::new(
            vec![
                WignerTerm::gaussian(log_norm, (0.5 * d, 0.0), form),
                WignerTerm::gaussian(log_norm, (-0.5 * d, 0.0), form),
                WignerTerm {
                    log_weight: log_norm + LN_2 - a,
                    center: (0.0, 0.0),
                    covariance: form,
                    modulation: Modulation::Cos { kq, kp, phase: 0.0 },
                },
            ],
            h,
        )?;
        return Ok(CatWigner { state: PreparedWigner { wigner, characteristic }, decay_exponent: a });
    }
    let x2 = kernel.position_variance()?;
    let (c, dc) = (x2 - 0.5 * s, -0.5 * ds);
    let wide = x2 + s1;
    // ⟨x²⟩ − c²/(⟨x²⟩ + σ₁²) written with ⟨x²⟩ − c = s/2
    let a11 = (0.5 * s * (x2 + c) + x2 * s1) / wide + noise * g * g;
    let form = QuadraticForm2::new(
        a11,
        m * (noise * g * dg - c * dc / wide),
        m * m * (v2 + noise * dg * dg - dc * dc / wide),
    );
    let log_e = -x2 * d * d / (8.0 * s1 * wide);
    let cos_coeff = (c * d / (2.0 * wide * h), m * dc * d / (2.0 * wide * h));
    let characteristic = cat_characteristic(h, form, log_e, cos_coeff, cosh_coeff);
    let wigner = characteristic.invert()?;
    let decay_exponent = interference_exponent(&wigner);
    Ok(CatWigner { state: PreparedWigner { wigner, characteristic }, decay_exponent })
}

/// Displaced ground-state pair of separation d₀ after time t.
pub fn displaced_pair_wigner(kernel: &EquilibriumKernel, d0: f64, t: f64) -> Result<CatWigner> {
    check_separation(d0)?;
    check_lag(t)?;
    let form = equilibrium_form(kernel)?;
    let (m, h) = (kernel.mass(), kernel.hbar());
    let x2 = form.a11;
    let v2 = form.a22 / (m * m);
    let [g, dg, _] = kernel.green(t);
    let [c, dc, _] = kernel.correlation_derivatives(t)?;
    let log_e = -d0 * d0 / (8.0 * x2);
    let cos_coeff = (c * d0 / (2.0 * x2 * h), m * dc * d0 / (2.0 * x2 * h));
    let cosh_coeff = (g * d0 / (4.0 * x2), m * dg * d0 / (4.0 * x2));
    let characteristic = cat_characteristic(h, form, log_e, cos_coeff, cosh_coeff);
    let a = d0 * d0 / (8.0 * x2) * (1.0 - h * h * g * g / (4.0 * x2 * x2) - h * h * dg * dg / (4.0 * x2 * v2));
    let peak = (c * d0 / (2.0 * x2), m * dc * d0 / (2.0 * x2));
    let log_norm = -LN_2 - log_e.exp().ln_1p();
    let wigner = WignerGaussianSum::new(
        vec![
            WignerTerm::gaussian(log_norm, peak, form),
            WignerTerm::gaussian(log_norm, (-peak.0, -peak.1), form),
            WignerTerm {
                log_weight: log_norm + LN_2 - a,
                center: (0.0, 0.0),
                covariance: form,
                modulation: Modulation::Cos {
                    kq: h * g / x2 * d0 / (4.0 * x2),
                    kp: h * dg / (m * v2) * d0 / (4.0 * x2),
                    phase: 0.0,
                },
            },
        ],
        h,
    )?;
    Ok(CatWigner { state: PreparedWigner { wigner, characteristic }, decay_exponent: a })
}
