//! Closed-form Wigner characteristic functions.

use std::f64::consts::LN_2;

use super::sum::{Modulation, WignerGaussianSum, WignerTerm};
use crate::numerics::QuadraticForm2;
use crate::{Complex64, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FactorKind {
    One,
    Cos,
    Cosh,
}

/// exp(log_weight) · kind(coeff_p P + coeff_q Q)
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CharacteristicFactor {
    pub log_weight: f64,
    pub kind: FactorKind,
    pub coeff_p: f64,
    pub coeff_q: f64,
}

impl CharacteristicFactor {
    pub fn one(log_weight: f64) -> Self {
        CharacteristicFactor { log_weight, kind: FactorKind::One, coeff_p: 0.0, coeff_q: 0.0 }
    }
}

/// exp{−(a₁₁P² + 2a₁₂PQ + a₂₂Q²)/2ħ² − i(q̄P + p̄Q)/ħ} · Σ factors.
#[derive(Debug, Clone, PartialEq)]
pub struct WignerCharacteristic {
    pub hbar: f64,
    pub form: QuadraticForm2,
    pub center: (f64, f64),
    pub factors: Vec<CharacteristicFactor>,
}

fn log_cosh(y: f64) -> f64 {
    let a = y.abs();
    a + (-2.0 * a).exp().ln_1p() - LN_2
}

impl WignerCharacteristic {
    pub fn eval(&self, q_wave: f64, p_wave: f64) -> Complex64 {
        let h = self.hbar;
        let gauss = -0.5 * self.form.eval(p_wave, q_wave) / (h * h);
        let phase = Complex64::from_polar(1.0, -(self.center.0 * p_wave + self.center.1 * q_wave) / h);
        let sum: f64 = self
            .factors
            .iter()
            .map(|f| {
                let arg = f.coeff_p * p_wave + f.coeff_q * q_wave;
                match f.kind {
                    FactorKind::One => (f.log_weight + gauss).exp(),
                    FactorKind::Cos => (f.log_weight + gauss).exp() * arg.cos(),
                    FactorKind::Cosh => (f.log_weight + gauss + log_cosh(arg)).exp(),
                }
            })
            .sum();
        phase * sum
    }

    /// Analytic inverse transform.
    pub fn invert(&self) -> Result<WignerGaussianSum> {
        let h = self.hbar;
        let a = self.form;
        let inv = a.inverse()?;
        let (mq, mp) = self.center;
        let mut terms = Vec::new();
        for f in &self.factors {
            let (bp, bq) = (f.coeff_p, f.coeff_q);
            match f.kind {
                FactorKind::One => terms.push(WignerTerm::gaussian(f.log_weight, self.center, a)),
                FactorKind::Cos => {
                    for s in [1.0, -1.0] {
                        let center = (mq - s * h * bp, mp - s * h * bq);
                        terms.push(WignerTerm::gaussian(f.log_weight - LN_2, center, a));
                    }
                }
                FactorKind::Cosh => {
                    // k = ħ A⁻¹ β, weight e^{ħ² βᵀA⁻¹β / 2}
                    let kq = h * (inv.a11 * bp + inv.a12 * bq);
                    let kp = h * (inv.a12 * bp + inv.a22 * bq);
                    terms.push(WignerTerm {
                        log_weight: f.log_weight + 0.5 * h * h * inv.eval(bp, bq),
                        center: self.center,
                        covariance: a,
                        modulation: Modulation::Cos { kq, kp, phase: -(kq * mq + kp * mp) },
                    });
                }
            }
        }
        WignerGaussianSum::new(terms, h)
    }
}
