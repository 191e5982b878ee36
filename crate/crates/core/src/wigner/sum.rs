//! Phase-space Gaussian sums and their characteristic functions.
//!
//! Characteristic convention: W̃(Q, P) = ∫∫ e^{−i(Pq + Qp)/ħ} W(q, p) dq dp.

use std::f64::consts::{LN_2, PI};

use crate::measure::{GaussianSum1D, GaussianTerm};
use crate::numerics::QuadraticForm2;
use crate::{Complex64, Error, Result};

/// Factor multiplying a phase-space Gaussian.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Modulation {
    None,
    /// cos(k_q q + k_p p + phase)
    Cos { kq: f64, kp: f64, phase: f64 },
    /// cosh(k_q q + k_p p)
    Cosh { kq: f64, kp: f64 },
}

/// exp(log_weight) · N((q, p) − center; covariance) · modulation
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WignerTerm {
    pub log_weight: f64,
    pub center: (f64, f64),
    pub covariance: QuadraticForm2,
    pub modulation: Modulation,
}

fn log_cosh(y: f64) -> f64 {
    let a = y.abs();
    a + (-2.0 * a).exp().ln_1p() - LN_2
}

impl WignerTerm {
    pub fn gaussian(log_weight: f64, center: (f64, f64), covariance: QuadraticForm2) -> Self {
        WignerTerm { log_weight, center, covariance, modulation: Modulation::None }
    }

    fn log_density(&self, q: f64, p: f64) -> Result<f64> {
        let inv = self.covariance.inverse()?;
        let (x, y) = (q - self.center.0, p - self.center.1);
        Ok(-0.5 * inv.eval(x, y) - (2.0 * PI).ln() - 0.5 * self.covariance.det().ln())
    }

    pub fn eval(&self, q: f64, p: f64) -> Result<f64> {
        let base = self.log_weight + self.log_density(q, p)?;
        Ok(match self.modulation {
            Modulation::None => base.exp(),
            Modulation::Cos { kq, kp, phase } => base.exp() * (kq * q + kp * p + phase).cos(),
            Modulation::Cosh { kq, kp } => (base + log_cosh(kq * q + kp * p)).exp(),
        })
    }

    /// Integral over the plane.
    pub fn integral(&self) -> f64 {
        let (mq, mp) = self.center;
        match self.modulation {
            Modulation::None => self.log_weight.exp(),
            Modulation::Cos { kq, kp, phase } => {
                (self.log_weight - 0.5 * self.covariance.eval(kq, kp)).exp() * (kq * mq + kp * mp + phase).cos()
            }
            Modulation::Cosh { kq, kp } => {
                (self.log_weight + 0.5 * self.covariance.eval(kq, kp) + log_cosh(kq * mq + kp * mp)).exp()
            }
        }
    }

    // (weight, w) pairs with modulation = Σ weight · e^{w·(q, p)}
    fn exponentials(&self) -> Vec<(Complex64, [Complex64; 2])> {
        let i = Complex64::i();
        let r = |x: f64| Complex64::new(x, 0.0);
        match self.modulation {
            Modulation::None => vec![(r(1.0), [r(0.0), r(0.0)])],
            Modulation::Cos { kq, kp, phase } => vec![
                (0.5 * (i * phase).exp(), [i * kq, i * kp]),
                (0.5 * (-i * phase).exp(), [-i * kq, -i * kp]),
            ],
            Modulation::Cosh { kq, kp } => vec![(r(0.5), [r(kq), r(kp)]), (r(0.5), [r(-kq), r(-kp)])],
        }
    }

    /// W̃(Q, P) of this term.
    pub fn characteristic(&self, q_wave: f64, p_wave: f64, hbar: f64) -> Complex64 {
        let i = Complex64::i();
        let c = &self.covariance;
        let (mq, mp) = self.center;
        let mut out = Complex64::new(0.0, 0.0);
        for (weight, w) in self.exponentials() {
            // ∫ e^{−i u·x} N(x − μ) e^{w·x} dx with u = (P, Q)/ħ
            let z = [w[0] - i * p_wave / hbar, w[1] - i * q_wave / hbar];
            let quad = c.a11 * z[0] * z[0] + 2.0 * c.a12 * z[0] * z[1] + c.a22 * z[1] * z[1];
            out += weight * (z[0] * mq + z[1] * mp + 0.5 * quad + self.log_weight).exp();
        }
        out
    }
}

/// Which phase-space variable survives a marginal.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    /// Keep q, integrate over p.
    Position,
    /// Keep p, integrate over q.
    Momentum,
}

/// Wigner function as a sum of modulated bivariate Gaussians.
#[derive(Debug, Clone, PartialEq)]
pub struct WignerGaussianSum {
    pub terms: Vec<WignerTerm>,
    pub hbar: f64,
}

impl WignerGaussianSum {
    pub fn new(terms: Vec<WignerTerm>, hbar: f64) -> Result<Self> {
        for t in &terms {
            if !t.covariance.is_positive_definite() {
                return Err(Error::Singular(format!("term covariance {:?} is not positive definite", t.covariance)));
            }
        }
        Ok(WignerGaussianSum { terms, hbar })
    }

    pub fn eval(&self, q: f64, p: f64) -> f64 {
        // covariances are checked at construction
        self.terms.iter().map(|t| t.eval(q, p).unwrap_or(f64::NAN)).sum()
    }

    pub fn total(&self) -> f64 {
        self.terms.iter().map(WignerTerm::integral).sum()
    }

    /// Closed-form W̃(Q, P).
    pub fn characteristic(&self, q_wave: f64, p_wave: f64) -> Complex64 {
        self.terms.iter().map(|t| t.characteristic(q_wave, p_wave, self.hbar)).sum()
    }

    /// Largest |center| plus standard deviation along each axis.
    pub fn extent(&self) -> (f64, f64) {
        self.terms.iter().fold((0.0, 0.0), |(a, b), t| {
            (
                a.max(t.center.0.abs() + t.covariance.a11.sqrt()),
                b.max(t.center.1.abs() + t.covariance.a22.sqrt()),
            )
        })
    }
}

/// Distribution of one phase-space variable.
pub fn wigner_marginal(w: &WignerGaussianSum, axis: Axis) -> GaussianSum1D {
    let mut out = Vec::new();
    for t in &w.terms {
        let c = &t.covariance;
        // kept variable x, integrated variable y
        let (mx, my, vx, vxy, vy) = match axis {
            Axis::Position => (t.center.0, t.center.1, c.a11, c.a12, c.a22),
            Axis::Momentum => (t.center.1, t.center.0, c.a22, c.a12, c.a11),
        };
        let slope = vxy / vx;
        let residual = vy - vxy * slope;
        let (kq, kp) = match t.modulation {
            Modulation::None => (0.0, 0.0),
            Modulation::Cos { kq, kp, .. } | Modulation::Cosh { kq, kp } => (kq, kp),
        };
        let (kx, ky) = match axis {
            Axis::Position => (kq, kp),
            Axis::Momentum => (kp, kq),
        };
        // E[y | x] = my + slope (x − mx)
        let k = kx + ky * slope;
        let offset = ky * (my - slope * mx);
        match t.modulation {
            Modulation::None => out.push(GaussianTerm::plain(t.log_weight, mx, vx)),
            Modulation::Cos { phase, .. } => out.push(GaussianTerm {
                log_weight: t.log_weight - 0.5 * ky * ky * residual,
                mean: mx,
                variance: vx,
                frequency: k,
                phase: phase + offset,
            }),
            Modulation::Cosh { .. } => {
                // N(x; m, v) e^{±(kx + b)} = e^{±(km + b) + k²v/2} N(x; m ± kv, v)
                let base = t.log_weight + 0.5 * ky * ky * residual - LN_2 + 0.5 * k * k * vx;
                for s in [1.0, -1.0] {
                    out.push(GaussianTerm::plain(base + s * (k * mx + offset), mx + s * k * vx, vx));
                }
            }
        }
    }
    GaussianSum1D::new(out)
}

/// ⟨x|ρ|x′⟩ = ∫ dp W((x + x′)/2, p) e^{i(x − x′)p/ħ}.
pub fn density_matrix_element(w: &WignerGaussianSum, x: f64, x_prime: f64) -> Complex64 {
    let q = 0.5 * (x + x_prime);
    let k = (x - x_prime) / w.hbar;
    let i = Complex64::i();
    let mut out = Complex64::new(0.0, 0.0);
    for t in &w.terms {
        let c = &t.covariance;
        let (mq, mp) = t.center;
        let slope = c.a12 / c.a11;
        let residual = c.a22 - c.a12 * slope;
        let mean = mp + slope * (q - mq);
        let log_marginal = t.log_weight - 0.5 * (q - mq).powi(2) / c.a11 - 0.5 * (2.0 * PI * c.a11).ln();
        for (weight, wv) in t.exponentials() {
            // ∫ N(p; mean, residual) e^{z p} dp = e^{z mean + z² residual / 2}
            let z = i * k + wv[1];
            out += weight * (wv[0] * q + z * mean + 0.5 * z * z * residual + log_marginal).exp();
        }
    }
    out
}
