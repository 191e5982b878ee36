//! Bath models, the response and Green functions, and the equilibrium
//! fluctuation quantities built from them.

mod green;
mod kernel;
mod weak;

use num_complex::Complex64;

use crate::error::{Error, Result};

pub use green::ExpSum;
pub use kernel::EquilibriumKernel;
pub use weak::{weak_coupling, CouplingApproximation};

/// Memory-friction model of the bath.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Model {
    /// Constant friction μ̃(z) = ζ.
    Ohmic,
    /// μ̃(z) = ζ/(1 − izτ).
    SingleRelaxationTime,
}

/// Temperature regime. The variant picks the evaluation path.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Temperature {
    /// Zero-point fluctuations only; closed forms.
    Zero,
    /// High-temperature limit coth(x) → 1/x at the given kT; closed forms.
    Classical(f64),
    /// Exact fluctuation-dissipation integrals at the given kT; quadrature.
    Finite(f64),
}

impl Temperature {
    fn validate(&self) -> Result<()> {
        match *self {
            Temperature::Zero => Ok(()),
            Temperature::Classical(kt) if kt > 0.0 && kt.is_finite() => Ok(()),
            Temperature::Finite(kt) if kt >= 0.0 && kt.is_finite() => Ok(()),
            t => Err(Error::InvalidParameter(format!("temperature {t:?} out of range"))),
        }
    }
}

/// Physical constants of the particle and its bath.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BathParameters {
    pub model: Model,
    pub mass: f64,
    /// Friction constant ζ.
    pub friction: f64,
    /// Spring constant K; zero selects the free particle.
    pub spring: f64,
    /// Bath relaxation time τ; ignored by the Ohmic model.
    pub relaxation: f64,
    pub temperature: Temperature,
    pub hbar: f64,
}

/// Rates and frequencies that parameterize the closed forms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedFrequencies {
    /// Far pole Ω of the response; `f64::INFINITY` for the Ohmic model.
    pub cutoff: f64,
    /// Damping rate γ.
    pub damping: f64,
    /// Oscillator frequency ω₀ of the factored response.
    pub natural: f64,
    /// ω₁ = √(ω₀² − γ²/4), imaginary when overdamped.
    pub damped: Complex64,
}

impl DerivedFrequencies {
    /// Ω² − γΩ + ω₀², the common denominator of the closed forms.
    pub fn denominator(&self) -> f64 {
        let (o, g, w) = (self.cutoff, self.damping, self.natural);
        o * o - g * o + w * w
    }
}

impl BathParameters {
    pub fn ohmic(mass: f64, friction: f64, spring: f64, temperature: Temperature, hbar: f64) -> Result<Self> {
        let p = BathParameters {
            model: Model::Ohmic,
            mass,
            friction,
            spring,
            relaxation: 0.0,
            temperature,
            hbar,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn single_relaxation(
        mass: f64,
        friction: f64,
        spring: f64,
        relaxation: f64,
        temperature: Temperature,
        hbar: f64,
    ) -> Result<Self> {
        let p = BathParameters {
            model: Model::SingleRelaxationTime,
            mass,
            friction,
            spring,
            relaxation,
            temperature,
            hbar,
        };
        p.validate()?;
        Ok(p)
    }

    /// Single-relaxation-time parameters from the factored-response rates
    /// (Ω, γ, ω₀): τ = 1/(Ω+γ), ζ = mγ(Ω(Ω+γ)+ω₀²)/(Ω+γ)², K = mω₀²Ω/(Ω+γ).
    pub fn from_frequencies(
        mass: f64,
        cutoff: f64,
        damping: f64,
        natural: f64,
        temperature: Temperature,
        hbar: f64,
    ) -> Result<Self> {
        if !(cutoff > 0.0 && cutoff.is_finite() && damping >= 0.0 && natural >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "need 0 < Ω < ∞, γ >= 0, ω0 >= 0; got Ω={cutoff}, γ={damping}, ω0={natural}"
            )));
        }
        let sum = cutoff + damping;
        let tau = 1.0 / sum;
        let zeta = mass * damping * (cutoff * sum + natural * natural) / (sum * sum);
        let k = mass * natural * natural * cutoff / sum;
        Self::single_relaxation(mass, zeta, k, tau, temperature, hbar)
    }

    pub fn with_temperature(mut self, temperature: Temperature) -> Result<Self> {
        temperature.validate()?;
        self.temperature = temperature;
        Ok(self)
    }

    pub fn is_free(&self) -> bool {
        self.spring == 0.0
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        if !(self.mass > 0.0 && self.mass.is_finite()) {
            return bad(format!("mass must be positive, got {}", self.mass));
        }
        if !(self.hbar > 0.0 && self.hbar.is_finite()) {
            return bad(format!("hbar must be positive, got {}", self.hbar));
        }
        if !(self.friction >= 0.0 && self.friction.is_finite()) {
            return bad(format!("friction must be >= 0, got {}", self.friction));
        }
        if !(self.spring >= 0.0 && self.spring.is_finite()) {
            return bad(format!("spring constant must be >= 0, got {}", self.spring));
        }
        self.temperature.validate()?;
        if self.model == Model::SingleRelaxationTime {
            if !(self.relaxation > 0.0 && self.relaxation.is_finite()) {
                return bad(format!("relaxation time must be positive, got {}", self.relaxation));
            }
            let coupling = self.friction * self.relaxation / self.mass;
            if coupling >= 1.0 {
                return bad(format!("ζτ/m must be < 1, got {coupling}"));
            }
            if self.is_free() && 1.0 - 4.0 * coupling < 1e-12 {
                return bad(format!(
                    "free particle needs 4ζτ/m < 1 (equality is a degenerate pole), got {}",
                    4.0 * coupling
                ));
            }
        }
        Ok(())
    }

    /// Memory function μ̃(z).
    pub fn memory(&self, z: Complex64) -> Complex64 {
        match self.model {
            Model::Ohmic => Complex64::new(self.friction, 0.0),
            Model::SingleRelaxationTime => {
                self.friction / (Complex64::new(1.0, 0.0) - Complex64::i() * z * self.relaxation)
            }
        }
    }

    /// Response function α(z) = 1/(−mz² − izμ̃(z) + K), for Im z ≥ 0.
    pub fn response(&self, z: Complex64) -> Result<Complex64> {
        if z.im < 0.0 {
            return Err(Error::Domain(format!("response needs Im z >= 0, got {z}")));
        }
        let den = -self.mass * z * z - Complex64::i() * z * self.memory(z) + self.spring;
        if den.norm() == 0.0 || !den.re.is_finite() {
            return Err(Error::Domain(format!("response has a pole at z = {z}")));
        }
        Ok(den.inv())
    }

    /// Im α(ω + i0⁺) on the real axis.
    pub fn response_imag(&self, omega: f64) -> f64 {
        // Im{1/D} = −Im D/|D|² with D = −mω² − iωμ̃ + K.
        let mu = self.memory(Complex64::new(omega, 0.0));
        let re = -self.mass * omega * omega + omega * mu.im + self.spring;
        let im = -omega * mu.re;
        -im / (re * re + im * im)
    }

    /// Rates (Ω, γ, ω₀, ω₁) of the factored response.
    pub fn frequencies(&self) -> Result<DerivedFrequencies> {
        self.validate()?;
        let m = self.mass;
        let (cutoff, damping, natural) = match self.model {
            Model::Ohmic => (f64::INFINITY, self.friction / m, (self.spring / m).sqrt()),
            Model::SingleRelaxationTime => {
                let tau = self.relaxation;
                if self.is_free() {
                    let root = (1.0 - 4.0 * self.friction * tau / m).sqrt();
                    // small root written to avoid cancellation
                    let big = (1.0 + root) / (2.0 * tau);
                    let small = self.friction / (m * tau * big);
                    (big, small, 0.0)
                } else {
                    let big = largest_root(self.friction, self.spring, tau, m);
                    let damping = 1.0 / tau - big;
                    let natural = (self.spring / (m * tau * big)).sqrt();
                    (big, damping, natural)
                }
            }
        };
        let damped = Complex64::new(natural * natural - 0.25 * damping * damping, 0.0).sqrt();
        let f = DerivedFrequencies { cutoff, damping, natural, damped };
        if cutoff.is_finite() && f.denominator().abs() <= 1e-12 * cutoff * cutoff {
            return Err(Error::InvalidParameter(
                "far pole coincides with an oscillator pole".into(),
            ));
        }
        Ok(f)
    }
}

// Largest root of y³ − y²/τ + (K/m + ζ/(mτ))y − K/(mτ), by Newton from 1/τ.
fn largest_root(zeta: f64, k: f64, tau: f64, m: f64) -> f64 {
    let a = 1.0 / tau;
    let b = k / m + zeta / (m * tau);
    let c = k / (m * tau);
    let mut y = a;
    for _ in 0..200 {
        let f = ((y - a) * y + b) * y - c;
        let df = (3.0 * y - 2.0 * a) * y + b;
        let step = f / df;
        y -= step;
        if step.abs() <= 1e-16 * y {
            break;
        }
    }
    y
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fig() -> BathParameters {
        BathParameters::from_frequencies(1.0, 5.0, 10.0 / 13.0, 1.0, Temperature::Zero, 1.0).unwrap()
    }

    #[test]
    fn figure_parameters_map() {
        let p = fig();
        assert!((p.relaxation - 13.0 / 75.0).abs() < 1e-15);
        assert!((p.friction - 3880.0 / 5625.0).abs() < 1e-15);
        assert!((p.spring - 13.0 / 15.0).abs() < 1e-15);
    }

    #[test]
    fn round_trip() {
        let p = fig();
        let f = p.frequencies().unwrap();
        assert!((f.cutoff - 5.0).abs() < 1e-12 * 5.0);
        assert!((f.damping - 10.0 / 13.0).abs() < 1e-12);
        assert!((f.natural - 1.0).abs() < 1e-12);
        let q = BathParameters::from_frequencies(1.0, f.cutoff, f.damping, f.natural, Temperature::Zero, 1.0)
            .unwrap();
        for (a, b) in [(p.friction, q.friction), (p.spring, q.spring), (p.relaxation, q.relaxation)] {
            assert!((a - b).abs() <= 1e-12 * a);
        }
    }

    #[test]
    fn ohmic_frequencies() {
        let p = BathParameters::ohmic(1.0, 0.5, 1.0, Temperature::Zero, 1.0).unwrap();
        let f = p.frequencies().unwrap();
        assert!(f.cutoff.is_infinite());
        assert_eq!(f.damping, 0.5);
        assert_eq!(f.natural, 1.0);
    }

    #[test]
    fn free_particle_inversion() {
        let p = BathParameters::single_relaxation(1.0, 0.5, 0.0, 0.2, Temperature::Zero, 1.0).unwrap();
        let f = p.frequencies().unwrap();
        let root = (1.0f64 - 4.0 * 0.5 * 0.2).sqrt();
        assert!((f.cutoff - (1.0 + root) / 0.4).abs() < 1e-13);
        assert!((f.damping - (1.0 - root) / 0.4).abs() < 1e-13);
    }

    #[test]
    fn invariants_enforced() {
        assert!(BathParameters::single_relaxation(1.0, 2.0, 1.0, 0.6, Temperature::Zero, 1.0).is_err());
        assert!(BathParameters::single_relaxation(1.0, 1.0, 0.0, 0.3, Temperature::Zero, 1.0).is_err());
        assert!(BathParameters::ohmic(0.0, 1.0, 1.0, Temperature::Zero, 1.0).is_err());
        assert!(BathParameters::ohmic(1.0, 1.0, 1.0, Temperature::Classical(0.0), 1.0).is_err());
    }

    #[test]
    fn static_and_undamped_response() {
        let p = fig();
        let a0 = p.response(Complex64::new(0.0, 0.0)).unwrap();
        assert!((a0.re - 1.0 / p.spring).abs() < 1e-15 && a0.im == 0.0);
        let q = BathParameters::ohmic(1.0, 0.0, 2.0, Temperature::Zero, 1.0).unwrap();
        let z = Complex64::new(0.7, 0.1);
        let a = q.response(z).unwrap();
        let b = (Complex64::new(2.0, 0.0) - z * z).inv();
        assert!((a - b).norm() < 1e-15);
    }

    #[test]
    fn factored_form_matches() {
        let p = fig();
        let f = p.frequencies().unwrap();
        let i = Complex64::i();
        for &w in &[0.3, 1.0, 2.5] {
            let z = Complex64::new(w, 1e-12);
            let direct = p.response(z).unwrap();
            let factored = (z + i * (f.cutoff + f.damping))
                / (p.mass * (z + i * f.cutoff) * (-z * z - i * f.damping * z + f.natural * f.natural));
            assert!((direct - factored).norm() < 1e-12 * direct.norm());
            assert!((direct.im - p.response_imag(w)).abs() < 1e-9 * direct.norm());
        }
    }

    #[test]
    fn overdamped_has_imaginary_damped_frequency() {
        let p = BathParameters::from_frequencies(1.0, 20.0, 3.0, 1.0, Temperature::Zero, 1.0).unwrap();
        let f = p.frequencies().unwrap();
        assert!((f.damping - 3.0).abs() < 1e-12 && (f.natural - 1.0).abs() < 1e-12);
        assert!(f.damped.re.abs() < 1e-15 && (f.damped.im - 1.25f64.sqrt()).abs() < 1e-12);
    }
}
