//! Equilibrium kernel: Green function, mean square displacement,
//! correlation and second moments for one parameter set.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::green::{green_function, ExpSum};
use super::{BathParameters, DerivedFrequencies, Model, Temperature};
use crate::error::{Error, Result};
use crate::numerics::{v_with_derivatives, SemiInfinite};

const QUAD_REL_TOL: f64 = 1e-11;

#[derive(Debug, Clone)]
enum Fluctuation {
    /// s(t) = Re Σ a·V(λt).
    VSum(Vec<(Complex64, Complex64)>),
    /// s(t) = factor·∫₀^t G.
    IntegratedGreen(f64),
    /// Fluctuation-dissipation integrals evaluated numerically.
    Quadrature { kt: f64 },
    /// s(t) = 2⟨x²⟩(1 − e^{−γt/2} cos ωt).
    Decaying { x2: f64, damping: f64, omega: f64 },
}

/// Evaluators for G, s, c and the equilibrium moments of one bath setup.
#[derive(Debug, Clone)]
pub struct EquilibriumKernel {
    params: BathParameters,
    freqs: DerivedFrequencies,
    green: [ExpSum; 3],
    position_var: Result<f64>,
    velocity_var: Result<f64>,
    fluct: Fluctuation,
}

fn free_divergence() -> Error {
    Error::Divergence("⟨x²⟩ is infinite for the free particle".into())
}

fn ohmic_velocity_divergence() -> Error {
    Error::Divergence("⟨ẋ²⟩ is logarithmically divergent for the Ohmic model".into())
}

/// arccos(x)/√(1 − x²), continued analytically through x = 1.
pub(crate) fn arccos_ratio(x: f64) -> f64 {
    let u = x - 1.0;
    if u.abs() < 1e-4 {
        1.0 - u / 3.0 + 2.0 * u * u / 15.0
    } else if x < 1.0 {
        x.acos() / (1.0 - x * x).sqrt()
    } else {
        x.acosh() / (x * x - 1.0).sqrt()
    }
}

/// coth(ħω/2kT), with kT = 0 meaning 1.
pub(crate) fn thermal_factor(hbar: f64, kt: f64, omega: f64) -> f64 {
    if kt == 0.0 {
        1.0
    } else {
        1.0 / (hbar * omega / (2.0 * kt)).tanh()
    }
}

impl EquilibriumKernel {
    pub fn new(params: &BathParameters) -> Result<Self> {
        let freqs = params.frequencies()?;
        let green = green_function(params.model, params.mass, &freqs);
        let green = [green.clone(), green.derivative(), green.derivative().derivative()];
        let mut k = EquilibriumKernel {
            params: *params,
            freqs,
            green,
            position_var: Err(free_divergence()),
            velocity_var: Err(free_divergence()),
            fluct: Fluctuation::IntegratedGreen(0.0),
        };
        if params.friction == 0.0 {
            k.undamped();
        } else {
            match params.temperature {
                Temperature::Zero => k.zero_temperature(),
                Temperature::Classical(kt) => {
                    k.position_var = if params.is_free() { Err(free_divergence()) } else { Ok(kt / params.spring) };
                    k.velocity_var = Ok(kt / params.mass);
                    k.fluct = Fluctuation::IntegratedGreen(2.0 * kt);
                }
                Temperature::Finite(kt) => k.finite_temperature(kt)?,
            }
        }
        Ok(k)
    }

    pub(crate) fn from_parts(
        params: BathParameters,
        freqs: DerivedFrequencies,
        green: ExpSum,
        position_var: f64,
        velocity_var: f64,
        decaying: bool,
    ) -> Self {
        let fluct = if decaying {
            Fluctuation::Decaying {
                x2: position_var,
                damping: freqs.damping,
                omega: freqs.damped.re,
            }
        } else {
            Fluctuation::IntegratedGreen(2.0 * params.mass * velocity_var)
        };
        EquilibriumKernel {
            params,
            freqs,
            green: [green.clone(), green.derivative(), green.derivative().derivative()],
            position_var: Ok(position_var),
            velocity_var: Ok(velocity_var),
            fluct,
        }
    }

    // No bath: free oscillator or free particle, closed form at every temperature.
    fn undamped(&mut self) {
        let p = &self.params;
        let w0 = (p.spring / p.mass).sqrt();
        let kt = match p.temperature {
            Temperature::Zero => 0.0,
            Temperature::Classical(kt) | Temperature::Finite(kt) => kt,
        };
        let v2 = if w0 == 0.0 {
            kt / p.mass
        } else {
            let factor = match p.temperature {
                Temperature::Zero => 1.0,
                Temperature::Classical(kt) => 2.0 * kt / (p.hbar * w0),
                Temperature::Finite(kt) => thermal_factor(p.hbar, kt, w0),
            };
            p.hbar * w0 / (2.0 * p.mass) * factor
        };
        self.velocity_var = Ok(v2);
        self.position_var = if w0 == 0.0 { Err(free_divergence()) } else { Ok(v2 / (w0 * w0)) };
        self.fluct = Fluctuation::IntegratedGreen(2.0 * p.mass * v2);
    }

    fn zero_temperature(&mut self) {
        let p = self.params;
        let f = self.freqs;
        let (m, hbar) = (p.mass, p.hbar);
        let (g, w0) = (f.damping, f.natural);
        let i = Complex64::i();
        let pref = 2.0 * hbar / (m * PI);
        let mut terms = Vec::new();
        // nudge a critically damped ω₁ off zero; the V terms are analytic in ω₁
        let w1 = if f.damped.norm() < 1e-5 * w0.max(g) {
            Complex64::new(1e-5 * w0.max(g), 0.0)
        } else {
            f.damped
        };
        let half = Complex64::new(0.5 * g, 0.0);
        match p.model {
            Model::SingleRelaxationTime => {
                let o = f.cutoff;
                let d = f.denominator();
                terms.push((Complex64::new(-pref * g / d, 0.0), Complex64::new(o, 0.0)));
                for w in [w1, -w1] {
                    let num = o * o - (half - i * w) * (half - i * w);
                    terms.push((pref * num / (w * d) / (2.0 * i), half + i * w));
                }
                if p.is_free() {
                    self.position_var = Err(free_divergence());
                    self.velocity_var = Ok(hbar * g * o / (PI * m * (o - g)) * (o / g).ln());
                } else {
                    let h = arccos_ratio(g / (2.0 * w0)) / w0;
                    let lg = (o / w0).ln();
                    let x2 = hbar * ((o * o + w0 * w0 - 0.5 * g * g) * h - g * lg) / (PI * m * d);
                    let v2 = hbar
                        * ((o * o * (w0 * w0 - 0.5 * g * g) + w0.powi(4)) * h + g * o * o * lg)
                        / (PI * m * d);
                    self.position_var = Ok(x2);
                    self.velocity_var = Ok(v2);
                }
            }
            Model::Ohmic => {
                for w in [w1, -w1] {
                    terms.push((pref / w / (2.0 * i), half + i * w));
                }
                self.position_var = if p.is_free() {
                    Err(free_divergence())
                } else {
                    Ok(hbar * arccos_ratio(g / (2.0 * w0)) / (PI * m * w0))
                };
                self.velocity_var = Err(ohmic_velocity_divergence());
            }
        }
        // a zero rate contributes V(0) = 0 at every time
        terms.retain(|(_, rate)| rate.norm() > 0.0);
        self.fluct = Fluctuation::VSum(terms);
    }

    fn finite_temperature(&mut self, kt: f64) -> Result<()> {
        self.fluct = Fluctuation::Quadrature { kt };
        let p = self.params;
        self.position_var = if p.is_free() {
            Err(free_divergence())
        } else {
            Ok(self.fd_integral(kt, |_| 1.0, None)?.0 * p.hbar / PI)
        };
        self.velocity_var = match p.model {
            Model::Ohmic => Err(ohmic_velocity_divergence()),
            Model::SingleRelaxationTime => Ok(self.fd_integral(kt, |w| w * w, None)?.0 * p.hbar / PI),
        };
        Ok(())
    }

    // ∫₀^∞ Im α(ω) coth(ħω/2kT) weight(ω) dω
    fn fd_integral<W: Fn(f64) -> f64>(&self, kt: f64, weight: W, period: Option<f64>) -> Result<(f64, f64)> {
        let p = &self.params;
        let f = &self.freqs;
        let mut points = vec![f.natural, f.damped.re, f.damping, 0.5 * f.damping];
        if kt > 0.0 {
            points.push(2.0 * kt / p.hbar);
        }
        if f.cutoff.is_finite() {
            points.push(f.cutoff);
        }
        let mut quad = SemiInfinite::new(1e-300)
            .rel_tol(QUAD_REL_TOL)
            .breakpoints(&points)
            .scale(f.natural.max(f.damping));
        if let Some(period) = period {
            quad = quad.period(period);
        }
        let e = quad.integrate(|w| {
            if w == 0.0 {
                return 0.0;
            }
            p.response_imag(w) * thermal_factor(p.hbar, kt, w) * weight(w)
        })?;
        Ok((e.value, e.error))
    }

    pub fn params(&self) -> &BathParameters {
        &self.params
    }

    pub fn frequencies(&self) -> &DerivedFrequencies {
        &self.freqs
    }

    pub fn hbar(&self) -> f64 {
        self.params.hbar
    }

    pub fn mass(&self) -> f64 {
        self.params.mass
    }

    pub fn is_free(&self) -> bool {
        self.params.is_free()
    }

    /// (G, Ġ, G̈) at time t; all zero for t < 0.
    pub fn green(&self, t: f64) -> [f64; 3] {
        if t < 0.0 {
            return [0.0; 3];
        }
        [self.green[0].eval(t), self.green[1].eval(t), self.green[2].eval(t)]
    }

    /// Imaginary coefficient of [x(t), x(t')] = iħ(G(t'−t) − G(t−t')).
    pub fn commutator(&self, t: f64, t_prime: f64) -> f64 {
        self.hbar() * (self.green[0].eval(t_prime - t) - self.green[0].eval(t - t_prime))
    }

    /// ⟨x²⟩.
    pub fn position_variance(&self) -> Result<f64> {
        self.position_var.clone()
    }

    /// ⟨ẋ²⟩.
    pub fn velocity_variance(&self) -> Result<f64> {
        self.velocity_var.clone()
    }

    /// Small-relaxation-time form of ⟨ẋ²⟩ at zero temperature.
    pub fn velocity_variance_small_tau(&self) -> Result<f64> {
        let p = &self.params;
        if p.model != Model::SingleRelaxationTime || p.temperature != Temperature::Zero || p.is_free() {
            return Err(Error::Unsupported(
                "the small-τ velocity formula needs a zero-temperature relaxation-time oscillator".into(),
            ));
        }
        let f = &self.freqs;
        let (g, w0) = (f.damping, f.natural);
        let h = arccos_ratio(g / (2.0 * w0)) / w0;
        Ok(p.hbar / (PI * p.mass) * (-g * (w0 * p.relaxation).ln() + (w0 * w0 - 0.5 * g * g) * h))
    }

    /// Mean square displacement s(t) = ⟨(x(t) − x(0))²⟩.
    pub fn msd(&self, t: f64) -> Result<f64> {
        let t = t.abs();
        if t == 0.0 {
            return Ok(0.0);
        }
        match &self.fluct {
            Fluctuation::VSum(terms) => {
                let mut s = 0.0;
                for (a, rate) in terms {
                    s += (a * crate::numerics::v_function(rate * t)?).re;
                }
                Ok(s)
            }
            Fluctuation::IntegratedGreen(factor) => Ok(factor * self.green[0].integral(t)),
            Fluctuation::Quadrature { kt } => {
                let period = 2.0 * PI / t;
                let v = self
                    .fd_integral(*kt, |w| 2.0 * (0.5 * w * t).sin().powi(2), Some(period))?
                    .0;
                Ok(2.0 * self.hbar() / PI * v)
            }
            Fluctuation::Decaying { x2, damping, omega } => {
                Ok(2.0 * x2 * (1.0 - (-0.5 * damping * t).exp() * (omega * t).cos()))
            }
        }
    }

    /// (s, ṡ, s̈) at time t ≥ 0.
    pub fn msd_derivatives(&self, t: f64) -> Result<[f64; 3]> {
        if t < 0.0 {
            let [s, ds, dds] = self.msd_derivatives(-t)?;
            return Ok([s, -ds, dds]);
        }
        if t == 0.0 {
            let v2 = match &self.fluct {
                Fluctuation::Decaying { x2, damping, omega } => {
                    x2 * (omega * omega - 0.25 * damping * damping)
                }
                _ => self.velocity_var.clone()?,
            };
            return Ok([0.0, 0.0, 2.0 * v2]);
        }
        match &self.fluct {
            Fluctuation::VSum(terms) => {
                let mut out = [0.0; 3];
                for (a, rate) in terms {
                    let [v, d1, d2] = v_with_derivatives(rate * t)?;
                    out[0] += (a * v).re;
                    out[1] += (a * rate * d1).re;
                    out[2] += (a * rate * rate * d2).re;
                }
                Ok(out)
            }
            Fluctuation::IntegratedGreen(factor) => Ok([
                factor * self.green[0].integral(t),
                factor * self.green[0].eval(t),
                factor * self.green[1].eval(t),
            ]),
            Fluctuation::Quadrature { kt } => {
                let period = 2.0 * PI / t;
                let c = 2.0 * self.hbar() / PI;
                let s = self.msd(t)?;
                let ds = self.fd_integral(*kt, |w| w * (w * t).sin(), Some(period))?.0;
                let dds = self.fd_integral(*kt, |w| w * w * (w * t).cos(), Some(period))?.0;
                Ok([s, c * ds, c * dds])
            }
            Fluctuation::Decaying { x2, damping, omega } => {
                let e = (-0.5 * damping * t).exp();
                let (sn, cs) = (omega * t).sin_cos();
                let h = 0.5 * damping;
                Ok([
                    2.0 * x2 * (1.0 - e * cs),
                    2.0 * x2 * e * (h * cs + omega * sn),
                    2.0 * x2 * e * ((omega * omega - h * h) * cs - 2.0 * h * omega * sn),
                ])
            }
        }
    }

    /// Correlation c(t) = ⟨x²⟩ − s(t)/2.
    pub fn correlation(&self, t: f64) -> Result<f64> {
        let x2 = self.position_var.clone()?;
        Ok(x2 - 0.5 * self.msd(t)?)
    }

    /// (c, ċ, c̈) at time t.
    pub fn correlation_derivatives(&self, t: f64) -> Result<[f64; 3]> {
        let x2 = self.position_var.clone()?;
        let [s, ds, dds] = self.msd_derivatives(t)?;
        Ok([x2 - 0.5 * s, -0.5 * ds, -0.5 * dds])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bath::{weak_coupling, CouplingApproximation};
    use crate::numerics::SemiInfinite;

    fn fig(temp: Temperature) -> BathParameters {
        BathParameters::from_frequencies(1.0, 5.0, 10.0 / 13.0, 1.0, temp, 1.0).unwrap()
    }

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(1e-300)
    }

    #[test]
    fn green_initial_values() {
        let srt = EquilibriumKernel::new(&fig(Temperature::Zero)).unwrap();
        let [g, dg, ddg] = srt.green(0.0);
        assert!(g.abs() < 1e-15 && (dg - 1.0).abs() < 1e-14 && ddg.abs() < 1e-13);
        let p = BathParameters::ohmic(2.0, 0.6, 1.5, Temperature::Zero, 1.0).unwrap();
        let ohm = EquilibriumKernel::new(&p).unwrap();
        let [g, dg, ddg] = ohm.green(0.0);
        assert!(g.abs() < 1e-15 && (dg - 0.5).abs() < 1e-15);
        assert!((ddg + 0.6 / 4.0).abs() < 1e-15);
        assert_eq!(ohm.green(-0.3), [0.0; 3]);
    }

    #[test]
    fn dissipationless_green() {
        let p = BathParameters::ohmic(1.0, 0.0, 4.0, Temperature::Zero, 1.0).unwrap();
        let k = EquilibriumKernel::new(&p).unwrap();
        for &t in &[0.1, 1.0, 7.3] {
            assert!((k.green(t)[0] - (2.0 * t).sin() / 2.0).abs() < 1e-15);
        }
    }

    #[test]
    fn free_particle_green() {
        let p = BathParameters::single_relaxation(1.0, 0.5, 0.0, 0.2, Temperature::Zero, 1.0).unwrap();
        let k = EquilibriumKernel::new(&p).unwrap();
        let f = k.frequencies();
        let (o, g) = (f.cutoff, f.damping);
        for &t in &[0.05, 1.0, 10.0] {
            let exact = (o * o * (1.0 - (-g * t).exp()) - g * g * (1.0 - (-o * t).exp()))
                / (0.5 * (o * o - g * g));
            assert!(rel(k.green(t)[0], exact) < 1e-13);
        }
    }

    #[test]
    fn green_matches_inverse_transform() {
        let p = fig(Temperature::Zero);
        let k = EquilibriumKernel::new(&p).unwrap();
        let t = 1.0;
        let q = SemiInfinite::new(1e-14)
            .breakpoints(&[1.0, 5.0])
            .period(2.0 * PI / t)
            .integrate(|w| p.response_imag(w) * (w * t).sin())
            .unwrap();
        assert!(rel(k.green(t)[0], 2.0 / PI * q.value) < 1e-10);
    }

    #[test]
    fn zero_temperature_closed_forms_match_quadrature() {
        let exact = EquilibriumKernel::new(&fig(Temperature::Zero)).unwrap();
        let quad = EquilibriumKernel::new(&fig(Temperature::Finite(0.0))).unwrap();
        assert!(rel(exact.position_variance().unwrap(), quad.position_variance().unwrap()) < 1e-9);
        assert!(rel(exact.velocity_variance().unwrap(), quad.velocity_variance().unwrap()) < 1e-9);
        for &t in &[0.01, 0.3, 1.0, 4.0, 20.0] {
            let a = exact.msd_derivatives(t).unwrap();
            let b = quad.msd_derivatives(t).unwrap();
            for j in 0..3 {
                assert!((a[j] - b[j]).abs() < 1e-8 * b[0].abs().max(b[j].abs()), "t={t} j={j}: {a:?} {b:?}");
            }
        }
    }

    #[test]
    fn overdamped_oscillator() {
        let p = BathParameters::from_frequencies(1.0, 20.0, 3.0, 1.0, Temperature::Zero, 1.0).unwrap();
        let exact = EquilibriumKernel::new(&p).unwrap();
        let quad = EquilibriumKernel::new(&p.with_temperature(Temperature::Finite(0.0)).unwrap()).unwrap();
        assert!(rel(exact.position_variance().unwrap(), quad.position_variance().unwrap()) < 1e-9);
        assert!(rel(exact.velocity_variance().unwrap(), quad.velocity_variance().unwrap()) < 1e-9);
        for &t in &[0.05, 1.0, 6.0] {
            assert!(rel(exact.msd(t).unwrap(), quad.msd(t).unwrap()) < 1e-8);
        }
    }

    #[test]
    fn free_zero_temperature() {
        let p = BathParameters::single_relaxation(1.0, 0.5, 0.0, 0.2, Temperature::Zero, 1.0).unwrap();
        let k = EquilibriumKernel::new(&p).unwrap();
        let f = *k.frequencies();
        let (o, g) = (f.cutoff, f.damping);
        for &t in &[0.1, 2.0, 30.0] {
            let v = |x: f64| crate::numerics::v_real(x).unwrap();
            let closed = 2.0 / (PI * 0.5) * (o * o * v(g * t) - g * g * v(o * t)) / (o * o - g * g);
            assert!(rel(k.msd(t).unwrap(), closed) < 1e-12);
        }
        let quad = EquilibriumKernel::new(&p.with_temperature(Temperature::Finite(0.0)).unwrap()).unwrap();
        assert!(rel(k.velocity_variance().unwrap(), quad.velocity_variance().unwrap()) < 1e-9);
        assert!(rel(k.msd(3.0).unwrap(), quad.msd(3.0).unwrap()) < 1e-8);
        assert!(matches!(k.position_variance(), Err(Error::Divergence(_))));
        assert!(k.correlation(1.0).is_err());
    }

    #[test]
    fn classical_free_particle() {
        let p = BathParameters::ohmic(1.0, 0.4, 0.0, Temperature::Classical(2.0), 1.0).unwrap();
        let k = EquilibriumKernel::new(&p).unwrap();
        let g = 0.4;
        for &t in &[0.01, 1.0, 25.0] {
            let exact = 2.0 * 2.0 / 0.4 * (t - (1.0 - (-g * t as f64).exp()) / g);
            assert!(rel(k.msd(t).unwrap(), exact) < 1e-12);
        }
    }

    #[test]
    fn classical_moments_and_quadrature() {
        let p = fig(Temperature::Classical(100.0));
        let k = EquilibriumKernel::new(&p).unwrap();
        assert!(rel(k.position_variance().unwrap(), 100.0 / p.spring) < 1e-15);
        assert_eq!(k.velocity_variance().unwrap(), 100.0);
        let q = EquilibriumKernel::new(&p.with_temperature(Temperature::Finite(100.0)).unwrap()).unwrap();
        for &t in &[0.5, 2.0] {
            assert!(rel(q.msd(t).unwrap(), k.msd(t).unwrap()) < 1e-3);
        }
    }

    #[test]
    fn short_and_long_time_laws() {
        let k = EquilibriumKernel::new(&fig(Temperature::Zero)).unwrap();
        let v2 = k.velocity_variance().unwrap();
        let tau = k.params().relaxation;
        for &t in &[1e-4 * tau, 5e-4 * tau] {
            let r = k.msd(t).unwrap() / (v2 * t * t);
            assert!((r - 1.0).abs() < 0.01, "r = {r}");
        }
        let x2 = k.position_variance().unwrap();
        let late = 50.0 / k.frequencies().damping;
        assert!((k.msd(late).unwrap() / (2.0 * x2) - 1.0).abs() < 1e-3);
        assert!(k.correlation(late).unwrap().abs() < 1e-3 * x2);
        assert!(rel(k.correlation(0.0).unwrap(), x2) < 1e-15);
    }

    #[test]
    fn ohmic_limit_continuity() {
        let ohm = EquilibriumKernel::new(&BathParameters::ohmic(1.0, 0.5, 1.0, Temperature::Zero, 1.0).unwrap())
            .unwrap();
        let srt = EquilibriumKernel::new(
            &BathParameters::single_relaxation(1.0, 0.5, 1.0, 1e-4, Temperature::Zero, 1.0).unwrap(),
        )
        .unwrap();
        for &t in &[0.5, 1.0, 3.0, 10.0] {
            assert!(rel(srt.green(t)[0], ohm.green(t)[0]) < 1e-3);
            assert!(rel(srt.msd(t).unwrap(), ohm.msd(t).unwrap()) < 1e-3);
        }
        assert!(rel(srt.position_variance().unwrap(), ohm.position_variance().unwrap()) < 1e-3);
    }

    #[test]
    fn ohmic_velocity_diverges() {
        let k = EquilibriumKernel::new(&BathParameters::ohmic(1.0, 0.5, 1.0, Temperature::Zero, 1.0).unwrap())
            .unwrap();
        assert!(matches!(k.velocity_variance(), Err(Error::Divergence(_))));
        let x2 = k.position_variance().unwrap();
        let w1 = (1.0f64 - 0.0625).sqrt();
        assert!(rel(x2, (0.25f64).acos() / (PI * w1)) < 1e-14);
    }

    #[test]
    fn ground_state_limit() {
        let k = EquilibriumKernel::new(&BathParameters::ohmic(1.0, 1e-9, 1.0, Temperature::Zero, 1.0).unwrap())
            .unwrap();
        assert!((k.position_variance().unwrap() - 0.5).abs() < 1e-9);
    }

    #[test]
    fn small_tau_velocity_formula_is_close_for_small_tau() {
        let p = BathParameters::single_relaxation(1.0, 0.2, 1.0, 1e-3, Temperature::Zero, 1.0).unwrap();
        let k = EquilibriumKernel::new(&p).unwrap();
        assert!(rel(k.velocity_variance_small_tau().unwrap(), k.velocity_variance().unwrap()) < 1e-2);
    }

    #[test]
    fn weak_coupling_exact_for_classical_ohmic() {
        let p = BathParameters::ohmic(1.0, 0.3, 1.0, Temperature::Classical(3.0), 1.0).unwrap();
        let exact = EquilibriumKernel::new(&p).unwrap();
        let weak = weak_coupling(&p, CouplingApproximation::WeakCoupling).unwrap();
        for &t in &[0.2, 1.0, 9.0] {
            assert!(rel(weak.msd(t).unwrap(), exact.msd(t).unwrap()) < 1e-12);
        }
    }

    #[test]
    fn weak_coupling_damping() {
        let p = fig(Temperature::Zero);
        let weak = weak_coupling(&p, CouplingApproximation::WeakCoupling).unwrap();
        let w0 = (p.spring / p.mass).sqrt();
        let expected = p.friction / p.mass / (1.0 + w0 * w0 * p.relaxation * p.relaxation);
        assert!(rel(weak.frequencies().damping, expected) < 1e-14);
        let free = BathParameters::ohmic(1.0, 0.3, 0.0, Temperature::Zero, 1.0).unwrap();
        assert!(weak_coupling(&free, CouplingApproximation::WeakCoupling).is_err());
    }

    #[test]
    fn weak_msd_derivatives_consistent() {
        let p = fig(Temperature::Zero);
        for approx in [CouplingApproximation::WeakCoupling, CouplingApproximation::WeisskopfWigner] {
            let k = weak_coupling(&p, approx).unwrap();
            let t = 1.3;
            let h = 1e-5;
            let [_, ds, dds] = k.msd_derivatives(t).unwrap();
            let fd = (k.msd(t + h).unwrap() - k.msd(t - h).unwrap()) / (2.0 * h);
            let fdd = (k.msd(t + h).unwrap() - 2.0 * k.msd(t).unwrap() + k.msd(t - h).unwrap()) / (h * h);
            assert!((ds - fd).abs() < 1e-8 && (dds - fdd).abs() < 1e-4);
        }
    }

    #[test]
    fn no_bath_free_particle_is_exact() {
        let p = BathParameters::ohmic(1.0, 0.0, 0.0, Temperature::Zero, 1.0).unwrap();
        let k = EquilibriumKernel::new(&p).unwrap();
        assert_eq!(k.green(2.5)[0], 2.5);
        assert_eq!(k.msd(2.5).unwrap(), 0.0);
    }

    proptest::proptest! {
        #[test]
        fn uncertainty_bound(o in 2.0f64..50.0, g in 0.01f64..1.5, w in 0.3f64..3.0) {
            let p = BathParameters::from_frequencies(1.0, o * w, g * w, w, Temperature::Zero, 1.0).unwrap();
            let k = EquilibriumKernel::new(&p).unwrap();
            let prod = k.position_variance().unwrap() * k.velocity_variance().unwrap();
            proptest::prop_assert!(prod >= 0.25 * (1.0 - 1e-12), "{prod}");
        }

        #[test]
        fn causality(t in -50.0f64..-1e-12) {
            let k = EquilibriumKernel::new(&fig(Temperature::Zero)).unwrap();
            proptest::prop_assert_eq!(k.green(t), [0.0; 3]);
        }
    }
}
