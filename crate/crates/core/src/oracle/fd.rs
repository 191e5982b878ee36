//! Fluctuation-dissipation integrals evaluated directly from Im α(ω).

use std::f64::consts::PI;

use crate::bath::{BathParameters, Model, Temperature};
use crate::numerics::{integrate, SemiInfinite};
use crate::{Error, Result};

const REL_TOL: f64 = 1e-11;

/// Im α(ω) for α = 1/(K − mω² − iω μ̃(ω)).
pub fn response_imag(p: &BathParameters, omega: f64) -> f64 {
    let (re_mu, im_mu) = match p.model {
        Model::Ohmic => (p.friction, 0.0),
        Model::SingleRelaxationTime => {
            let wt = omega * p.relaxation;
            let d = 1.0 + wt * wt;
            (p.friction / d, p.friction * wt / d)
        }
    };
    let re = p.spring - p.mass * omega * omega + omega * im_mu;
    let im = omega * re_mu;
    im / (re * re + im * im)
}

// coth(ħω/2kT), with the classical variant expanded to first order
fn occupation(p: &BathParameters, omega: f64) -> f64 {
    match p.temperature {
        Temperature::Zero => 1.0,
        Temperature::Classical(kt) => 2.0 * kt / (p.hbar * omega),
        Temperature::Finite(kt) if kt == 0.0 => 1.0,
        Temperature::Finite(kt) => 1.0 / (p.hbar * omega / (2.0 * kt)).tanh(),
    }
}

fn scales(p: &BathParameters) -> Vec<f64> {
    let mut out = vec![(p.spring / p.mass).sqrt(), p.friction / p.mass];
    if p.model == Model::SingleRelaxationTime && p.relaxation > 0.0 {
        out.push(1.0 / p.relaxation);
    }
    if let Temperature::Finite(kt) | Temperature::Classical(kt) = p.temperature {
        if kt > 0.0 {
            out.push(2.0 * kt / p.hbar);
        }
    }
    out.retain(|x| *x > 0.0 && x.is_finite());
    out
}

fn spectral<W: Fn(f64) -> f64>(p: &BathParameters, with_occupation: bool, weight: W, period: Option<f64>) -> Result<f64> {
    p.validate()?;
    let points = scales(p);
    let scale = points.iter().cloned().fold(0.0, f64::max).max(1e-300);
    let mut quad = SemiInfinite::new(1e-300).rel_tol(REL_TOL).breakpoints(&points).scale(scale);
    if let Some(period) = period {
        quad = quad.period(period);
    }
    let e = quad.integrate(|w| {
        if w == 0.0 {
            return 0.0;
        }
        let n = if with_occupation { occupation(p, w) } else { 1.0 };
        response_imag(p, w) * n * weight(w)
    })?;
    Ok(e.value)
}

/// s(t) = (2ħ/π) ∫ Im α coth (1 − cos ωt) dω.
pub fn quad_msd(p: &BathParameters, t: f64) -> Result<f64> {
    let t = t.abs();
    if t == 0.0 {
        return Ok(0.0);
    }
    let v = spectral(p, true, |w| 2.0 * (0.5 * w * t).sin().powi(2), Some(2.0 * PI / t))?;
    Ok(2.0 * p.hbar / PI * v)
}

/// c(t) = (ħ/π) ∫ Im α coth cos ωt dω.
pub fn quad_correlation(p: &BathParameters, t: f64) -> Result<f64> {
    if p.spring == 0.0 {
        return Err(Error::Divergence("the free particle has no stationary correlation".into()));
    }
    let t = t.abs();
    let period = if t > 0.0 { Some(2.0 * PI / t) } else { None };
    Ok(p.hbar / PI * spectral(p, true, |w| (w * t).cos(), period)?)
}

/// ⟨ẋ²⟩ = (ħ/π) ∫ ω² Im α coth dω.
pub fn quad_velocity_variance(p: &BathParameters) -> Result<f64> {
    let classical = matches!(p.temperature, Temperature::Classical(_));
    if p.model == Model::Ohmic && p.friction > 0.0 && !classical {
        return Err(Error::Divergence("the Ohmic velocity variance diverges".into()));
    }
    Ok(p.hbar / PI * spectral(p, true, |w| w * w, None)?)
}

/// G(t) = (2/π) ∫ Im α sin ωt dω.
pub fn quad_green(p: &BathParameters, t: f64) -> Result<f64> {
    if t <= 0.0 {
        return Ok(0.0);
    }
    Ok(2.0 / PI * spectral(p, false, |w| (w * t).sin(), Some(2.0 * PI / t))?)
}

/// Gaussian-slit chain characteristic function from one-dimensional
/// quadratures of the instrument overlaps and quadrature correlations.
pub fn chain_characteristic_quadrature(p: &BathParameters, widths: &[f64], times: &[f64], k: &[f64]) -> Result<f64> {
    let n = widths.len();
    if times.len() != n || k.len() != n {
        return Err(Error::InvalidParameter("widths, times and k must have equal length".into()));
    }
    let mut log = 0.0;
    for j in 0..n {
        for l in 0..n {
            log -= 0.5 * k[j] * k[l] * quad_correlation(p, times[l] - times[j])?;
        }
    }
    let mut product = 1.0;
    for j in 0..n {
        let sigma = widths[j];
        if sigma == 0.0 {
            continue;
        }
        let mut shift = 0.0;
        for l in j + 1..n {
            shift += k[l] * p.hbar * quad_green(p, times[l] - times[j])?;
        }
        let a = 0.5 * shift;
        let norm = 1.0 / (2.0 * PI * sigma * sigma).sqrt();
        // f(x − a) f(x + a) e^{ikx}; the sine part vanishes by symmetry
        let overlap = |x: f64| {
            let u = x - a;
            let v = x + a;
            norm * (-(u * u + v * v) / (4.0 * sigma * sigma)).exp() * (k[j] * x).cos()
        };
        let reach = 12.0 * sigma + a.abs();
        product *= integrate(overlap, -reach, reach, 1e-14)?.value;
    }
    Ok(product * log.exp())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn figure() -> BathParameters {
        let tau = 13.0 / 75.0;
        BathParameters::single_relaxation(1.0, 3880.0 / 5625.0, 13.0 / 15.0, tau, Temperature::Zero, 1.0).unwrap()
    }

    #[test]
    fn green_starts_with_unit_slope() {
        let p = figure();
        let g = quad_green(&p, 1e-3).unwrap();
        assert!((g / 1e-3 - 1.0).abs() < 1e-5, "{g}");
    }

    #[test]
    fn undamped_classical_variance() {
        let p = BathParameters::ohmic(1.0, 1e-3, 1.0, Temperature::Classical(2.0), 1.0).unwrap();
        let c0 = quad_correlation(&p, 0.0).unwrap();
        assert!((c0 - 2.0).abs() < 1e-8, "{c0}");
    }

    #[test]
    fn msd_vanishes_at_origin() {
        assert_eq!(quad_msd(&figure(), 0.0).unwrap(), 0.0);
    }
}
