//! Weak-coupling and Weisskopf-Wigner approximations to the kernel.

use num_complex::Complex64;

use super::green::green_function;
use super::kernel::thermal_factor;
use super::{BathParameters, DerivedFrequencies, EquilibriumKernel, Model, Temperature};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CouplingApproximation {
    /// Ohmic-form Green function with γ = Re μ̃(ω₀)/m and ω₁ = √(ω₀² − γ²/4).
    WeakCoupling,
    /// Same damping, ω₁ replaced by ω₀ and the sine correction dropped.
    WeisskopfWigner,
}

/// Approximate kernel with the bath friction frozen at ω₀ = √(K/m).
pub fn weak_coupling(p: &BathParameters, approx: CouplingApproximation) -> Result<EquilibriumKernel> {
    p.validate()?;
    if p.is_free() {
        return Err(Error::Unsupported(
            "the weak coupling approximation is not valid for the free particle".into(),
        ));
    }
    let m = p.mass;
    let w0 = (p.spring / m).sqrt();
    let damping = p.memory(Complex64::new(w0, 0.0)).re / m;
    let damped = match approx {
        CouplingApproximation::WeakCoupling => {
            Complex64::new(w0 * w0 - 0.25 * damping * damping, 0.0).sqrt()
        }
        CouplingApproximation::WeisskopfWigner => Complex64::new(w0, 0.0),
    };
    let freqs = DerivedFrequencies { cutoff: f64::INFINITY, damping, natural: w0, damped };
    let factor = match p.temperature {
        Temperature::Zero => 1.0,
        Temperature::Classical(kt) => 2.0 * kt / (p.hbar * w0),
        Temperature::Finite(kt) => thermal_factor(p.hbar, kt, w0),
    };
    let x2 = p.hbar / (2.0 * m * w0) * factor;
    let green = green_function(Model::Ohmic, m, &freqs);
    Ok(EquilibriumKernel::from_parts(
        *p,
        freqs,
        green,
        x2,
        w0 * w0 * x2,
        approx == CouplingApproximation::WeisskopfWigner,
    ))
}
