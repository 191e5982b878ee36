//! Gaussian integrals over the plane.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Symmetric 2×2 form `a11·x² + 2·a12·x·y + a22·y²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadraticForm2 {
    pub a11: f64,
    pub a12: f64,
    pub a22: f64,
}

impl QuadraticForm2 {
    pub const fn new(a11: f64, a12: f64, a22: f64) -> Self {
        QuadraticForm2 { a11, a12, a22 }
    }

    pub fn det(&self) -> f64 {
        self.a11 * self.a22 - self.a12 * self.a12
    }

    pub fn is_positive_definite(&self) -> bool {
        self.a11 > 0.0 && self.det() > 0.0
    }

    /// Value of the form at (x, y).
    pub fn eval(&self, x: f64, y: f64) -> f64 {
        self.a11 * x * x + 2.0 * self.a12 * x * y + self.a22 * y * y
    }

    pub fn inverse(&self) -> Result<QuadraticForm2> {
        let det = self.det();
        if !(det > 0.0) || !det.is_finite() {
            return Err(Error::Singular(format!("2x2 form has determinant {det}")));
        }
        Ok(QuadraticForm2::new(self.a22 / det, -self.a12 / det, self.a11 / det))
    }

    pub fn swapped(&self) -> QuadraticForm2 {
        QuadraticForm2::new(self.a22, self.a12, self.a11)
    }
}

/// ∫∫ exp{−½ xᵀAx + Bᵀx} d²x = 2π/√det A · exp{½ BᵀA⁻¹B}.
pub fn gaussian_moment_2d(form: &QuadraticForm2, shift: (f64, f64)) -> Result<f64> {
    if !form.is_positive_definite() {
        return Err(Error::Singular(format!(
            "form {form:?} is not positive definite"
        )));
    }
    let inv = form.inverse()?;
    let exponent = 0.5 * inv.eval(shift.0, shift.1);
    Ok(2.0 * PI / form.det().sqrt() * exponent.exp())
}
