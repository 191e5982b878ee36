//! One-dimensional distributions as sums of Gaussians times cosines.

use std::f64::consts::PI;

/// exp(log_weight) · N(x; mean, variance) · cos(frequency·x + phase)
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianTerm {
    pub log_weight: f64,
    pub mean: f64,
    pub variance: f64,
    pub frequency: f64,
    pub phase: f64,
}

impl GaussianTerm {
    pub fn plain(log_weight: f64, mean: f64, variance: f64) -> Self {
        GaussianTerm { log_weight, mean, variance, frequency: 0.0, phase: 0.0 }
    }

    pub fn eval(&self, x: f64) -> f64 {
        let u = x - self.mean;
        let log = self.log_weight - u * u / (2.0 * self.variance) - 0.5 * (2.0 * PI * self.variance).ln();
        log.exp() * (self.frequency * x + self.phase).cos()
    }

    /// ∫ term dx in closed form.
    pub fn integral(&self) -> f64 {
        let k = self.frequency;
        (self.log_weight - 0.5 * k * k * self.variance).exp() * (k * self.mean + self.phase).cos()
    }
}

/// Real function on the line given as a sum of [`GaussianTerm`]s.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct GaussianSum1D {
    pub terms: Vec<GaussianTerm>,
}

impl GaussianSum1D {
    pub fn new(terms: Vec<GaussianTerm>) -> Self {
        GaussianSum1D { terms }
    }

    pub fn gaussian(mean: f64, variance: f64) -> Self {
        GaussianSum1D::new(vec![GaussianTerm::plain(0.0, mean, variance)])
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.terms.iter().map(|t| t.eval(x)).sum()
    }

    /// Total integral in closed form.
    pub fn total(&self) -> f64 {
        self.terms.iter().map(GaussianTerm::integral).sum()
    }

    /// Terms without cosine modulation.
    pub fn direct_part(&self) -> GaussianSum1D {
        GaussianSum1D::new(self.terms.iter().filter(|t| t.frequency == 0.0 && t.phase == 0.0).copied().collect())
    }

    /// Terms carrying a cosine.
    pub fn interference_part(&self) -> GaussianSum1D {
        GaussianSum1D::new(self.terms.iter().filter(|t| t.frequency != 0.0 || t.phase != 0.0).copied().collect())
    }

    /// Largest standard deviation plus largest |mean|, a scale for grids.
    pub fn extent(&self) -> f64 {
        self.terms
            .iter()
            .map(|t| t.mean.abs() + t.variance.sqrt())
            .fold(0.0, f64::max)
    }
}
