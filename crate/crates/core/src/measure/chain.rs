//! Characteristic functions of Gaussian-slit measurement chains.

use std::f64::consts::PI;

use super::{GaussianSum1D, MeasurementKind, MeasurementSpec};
use crate::bath::EquilibriumKernel;
use crate::{Complex64, Error, Result};

/// Value of the chain characteristic function at one set of wavevectors.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainCharacteristic {
    pub k: Vec<f64>,
    pub value: Complex64,
    /// Product of the instrument factors.
    pub measurement_factor: f64,
    /// exp{−½ Σ k_j k_l c(|t_j − t_l|)}.
    pub equilibrium_factor: f64,
}

/// Quadratic forms of a time-ordered Gaussian-slit chain.
///
/// The characteristic function is exp{−½ kᵀ(C + M)k} with C the equilibrium
/// correlation matrix and M the instrument part.
#[derive(Debug, Clone, PartialEq)]
pub struct Chain {
    times: Vec<f64>,
    correlation: Vec<Vec<f64>>,
    instrument: Vec<Vec<f64>>,
}

fn slit_width(spec: &MeasurementSpec) -> Result<f64> {
    spec.validate()?;
    match spec.kind {
        MeasurementKind::GaussianSlit { width, .. } => Ok(width),
        _ => Err(Error::Unsupported("chains accept Gaussian slits only".into())),
    }
}

impl Chain {
    pub fn new(kernel: &EquilibriumKernel, slits: &[MeasurementSpec]) -> Result<Self> {
        Self::build(kernel, slits, true)
    }

    /// Same chain with every commutator set to zero.
    pub fn without_commutators(kernel: &EquilibriumKernel, slits: &[MeasurementSpec]) -> Result<Self> {
        Self::build(kernel, slits, false)
    }

    fn build(kernel: &EquilibriumKernel, slits: &[MeasurementSpec], commutators: bool) -> Result<Self> {
        let n = slits.len();
        if n == 0 {
            return Err(Error::InvalidParameter("a chain needs at least one measurement".into()));
        }
        let widths = slits.iter().map(slit_width).collect::<Result<Vec<_>>>()?;
        let times: Vec<f64> = slits.iter().map(|s| s.time).collect();
        if times.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidParameter("measurement times must be strictly increasing".into()));
        }
        if widths[..n - 1].iter().any(|&w| w == 0.0) {
            return Err(Error::InvalidParameter("only the last measurement may have zero width".into()));
        }
        let x2 = kernel.position_variance()?;
        let mut correlation = vec![vec![0.0; n]; n];
        for j in 0..n {
            correlation[j][j] = x2;
            for l in j + 1..n {
                let c = kernel.correlation(times[l] - times[j])?;
                correlation[j][l] = c;
                correlation[l][j] = c;
            }
        }
        let hbar = kernel.hbar();
        let mut instrument = vec![vec![0.0; n]; n];
        for j in 0..n {
            let s2 = widths[j] * widths[j];
            instrument[j][j] += s2;
            if !commutators || s2 == 0.0 {
                continue;
            }
            let g: Vec<f64> = (0..n)
                .map(|l| if l > j { kernel.green(times[l] - times[j])[0] } else { 0.0 })
                .collect();
            let w = hbar * hbar / (4.0 * s2);
            for a in j + 1..n {
                for b in j + 1..n {
                    instrument[a][b] += w * g[a] * g[b];
                }
            }
        }
        Ok(Chain { times, correlation, instrument })
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    /// Full covariance C + M of the measured positions.
    pub fn covariance(&self) -> Vec<Vec<f64>> {
        let n = self.len();
        (0..n)
            .map(|j| (0..n).map(|l| self.correlation[j][l] + self.instrument[j][l]).collect())
            .collect()
    }

    pub fn characteristic(&self, k: &[f64]) -> Result<ChainCharacteristic> {
        if k.len() != self.len() {
            return Err(Error::InvalidParameter(format!(
                "expected {} wavevectors, got {}",
                self.len(),
                k.len()
            )));
        }
        let form = |m: &Vec<Vec<f64>>| -> f64 {
            let mut q = 0.0;
            for (j, row) in m.iter().enumerate() {
                for (l, v) in row.iter().enumerate() {
                    q += k[j] * k[l] * v;
                }
            }
            q
        };
        let measurement_factor = (-0.5 * form(&self.instrument)).exp();
        let equilibrium_factor = (-0.5 * form(&self.correlation)).exp();
        Ok(ChainCharacteristic {
            k: k.to_vec(),
            value: Complex64::new(measurement_factor * equilibrium_factor, 0.0),
            measurement_factor,
            equilibrium_factor,
        })
    }
}

pub fn chain_characteristic(
    kernel: &EquilibriumKernel,
    slits: &[MeasurementSpec],
    k: &[f64],
) -> Result<ChainCharacteristic> {
    Chain::new(kernel, slits)?.characteristic(k)
}

/// Zero-mean bivariate Gaussian with variances σ², τ² and covariance στρ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BivariateGaussian {
    pub first_variance: f64,
    pub second_variance: f64,
    pub covariance: f64,
}

impl BivariateGaussian {
    pub fn new(first_variance: f64, second_variance: f64, covariance: f64) -> Result<Self> {
        let det = first_variance * second_variance - covariance * covariance;
        if !(first_variance > 0.0 && second_variance > 0.0 && det > 0.0) {
            return Err(Error::Unphysical(format!(
                "covariance is not positive definite (σ² = {first_variance}, τ² = {second_variance}, στρ = {covariance})"
            )));
        }
        Ok(BivariateGaussian { first_variance, second_variance, covariance })
    }

    pub fn correlation_coefficient(&self) -> f64 {
        self.covariance / (self.first_variance * self.second_variance).sqrt()
    }

    fn det(&self) -> f64 {
        self.first_variance * self.second_variance - self.covariance * self.covariance
    }

    pub fn density(&self, x1: f64, x2: f64) -> f64 {
        let det = self.det();
        let q = self.second_variance * x1 * x1 - 2.0 * self.covariance * x1 * x2 + self.first_variance * x2 * x2;
        (-0.5 * q / det).exp() / (2.0 * PI * det.sqrt())
    }

    /// Distribution of the first variable.
    pub fn first_marginal(&self) -> GaussianSum1D {
        GaussianSum1D::gaussian(0.0, self.first_variance)
    }

    /// Distribution of the second variable.
    pub fn second_marginal(&self) -> GaussianSum1D {
        GaussianSum1D::gaussian(0.0, self.second_variance)
    }
}

/// Measured joint distribution for one or two measurements.
#[derive(Debug, Clone, PartialEq)]
pub enum JointDistribution {
    Single(GaussianSum1D),
    Pair(BivariateGaussian),
}

impl JointDistribution {
    /// Density at the instrument readings.
    pub fn density(&self, x: &[f64]) -> Result<f64> {
        match (self, x) {
            (JointDistribution::Single(d), [x1]) => Ok(d.eval(*x1)),
            (JointDistribution::Pair(d), [x1, x2]) => Ok(d.density(*x1, *x2)),
            _ => Err(Error::InvalidParameter("wrong number of readings".into())),
        }
    }
}

pub fn joint_distribution(kernel: &EquilibriumKernel, slits: &[MeasurementSpec]) -> Result<JointDistribution> {
    if slits.len() > 2 {
        return Err(Error::Unsupported(
            "closed-form joint distributions cover at most two measurements".into(),
        ));
    }
    let m = Chain::new(kernel, slits)?.covariance();
    if m.len() == 1 {
        if m[0][0] <= 0.0 {
            return Err(Error::Unphysical("nonpositive single-measurement variance".into()));
        }
        return Ok(JointDistribution::Single(GaussianSum1D::gaussian(0.0, m[0][0])));
    }
    BivariateGaussian::new(m[0][0], m[1][1], m[0][1]).map(JointDistribution::Pair)
}
