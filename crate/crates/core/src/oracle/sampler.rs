//! Exact Gaussian-process sampling of the classical Ohmic Brownian oscillator.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;

use crate::bath::{BathParameters, Model, Temperature};
use crate::{Error, Result};

const BLOCK: usize = 1024;

/// Sampled trajectories on a fixed time grid, stored row by row.
#[derive(Debug, Clone, PartialEq)]
pub struct TrajectoryEnsemble {
    pub samples: usize,
    pub times: Vec<f64>,
    pub positions: Vec<f64>,
    pub seed: u64,
}

impl TrajectoryEnsemble {
    pub fn trajectory(&self, i: usize) -> &[f64] {
        let n = self.times.len();
        &self.positions[i * n..(i + 1) * n]
    }

    /// Positions of every trajectory at grid index j.
    pub fn column(&self, j: usize) -> Vec<f64> {
        let n = self.times.len();
        self.positions.iter().skip(j).step_by(n).copied().collect()
    }

    pub fn mean(&self, j: usize) -> f64 {
        self.column(j).iter().sum::<f64>() / self.samples as f64
    }

    /// Unbiased sample covariance between grid indices j and l.
    pub fn covariance(&self, j: usize, l: usize) -> f64 {
        let (a, b) = (self.column(j), self.column(l));
        let (ma, mb) = (self.mean(j), self.mean(l));
        let sum: f64 = a.iter().zip(&b).map(|(x, y)| (x - ma) * (y - mb)).sum();
        sum / (self.samples as f64 - 1.0)
    }
}

fn classical_kt(p: &BathParameters) -> Result<f64> {
    p.validate()?;
    match (p.model, p.temperature) {
        (Model::Ohmic, Temperature::Classical(kt)) => Ok(kt),
        _ => Err(Error::Unsupported("the sampler covers the classical Ohmic model".into())),
    }
}

/// Stationary classical correlation ⟨x(0)x(t)⟩ of the Ohmic oscillator.
pub fn classical_covariance(p: &BathParameters, t: f64) -> Result<f64> {
    let kt = classical_kt(p)?;
    if p.spring == 0.0 {
        return Err(Error::Divergence("the free particle has no stationary correlation".into()));
    }
    let t = t.abs();
    let g = p.friction / p.mass;
    let w2 = p.spring / p.mass - 0.25 * g * g;
    let decay = (-0.5 * g * t).exp();
    let shape = if w2 > 0.0 {
        let w = w2.sqrt();
        (w * t).cos() + 0.5 * g / w * (w * t).sin()
    } else if w2 < 0.0 {
        let k = (-w2).sqrt();
        // e^{−γt/2}(cosh κt + γ/2κ sinh κt) kept bounded
        let (a, b) = ((-(0.5 * g - k) * t).exp(), (-(0.5 * g + k) * t).exp());
        return Ok(kt / p.spring * (0.5 * (a + b) + 0.25 * g / k * (a - b)));
    } else {
        1.0 + 0.5 * g * t
    };
    Ok(kt / p.spring * decay * shape)
}

// classical ⟨(x(t) − x(0))²⟩ of the free particle
fn free_displacement(p: &BathParameters, kt: f64, t: f64) -> f64 {
    let t = t.abs();
    let g = p.friction / p.mass;
    if g == 0.0 {
        return kt * t * t / p.mass;
    }
    2.0 * kt / p.friction * (t + (-g * t).exp_m1() / g)
}

fn covariance_matrix(p: &BathParameters, kt: f64, times: &[f64]) -> Result<DMatrix<f64>> {
    let n = times.len();
    if p.spring > 0.0 {
        let mut m = DMatrix::zeros(n, n);
        for j in 0..n {
            for l in 0..n {
                m[(j, l)] = classical_covariance(p, times[l] - times[j])?;
            }
        }
        return Ok(m);
    }
    // displacements from the first grid time
    let t0 = times[0];
    let mut m = DMatrix::zeros(n - 1, n - 1);
    for j in 1..n {
        for l in 1..n {
            let a = free_displacement(p, kt, times[j] - t0);
            let b = free_displacement(p, kt, times[l] - t0);
            let c = free_displacement(p, kt, times[l] - times[j]);
            m[(j - 1, l - 1)] = 0.5 * (a + b - c);
        }
    }
    Ok(m)
}

fn fill_normals(rng: &mut ChaCha20Rng, out: &mut [f64]) {
    for pair in out.chunks_mut(2) {
        let u1: f64 = 1.0 - rng.gen::<f64>();
        let u2: f64 = rng.gen();
        let r = (-2.0 * u1.ln()).sqrt();
        let (s, c) = (2.0 * PI * u2).sin_cos();
        pair[0] = r * c;
        if pair.len() > 1 {
            pair[1] = r * s;
        }
    }
}

/// Draws `samples` trajectories on `times`. For K = 0 each trajectory starts
/// at zero and carries the exact free-particle displacement statistics.
pub fn sample_classical(p: &BathParameters, times: &[f64], samples: usize, seed: u64) -> Result<TrajectoryEnsemble> {
    let kt = classical_kt(p)?;
    if samples == 0 || times.is_empty() {
        return Err(Error::InvalidParameter("need at least one sample and one grid time".into()));
    }
    if times.windows(2).any(|w| w[1] <= w[0]) || times.iter().any(|t| !t.is_finite()) {
        return Err(Error::InvalidParameter("grid times must be finite and strictly increasing".into()));
    }
    let n = times.len();
    let offset = usize::from(p.spring == 0.0);
    let dim = n - offset;
    let factor = if dim > 0 {
        let cov = covariance_matrix(p, kt, times)?;
        Some(
            cov.cholesky()
                .ok_or_else(|| Error::Singular("grid covariance is not positive definite".into()))?
                .l(),
        )
    } else {
        None
    };
    let mut positions = vec![0.0; samples * n];
    positions.par_chunks_mut(BLOCK * n).enumerate().for_each(|(block, chunk)| {
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        rng.set_stream(block as u64);
        let mut z = vec![0.0; dim];
        for row in chunk.chunks_mut(n) {
            fill_normals(&mut rng, &mut z);
            if let Some(l) = &factor {
                for i in 0..dim {
                    let mut acc = 0.0;
                    for k in 0..=i {
                        acc += l[(i, k)] * z[k];
                    }
                    row[i + offset] = acc;
                }
            }
        }
    });
    Ok(TrajectoryEnsemble { samples, times: times.to_vec(), positions, seed })
}

/// Kolmogorov–Smirnov distance between a sample and a reference CDF.
pub fn ks_distance<F: Fn(f64) -> f64>(sample: &[f64], cdf: F) -> f64 {
    let mut sorted = sample.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len() as f64;
    sorted
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = cdf(x);
            (f - i as f64 / n).abs().max((f - (i + 1) as f64 / n).abs())
        })
        .fold(0.0, f64::max)
}
