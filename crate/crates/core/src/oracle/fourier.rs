//! Trapezoid inversion of characteristic functions.
//!
//! Convention: cf(k) = ∫ e^{ikx} f(x) dx, so f(x) = (1/2π) ∫ cf(k) e^{−ikx} dk.

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::{Complex64, Error, Result};

/// Symmetric window [−half_width, half_width] sampled at steps + 1 points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FourierWindow {
    pub half_width: f64,
    pub steps: usize,
}

impl FourierWindow {
    pub fn new(half_width: f64, steps: usize) -> Self {
        FourierWindow { half_width, steps }
    }

    fn validate(&self) -> Result<()> {
        if !(self.half_width > 0.0 && self.half_width.is_finite()) || self.steps < 4 || self.steps % 2 != 0 {
            return Err(Error::InvalidParameter("window needs positive width and an even step count ≥ 4".into()));
        }
        Ok(())
    }

    fn nodes(&self) -> Vec<f64> {
        let h = 2.0 * self.half_width / self.steps as f64;
        (0..=self.steps).map(|i| -self.half_width + i as f64 * h).collect()
    }

    // trapezoid weights on the full grid and on every other node
    fn weights(&self) -> (Vec<f64>, Vec<f64>) {
        let h = 2.0 * self.half_width / self.steps as f64;
        let n = self.steps;
        let full = (0..=n).map(|i| if i == 0 || i == n { 0.5 * h } else { h }).collect();
        let half = (0..=n)
            .map(|i| match i {
                _ if i % 2 == 1 => 0.0,
                0 => h,
                _ if i == n => h,
                _ => 2.0 * h,
            })
            .collect();
        (full, half)
    }
}

fn check(estimate: f64, tol: f64) -> Result<()> {
    if estimate > tol || !estimate.is_finite() {
        return Err(Error::Convergence(format!(
            "inversion error estimate {estimate:e} exceeds tolerance {tol:e}"
        )));
    }
    Ok(())
}

/// Density on `xs`; fails if the estimated error exceeds `tol`.
pub fn numeric_inverse_fourier<F>(cf: F, window: FourierWindow, xs: &[f64], tol: f64) -> Result<Vec<f64>>
where
    F: Fn(f64) -> Complex64,
{
    window.validate()?;
    let ks = window.nodes();
    let values: Vec<Complex64> = ks.iter().map(|&k| cf(k)).collect();
    let (full, half) = window.weights();
    let invert = |weights: &[f64], x: f64| -> f64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for ((k, v), w) in ks.iter().zip(&values).zip(weights) {
            if *w != 0.0 {
                acc += v * Complex64::from_polar(*w, -k * x);
            }
        }
        acc.re / (2.0 * PI)
    };
    let edge = values[0].norm().max(values[values.len() - 1].norm());
    let mut estimate: f64 = edge * window.half_width / PI;
    let mut out = Vec::with_capacity(xs.len());
    for &x in xs {
        let f = invert(&full, x);
        estimate = estimate.max((f - invert(&half, x)).abs());
        out.push(f);
    }
    check(estimate, tol)?;
    Ok(out)
}

/// Two-dimensional version: f(x, y) = (1/4π²) ∫∫ cf(u, v) e^{−i(ux + vy)} du dv,
/// returned as rows indexed by x.
pub fn numeric_inverse_fourier_2d<F>(
    cf: F,
    window_u: FourierWindow,
    window_v: FourierWindow,
    xs: &[f64],
    ys: &[f64],
    tol: f64,
) -> Result<Vec<Vec<f64>>>
where
    F: Fn(f64, f64) -> Complex64 + Sync,
{
    window_u.validate()?;
    window_v.validate()?;
    let us = window_u.nodes();
    let vs = window_v.nodes();
    let grid: Vec<Vec<Complex64>> = us.par_iter().map(|&u| vs.iter().map(|&v| cf(u, v)).collect()).collect();
    let mut edge: f64 = 0.0;
    for (i, row) in grid.iter().enumerate() {
        for (j, c) in row.iter().enumerate() {
            if i == 0 || j == 0 || i == us.len() - 1 || j == vs.len() - 1 {
                edge = edge.max(c.norm());
            }
        }
    }
    let (fu, hu) = window_u.weights();
    let (fv, hv) = window_v.weights();
    let transform = |wu: &[f64], wv: &[f64]| -> Vec<Vec<f64>> {
        // contract over u first, then over v
        let partial: Vec<Vec<Complex64>> = xs
            .par_iter()
            .map(|&x| {
                let phase: Vec<Complex64> = us.iter().zip(wu).map(|(u, w)| Complex64::from_polar(*w, -u * x)).collect();
                (0..vs.len())
                    .map(|j| grid.iter().zip(&phase).map(|(row, p)| row[j] * p).sum())
                    .collect()
            })
            .collect();
        partial
            .iter()
            .map(|row| {
                ys.iter()
                    .map(|&y| {
                        let acc: Complex64 = row
                            .iter()
                            .zip(vs.iter().zip(wv))
                            .map(|(t, (v, w))| t * Complex64::from_polar(*w, -v * y))
                            .sum();
                        acc.re / (4.0 * PI * PI)
                    })
                    .collect()
            })
            .collect()
    };
    let full = transform(&fu, &fv);
    let half = transform(&hu, &hv);
    let area = 4.0 * window_u.half_width * window_v.half_width;
    let mut estimate = edge * area / (4.0 * PI * PI);
    for (a, b) in full.iter().zip(&half) {
        for (x, y) in a.iter().zip(b) {
            estimate = estimate.max((x - y).abs());
        }
    }
    check(estimate, tol)?;
    Ok(full)
}
