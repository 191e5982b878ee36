//! Flags shared by several subcommands.

use clap::{Args, ValueEnum};
use qbm_core::bath::{BathParameters, EquilibriumKernel, Temperature};
use rayon::prelude::*;
use serde::Serialize;

/// Bad flag combination caught before any computation.
#[derive(Debug, thiserror::Error)]
#[error("invalid configuration: {0}")]
pub struct ConfigError(pub String);

pub fn config_error(msg: impl Into<String>) -> anyhow::Error {
    ConfigError(msg.into()).into()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    Ohmic,
    Srt,
}

/// Oscillator and bath in units ħ = m = 1.
#[derive(Debug, Clone, Args, Serialize)]
pub struct ModelArgs {
    /// Bath model.
    #[arg(long, value_enum, default_value_t = ModelKind::Srt)]
    pub model: ModelKind,
    /// Damping rate γ.
    #[arg(long, default_value_t = 10.0 / 13.0)]
    pub gamma: f64,
    /// Bath cutoff Ω of the relaxation-time model.
    #[arg(long = "Omega", default_value_t = 5.0)]
    #[serde(rename = "Omega")]
    pub omega_cut: f64,
    /// Oscillator frequency ω₀; 0 gives the free particle.
    #[arg(long, default_value_t = 1.0)]
    pub omega0: f64,
    /// Temperature kT; 0 means zero temperature.
    #[arg(long, default_value_t = 0.0)]
    pub kt: f64,
    /// Use the high-temperature limit at the given kT.
    #[arg(long)]
    pub classical: bool,
}

impl ModelArgs {
    pub fn temperature(&self) -> anyhow::Result<Temperature> {
        if self.classical {
            if self.kt <= 0.0 {
                return Err(config_error("--classical needs --kt > 0"));
            }
            return Ok(Temperature::Classical(self.kt));
        }
        Ok(if self.kt == 0.0 { Temperature::Zero } else { Temperature::Finite(self.kt) })
    }

    pub fn params(&self) -> anyhow::Result<BathParameters> {
        let temperature = self.temperature()?;
        let p = match self.model {
            ModelKind::Ohmic => BathParameters::ohmic(1.0, self.gamma, self.omega0 * self.omega0, temperature, 1.0)?,
            ModelKind::Srt => {
                BathParameters::from_frequencies(1.0, self.omega_cut, self.gamma, self.omega0, temperature, 1.0)?
            }
        };
        Ok(p)
    }

    pub fn kernel(&self) -> anyhow::Result<EquilibriumKernel> {
        Ok(EquilibriumKernel::new(&self.params()?)?)
    }
}

/// Uniform time grid.
#[derive(Debug, Clone, Args, Serialize)]
pub struct TimeGrid {
    #[arg(long, default_value_t = 0.0)]
    pub tmin: f64,
    #[arg(long, default_value_t = 20.0)]
    pub tmax: f64,
    /// Number of intervals; the grid has steps + 1 points.
    #[arg(long, default_value_t = 400)]
    pub steps: usize,
}

impl TimeGrid {
    pub fn points(&self) -> anyhow::Result<Vec<f64>> {
        if self.tmin < 0.0 {
            return Err(config_error(format!("time grid must start at t >= 0, got --tmin {}", self.tmin)));
        }
        uniform("time", self.tmin, self.tmax, self.steps)
    }
}

/// Uniform grid on one spatial or momentum axis.
#[derive(Debug, Clone, Args, Serialize)]
pub struct SpaceGrid {
    #[arg(long, default_value_t = -5.0, allow_negative_numbers = true)]
    pub xmin: f64,
    #[arg(long, default_value_t = 5.0, allow_negative_numbers = true)]
    pub xmax: f64,
    /// Number of intervals; the grid has xsteps + 1 points.
    #[arg(long, default_value_t = 200)]
    pub xsteps: usize,
}

impl SpaceGrid {
    pub fn points(&self) -> anyhow::Result<Vec<f64>> {
        uniform("x", self.xmin, self.xmax, self.xsteps)
    }
}

pub fn uniform(name: &str, lo: f64, hi: f64, steps: usize) -> anyhow::Result<Vec<f64>> {
    if !(lo.is_finite() && hi.is_finite() && hi > lo) {
        return Err(config_error(format!("{name} grid needs positive extent, got [{lo}, {hi}]")));
    }
    if steps < 1 {
        return Err(config_error(format!("{name} grid needs at least 2 points")));
    }
    Ok((0..=steps).map(|i| lo + (hi - lo) * i as f64 / steps as f64).collect())
}

/// Evaluates `f` on every grid point in parallel, keeping grid order.
pub fn par_rows<F>(grid: &[f64], f: F) -> anyhow::Result<Vec<Vec<f64>>>
where
    F: Fn(f64) -> qbm_core::Result<Vec<f64>> + Sync,
{
    let rows: qbm_core::Result<Vec<Vec<f64>>> = grid.par_iter().map(|&x| f(x)).collect();
    Ok(rows?)
}

pub fn parse_list(name: &str, raw: &[f64], len: Option<usize>) -> anyhow::Result<Vec<f64>> {
    if raw.is_empty() {
        return Err(config_error(format!("--{name} needs at least one value")));
    }
    if let Some(n) = len {
        if raw.len() != n {
            return Err(config_error(format!("--{name} needs {n} values, got {}", raw.len())));
        }
    }
    Ok(raw.to_vec())
}
