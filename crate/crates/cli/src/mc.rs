//! Classical trajectory sampling checked against the closed-form covariance.

use clap::Args;
use qbm_core::bath::{BathParameters, Temperature};
use qbm_core::oracle::{classical_covariance, sample_classical};
use serde::Serialize;

use crate::args::{config_error, parse_list};
use crate::table::Table;

#[derive(Debug, Clone, Args, Serialize)]
pub struct McArgs {
    /// Ohmic friction γ.
    #[arg(long, default_value_t = 0.5)]
    pub gamma: f64,
    #[arg(long, default_value_t = 1.0)]
    pub omega0: f64,
    #[arg(long, default_value_t = 1.0)]
    pub kt: f64,
    #[arg(long, default_value_t = 100_000)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Lags at which the two-time covariance is compared.
    #[arg(long, value_delimiter = ',', default_value = "0.5,1,2,4,8")]
    pub lags: Vec<f64>,
    /// Width of the acceptance band in standard errors.
    #[arg(long, default_value_t = 3.0)]
    pub band: f64,
}

/// The table, and how many rows fell outside the band.
pub fn mc_validate(a: &McArgs) -> anyhow::Result<(Table, usize)> {
    if a.omega0 <= 0.0 {
        return Err(config_error("mc-validate needs a bound oscillator, --omega0 > 0"));
    }
    if a.samples < 2 {
        return Err(config_error("mc-validate needs at least 2 samples"));
    }
    let lags = parse_list("lags", &a.lags, None)?;
    let p = BathParameters::ohmic(1.0, a.gamma, a.omega0 * a.omega0, Temperature::Classical(a.kt), 1.0)?;
    let mut times = vec![0.0];
    times.extend(&lags);
    let ensemble = sample_classical(&p, &times, a.samples, a.seed)?;
    let var0 = classical_covariance(&p, 0.0)?;
    let mut t = Table::new(&["lag", "covariance_mc", "covariance_exact", "standard_error", "z"]);
    t.comment("classical Ohmic oscillator; units m = 1");
    t.echo(a);
    let mut outside = 0;
    for (j, &lag) in times.iter().enumerate() {
        let exact = classical_covariance(&p, lag)?;
        // sample covariance of a bivariate normal pair has variance (σ₀²σ_t² + c²)/N
        let se = ((var0 * var0 + exact * exact) / a.samples as f64).sqrt();
        let mc = ensemble.covariance(0, j);
        let z = (mc - exact) / se;
        if z.abs() > a.band {
            outside += 1;
        }
        t.push(vec![lag, mc, exact, se, z]);
    }
    Ok((t, outside))
}
