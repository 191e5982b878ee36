//! Data behind the six figures, at γ/ω₀ = 10/13, Ω/ω₀ = 5 where a bath is present.

use std::f64::consts::PI;

use clap::Args;
use qbm_core::bath::{weak_coupling, BathParameters, CouplingApproximation, EquilibriumKernel, Temperature};
use qbm_core::measure::{cat_pdist, displaced_conditional, MeasurementSpec};
use qbm_core::wigner::{coherent_center, coherent_pair_exponent, squeezed_wigner, weisskopf_wigner_exponent};
use serde::Serialize;

use crate::args::{config_error, par_rows, uniform};
use crate::table::Table;

pub const GAMMA: f64 = 10.0 / 13.0;
pub const CUTOFF: f64 = 5.0;

#[derive(Debug, Clone, Args, Serialize)]
pub struct FigureArgs {
    /// Figure number, 1 to 6.
    pub n: u8,
    /// Figure 1: ratio of the final to the initial packet width.
    #[arg(long, default_value_t = 3.0)]
    pub spread_factor: f64,
    /// Figures 1, 3: slit-pair or coherent-pair separation.
    #[arg(long)]
    pub separation: Option<f64>,
    /// Figure 4: squeeze parameter r.
    #[arg(long, default_value_t = 0.5, allow_negative_numbers = true)]
    pub squeeze: f64,
    /// Grid intervals along the curve (or each phase-space axis for figure 4).
    #[arg(long, default_value_t = 200)]
    pub steps: usize,
}

pub fn srt_params() -> qbm_core::Result<BathParameters> {
    BathParameters::from_frequencies(1.0, CUTOFF, GAMMA, 1.0, Temperature::Zero, 1.0)
}

pub fn ohmic_params() -> qbm_core::Result<BathParameters> {
    BathParameters::ohmic(1.0, GAMMA, 1.0, Temperature::Zero, 1.0)
}

pub fn figure(a: &FigureArgs) -> anyhow::Result<Table> {
    let mut t = match a.n {
        1 => spreading_cat(a)?,
        2 => packet_centers(a)?,
        3 => coherent_pair_exponents(a)?,
        4 => squeezed_contours(a)?,
        5 => green_curvature(a)?,
        6 => weak_coupling_msd(a)?,
        n => return Err(config_error(format!("figure number must be 1 to 6, got {n}"))),
    };
    t.echo(a);
    Ok(t)
}

fn bath_comment(t: &mut Table) {
    t.comment("units: hbar = m = omega0 = 1, zero temperature");
    t.param("gamma", GAMMA).param("Omega", CUTOFF);
}

fn spreading_cat(a: &FigureArgs) -> anyhow::Result<Table> {
    if !(a.spread_factor > 1.0) {
        return Err(config_error(format!("--spread-factor must exceed 1, got {}", a.spread_factor)));
    }
    let width = 1.0;
    let d = a.separation.unwrap_or(8.0);
    let free = EquilibriumKernel::new(&BathParameters::ohmic(1.0, 0.0, 0.0, Temperature::Zero, 1.0)?)?;
    let prep = MeasurementSpec::slit_pair(width, d, 0.0);
    // w² = σ² + t²/4σ² reaches (fσ)² at t = 2σ²√(f² − 1)
    let later = 2.0 * width * width * (a.spread_factor.powi(2) - 1.0).sqrt();
    let start = cat_pdist(&free, &prep, 0.0)?;
    let end = cat_pdist(&free, &prep, later)?;
    let direct = end.distribution.direct_part();
    let reach = 0.5 * d + 4.0 * width * a.spread_factor;
    let xs = uniform("x", -reach, reach, a.steps)?;
    let mut t = Table::new(&["x", "P_initial", "P_t", "P0_t"]);
    t.comment("free particle, no bath, zero temperature; units hbar = m = 1");
    t.param("width", width).param("separation", d).param("t", later);
    t.param("attenuation_initial", start.attenuation).param("attenuation_t", end.attenuation);
    t.extend(xs.iter().map(|&x| vec![x, start.distribution.eval(x), end.distribution.eval(x), direct.eval(x)]));
    Ok(t)
}

fn packet_centers(a: &FigureArgs) -> anyhow::Result<Table> {
    let k = EquilibriumKernel::new(&srt_params()?)?;
    let x0 = 1.0;
    let ts = uniform("time", 0.0, 15.0, a.steps)?;
    let mut t = Table::new(&["t", "x_coherent", "x_displaced"]);
    bath_comment(&mut t);
    t.param("x0", x0).param("v0", 0.0);
    t.extend(par_rows(&ts, |s| {
        Ok(vec![s, coherent_center(&k, x0, 0.0, s)?.0, displaced_conditional(&k, x0, s)?.center])
    })?);
    Ok(t)
}

fn coherent_pair_exponents(a: &FigureArgs) -> anyhow::Result<Table> {
    let p = srt_params()?;
    let k = EquilibriumKernel::new(&p)?;
    let weak = weak_coupling(&p, CouplingApproximation::WeakCoupling)?;
    let d = a.separation.unwrap_or(1.0);
    let ts = uniform("time", 0.0, 0.5, a.steps)?;
    let mut t = Table::new(&["t", "A_exact", "A_WW", "A_weak"]);
    bath_comment(&mut t);
    t.param("separation", d);
    t.extend(par_rows(&ts, |s| {
        Ok(vec![
            s,
            coherent_pair_exponent(&k, d, s)?,
            weisskopf_wigner_exponent(&p, d, s)?,
            coherent_pair_exponent(&weak, d, s)?,
        ])
    })?);
    Ok(t)
}

fn squeezed_contours(a: &FigureArgs) -> anyhow::Result<Table> {
    let k = EquilibriumKernel::new(&srt_params()?)?;
    let x2 = k.position_variance()?;
    let v2 = k.velocity_variance()?;
    let period = 2.0 * PI / k.frequencies().damped.re;
    let axis = uniform("u", -3.0, 3.0, a.steps.min(400))?;
    let mut t = Table::new(&["t", "u", "v", "W"]);
    bath_comment(&mut t);
    t.comment("u = q/sqrt(<x^2>), v = p/(m sqrt(<xdot^2>)); W is the density in (u, v)");
    t.param("squeeze", a.squeeze).param("period", period);
    let scale = (x2 * v2).sqrt();
    for epoch in [0.0, 0.25 * period, 0.5 * period] {
        let w = squeezed_wigner(&k, a.squeeze, epoch)?.wigner;
        for &u in &axis {
            t.extend(axis.iter().map(|&v| vec![epoch, u, v, scale * w.eval(u * x2.sqrt(), v * v2.sqrt())]));
        }
    }
    Ok(t)
}

fn green_curvature(a: &FigureArgs) -> anyhow::Result<Table> {
    let srt = EquilibriumKernel::new(&srt_params()?)?;
    let ohmic = EquilibriumKernel::new(&ohmic_params()?)?;
    let ts = uniform("time", 0.0, 10.0, a.steps)?;
    let mut t = Table::new(&["t", "Gddot_srt", "Gddot_ohmic"]);
    bath_comment(&mut t);
    t.param("ohmic.zeta", GAMMA).param("ohmic.K", 1.0);
    t.extend(ts.iter().map(|&s| vec![s, srt.green(s)[2], ohmic.green(s)[2]]));
    Ok(t)
}

fn weak_coupling_msd(a: &FigureArgs) -> anyhow::Result<Table> {
    let p = srt_params()?;
    let k = EquilibriumKernel::new(&p)?;
    let weak = weak_coupling(&p, CouplingApproximation::WeakCoupling)?;
    let ts = uniform("time", 0.0, 10.0, a.steps)?;
    let mut t = Table::new(&["t", "s_exact", "s_weak"]);
    bath_comment(&mut t);
    t.extend(par_rows(&ts, |s| Ok(vec![s, k.msd(s)?, weak.msd(s)?]))?);
    Ok(t)
}
