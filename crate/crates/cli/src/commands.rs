//! Grid evaluation of the library quantities.

use clap::{Args, ValueEnum};
use qbm_core::measure::{
    cat_pdist, chain_characteristic, conditional_pdist, displaced_conditional, displaced_pair_pdist,
    joint_distribution, JointDistribution, MeasurementSpec,
};
use qbm_core::wigner::{
    cat_wigner, coherent_pair, coherent_wigner, displaced_pair_wigner, equilibrium_wigner, squeezed_wigner,
};
use serde::Serialize;

use crate::args::{config_error, par_rows, parse_list, uniform, ModelArgs, SpaceGrid, TimeGrid};
use crate::table::Table;

fn model_table(header: &[&str], model: &ModelArgs) -> anyhow::Result<Table> {
    let p = model.params()?;
    let mut t = Table::new(header);
    t.comment("units: hbar = m = 1");
    t.param("derived.zeta", p.friction).param("derived.K", p.spring).param("derived.tau", p.relaxation);
    Ok(t)
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct CurveArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub model: ModelArgs,
    #[command(flatten)]
    #[serde(flatten)]
    pub grid: TimeGrid,
}

pub fn green(a: &CurveArgs) -> anyhow::Result<Table> {
    let k = a.model.kernel()?;
    let ts = a.grid.points()?;
    let mut t = model_table(&["t", "G", "Gdot", "Gddot"], &a.model)?;
    t.echo(a);
    t.extend(par_rows(&ts, |x| {
        let [g, dg, ddg] = k.green(x);
        Ok(vec![x, g, dg, ddg])
    })?);
    Ok(t)
}

pub fn msd(a: &CurveArgs) -> anyhow::Result<Table> {
    let k = a.model.kernel()?;
    let ts = a.grid.points()?;
    let mut t = model_table(&["t", "s", "sdot", "sddot"], &a.model)?;
    t.echo(a);
    t.extend(par_rows(&ts, |x| {
        let [s, ds, dds] = k.msd_derivatives(x)?;
        Ok(vec![x, s, ds, dds])
    })?);
    Ok(t)
}

pub fn correlation(a: &CurveArgs) -> anyhow::Result<Table> {
    let k = a.model.kernel()?;
    let ts = a.grid.points()?;
    let mut t = model_table(&["t", "c", "cdot", "cddot"], &a.model)?;
    t.echo(a);
    t.extend(par_rows(&ts, |x| {
        let [c, dc, ddc] = k.correlation_derivatives(x)?;
        Ok(vec![x, c, dc, ddc])
    })?);
    Ok(t)
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct MomentArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub model: ModelArgs,
    /// Leading small-τ form of the velocity variance.
    #[arg(long)]
    pub small_tau: bool,
}

pub fn moments(a: &MomentArgs) -> anyhow::Result<Table> {
    let k = a.model.kernel()?;
    let x2 = k.position_variance()?;
    let v2 = if a.small_tau { k.velocity_variance_small_tau()? } else { k.velocity_variance()? };
    let mut t = model_table(&["position_variance", "velocity_variance"], &a.model)?;
    t.echo(a);
    t.push(vec![x2, v2]);
    Ok(t)
}

/// Gaussian slits at increasing times.
#[derive(Debug, Clone, Args, Serialize)]
pub struct SlitArgs {
    /// Slit widths σ_j, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    pub widths: Vec<f64>,
    /// Measurement times t_j, comma separated.
    #[arg(long, value_delimiter = ',', required = true, allow_negative_numbers = true)]
    pub times: Vec<f64>,
}

impl SlitArgs {
    fn slits(&self) -> anyhow::Result<Vec<MeasurementSpec>> {
        let widths = parse_list("widths", &self.widths, None)?;
        let times = parse_list("times", &self.times, Some(widths.len()))?;
        Ok(widths.iter().zip(&times).map(|(w, t)| MeasurementSpec::gaussian_slit(*w, 0.0, *t)).collect())
    }
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ChainArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub model: ModelArgs,
    #[command(flatten)]
    #[serde(flatten)]
    pub slits: SlitArgs,
    /// Direction of the argument vector k; evaluated at λk.
    #[arg(long, value_delimiter = ',', required = true, allow_negative_numbers = true)]
    pub k: Vec<f64>,
    #[arg(long, default_value_t = 4.0)]
    pub lambda_max: f64,
    #[arg(long, default_value_t = 200)]
    pub lambda_steps: usize,
}

pub fn chain_cf(a: &ChainArgs) -> anyhow::Result<Table> {
    let k = a.model.kernel()?;
    let slits = a.slits.slits()?;
    let dir = parse_list("k", &a.k, Some(slits.len()))?;
    let lambdas = uniform("lambda", 0.0, a.lambda_max, a.lambda_steps)?;
    let mut t = model_table(&["lambda", "re", "im", "measurement_factor", "equilibrium_factor"], &a.model)?;
    t.echo(a);
    t.extend(par_rows(&lambdas, |l| {
        let kv: Vec<f64> = dir.iter().map(|d| l * d).collect();
        let cf = chain_characteristic(&k, &slits, &kv)?;
        Ok(vec![l, cf.value.re, cf.value.im, cf.measurement_factor, cf.equilibrium_factor])
    })?);
    Ok(t)
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct JointArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub model: ModelArgs,
    #[command(flatten)]
    #[serde(flatten)]
    pub slits: SlitArgs,
    #[command(flatten)]
    #[serde(flatten)]
    pub grid: SpaceGrid,
}

pub fn jointdist(a: &JointArgs) -> anyhow::Result<Table> {
    let k = a.model.kernel()?;
    let slits = a.slits.slits()?;
    if slits.len() > 2 {
        return Err(config_error("jointdist takes one or two slits; use chain-cf beyond that"));
    }
    let xs = a.grid.points()?;
    let dist = joint_distribution(&k, &slits)?;
    let mut t = match dist {
        JointDistribution::Single(_) => model_table(&["x", "density"], &a.model)?,
        JointDistribution::Pair(_) => model_table(&["x1", "x2", "density"], &a.model)?,
    };
    t.echo(a);
    match &dist {
        JointDistribution::Single(d) => t.extend(xs.iter().map(|&x| vec![x, d.eval(x)])),
        JointDistribution::Pair(d) => {
            for &x1 in &xs {
                t.extend(xs.iter().map(|&x2| vec![x1, x2, d.density(x1, x2)]));
            }
        }
    }
    Ok(t)
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct PdistArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub model: ModelArgs,
    /// Width σ₁ of the preparing slit.
    #[arg(long, default_value_t = 0.5)]
    pub width: f64,
    /// Center x₁ of the preparing slit.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub center: f64,
    /// Prepare the displaced ground state at x₀ instead of using a slit.
    #[arg(long, allow_negative_numbers = true)]
    pub displaced: Option<f64>,
    /// Time elapsed since the preparation.
    #[arg(long, default_value_t = 1.0)]
    pub t: f64,
    #[command(flatten)]
    #[serde(flatten)]
    pub grid: SpaceGrid,
}

pub fn pdist(a: &PdistArgs) -> anyhow::Result<Table> {
    let k = a.model.kernel()?;
    let xs = a.grid.points()?;
    let cond = match a.displaced {
        Some(x0) => displaced_conditional(&k, x0, a.t)?,
        None => conditional_pdist(&k, &MeasurementSpec::gaussian_slit(a.width, a.center, 0.0), a.t)?,
    };
    let d = cond.distribution();
    let mut t = model_table(&["x", "P"], &a.model)?;
    t.echo(a);
    t.param("center", cond.center).param("variance", cond.variance);
    t.extend(xs.iter().map(|&x| vec![x, d.eval(x)]));
    Ok(t)
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct CatArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub model: ModelArgs,
    /// Width σ₁ of each slit.
    #[arg(long, default_value_t = 0.5)]
    pub width: f64,
    /// Separation d of the slit pair.
    #[arg(long, default_value_t = 3.0)]
    pub separation: f64,
    /// Use a displaced ground-state pair of this separation instead of slits.
    #[arg(long)]
    pub displaced: Option<f64>,
    /// Time elapsed since the preparation.
    #[arg(long, default_value_t = 1.0)]
    pub t: f64,
    #[command(flatten)]
    #[serde(flatten)]
    pub grid: SpaceGrid,
}

pub fn cat(a: &CatArgs) -> anyhow::Result<Table> {
    let k = a.model.kernel()?;
    let xs = a.grid.points()?;
    let cat = match a.displaced {
        Some(d0) => displaced_pair_pdist(&k, d0, a.t)?,
        None => cat_pdist(&k, &MeasurementSpec::slit_pair(a.width, a.separation, 0.0), a.t)?,
    };
    let (direct, cross) = (cat.distribution.direct_part(), cat.distribution.interference_part());
    let mut t = model_table(&["x", "P", "P_direct", "P_interference"], &a.model)?;
    t.echo(a);
    t.param("attenuation", cat.attenuation);
    t.extend(xs.iter().map(|&x| vec![x, cat.distribution.eval(x), direct.eval(x), cross.eval(x)]));
    Ok(t)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum StateKind {
    Eq,
    Coherent,
    Pair,
    Squeezed,
    Cat,
    Displaced,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct WignerArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub model: ModelArgs,
    #[arg(long, value_enum, default_value_t = StateKind::Eq)]
    pub state: StateKind,
    /// Initial position of the coherent state.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub x0: f64,
    /// Initial velocity of the coherent state.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub v0: f64,
    /// Separation of the pair, cat or displaced states.
    #[arg(long, default_value_t = 3.0)]
    pub separation: f64,
    /// Slit width of the cat state.
    #[arg(long, default_value_t = 0.5)]
    pub width: f64,
    /// Squeeze parameter r.
    #[arg(long, default_value_t = 0.5, allow_negative_numbers = true)]
    pub squeeze: f64,
    /// Time elapsed since the preparation.
    #[arg(long, default_value_t = 0.0)]
    pub t: f64,
    #[command(flatten)]
    #[serde(flatten)]
    pub grid: SpaceGrid,
    #[arg(long, default_value_t = -5.0, allow_negative_numbers = true)]
    pub pmin: f64,
    #[arg(long, default_value_t = 5.0, allow_negative_numbers = true)]
    pub pmax: f64,
    #[arg(long, default_value_t = 100)]
    pub psteps: usize,
}

pub fn wigner(a: &WignerArgs) -> anyhow::Result<Table> {
    let k = a.model.kernel()?;
    let qs = a.grid.points()?;
    let ps = uniform("p", a.pmin, a.pmax, a.psteps)?;
    let (state, exponent) = match a.state {
        StateKind::Eq => (equilibrium_wigner(&k)?, None),
        StateKind::Coherent => (coherent_wigner(&k, a.x0, a.v0, a.t)?, None),
        StateKind::Pair => {
            let pair = coherent_pair(&k, a.separation, a.t)?;
            (pair.state, Some(pair.decay_exponent))
        }
        StateKind::Squeezed => (squeezed_wigner(&k, a.squeeze, a.t)?, None),
        StateKind::Cat => {
            let cat = cat_wigner(&k, &MeasurementSpec::slit_pair(a.width, a.separation, 0.0), a.t)?;
            (cat.state, Some(cat.decay_exponent))
        }
        StateKind::Displaced => {
            let cat = displaced_pair_wigner(&k, a.separation, a.t)?;
            (cat.state, Some(cat.decay_exponent))
        }
    };
    let mut t = model_table(&["q", "p", "W"], &a.model)?;
    t.echo(a);
    if let Some(e) = exponent {
        t.param("interference_exponent", e);
    }
    let w = &state.wigner;
    for &q in &qs {
        t.extend(ps.iter().map(|&p| vec![q, p, w.eval(q, p)]));
    }
    Ok(t)
}
