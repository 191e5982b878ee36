//! Adaptive Gauss-Kronrod quadrature on finite and semi-infinite ranges.

use crate::error::{Error, Result};

// 21-point Kronrod extension of the 10-point Gauss rule (QUADPACK qk21).
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689,
    0.973_906_528_517_171_720_077_964_012_084,
    0.930_157_491_355_708_226_001_207_180_060,
    0.865_063_366_688_984_510_732_096_688_423,
    0.780_817_726_586_416_897_063_717_578_345,
    0.679_409_568_299_024_406_234_327_365_115,
    0.562_757_134_668_604_683_339_000_099_273,
    0.433_395_394_129_247_190_799_265_943_166,
    0.294_392_862_701_460_198_131_126_603_104,
    0.148_874_338_981_631_210_884_826_001_130,
    0.0,
];
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062,
    0.032_558_162_307_964_727_478_818_972_459,
    0.054_755_896_574_351_996_031_381_300_245,
    0.075_039_674_810_919_952_767_043_140_916,
    0.093_125_454_583_697_605_535_065_465_083,
    0.109_387_158_802_297_641_899_210_590_326,
    0.123_491_976_262_065_851_077_600_197_838,
    0.134_709_217_311_473_325_928_054_001_772,
    0.142_775_938_577_060_080_797_094_273_139,
    0.147_739_104_901_338_491_374_841_515_972,
    0.149_445_554_002_916_905_664_936_468_390,
];
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893,
    0.149_451_349_150_580_593_145_776_339_658,
    0.219_086_362_515_982_043_995_534_934_228,
    0.269_266_719_309_996_355_091_226_921_569,
    0.295_524_224_714_752_870_173_892_994_651,
];

/// Result of a quadrature with its error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
    /// Integral of |f|, used to judge cancellation.
    pub abs_value: f64,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    abs_value: f64,
    // true when the error estimate is at the rounding floor
    at_floor: bool,
}

fn gk21<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Segment {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kronrod = WGK[10] * fc;
    let mut gauss = 0.0;
    let mut abs = WGK[10] * fc.abs();
    for j in 0..10 {
        let x = h * XGK[j];
        let f1 = f(c - x);
        let f2 = f(c + x);
        kronrod += WGK[j] * (f1 + f2);
        abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    let value = kronrod * h;
    let raw = ((kronrod - gauss) * h).abs();
    let floor = 50.0 * f64::EPSILON * abs * h.abs();
    Segment {
        a,
        b,
        value,
        error: raw.max(floor),
        abs_value: abs * h.abs(),
        at_floor: raw <= floor,
    }
}

/// Adaptive integration of `f` over `[a, b]`.
///
/// Stops once the summed error estimate is below `max(abs_tol, rel_tol·|I|)`.
pub fn integrate_with<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    abs_tol: f64,
    rel_tol: f64,
    max_segments: usize,
) -> Result<Estimate> {
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::Domain(format!("finite limits required, got [{a}, {b}]")));
    }
    if a == b {
        return Ok(Estimate { value: 0.0, error: 0.0, abs_value: 0.0, evaluations: 0 });
    }
    let mut segs = vec![gk21(&f, a, b)];
    let mut evaluations = 21;
    loop {
        let value: f64 = segs.iter().map(|s| s.value).sum();
        let error: f64 = segs.iter().map(|s| s.error).sum();
        let target = abs_tol.max(rel_tol * value.abs());
        if error <= target {
            let abs_value = segs.iter().map(|s| s.abs_value).sum();
            return Ok(Estimate { value, error, abs_value, evaluations });
        }
        if segs.iter().all(|s| s.at_floor) {
            // rounding limits the estimate; further splitting cannot help
            let abs_value = segs.iter().map(|s| s.abs_value).sum();
            return Ok(Estimate { value, error, abs_value, evaluations });
        }
        if segs.len() >= max_segments {
            return Err(Error::Convergence(format!(
                "quadrature on [{a}, {b}] reached {max_segments} segments with error {error:e} > {target:e}"
            )));
        }
        let (idx, worst) = segs
            .iter()
            .enumerate()
            .filter(|(_, s)| !s.at_floor)
            .max_by(|x, y| x.1.error.total_cmp(&y.1.error))
            .map(|(i, s)| (i, *s))
            .expect("non-empty");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            return Err(Error::Convergence(format!(
                "segment [{}, {}] cannot be split further",
                worst.a, worst.b
            )));
        }
        if !worst.value.is_finite() {
            return Err(Error::Convergence(format!(
                "non-finite integrand on [{}, {}]",
                worst.a, worst.b
            )));
        }
        segs[idx] = gk21(&f, worst.a, mid);
        segs.push(gk21(&f, mid, worst.b));
        evaluations += 42;
    }
}

/// Adaptive integration over a finite range with an absolute tolerance.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> Result<Estimate> {
    integrate_with(f, a, b, tol, 0.0, 20_000)
}

/// Integral of `f` over `[0, ∞)` to absolute tolerance `tol`.
pub fn integrate_semi_infinite<F: Fn(f64) -> f64>(f: F, tol: f64) -> Result<f64> {
    SemiInfinite::new(tol).integrate(f).map(|e| e.value)
}

/// Configurable integrator for `[0, ∞)`.
///
/// The range is cut at the given breakpoints, then the tail is covered by
/// panels that double in width, or by half-period panels when a period is
/// set. Half-period sums that have not settled within the budget are
/// finished by repeated averaging of the partial sums.
#[derive(Debug, Clone)]
pub struct SemiInfinite {
    abs_tol: f64,
    rel_tol: f64,
    breakpoints: Vec<f64>,
    period: Option<f64>,
    scale: f64,
    max_panels: usize,
}

impl SemiInfinite {
    pub fn new(abs_tol: f64) -> Self {
        SemiInfinite {
            abs_tol,
            rel_tol: 0.0,
            breakpoints: Vec::new(),
            period: None,
            scale: 1.0,
            max_panels: 4000,
        }
    }

    pub fn rel_tol(mut self, rel_tol: f64) -> Self {
        self.rel_tol = rel_tol;
        self
    }

    pub fn breakpoints(mut self, points: &[f64]) -> Self {
        self.breakpoints = points
            .iter()
            .copied()
            .filter(|p| p.is_finite() && *p > 0.0)
            .collect();
        self.breakpoints.sort_by(f64::total_cmp);
        self.breakpoints.dedup();
        self
    }

    /// Oscillation period of the tail.
    pub fn period(mut self, period: f64) -> Self {
        if period.is_finite() && period > 0.0 {
            self.period = Some(period);
        }
        self
    }

    /// Width of the first tail panel when no breakpoint is given.
    pub fn scale(mut self, scale: f64) -> Self {
        if scale.is_finite() && scale > 0.0 {
            self.scale = scale;
        }
        self
    }

    pub fn max_panels(mut self, n: usize) -> Self {
        self.max_panels = n.max(4);
        self
    }

    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> Result<Estimate> {
        if !(self.abs_tol > 0.0 || self.rel_tol > 0.0) {
            return Err(Error::InvalidParameter("tolerance must be positive".into()));
        }
        let seg_tol = self.abs_tol / (4.0 * (self.breakpoints.len() + 1) as f64);
        let mut total = Estimate { value: 0.0, error: 0.0, abs_value: 0.0, evaluations: 0 };
        let mut lo = 0.0;
        for &bp in &self.breakpoints {
            let e = integrate_with(&f, lo, bp, seg_tol, self.rel_tol, 20_000)?;
            accumulate(&mut total, &e);
            lo = bp;
        }
        match self.period {
            None => self.geometric_tail(&f, lo, total),
            Some(p) => self.periodic_tail(&f, lo, p, total),
        }
    }

    fn settled(&self, total: &Estimate, panel: &Estimate) -> bool {
        let target = self.abs_tol.max(self.rel_tol * total.value.abs()) / 8.0;
        panel.value.abs() <= target && panel.abs_value <= target.max(panel.error)
    }

    fn geometric_tail<F: Fn(f64) -> f64>(&self, f: &F, lo: f64, mut total: Estimate) -> Result<Estimate> {
        let mut width = if lo > 0.0 { lo } else { self.scale };
        let mut a = lo;
        let mut quiet = 0;
        for _ in 0..self.max_panels.min(1100) {
            let b = a + width;
            let tol = self.abs_tol.max(self.rel_tol * total.value.abs()) / 16.0;
            let e = integrate_with(f, a, b, tol, self.rel_tol, 20_000)?;
            accumulate(&mut total, &e);
            if self.settled(&total, &e) {
                quiet += 1;
                if quiet >= 2 {
                    return Ok(total);
                }
            } else {
                quiet = 0;
            }
            a = b;
            width *= 2.0;
            if !a.is_finite() {
                break;
            }
        }
        Err(Error::Convergence(format!(
            "semi-infinite tail did not decay (reached ω = {a:e})"
        )))
    }

    fn periodic_tail<F: Fn(f64) -> f64>(
        &self,
        f: &F,
        lo: f64,
        period: f64,
        mut total: Estimate,
    ) -> Result<Estimate> {
        let half = 0.5 * period;
        // align the first panel edge to a multiple of the half period
        let first = (lo / half).ceil() * half;
        if first > lo {
            let e = integrate_with(f, lo, first, self.abs_tol / 16.0, self.rel_tol, 20_000)?;
            accumulate(&mut total, &e);
        }
        let base = total.value;
        let mut partial = Vec::with_capacity(self.max_panels);
        let mut running = 0.0;
        let mut quiet = 0;
        for k in 0..self.max_panels {
            let a = first + k as f64 * half;
            let tol = self.abs_tol.max(self.rel_tol * total.value.abs()) / 64.0;
            let e = integrate_with(f, a, a + half, tol, self.rel_tol, 2_000)?;
            running += e.value;
            partial.push(running);
            total.error += e.error;
            total.abs_value += e.abs_value;
            total.evaluations += e.evaluations;
            total.value = base + running;
            if self.settled(&total, &e) {
                quiet += 1;
                if quiet >= 2 {
                    return Ok(total);
                }
            } else {
                quiet = 0;
            }
        }
        let (limit, spread) = averaged_limit(&partial);
        let target = self.abs_tol.max(self.rel_tol * (base + limit).abs());
        if spread > target {
            return Err(Error::Convergence(format!(
                "oscillatory tail unresolved after {} half periods (spread {spread:e})",
                self.max_panels
            )));
        }
        total.value = base + limit;
        total.error += spread;
        Ok(total)
    }
}

fn accumulate(total: &mut Estimate, e: &Estimate) {
    total.value += e.value;
    total.error += e.error;
    total.abs_value += e.abs_value;
    total.evaluations += e.evaluations;
}

// Repeated pairwise averaging of the last partial sums of an alternating
// series; returns the limit and the change at the final level.
fn averaged_limit(partial: &[f64]) -> (f64, f64) {
    let m = partial.len().min(16);
    let mut level: Vec<f64> = partial[partial.len() - m..].to_vec();
    let mut spread = f64::INFINITY;
    while level.len() > 1 {
        let next: Vec<f64> = level.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect();
        spread = (next[next.len() - 1] - level[level.len() - 1]).abs();
        level = next;
    }
    (level[0], spread)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn polynomial_is_exact() {
        let e = integrate(|x| x.powi(7) - 3.0 * x * x, -1.0, 2.0, 1e-14).unwrap();
        let exact = (2f64.powi(8) - 1.0) / 8.0 - (8.0 + 1.0);
        assert!((e.value - exact).abs() < 1e-12);
    }

    #[test]
    fn exponential_tail() {
        let v = integrate_semi_infinite(|u| (-u).exp(), 1e-12).unwrap();
        assert!((v - 1.0).abs() < 1e-12);
    }

    #[test]
    fn half_gaussian() {
        let v = integrate_semi_infinite(|u| (-0.5 * u * u).exp(), 1e-12).unwrap();
        assert!((v - (PI / 2.0).sqrt()).abs() < 1e-12);
    }

    #[test]
    fn sqrt_endpoint_singularity() {
        let e = integrate(|x| 1.0 / x.sqrt(), 0.0, 1.0, 1e-10).unwrap();
        assert!((e.value - 2.0).abs() < 1e-9);
    }

    #[test]
    fn dirichlet_integral_uses_alternating_tail() {
        let e = SemiInfinite::new(1e-9)
            .period(2.0 * PI)
            .max_panels(400)
            .integrate(|x| if x == 0.0 { 1.0 } else { x.sin() / x })
            .unwrap();
        assert!((e.value - PI / 2.0).abs() < 1e-8, "{}", e.value);
    }

    #[test]
    fn slowly_decaying_tail_reports_failure() {
        let r = SemiInfinite::new(1e-10).max_panels(50).integrate(|x| 1.0 / (1.0 + x));
        assert!(matches!(r, Err(Error::Convergence(_))));
    }
}
