//! The function V(z) = ∫₀^∞ (1 − cos zy) / (y(1 + y²)) dy and its analytic
//! continuation to the closed right half plane.

use std::sync::OnceLock;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Euler's constant to the precision used throughout.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Radius below which the power series is used.
pub const SERIES_RADIUS: f64 = 8.0;

/// Real part above which the plain asymptotic series is exact to double precision.
const ASYMPTOTIC_RE: f64 = 40.0;

/// Evaluates V(z) for Re z ≥ 0.
///
/// V(z) = log z + γ_E − ½[e^{−z}Ei(z) + e^{z}Ei(−z)], V(0) = 0.
pub fn v_function(z: Complex64) -> Result<Complex64> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::Domain(format!("V(z) needs a finite argument, got {z}")));
    }
    if z.re < 0.0 {
        return Err(Error::Domain(format!("V(z) needs Re z >= 0, got {z}")));
    }
    if z.norm() == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    // V is real on the positive axis, so V(z̄) = conj V(z).
    if z.im < 0.0 {
        return v_upper(z.conj()).map(|v| v.conj());
    }
    v_upper(z)
}

/// Real-argument convenience wrapper.
pub fn v_real(x: f64) -> Result<f64> {
    v_function(Complex64::new(x, 0.0)).map(|v| v.re)
}

fn v_upper(z: Complex64) -> Result<Complex64> {
    if z.norm() <= SERIES_RADIUS {
        v_series(z)
    } else if z.re >= ASYMPTOTIC_RE {
        v_asymptotic(z)
    } else {
        v_large(z)
    }
}

/// V(z) together with its first and second derivatives.
///
/// V'(z) = ½[e^{−z}Ei(z) − e^{z}Ei(−z)] and V''(z) = V(z) − log z − γ_E.
/// At z = 0 the second derivative is infinite; callers must not ask for it.
pub fn v_with_derivatives(z: Complex64) -> Result<[Complex64; 3]> {
    let v = v_function(z)?;
    if z.norm() == 0.0 {
        return Err(Error::Domain("V''(0) is infinite".into()));
    }
    let flip = z.im < 0.0;
    let w = if flip { z.conj() } else { z };
    let d1 = if w.norm() <= SERIES_RADIUS {
        v_prime_series(w)?
    } else if w.re >= ASYMPTOTIC_RE {
        v_prime_asymptotic(w)?
    } else {
        0.5 * (exp_e1(w)? + damped_ei(w))
    };
    let d1 = if flip { d1.conj() } else { d1 };
    let d2 = v - z.ln() - EULER_GAMMA;
    Ok([v, d1, d2])
}

// V'(z) = Σ_{n odd} H_n zⁿ/n! − (log z + γ_E) sinh z
fn v_prime_series(z: Complex64) -> Result<Complex64> {
    let z2 = z * z;
    let mut term = z; // z^{2k+1}/(2k+1)!
    let mut harmonic = 1.0;
    let mut sum = term;
    let mut sinh = term;
    for k in 1..400 {
        let n = 2 * k + 1;
        term = term * z2 / ((n * (n - 1)) as f64);
        harmonic += 1.0 / (n - 1) as f64 + 1.0 / n as f64;
        sum += term * harmonic;
        sinh += term;
        if term.norm() * harmonic <= 1e-18 * sum.norm().max(1e-300) {
            return Ok(sum - (z.ln() + EULER_GAMMA) * sinh);
        }
    }
    Err(Error::Convergence(format!("V' series did not converge at z = {z}")))
}

// V'(z) ~ Σ (2k)!/z^{2k+1}
fn v_prime_asymptotic(z: Complex64) -> Result<Complex64> {
    let inv = z.inv();
    let inv2 = inv * inv;
    let mut term = inv;
    let mut sum = Complex64::new(0.0, 0.0);
    let mut prev = f64::INFINITY;
    for k in 0..200 {
        if k > 0 {
            term = term * inv2 * ((2 * k - 1) as f64 * (2 * k) as f64);
        }
        let size = term.norm();
        if size > prev {
            if prev <= 1e-16 * sum.norm() {
                return Ok(sum);
            }
            break;
        }
        sum += term;
        prev = size;
        if size <= 1e-17 * sum.norm() && k >= 6 {
            return Ok(sum);
        }
    }
    Err(Error::Convergence(format!("V' asymptotic series stalled at z = {z}")))
}

/// V(z) = −(log z + γ_E)(cosh z − 1) + Σ_{k≥1} H_{2k} z^{2k}/(2k)!
pub(crate) fn v_series(z: Complex64) -> Result<Complex64> {
    let z2 = z * z;
    let mut term = Complex64::new(1.0, 0.0); // z^{2k}/(2k)!
    let mut harmonic = 0.0;
    let mut sum = Complex64::new(0.0, 0.0);
    let mut cosh_m1 = Complex64::new(0.0, 0.0);
    for k in 1..400 {
        let n = 2 * k;
        term = term * z2 / ((n * (n - 1)) as f64);
        harmonic += 1.0 / (n - 1) as f64 + 1.0 / n as f64;
        sum += term * harmonic;
        cosh_m1 += term;
        if term.norm() * harmonic <= 1e-18 * sum.norm().max(1e-300) {
            let log_term = z.ln() + EULER_GAMMA;
            return Ok(sum - log_term * cosh_m1);
        }
    }
    Err(Error::Convergence(format!("V series did not converge at z = {z}")))
}

/// Large-Re asymptotic form log z + γ_E − Σ (2k−1)!/z^{2k}.
pub(crate) fn v_asymptotic(z: Complex64) -> Result<Complex64> {
    let inv2 = (z * z).inv();
    let mut term = inv2; // (2k-1)!/z^{2k}
    let mut sum = Complex64::new(0.0, 0.0);
    let lead = z.ln() + EULER_GAMMA;
    let mut prev = f64::INFINITY;
    for k in 1..200 {
        if k > 1 {
            let a = (2 * k - 2) as f64;
            let b = (2 * k - 1) as f64;
            term = term * inv2 * (a * b);
        }
        let size = term.norm();
        if size > prev {
            // smallest term reached; accept only if it is negligible
            if k > 6 && prev <= 1e-16 * lead.norm() {
                return Ok(lead - sum);
            }
            break;
        }
        sum += term;
        prev = size;
        if size <= 1e-17 * lead.norm() && k >= 6 {
            return Ok(lead - sum);
        }
    }
    Err(Error::Convergence(format!("V asymptotic series stalled at z = {z}")))
}

/// V = log z + γ_E + ½e^{z}E1(z) − ½e^{−z}Ei(z), with
/// e^{−z}Ei(z) = e^{−z}(γ_E + log z) + ∫₀¹ e^{−z}(e^{zu} − 1)/u du.
pub(crate) fn v_large(z: Complex64) -> Result<Complex64> {
    let log_term = z.ln() + EULER_GAMMA;
    let e1 = exp_e1(z)?;
    let ei = damped_ei(z);
    Ok(log_term + 0.5 * e1 - 0.5 * ei)
}

// e^{−z}Ei(z) for Re z ≥ 0, Im z ≥ 0.
fn damped_ei(z: Complex64) -> Complex64 {
    (-z).exp() * (z.ln() + EULER_GAMMA) + damped_ein(z)
}

/// e^{z}E1(z) by the modified Lentz continued fraction; |z| should exceed ~2.
pub(crate) fn exp_e1(z: Complex64) -> Result<Complex64> {
    let tiny = 1e-300;
    let one = Complex64::new(1.0, 0.0);
    // E1(z) e^{z} = 1/(z+1− 1²/(z+3− 2²/(z+5− ...)))
    let mut b = z + 1.0;
    let mut c = Complex64::new(1.0 / tiny, 0.0);
    let mut d = one / b;
    let mut h = d;
    for i in 1..500 {
        let an = -((i * i) as f64);
        b += 2.0;
        d = one / (an * d + b);
        c = b + an / c;
        if c.norm() < tiny {
            c = Complex64::new(tiny, 0.0);
        }
        let del = c * d;
        h *= del;
        if (del - one).norm() < 1e-16 {
            return Ok(h);
        }
    }
    Err(Error::Convergence(format!("E1 continued fraction stalled at z = {z}")))
}

// ∫₀¹ e^{−z}(e^{zu} − 1)/u du by composite Gauss-Legendre. The integrand is
// entire in u and bounded for Re z ≥ 0.
fn damped_ein(z: Complex64) -> Complex64 {
    let (nodes, weights) = legendre16();
    let panels = ((z.norm() / 4.0).ceil() as usize).clamp(8, 4096);
    let h = 1.0 / panels as f64;
    let ez = (-z).exp();
    let mut acc = Complex64::new(0.0, 0.0);
    for p in 0..panels {
        let c = (p as f64 + 0.5) * h;
        for (x, w) in nodes.iter().zip(weights) {
            let u = c + 0.5 * h * x;
            acc += *w * ez * expm1(z * u) / u;
        }
    }
    acc * (0.5 * h)
}

fn expm1(w: Complex64) -> Complex64 {
    let (s, c) = w.im.sin_cos();
    let half = (0.5 * w.im).sin();
    let em1 = w.re.exp_m1();
    Complex64::new(em1 * c - 2.0 * half * half, w.re.exp() * s)
}

fn legendre16() -> &'static (Vec<f64>, Vec<f64>) {
    static RULE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    RULE.get_or_init(|| gauss_legendre(16))
}

/// Nodes and weights of the n-point Gauss-Legendre rule on [−1, 1].
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        nodes[i] = x;
        weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    (nodes, weights)
}
