//! Green functions as finite sums of (c + d·t)·e^{−λt}.

use num_complex::Complex64;

use super::{DerivedFrequencies, Model};

/// Below this |ω₁|/scale the damped frequency is treated as zero.
const CRITICAL: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq)]
struct Term {
    c: Complex64,
    d: Complex64,
    rate: Complex64,
}

/// Real function Σ (c + d·t)·e^{−λt} for t ≥ 0 and zero for t < 0.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ExpSum {
    terms: Vec<Term>,
}

impl ExpSum {
    fn push(&mut self, c: Complex64, d: Complex64, rate: Complex64) {
        self.terms.push(Term { c, d, rate });
    }

    pub fn eval(&self, t: f64) -> f64 {
        if t < 0.0 {
            return 0.0;
        }
        self.terms
            .iter()
            .map(|k| ((k.c + k.d * t) * (-k.rate * t).exp()).re)
            .sum()
    }

    /// Time derivative for t > 0 (right derivative at 0).
    pub fn derivative(&self) -> ExpSum {
        ExpSum {
            terms: self
                .terms
                .iter()
                .map(|k| Term { c: k.d - k.rate * k.c, d: -k.rate * k.d, rate: k.rate })
                .collect(),
        }
    }

    /// ∫₀^t of the sum.
    pub fn integral(&self, t: f64) -> f64 {
        if t <= 0.0 {
            return 0.0;
        }
        self.terms
            .iter()
            .map(|k| {
                let x = k.rate * t;
                (k.c * t * phi1(x) + k.d * t * t * phi2(x)).re
            })
            .sum()
    }
}

// (1 − e^{−x})/x
fn phi1(x: Complex64) -> Complex64 {
    if x.norm() < 1e-3 {
        let mut term = Complex64::new(1.0, 0.0);
        let mut sum = term;
        for k in 2..12 {
            term = -term * x / k as f64;
            sum += term;
        }
        sum
    } else {
        (1.0 - (-x).exp()) / x
    }
}

// (1 − (1 + x)e^{−x})/x²
fn phi2(x: Complex64) -> Complex64 {
    if x.norm() < 1e-2 {
        // Σ_{k≥2} (−1)^k (k−1) x^{k−2}/k!
        let mut pow = Complex64::new(1.0, 0.0);
        let mut fact = 2.0;
        let mut sum = Complex64::new(0.5, 0.0);
        for k in 3..16 {
            pow = -pow * x;
            fact *= k as f64;
            sum += pow * ((k - 1) as f64 / fact);
        }
        sum
    } else {
        (1.0 - (1.0 + x) * (-x).exp()) / (x * x)
    }
}

/// Green function of the given parameters as an exponential sum.
pub(crate) fn green_function(model: Model, m: f64, f: &DerivedFrequencies) -> ExpSum {
    let i = Complex64::i();
    let half = Complex64::new(0.5 * f.damping, 0.0);
    // Ohmic: A = 0, C = 1
    let (a, c) = match model {
        Model::Ohmic => (0.0, 1.0),
        Model::SingleRelaxationTime => {
            let d = f.denominator();
            let c = (f.cutoff * f.cutoff + f.natural * f.natural - 0.5 * f.damping * f.damping) / d;
            (f.damping / (m * d), c)
        }
    };
    let mut sum = ExpSum::default();
    if a != 0.0 {
        sum.push(Complex64::new(a, 0.0), Complex64::new(0.0, 0.0), Complex64::new(f.cutoff, 0.0));
    }
    let scale = f.natural.max(f.damping);
    let w1 = f.damped;
    if w1.norm() <= CRITICAL * scale || scale == 0.0 {
        // e^{−γt/2}(−A + (C/m)t)
        sum.push(Complex64::new(-a, 0.0), Complex64::new(c / m, 0.0), half);
    } else {
        let s = c / (2.0 * m) / (i * w1);
        sum.push(-0.5 * a + s, Complex64::new(0.0, 0.0), half - i * w1);
        sum.push(-0.5 * a - s, Complex64::new(0.0, 0.0), half + i * w1);
    }
    sum
}
