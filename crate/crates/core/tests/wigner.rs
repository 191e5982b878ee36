use std::f64::consts::PI;

use qbm_core::bath::{weak_coupling, BathParameters, CouplingApproximation, EquilibriumKernel, Temperature};
use qbm_core::measure::{cat_pdist, displaced_pair_pdist, MeasurementSpec};
use qbm_core::numerics::integrate_with;
use qbm_core::oracle::{numeric_inverse_fourier_2d, FourierWindow};
use qbm_core::wigner::*;
use qbm_core::Error;

fn figure_params() -> BathParameters {
    BathParameters::single_relaxation(1.0, 3880.0 / 5625.0, 13.0 / 15.0, 13.0 / 75.0, Temperature::Zero, 1.0).unwrap()
}

fn figure() -> EquilibriumKernel {
    EquilibriumKernel::new(&figure_params()).unwrap()
}

fn warm() -> EquilibriumKernel {
    EquilibriumKernel::new(&figure_params().with_temperature(Temperature::Finite(0.7)).unwrap()).unwrap()
}

fn free_srt() -> EquilibriumKernel {
    EquilibriumKernel::new(
        &BathParameters::single_relaxation(1.0, 0.5, 0.0, 0.2, Temperature::Zero, 1.0).unwrap(),
    )
    .unwrap()
}

fn ohmic() -> EquilibriumKernel {
    EquilibriumKernel::new(&BathParameters::ohmic(1.0, 0.4, 1.0, Temperature::Zero, 1.0).unwrap()).unwrap()
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * (1.0 + b.abs())
}

fn prepared_states() -> Vec<(&'static str, PreparedWigner)> {
    let k = figure();
    let w = warm();
    let pair = MeasurementSpec::slit_pair(0.4, 2.5, 0.0);
    vec![
        ("equilibrium", equilibrium_wigner(&k).unwrap()),
        ("coherent", coherent_wigner(&w, 0.8, -0.3, 0.6).unwrap()),
        ("coherent pair", coherent_pair(&k, 2.0, 0.4).unwrap().state),
        ("coherent pair warm", coherent_pair(&w, 1.5, 1.3).unwrap().state),
        ("squeezed", squeezed_wigner(&k, 0.6, 0.9).unwrap()),
        ("cat", cat_wigner(&k, &pair, 0.7).unwrap().state),
        ("cat warm", cat_wigner(&w, &pair, 0.2).unwrap().state),
        ("free cat", cat_wigner(&free_srt(), &pair, 0.8).unwrap().state),
        ("displaced pair", displaced_pair_wigner(&k, 3.0, 0.5).unwrap().state),
    ]
}

fn plane_integral(w: &WignerGaussianSum) -> f64 {
    let (eq, ep) = w.extent();
    let (lq, lp) = (eq + 10.0 * eq.max(1.0), ep + 10.0 * ep.max(1.0));
    integrate_with(
        |q| integrate_with(|p| w.eval(q, p), -lp, lp, 1e-13, 1e-11, 20000).unwrap().value,
        -lq,
        lq,
        1e-11,
        1e-10,
        20000,
    )
    .unwrap()
    .value
}

#[test]
fn unit_mass() {
    for (name, s) in prepared_states() {
        assert!(close(s.wigner.total(), 1.0, 1e-12), "{name}: {}", s.wigner.total());
        let numeric = plane_integral(&s.wigner);
        assert!((numeric - 1.0).abs() < 1e-6, "{name}: {numeric}");
        let cf0 = s.characteristic.eval(0.0, 0.0);
        assert!((cf0.re - 1.0).abs() < 1e-12 && cf0.im.abs() < 1e-12, "{name}: {cf0}");
    }
}

// sup |W − inverse transform of W̃| on a 41×41 grid covering the state
fn inversion_gap(s: &PreparedWigner) -> f64 {
    let h = s.characteristic.hbar;
    let (eq, ep) = s.wigner.extent();
    let xs: Vec<f64> = (0..41).map(|i| -eq * 1.2 + 2.4 * eq * i as f64 / 40.0).collect();
    let ys: Vec<f64> = (0..41).map(|i| -ep * 1.2 + 2.4 * ep * i as f64 / 40.0).collect();
    // spread of W̃ in u = −P/ħ and v = −Q/ħ, plus the shift of any cosh bump
    let inv = s.characteristic.form.inverse().unwrap();
    let (mut su, mut sv) = (0.0_f64, 0.0_f64);
    for f in &s.characteristic.factors {
        if f.kind == FactorKind::Cosh {
            su = su.max((h * (inv.a11 * f.coeff_p + inv.a12 * f.coeff_q)).abs());
            sv = sv.max((h * (inv.a12 * f.coeff_p + inv.a22 * f.coeff_q)).abs());
        }
    }
    let a = s.characteristic.form;
    let det = a.det();
    let hu = 12.0 / (det / a.a22).sqrt() + su;
    let hv = 12.0 / (det / a.a11).sqrt() + sv;
    let steps = |half: f64, reach: f64| {
        let n = (4.0 * half * reach / PI).ceil() as usize + 64;
        n + n % 2
    };
    let wu = FourierWindow::new(hu, steps(hu, 1.5 * eq + 5.0 * a.a11.sqrt()));
    let wv = FourierWindow::new(hv, steps(hv, 1.5 * ep + 5.0 * a.a22.sqrt()));
    let cf = |u: f64, v: f64| s.characteristic.eval(-h * v, -h * u);
    let grid = numeric_inverse_fourier_2d(cf, wu, wv, &xs, &ys, 1e-8).unwrap();
    let mut gap = 0.0_f64;
    for (row, x) in grid.iter().zip(&xs) {
        for (value, y) in row.iter().zip(&ys) {
            gap = gap.max((value - s.wigner.eval(*x, *y)).abs());
        }
    }
    gap
}

#[test]
fn closed_form_matches_numeric_inversion() {
    for (name, s) in prepared_states() {
        let gap = inversion_gap(&s);
        assert!(gap < 1e-6, "{name}: {gap:e}");
    }
}

#[test]
fn phase_space_sum_reproduces_characteristic() {
    for (name, s) in prepared_states() {
        for (qw, pw) in [(0.0, 0.7), (0.4, -0.3), (-1.1, 0.9), (2.0, 1.5), (0.3, 3.0)] {
            let direct = s.wigner.characteristic(qw, pw);
            let expected = s.characteristic.eval(qw, pw);
            assert!((direct - expected).norm() < 1e-12, "{name} at ({qw}, {pw}): {direct} vs {expected}");
        }
    }
}

#[test]
fn analytic_inverse_matches_direct_form() {
    for (name, s) in prepared_states() {
        let inverted = s.characteristic.invert().unwrap();
        for (q, p) in [(0.0, 0.0), (0.7, -0.2), (-1.3, 0.5), (2.1, 1.0)] {
            let (a, b) = (inverted.eval(q, p), s.wigner.eval(q, p));
            assert!((a - b).abs() < 1e-13, "{name} at ({q}, {p}): {a} vs {b}");
        }
    }
}

#[test]
fn marginals_match_numeric_integration() {
    for (name, s) in prepared_states() {
        let (eq, ep) = s.wigner.extent();
        let position = wigner_marginal(&s.wigner, Axis::Position);
        let momentum = wigner_marginal(&s.wigner, Axis::Momentum);
        for f in [-1.0, -0.35, 0.0, 0.2, 0.9] {
            let q = f * eq;
            let lp = ep * 12.0;
            let numeric = integrate_with(|p| s.wigner.eval(q, p), -lp, lp, 1e-14, 1e-12, 20000).unwrap().value;
            assert!((position.eval(q) - numeric).abs() < 1e-8, "{name} q = {q}");
            let p = f * ep;
            let lq = eq * 12.0;
            let numeric = integrate_with(|q| s.wigner.eval(q, p), -lq, lq, 1e-14, 1e-12, 20000).unwrap().value;
            assert!((momentum.eval(p) - numeric).abs() < 1e-8, "{name} p = {p}");
        }
    }
}

#[test]
fn equilibrium_shape() {
    let k = figure();
    let s = equilibrium_wigner(&k).unwrap();
    let form = s.wigner.terms[0].covariance;
    assert_eq!(form.a12, 0.0);
    assert!(close(form.a11, k.position_variance().unwrap(), 1e-15));
    assert!(close(form.a22, k.velocity_variance().unwrap(), 1e-15));
    let no_bath = EquilibriumKernel::new(&BathParameters::ohmic(1.0, 0.0, 4.0, Temperature::Zero, 1.0).unwrap()).unwrap();
    let g = equilibrium_wigner(&no_bath).unwrap().wigner.terms[0].covariance;
    assert!(close(g.a11, 0.25, 1e-12) && close(g.a22, 1.0, 1e-12), "{g:?}");
    assert!(matches!(equilibrium_wigner(&free_srt()), Err(Error::Divergence(_))));
    assert!(matches!(equilibrium_wigner(&ohmic()), Err(Error::Divergence(_))));
}

#[test]
fn coherent_center_motion() {
    let k = ohmic();
    let (x0, v0) = (0.9, 0.3);
    let (x, v) = coherent_center(&k, x0, v0, 1e-9).unwrap();
    assert!(close(x, x0, 1e-8));
    assert!(close(v, v0 - 0.4 * x0, 1e-7), "{v}");
    let k = figure();
    let (x, v) = coherent_center(&k, x0, v0, 0.0).unwrap();
    assert!(close(x, x0, 1e-12) && close(v, v0, 1e-12));
    let (x, v) = coherent_center(&k, x0, v0, 80.0).unwrap();
    assert!(x.abs() < 1e-8 && v.abs() < 1e-8);
    assert!(matches!(coherent_center(&k, x0, v0, -0.1), Err(Error::Domain(_))));
    let marginal = wigner_marginal(&coherent_wigner(&k, x0, v0, 1.2).unwrap().wigner, Axis::Position);
    let (xc, _) = coherent_center(&k, x0, v0, 1.2).unwrap();
    let x2 = k.position_variance().unwrap();
    for x in [-1.0, 0.2, 1.4] {
        let expected = (-(x - xc).powi(2) / (2.0 * x2)).exp() / (2.0 * PI * x2).sqrt();
        assert!(close(marginal.eval(x), expected, 1e-13));
    }
}

#[test]
fn coherent_pair_marginal_is_position_distribution() {
    for k in [figure(), warm()] {
        for (d, t) in [(2.0, 0.0), (2.0, 0.3), (1.2, 1.7), (3.0, 6.0)] {
            let pair = coherent_pair(&k, d, t).unwrap();
            let marginal = wigner_marginal(&pair.state.wigner, Axis::Position);
            let pdist = coherent_pair_pdist(&k, d, t).unwrap();
            for x in [-2.0, -0.7, 0.0, 0.4, 1.9] {
                let (a, b) = (marginal.eval(x), pdist.distribution.eval(x));
                assert!((a - b).abs() < 1e-8, "d = {d} t = {t} x = {x}: {a} vs {b}");
            }
            assert!(close(pdist.distribution.total(), 1.0, 1e-12));
        }
    }
}

#[test]
fn cat_marginals_are_measured_distributions() {
    for k in [figure(), warm(), free_srt()] {
        let prep = MeasurementSpec::slit_pair(0.35, 2.2, 0.5);
        for t in [0.5, 0.9, 2.4] {
            let w = cat_wigner(&k, &prep, t).unwrap();
            let marginal = wigner_marginal(&w.state.wigner, Axis::Position);
            let pdist = cat_pdist(&k, &prep, t).unwrap();
            for x in [-1.7, -0.5, 0.0, 0.3, 1.1] {
                let (a, b) = (marginal.eval(x), pdist.distribution.eval(x));
                assert!((a - b).abs() < 1e-8, "t = {t} x = {x}: {a} vs {b}");
            }
        }
    }
    let k = figure();
    for (d0, t) in [(2.5, 0.0), (2.5, 0.8), (4.0, 3.0)] {
        let w = displaced_pair_wigner(&k, d0, t).unwrap();
        let marginal = wigner_marginal(&w.state.wigner, Axis::Position);
        let pdist = displaced_pair_pdist(&k, d0, t).unwrap();
        for x in [-2.0, -0.6, 0.0, 0.45, 1.3] {
            let (a, b) = (marginal.eval(x), pdist.distribution.eval(x));
            assert!((a - b).abs() < 1e-8, "d0 = {d0} t = {t} x = {x}: {a} vs {b}");
        }
    }
}

#[test]
fn squeezed_state_limits() {
    let k = figure();
    let x2 = k.position_variance().unwrap();
    let v2 = k.velocity_variance().unwrap();
    let r = 0.7;
    let a = squeezed_coefficients(&k, r, 0.0).unwrap();
    assert!(close(a.a11, (-2.0 * r).exp() * x2, 1e-13));
    assert!(close(a.a22, (2.0 * r).exp() * v2, 1e-13));
    assert!(a.a12.abs() < 1e-14);
    assert!(close(a.a11 / a.a22, (-4.0 * r).exp() * x2 / v2, 1e-13));
    for t in [0.0, 0.5, 3.0] {
        let a = squeezed_coefficients(&k, 0.0, t).unwrap();
        assert!(close(a.a11, x2, 1e-13) && close(a.a22, v2, 1e-13) && a.a12.abs() < 1e-14);
    }
    let late = squeezed_coefficients(&k, r, 80.0).unwrap();
    assert!(close(late.a11, x2, 1e-8) && close(late.a22, v2, 1e-8) && late.a12.abs() < 1e-8, "{late:?}");
    assert!(close(squeezed_coefficients(&k, r, 0.0).unwrap().det(), x2 * v2, 1e-13));
    for i in 1..=200 {
        let det = squeezed_coefficients(&k, r, 0.05 * i as f64).unwrap().det();
        assert!(det >= 0.25, "t = {}", 0.05 * i as f64);
    }
    assert!(matches!(squeezed_coefficients(&ohmic(), r, 1.0), Err(Error::Unsupported(_))));
}

#[test]
fn coherent_pair_decoherence() {
    let k = figure();
    let d = 2.0;
    let pair = coherent_pair(&k, d, 0.0).unwrap();
    assert!(pair.decay_exponent.abs() < 1e-13);
    let terms = &pair.state.wigner.terms;
    let ratio = (terms[2].log_weight - terms[0].log_weight).exp();
    assert!(close(ratio, 2.0, 1e-13));
    // peak heights, once the peaks no longer overlap
    let wide = coherent_pair(&k, 12.0, 0.0).unwrap();
    let (qc, pc) = wide.state.wigner.terms[0].center;
    let ratio = wide.state.wigner.eval(0.0, 0.0) / wide.state.wigner.eval(qc, pc);
    assert!(close(ratio, 2.0, 1e-12), "{ratio}");
    for i in 1..40 {
        assert!(coherent_pair_exponent(&k, d, 0.1 * i as f64).unwrap() > 0.0);
    }
    let pdist = coherent_pair_pdist(&ohmic(), d, 0.5).unwrap();
    assert_eq!(pdist.attenuation, 0.0);
    assert_eq!(pdist.distribution.terms.len(), 2);
    assert!(close(pdist.distribution.total(), 1.0, 1e-13));
    for t in [0.0, 0.3, 2.0] {
        assert_eq!(coherent_pair_attenuation(&ohmic(), d, t).unwrap(), 0.0);
    }
    assert!(matches!(coherent_pair(&k, 0.0, 1.0), Err(Error::InvalidParameter(_))));
}

#[test]
fn short_time_exponent_for_small_relaxation_time() {
    let tau = 1e-3;
    let zeta = 0.3;
    let d = 1.0;
    let p = BathParameters::single_relaxation(1.0, zeta, 1.0, tau, Temperature::Zero, 1.0).unwrap();
    let k = EquilibriumKernel::new(&p).unwrap();
    let td = coherent_pair_decoherence_time(&p, d).unwrap();
    assert!(close(td, tau * (PI / (zeta * d * d)).sqrt(), 1e-15));
    // leading-log law for t ≪ τ: the relative error shrinks like 1/log(τ/t)
    let mut previous = f64::INFINITY;
    for f in [1e-2, 1e-3, 1e-4, 1e-5] {
        let t = f * tau;
        let a = coherent_pair_exponent(&k, d, t).unwrap();
        let approx = -(t * t / (2.0 * td * td)) * (t / tau).ln();
        let miss = a / approx - 1.0;
        assert!(miss > 0.0 && miss < 1.0 / (tau / t).ln() && miss < previous, "t = {t}: {a} vs {approx}");
        previous = miss;
    }
    assert!(matches!(coherent_pair_decoherence_time(ohmic().params(), d), Err(Error::Unsupported(_))));
}

#[test]
fn master_equation_overestimates_at_short_times() {
    let p = figure_params();
    let k = figure();
    let weak = weak_coupling(&p, CouplingApproximation::WeakCoupling).unwrap();
    let d = 1.0;
    // exact A grows like t², the approximations like t
    for t in [1e-4, 1e-3, 5e-3, 1e-2] {
        let exact = coherent_pair_exponent(&k, d, t).unwrap();
        let ww = weisskopf_wigner_exponent(&p, d, t).unwrap();
        assert!(ww > exact, "t = {t}: {ww} vs {exact}");
    }
    let early = |t: f64| coherent_pair_exponent(&k, d, t).unwrap() / weisskopf_wigner_exponent(&p, d, t).unwrap();
    assert!(early(1e-4) < 0.02 && early(1e-3) < 0.15);
    for i in 1..=20 {
        let t = 0.01 * i as f64;
        let ratio = coherent_pair_exponent(&weak, d, t).unwrap() / weisskopf_wigner_exponent(&p, d, t).unwrap();
        assert!((1.8..=2.2).contains(&ratio), "t = {t}: ratio {ratio}");
    }
    let ratio = coherent_pair_exponent(&weak, d, 1e-4).unwrap() / weisskopf_wigner_exponent(&p, d, 1e-4).unwrap();
    assert!((ratio - 2.0).abs() < 1e-3, "{ratio}");
    assert!(matches!(weisskopf_wigner_exponent(free_srt().params(), d, 1.0), Err(Error::Unsupported(_))));
}

#[test]
fn free_cat_initial_exponent() {
    let k = free_srt();
    let v2 = k.velocity_variance().unwrap();
    let lambda = 1.0 / v2.sqrt();
    for (s1, d) in [(0.3, 2.0), (0.5, 1.0), (1.2, 4.0)] {
        let w = cat_wigner(&k, &MeasurementSpec::slit_pair(s1, d, 0.0), 0.0).unwrap();
        let expected = d * d / (8.0 * s1 * s1 + 2.0 * lambda * lambda);
        assert!(close(w.decay_exponent, expected, 1e-12), "{} vs {expected}", w.decay_exponent);
        assert!(w.decay_exponent > 0.0);
    }
    let k = figure();
    let x2 = k.position_variance().unwrap();
    let v2 = k.velocity_variance().unwrap();
    let d0 = 3.0;
    let w = displaced_pair_wigner(&k, d0, 0.0).unwrap();
    let expected = d0 * d0 / (8.0 * x2) * (1.0 - 1.0 / (4.0 * v2 * x2));
    assert!(close(w.decay_exponent, expected, 1e-13));
}

#[test]
fn oscillator_cat_exponent_from_weights() {
    // A from inversion equals A computed from the explicit covariance
    let k = figure();
    let (s1, d, t) = (0.4, 2.0, 0.6);
    let w = cat_wigner(&k, &MeasurementSpec::slit_pair(s1, d, 0.0), t).unwrap();
    let form = w.state.characteristic.form;
    let [g, dg, _] = k.green(t);
    let x2 = k.position_variance().unwrap();
    let e = x2 * d * d / (8.0 * s1 * s1 * (x2 + s1 * s1));
    let inv = form.inverse().unwrap();
    let (bp, bq) = (g * d / (4.0 * s1 * s1), dg * d / (4.0 * s1 * s1));
    let expected = e - 0.5 * inv.eval(bp, bq);
    assert!(close(w.decay_exponent, expected, 1e-13));
    assert!(w.decay_exponent > 0.0);
}

#[test]
fn negativity_near_preparation() {
    let k = figure();
    let cat = cat_wigner(&k, &MeasurementSpec::slit_pair(0.3, 3.0, 0.0), 0.05).unwrap();
    let pair = coherent_pair(&k, 3.0, 0.0).unwrap();
    for s in [&cat.state.wigner, &pair.state.wigner] {
        let min = (0..400).map(|i| s.eval(0.0, -4.0 + 0.02 * i as f64)).fold(f64::INFINITY, f64::min);
        assert!(min < -1e-3, "{min}");
    }
}

#[test]
fn cat_and_pair_contrast() {
    // the coherent pair starts with full interference, the slit cat with a suppressed one
    let k = figure();
    let d = 2.5;
    let pair0 = coherent_pair_exponent(&k, d, 0.0).unwrap();
    let cat0 = cat_wigner(&k, &MeasurementSpec::slit_pair(0.3, d, 0.0), 0.0).unwrap().decay_exponent;
    assert!(pair0 < cat0);
    let displaced0 = displaced_pair_wigner(&k, d, 0.0).unwrap().decay_exponent;
    assert!(displaced0 > pair0);
    // but the coherent pair loses its interference peak fastest
    let pair_half = coherent_pair_exponent(&k, d, 0.5).unwrap();
    let cat_half = cat_wigner(&k, &MeasurementSpec::slit_pair(0.3, d, 0.0), 0.5).unwrap().decay_exponent;
    assert!(pair_half > cat_half && pair_half > 2.0 * cat0);
}

#[test]
fn density_matrix_of_pair() {
    let k = figure();
    let d = 3.0;
    let pair = coherent_pair(&k, d, 0.0).unwrap();
    let w = &pair.state.wigner;
    let marginal = wigner_marginal(w, Axis::Position);
    for (x, y) in [(0.3, -0.8), (1.5, -1.5), (-0.2, 0.9)] {
        let a = density_matrix_element(w, x, y);
        let b = density_matrix_element(w, y, x);
        assert!((a - b.conj()).norm() < 1e-14);
    }
    for x in [-1.5, 0.0, 0.7] {
        let diag = density_matrix_element(w, x, x);
        assert!(close(diag.re, marginal.eval(x), 1e-13) && diag.im.abs() < 1e-15);
    }
    // off-diagonal coherence peaks near (±d/2, ∓d/2)
    let corner = density_matrix_element(w, 0.5 * d, -0.5 * d).norm();
    let diag = density_matrix_element(w, 0.5 * d, 0.5 * d).norm();
    assert!(close(corner, diag, 1e-3), "{corner} vs {diag}");
    let mut best = (0.0, 0.0);
    for i in 0..61 {
        let x = 0.5 * d - 0.6 + 0.02 * i as f64;
        let v = density_matrix_element(w, x, -x).norm();
        if v > best.1 {
            best = (x, v);
        }
    }
    assert!((best.0 - 0.5 * d).abs() < 0.05, "{best:?}");
    let late = coherent_pair(&k, d, 2.0).unwrap();
    assert!(late.decay_exponent > 2.0, "{}", late.decay_exponent);
}

#[test]
fn rejects_bad_requests() {
    let k = figure();
    assert!(matches!(cat_wigner(&k, &MeasurementSpec::gaussian_slit(0.3, 0.0, 0.0), 1.0), Err(Error::Unsupported(_))));
    assert!(matches!(cat_wigner(&k, &MeasurementSpec::slit_pair(0.3, 1.0, 2.0), 1.0), Err(Error::Domain(_))));
    assert!(matches!(displaced_pair_wigner(&k, -1.0, 1.0), Err(Error::InvalidParameter(_))));
    assert!(matches!(coherent_pair_exponent(&k, 1.0, -1.0), Err(Error::Domain(_))));
}
