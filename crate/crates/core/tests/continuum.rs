use std::f64::consts::PI;

use histoq_core::continuum::*;
use histoq_core::C64;
use proptest::prelude::*;
use rustfft::FftPlanner;

fn q() -> QuadratureSpec {
    QuadratureSpec::default()
}

// ---------- complex error function ----------

/// Maclaurin series with compensated summation; accurate for small |z|.
fn series_erf(z: C64, terms: usize) -> C64 {
    let z2 = z * z;
    let mut term = z;
    let mut sum = z;
    let mut comp = C64::new(0.0, 0.0);
    for n in 1..terms {
        term = -term * z2 / n as f64;
        let y = term / (2 * n + 1) as f64 - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    sum * (2.0 / PI.sqrt())
}

#[test]
fn erf_one_plus_i_matches_series() {
    let z = C64::new(1.0, 1.0);
    let oracle = series_erf(z, 60);
    let reference = C64::new(1.3161512816979476448, 0.19045346923783471861);
    assert!((oracle - reference).norm() < 1e-15);
    assert!((complex_erf(z) - oracle).norm() < 1e-14);
}

#[test]
fn erf_limits() {
    assert_eq!(complex_erf(C64::new(0.0, 0.0)), C64::new(0.0, 0.0));
    assert_eq!(complex_erf(C64::new(30.0, 0.0)).re, 1.0);
    assert_eq!(complex_erf(C64::new(-30.0, 0.0)).re, -1.0);
}

#[test]
fn erf_matches_series_near_the_branch_switch() {
    for k in 0..40 {
        let z = C64::from_polar(2.0 + 0.05 * k as f64, 0.3 + 0.02 * k as f64);
        let s = series_erf(z, 120);
        assert!((complex_erf(z) - s).norm() < 1e-10 * s.norm(), "{z}");
    }
}

proptest! {
    #[test]
    fn erf_reflection_and_conjugation(x in -20.0f64..20.0, y in -20.0f64..20.0) {
        let z = C64::new(x, y);
        let e = complex_erf(z);
        prop_assume!(e.re.is_finite() && e.im.is_finite());
        let scale = e.norm().max(1.0);
        prop_assert!((complex_erf(-z) + e).norm() <= 1e-12 * scale);
        prop_assert!((complex_erf(z.conj()) - e.conj()).norm() <= 1e-12 * scale);
    }

    #[test]
    fn faddeeva_reflection(x in -15.0f64..15.0, y in 0.0f64..5.0) {
        // w(-z̄) = conj(w(z))
        let z = C64::new(x, y);
        let a = faddeeva_w(z);
        let b = faddeeva_w(C64::new(-x, y));
        prop_assert!((a - b.conj()).norm() <= 1e-14 * a.norm().max(1e-300));
    }
}

// ---------- two slits ----------

fn figure_geometry() -> TwoSlitGeometry {
    TwoSlitGeometry::from_products(60.0, 60.0).unwrap()
}

#[test]
fn interference_identity_holds_pointwise() {
    let g = TwoSlitGeometry::new(3.0, 40.0, 7.0, C64::new(-1.2, 0.7)).unwrap();
    for i in 0..2000 {
        let y = -100.0 + 0.1 * i as f64;
        let d = two_slit_densities(y, &g);
        let (su, sl) = g.path_lengths(y);
        let envelope = g.a.norm_sqr() * (1.0 / su + 1.0 / sl).powi(2);
        assert!((d.upper + d.lower - d.total).abs() <= 1e-12 * envelope, "y={y}");
    }
}

#[test]
fn fringe_spacing_matches_density_oscillation() {
    let g = figure_geometry();
    // Zeros of the interference term near the axis sit at (2n+1)/2 fringes.
    let interference = |y: f64| {
        let d = two_slit_densities(y, &g);
        d.upper - 1.0 / g.path_lengths(y).0.powi(2)
    };
    let mut crossings = Vec::new();
    let step = 1e-3;
    let mut prev = interference(0.0);
    for i in 1..20000 {
        let y = i as f64 * step;
        let cur = interference(y);
        if prev.signum() != cur.signum() {
            crossings.push(y);
        }
        prev = cur;
    }
    let spacing = crossings[2] - crossings[0];
    // Near the axis d(S_L - S_U)/dy = d/S0, so the local period is 2πS0/(kd),
    // which tends to the nominal 2πD/(kd) when D ≫ d.
    let s0 = g.path_lengths(0.0).0;
    let local = 2.0 * PI * s0 / (g.k * g.d);
    assert!((spacing - local).abs() < 0.02 * local, "{spacing} vs {local}");
    assert!((spacing - g.fringe_spacing()).abs() < 0.15 * g.fringe_spacing());
}

#[test]
fn total_screen_probability_is_finite_and_resolution_stable() {
    let g = figure_geometry();
    let coarse = two_slit_total_probability(&g, &q()).unwrap();
    let fine = two_slit_total_probability(&g, &q().tightened(1e-2)).unwrap();
    assert!(coarse.is_finite() && coarse > 0.0);
    assert!((coarse - fine).abs() < 1e-7 * fine);
}

#[test]
fn wide_bins_average_out_interference() {
    let g = figure_geometry();
    let w = 10.0 * g.fringe_spacing();
    let pu = two_slit_bin_probability((-w / 2.0, w / 2.0), Slit::Upper, &g, &q()).unwrap();
    let pl = two_slit_bin_probability((-w / 2.0, w / 2.0), Slit::Lower, &g, &q()).unwrap();
    assert!(pu > 0.0 && pl > 0.0);
    let direct = q();
    let no_interference = integrate(|y| 1.0 / g.path_lengths(y).0.powi(2), -w / 2.0, w / 2.0, &direct).unwrap().value;
    assert!((pu - no_interference).abs() < 0.05 * no_interference, "{pu} vs {no_interference}");
}

#[test]
fn far_screen_allows_arbitrarily_small_bins() {
    let g = TwoSlitGeometry::new(1.0, 1e4, 1.0, C64::new(1.0, 0.0)).unwrap();
    let scan = min_lp_binwidth(&g, (-200.0, 200.0), &[100.0, 1.0, 0.01], &q()).unwrap();
    assert_eq!(scan.smallest_passing, Some(0.01));
}

#[test]
fn positivity_needs_less_than_a_fringe() {
    let g = figure_geometry();
    let f = g.fringe_spacing();
    let widths: Vec<f64> = [2.0, 1.0, 0.75, 0.5, 0.3, 0.1].iter().map(|k| k * f).collect();
    let scan = min_lp_binwidth(&g, default_screen_range(&g), &widths, &q()).unwrap();
    let w = scan.smallest_passing.expect("some width passes");
    assert!(w < f);
    assert!(!scan.trials.last().unwrap().passes, "narrow bins must resolve the negative lobes");
}

// ---------- free particle ----------

#[test]
fn joint_probabilities_over_a_partition_sum_to_one() {
    let p = GaussianPacket::new(1.0, 1.0, 0.3, 0.5).unwrap();
    let tau = 0.05;
    let cells = [(f64::NEG_INFINITY, -0.4), (-0.4, 0.9), (0.9, f64::INFINITY)];
    let mut total = 0.0;
    for &d1 in &cells {
        for &d2 in &cells {
            total += free_particle_joint_probability(d1, d2, &p, tau, JointForm::Exact, &q()).unwrap().value;
        }
    }
    assert!((total - 1.0).abs() < 5e-8, "{total}");
    let whole = (f64::NEG_INFINITY, f64::INFINITY);
    // The frozen-packet form over the whole line is Re <Ψ(0)|Ψ(τ)>.
    let st = free_particle_joint_probability(whole, whole, &p, tau, JointForm::ShortTime, &q()).unwrap();
    let overlap = integrate(|x| (p.initial(x).conj() * p.evolved(x, tau)).re, -12.0, 12.0, &q()).unwrap().value;
    assert!((st.value - overlap).abs() < 1e-7, "{} vs {overlap}", st.value);
    assert!(!st.short_time_warning);
}

#[test]
fn exact_and_short_time_forms_converge() {
    let p = GaussianPacket::centred(1.0, 1.0).unwrap();
    let ts = p.spreading_time();
    let d = (-1.0, 1.0);
    let gap = |r: f64| {
        let e = free_particle_joint_probability(d, d, &p, r * ts, JointForm::Exact, &q()).unwrap().value;
        let s = free_particle_joint_probability(d, d, &p, r * ts, JointForm::ShortTime, &q()).unwrap().value;
        (e - s).abs()
    };
    let g1 = gap(0.01);
    assert!(g1 < 1e-4, "{g1}");
    let g2 = gap(0.04);
    let order = (g2 / g1).ln() / 4f64.ln();
    assert!(order >= 1.0, "observed order {order}");
    let warned = free_particle_joint_probability(d, d, &p, 0.5 * ts, JointForm::ShortTime, &q()).unwrap();
    assert!(warned.short_time_warning);
}

#[test]
fn moving_packet_short_time_form() {
    let p = GaussianPacket::new(1.0, 2.0, 0.5, 1.5).unwrap();
    let tau = 0.01 * p.spreading_time();
    let (d1, d2) = ((-0.5, 1.0), (0.0, 2.0));
    let e = free_particle_joint_probability(d1, d2, &p, tau, JointForm::Exact, &q()).unwrap().value;
    let s = free_particle_joint_probability(d1, d2, &p, tau, JointForm::ShortTime, &q()).unwrap().value;
    assert!((e - s).abs() < 1e-3, "{e} vs {s}");
}

/// `√(2/πσ²) ∫_0^h e^{-X²/2σ²} J(2(h - X)) dX` with `J` from the complex
/// error function, integrated on panels that follow the phase.
fn localization_oracle(h: f64, sigma: f64, lambda: f64) -> f64 {
    let j = |z: f64| complex_erf(C64::new(1.0, -1.0) * (PI.sqrt() * z / lambda)).re;
    let mut points = vec![h];
    let mut k = 1usize;
    loop {
        let xi = lambda * (k as f64 / 16.0).sqrt();
        if xi >= 2.0 * h {
            break;
        }
        points.push(h - xi / 2.0);
        k += 1;
    }
    points.push(0.0);
    points.reverse();
    let spec = QuadratureSpec::default().tightened(1e-2);
    let r = integrate_with_breakpoints(|x| (-x * x / (2.0 * sigma * sigma)).exp() * j(2.0 * (h - x)), &points, &spec).unwrap();
    (2.0 / (PI * sigma * sigma)).sqrt() * r.value
}

#[test]
fn localization_matches_direct_quadrature() {
    let p = GaussianPacket::centred(1.0, 1.0).unwrap();
    for &(h, lambda) in &[(0.3, 0.1), (1.0, 0.1), (2.0, 0.1), (0.5, 0.05)] {
        let fast = localization_probability(h, &p, lambda, &q()).unwrap();
        let slow = localization_oracle(h, 1.0, lambda);
        assert!((fast - slow).abs() < 1e-8, "h={h} lambda={lambda}: {fast} vs {slow}");
    }
}

#[test]
fn localization_agrees_with_exact_propagation() {
    let p = GaussianPacket::centred(1.0, 1.0).unwrap();
    let lambda = 0.1;
    let tau = p.time_for_wavelength(lambda);
    for &h in &[0.2, 1.0] {
        let approx = localization_probability(h, &p, lambda, &q()).unwrap();
        let exact = free_particle_joint_probability((-h, h), (-h, h), &p, tau, JointForm::Exact, &q()).unwrap().value;
        assert!((approx - exact).abs() < 1e-3, "h={h}: {approx} vs {exact}");
    }
}

#[test]
fn localization_probability_sweep_stays_in_range() {
    let p = GaussianPacket::centred(1.0, 1.0).unwrap();
    let mut prev = 0.0;
    for i in 1..=40 {
        let h = 0.25 * i as f64;
        let v = localization_probability(h, &p, 0.01, &q()).unwrap();
        assert!((0.0..=1.0).contains(&v), "h={h}: {v}");
        assert!((v - prev).abs() < 0.25, "jump at {h}");
        prev = v;
    }
    assert!((prev - 1.0).abs() < 1e-4);
    let at_sigma = localization_probability(1.0, &p, 0.01, &q()).unwrap();
    assert!(at_sigma > 0.0 && at_sigma < 1.0);
}

#[test]
fn localization_decoherence_limits() {
    let p = GaussianPacket::centred(1.0, 1.0).unwrap();
    let tau = p.time_for_wavelength(0.01);
    let wide = localization_decoherence(8.0, &p, tau, &q()).unwrap();
    assert!(wide.norm() < 1e-6, "{wide}");
    let h = 0.05;
    let narrow = localization_decoherence(h, &p, tau, &q()).unwrap();
    let ratio = narrow.norm() / h;
    assert!(ratio > 0.01 && ratio < 10.0, "|D|/(Δ/σ) = {ratio}");
}

/// Direct `∫_Δ conj(φ_in) φ_out` on panels that resolve the cross-edge
/// fringe `e^{4iahx}`.
fn brute_decoherence(h: f64, p: &GaussianPacket, tau: f64) -> C64 {
    let a = p.mass / (2.0 * tau);
    let panel = (p.wavelength(tau) / 8.0).min(PI / (16.0 * a * h));
    let spec = QuadratureSpec { max_subdivisions: 1 << 20, ..q() };
    let f = |x: f64| {
        let inside = propagated_segment(x, (-h, h), p, tau);
        let outside = propagated_segment(x, (f64::NEG_INFINITY, -h), p, tau)
            + propagated_segment(x, (h, f64::INFINITY), p, tau);
        inside.conj() * outside
    };
    integrate_panels(f, -h, h, panel, &spec).unwrap().value
}

#[test]
fn localization_decoherence_matches_resolved_quadrature() {
    let p = GaussianPacket::centred(1.0, 1.0).unwrap();
    // Few fringes (direct path) and many (endpoint expansion).
    for &(lambda, h) in &[(0.05, 0.02), (0.05, 0.5), (0.05, 1.0), (0.1, 2.0), (0.01, 0.2)] {
        let tau = p.time_for_wavelength(lambda);
        let d = localization_decoherence(h, &p, tau, &q()).unwrap();
        let b = brute_decoherence(h, &p, tau);
        assert!((d - b).norm() < 1e-11, "λ={lambda} h={h}: {d} vs {b}");
    }
}

#[test]
fn localization_decoherence_is_smooth_in_width() {
    // λ = 0.01σ across the range where the direct fringe integral is out
    // of reach: D must vary smoothly and decay with the edge weight.
    let p = GaussianPacket::centred(1.0, 1.0).unwrap();
    let tau = p.time_for_wavelength(0.01);
    let ds: Vec<C64> = (1..=60).map(|i| localization_decoherence(0.1 * i as f64, &p, tau, &q()).unwrap()).collect();
    for w in ds.windows(3) {
        assert!(w.iter().all(|d| d.im > 0.0), "{w:?}");
        let curvature = w[0].im.ln() - 2.0 * w[1].im.ln() + w[2].im.ln();
        assert!(curvature.abs() < 0.05, "{w:?}");
    }
    assert!(ds[59].norm() < 1e-6 && ds[9].im > ds[29].im);
}

// ---------- spacetime ----------

/// Hard-wall evolution on `[-L, L]`: odd extension, spectral kinetic step.
fn grid_restricted(p: &GaussianPacket, t: f64, half_length: f64, n: usize) -> (Vec<f64>, Vec<C64>) {
    let dx = 2.0 * half_length / n as f64;
    let xs: Vec<f64> = (0..n).map(|i| -half_length + i as f64 * dx).collect();
    let mut psi: Vec<C64> = xs
        .iter()
        .map(|&x| {
            if x > 0.0 {
                p.initial(x)
            } else if x < 0.0 {
                -p.initial(-x)
            } else {
                C64::new(0.0, 0.0)
            }
        })
        .collect();
    let mut planner = FftPlanner::new();
    planner.plan_fft_forward(n).process(&mut psi);
    for (j, v) in psi.iter_mut().enumerate() {
        let m = if j <= n / 2 { j as f64 } else { j as f64 - n as f64 };
        let k = 2.0 * PI * m / (2.0 * half_length);
        *v *= C64::from_polar(1.0 / n as f64, -k * k * t / (2.0 * p.mass));
    }
    planner.plan_fft_inverse(n).process(&mut psi);
    (xs, psi)
}

#[test]
fn image_formula_matches_grid_evolution() {
    let p = GaussianPacket::new(1.0, 1.0, 8.0, -20.0).unwrap();
    let t = 0.4;
    let (xs, grid) = grid_restricted(&p, t, 40.0, 1 << 14);
    let mut worst = 0.0f64;
    for (x, g) in xs.iter().zip(&grid) {
        if *x > 0.0 && *x < 6.0 {
            worst = worst.max((restricted_wavefunction(*x, t, &p) - g).norm());
        }
    }
    assert!(worst < 1e-3, "{worst}");
}

#[test]
fn remain_probability_across_the_figure_range() {
    let mut found_lp_not_md = false;
    for i in 0..50 {
        let x = -2.0 + 8.0 * i as f64 / 49.0;
        let (p, t) = packet_reaching(x, 1.0, 1.0, -20.0).unwrap();
        let pr = spacetime_remain_probability(&p, t, &q()).unwrap();
        assert!((-1e-4..=1.0 + 1e-4).contains(&pr), "X={x}: {pr}");
        let d = spacetime_decoherence(&p, t, &q()).unwrap();
        if d.re.abs() > 0.05 && (0.0..=1.0).contains(&pr) {
            found_lp_not_md = true;
        }
    }
    assert!(found_lp_not_md);
    let (p, t) = packet_reaching(6.0, 1.0, 1.0, -20.0).unwrap();
    assert!(spacetime_remain_probability(&p, t, &q()).unwrap() > 0.99);
}

#[test]
fn remain_probability_regression_anchor() {
    let (p, t) = packet_reaching(0.7, 1.0, 1.0, -20.0).unwrap();
    let a = spacetime_remain_probability(&p, t, &q()).unwrap();
    let b = spacetime_remain_probability(&p, t, &q().tightened(1e-3)).unwrap();
    assert!((a - b).abs() < 1e-9);
    // The Gaussian part integrates to Φ(X/σ); the interference part is tiny
    // for K0σ = -20.
    let phi = 0.5 * (1.0 + complex_erf(C64::new(0.7 / 2f64.sqrt(), 0.0)).re);
    assert!((a - phi).abs() < 1e-6, "{a} vs {phi}");
}

#[test]
fn decoherence_tends_to_minus_one_when_the_packet_crosses() {
    let (p, t) = packet_reaching(-6.0, 1.0, 1.0, -20.0).unwrap();
    let d = spacetime_decoherence(&p, t, &q()).unwrap();
    assert!(d.re < -0.99, "{d}");
    assert!(!spacetime_regime(&p, t).within_validated_range);
}
