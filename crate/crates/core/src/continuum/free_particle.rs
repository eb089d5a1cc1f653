//! A free particle in one dimension (`ħ = 1`) prepared in a Gaussian packet,
//! with histories "in interval Δ1 at time 0, then in Δ2 at time τ".

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use core::f64::consts::{PI, SQRT_2};

use super::erf::{complex_erf, faddeeva_w};
use super::quad::{integrate_panels, integrate_with_breakpoints, QuadratureSpec};
use crate::hilbert::linalg::C64;
use crate::{Error, Result};

const I: C64 = C64 { re: 0.0, im: 1.0 };

/// `(2πσ²)^{-1/4} exp(-(x - X0)²/4σ² + iK0 x)`
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GaussianPacket {
    pub sigma: f64,
    pub mass: f64,
    pub x0: f64,
    pub k0: f64,
}

impl GaussianPacket {
    pub fn new(sigma: f64, mass: f64, x0: f64, k0: f64) -> Result<Self> {
        if !(sigma > 0.0 && sigma.is_finite()) {
            return Err(Error::InvalidParameter(format!("sigma = {sigma} must be positive")));
        }
        if !(mass > 0.0 && mass.is_finite()) {
            return Err(Error::InvalidParameter(format!("mass = {mass} must be positive")));
        }
        if !(x0.is_finite() && k0.is_finite()) {
            return Err(Error::InvalidParameter(format!("centre {x0} and momentum {k0} must be finite")));
        }
        Ok(GaussianPacket { sigma, mass, x0, k0 })
    }

    /// Centred at the origin, at rest.
    pub fn centred(sigma: f64, mass: f64) -> Result<Self> {
        Self::new(sigma, mass, 0.0, 0.0)
    }

    /// `2σ²M`: the time over which the packet's width changes appreciably.
    pub fn spreading_time(&self) -> f64 {
        2.0 * self.sigma * self.sigma * self.mass
    }

    /// `√(4πτ/M)`, the length scale on which the free propagator oscillates.
    pub fn wavelength(&self, tau: f64) -> f64 {
        (4.0 * PI * tau / self.mass).sqrt()
    }

    /// The time for which [`wavelength`](Self::wavelength) equals `lambda`.
    pub fn time_for_wavelength(&self, lambda: f64) -> f64 {
        lambda * lambda * self.mass / (4.0 * PI)
    }

    fn norm_factor(&self) -> f64 {
        (2.0 * PI * self.sigma * self.sigma).powf(-0.25)
    }

    pub fn initial(&self, x: f64) -> C64 {
        let dx = x - self.x0;
        C64::from_polar(self.norm_factor() * (-dx * dx / (4.0 * self.sigma * self.sigma)).exp(), self.k0 * x)
    }

    /// Exact free evolution `e^{-iHt}Ψ` at `x`.
    pub fn evolved(&self, x: f64, t: f64) -> C64 {
        if t == 0.0 {
            return self.initial(x);
        }
        let s2 = self.sigma * self.sigma;
        let g = C64::new(1.0, t / (2.0 * self.mass * s2));
        let v = self.k0 / self.mass;
        let dx = x - self.x0 - v * t;
        let phase = I * (self.k0 * x - 0.5 * self.k0 * v * t);
        let envelope = -(dx * dx) / (g * (4.0 * s2));
        (phase + envelope).exp() * self.norm_factor() / g.sqrt()
    }

    /// Width of `|Ψ(x, t)|²`.
    pub fn width_at(&self, t: f64) -> f64 {
        self.sigma * (1.0 + (t / self.spreading_time()).powi(2)).sqrt()
    }

    /// Centre of `|Ψ(x, t)|²`.
    pub fn centre_at(&self, t: f64) -> f64 {
        self.x0 + self.k0 * t / self.mass
    }
}

/// `√(M / 2πiτ) exp(iM(x2 - x1)²/2τ)`
pub fn free_propagator(x2: f64, x1: f64, tau: f64, mass: f64) -> C64 {
    let pre = (C64::new(0.0, 2.0 * PI * tau).inv() * mass).sqrt();
    pre * C64::from_polar(1.0, mass * (x2 - x1).powi(2) / (2.0 * tau))
}

/// `∫_a^b K(x2, x1; τ) Ψ(x1, 0) dx1` in closed form. Either limit may be
/// infinite.
///
/// The Gaussian integral is written with `e^{-u²} w(±iu)` so that every
/// exponential has a non-positive real part and nothing overflows.
pub fn propagated_segment(x2: f64, interval: (f64, f64), p: &GaussianPacket, tau: f64) -> C64 {
    let (a, b) = interval;
    if !(a < b) {
        return C64::new(0.0, 0.0);
    }
    if tau == 0.0 {
        return if a < x2 && x2 < b { p.initial(x2) } else { C64::new(0.0, 0.0) };
    }
    let m = p.mass;
    let s2 = p.sigma * p.sigma;
    let alpha = C64::new(1.0 / (4.0 * s2), -m / (2.0 * tau));
    let beta = C64::new(p.x0 / (2.0 * s2), p.k0 - m * x2 / tau);
    let c = C64::new(-p.x0 * p.x0 / (4.0 * s2), m * x2 * x2 / (2.0 * tau));
    let c0 = c + beta * beta / (alpha * 4.0);
    let xc = beta / (alpha * 2.0);
    let sa = alpha.sqrt();
    // The integrand's exponent at x: c0 - u(x)².
    let exponent = |x: f64| C64::new(-(x - p.x0).powi(2) / (4.0 * s2), p.k0 * x + m * (x2 - x).powi(2) / (2.0 * tau));
    let u = |x: f64| sa * (x - xc);
    // erfc(u) for Re u ≥ 0 and erfc(-u) for Re u < 0, scaled by e^{c0}.
    let tail = |x: f64, sign: f64| -> C64 {
        if x.is_infinite() {
            C64::new(0.0, 0.0)
        } else {
            exponent(x).exp() * faddeeva_w(I * u(x) * sign)
        }
    };
    let sign_of = |x: f64| -> f64 {
        if x.is_infinite() {
            x.signum()
        } else if u(x).re >= 0.0 {
            1.0
        } else {
            -1.0
        }
    };
    let (sa_, sb_) = (sign_of(a), sign_of(b));
    let bracket = if sa_ == sb_ {
        (tail(a, sa_) - tail(b, sa_)) * sa_
    } else {
        c0.exp() * 2.0 - tail(b, 1.0) - tail(a, -1.0)
    };
    let pre = (C64::new(0.0, 2.0 * PI * tau).inv() * m).sqrt() * p.norm_factor() * PI.sqrt() / (sa * 2.0);
    pre * bracket
}

/// Which expression for the joint probability to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JointForm {
    /// Exact propagation of the projected packet, one quadrature.
    Exact,
    /// Double integral with the packet treated as frozen over `τ`.
    ShortTime,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct JointProbability {
    pub value: f64,
    pub form: JointForm,
    /// Set when the short-time form is used with `τ > 2σ²M / 10`.
    pub short_time_warning: bool,
}

fn checked_interval(iv: (f64, f64)) -> Result<(f64, f64)> {
    if iv.0.is_nan() || iv.1.is_nan() || iv.0 > iv.1 {
        return Err(Error::InvalidParameter(format!("interval [{}, {}] is not ordered", iv.0, iv.1)));
    }
    Ok(iv)
}

/// Clips an interval to `centre ± radius`.
fn clip(iv: (f64, f64), centre: f64, radius: f64) -> (f64, f64) {
    (iv.0.max(centre - radius), iv.1.min(centre + radius))
}

/// `p(Δ1 at 0, Δ2 at τ) = Re <Ψ(τ)|P_Δ2 e^{-iHτ} P_Δ1|Ψ>`.
pub fn free_particle_joint_probability(
    d1: (f64, f64),
    d2: (f64, f64),
    p: &GaussianPacket,
    tau: f64,
    form: JointForm,
    q: &QuadratureSpec,
) -> Result<JointProbability> {
    let d1 = checked_interval(d1)?;
    let d2 = checked_interval(d2)?;
    if !(tau > 0.0 && tau.is_finite()) {
        return Err(Error::InvalidParameter(format!("tau = {tau} must be positive")));
    }
    let panel = p.wavelength(tau) / 8.0;
    let value = match form {
        JointForm::Exact => {
            let r = q.truncation_sigmas * p.width_at(tau) + 10.0 * panel;
            let (lo, hi) = clip(d2, p.centre_at(tau), r);
            if lo >= hi {
                0.0
            } else {
                integrate_panels(|x| (p.evolved(x, tau).conj() * propagated_segment(x, d1, p, tau)).re, lo, hi, panel, q)?
                    .value
            }
        }
        JointForm::ShortTime => short_time_joint(d1, d2, p, tau, q)?,
    };
    let short_time_warning = form == JointForm::ShortTime && tau > 0.1 * p.spreading_time();
    Ok(JointProbability { value, form, short_time_warning })
}

fn short_time_joint(d1: (f64, f64), d2: (f64, f64), p: &GaussianPacket, tau: f64, q: &QuadratureSpec) -> Result<f64> {
    let r = q.truncation_sigmas * p.sigma;
    let (a1, b1) = clip(d1, p.x0, r);
    let (a2, b2) = clip(d2, p.x0, r);
    if a1 >= b1 || a2 >= b2 {
        return Ok(0.0);
    }
    let s2 = p.sigma * p.sigma;
    let m = p.mass;
    let panel = p.wavelength(tau) / 8.0;
    let inner_spec = q.tightened(0.1);
    let mut failure = None;
    let outer = integrate_panels(
        |x2: f64| {
            let g2 = (-(x2 - p.x0).powi(2) / (4.0 * s2)).exp();
            let inner = integrate_panels(
                |x1: f64| {
                    let dx = x2 - x1;
                    (-(x1 - p.x0).powi(2) / (4.0 * s2)).exp()
                        * (m * dx * dx / (2.0 * tau) - PI / 4.0 - p.k0 * dx).cos()
                },
                a1,
                b1,
                panel,
                &inner_spec,
            );
            match inner {
                Ok(r) => g2 * r.value,
                Err(e) => {
                    failure.get_or_insert(e);
                    0.0
                }
            }
        },
        a2,
        b2,
        panel,
        q,
    )?;
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(outer.value * (2.0 * PI * s2).powf(-0.5) * (m / (2.0 * PI * tau)).sqrt())
}

/// Rescaled `Re[e^{-u²} w(iu)]` kernel: `R(ξ) = Re[e^{iaξ²} w(√π(1+i)ξ/λ)]`
/// with `a = 2π/λ²`. It equals `1 - J(ξ)` where
/// `J(ξ) = Re erf(√π(1-i)ξ/λ)`.
fn localization_kernel(xi: f64, lambda: f64) -> C64 {
    let a = 2.0 * PI / (lambda * lambda);
    let z = C64::new(1.0, 1.0) * (PI.sqrt() * xi / lambda);
    C64::from_polar(1.0, a * xi * xi) * faddeeva_w(z)
}

/// Probability for "in `[-h, h]` at time 0 and again at time τ", where
/// `λ = √(4πτ/M)` encodes τ. Valid for `λ ≪ σ` and a packet centred at
/// the origin at rest; `p_L̄ = 1 - p_L`.
///
/// Writing `ξ = 2(h - X)` for the X integral gives
/// `p_L = erf(h/√2σ) - (√(2π)σ)^{-1} ∫_0^{2h} G(ξ) R(ξ) dξ` with
/// `G(ξ) = exp(-(h - ξ/2)²/2σ²)`. The oscillatory part is integrated on
/// panels a fixed fraction of a period wide out to `30λ`; beyond that the
/// integral of `Re[e^{iaξ²} B(ξ)]` is replaced by its integration-by-parts
/// endpoint terms, whose remainder is `O(1/(aξ²))` smaller.
pub fn localization_probability(h: f64, p: &GaussianPacket, lambda: f64, q: &QuadratureSpec) -> Result<f64> {
    if !(h >= 0.0) {
        return Err(Error::InvalidParameter(format!("half-width {h} must be non-negative")));
    }
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(Error::InvalidParameter(format!("lambda = {lambda} must be positive")));
    }
    if p.x0 != 0.0 || p.k0 != 0.0 {
        return Err(Error::InvalidParameter(String::from("localization probability needs a packet centred at rest")));
    }
    if h == 0.0 {
        return Ok(0.0);
    }
    let sigma = p.sigma;
    let gauss = |xi: f64| (-(h - 0.5 * xi).powi(2) / (2.0 * sigma * sigma)).exp();
    let top = 2.0 * h;
    let cutoff = (30.0 * lambda).min(top);
    // Panels at ξ_k = λ√(k/8): one eighth of a phase period each.
    let mut points: Vec<f64> = Vec::new();
    let mut k = 0usize;
    loop {
        let x = lambda * (k as f64 / 8.0).sqrt();
        if x >= cutoff {
            break;
        }
        points.push(x);
        k += 1;
    }
    points.push(cutoff);
    let body = integrate_with_breakpoints(|xi| gauss(xi) * localization_kernel(xi, lambda).re, &points, q)?.value;
    let mut tail = 0.0;
    if top > cutoff {
        let a = 2.0 * PI / (lambda * lambda);
        let end = |xi: f64| {
            let b = faddeeva_w(C64::new(1.0, 1.0) * (PI.sqrt() * xi / lambda)) * gauss(xi);
            (C64::from_polar(1.0, a * xi * xi) * b / (I * (2.0 * a * xi))).re
        };
        tail = end(top) - end(cutoff);
    }
    let smooth = complex_erf(C64::new(h / (SQRT_2 * sigma), 0.0)).re;
    Ok(smooth - (body + tail) / ((2.0 * PI).sqrt() * sigma))
}

/// `D(L, L̄) = <Ψ|P_Δ e^{iHτ} P_Δ e^{-iHτ} P_Δ̄|Ψ>` for `Δ = [-h, h]`.
///
/// Inside `Δ` the propagated outside part splits into the two edge tails
/// `T±` (from `[h, ∞)` and `(-∞, -h]`), so with `φ_in = Ψ_τ - T+ - T-`,
/// `D = ∫_Δ conj(Ψ_τ)(T+ + T-) - |T+|² - |T-|² - 2 Re conj(T+) T-`.
/// Each `T±` is a chirp `e^{ia(x∓h)²}` (`a = M/2τ`) times a smooth
/// amplitude, which fixes how each term is integrated: the own-edge chirps
/// on equal-phase panels out to `10λ` and by parts beyond, the squared
/// tails directly, and the cross-edge fringe `e^{4iahx}` on resolved
/// panels while it has few periods, otherwise by parts at `±h`.
/// Valid for `λ ≪ σ`.
pub fn localization_decoherence(h: f64, p: &GaussianPacket, tau: f64, q: &QuadratureSpec) -> Result<C64> {
    if !(h >= 0.0) {
        return Err(Error::InvalidParameter(format!("half-width {h} must be non-negative")));
    }
    if !(tau > 0.0 && tau.is_finite()) {
        return Err(Error::InvalidParameter(format!("tau = {tau} must be positive")));
    }
    if h == 0.0 {
        return Ok(C64::new(0.0, 0.0));
    }
    let a = p.mass / (2.0 * tau);
    let lambda = p.wavelength(tau);
    let upper = |x: f64| propagated_segment(x, (h, f64::INFINITY), p, tau);
    let lower = |x: f64| propagated_segment(x, (f64::NEG_INFINITY, -h), p, tau);
    let step = 0.01 / a.sqrt();

    let own = |edge: f64, tail: &dyn Fn(f64) -> C64| -> Result<C64> {
        // Integrate conj(Ψ_τ) T over Δ; T's phase is stationary at `edge`.
        let inward = -edge.signum();
        let reach = (10.0 * lambda).min(2.0 * h);
        let mut points: Vec<f64> = Vec::new();
        let mut k = 0usize;
        loop {
            let d = lambda * (k as f64 / 8.0).sqrt();
            if d >= reach {
                break;
            }
            points.push(edge + inward * d);
            k += 1;
        }
        points.push(edge + inward * reach);
        if inward < 0.0 {
            points.reverse();
        }
        let f = |x: f64| p.evolved(x, tau).conj() * tail(x);
        let mut total = integrate_with_breakpoints(f, &points, q)?.value;
        if reach < 2.0 * h {
            let amp = |x: f64| f(x) * C64::from_polar(1.0, -a * (x - edge).powi(2));
            let phase = |x: f64| a * (x - edge).powi(2);
            let slope = |x: f64| 2.0 * a * (x - edge);
            let near = edge + inward * reach;
            let far = -edge;
            let fine = step.max(0.01 * reach);
            let coarse = (0.01 * p.sigma).min(0.01 * h);
            let tail_part = by_parts(&amp, &phase, &slope, far, coarse) - by_parts(&amp, &phase, &slope, near, fine);
            total += if inward < 0.0 { -tail_part } else { tail_part };
        }
        Ok(total)
    };
    let chirps = own(h, &upper)? + own(-h, &lower)?;

    let lambda_points = {
        let mut pts = vec![-h];
        let mut d = lambda;
        let mut inner = Vec::new();
        while d < h {
            inner.push(d);
            d *= 2.0;
        }
        pts.extend(inner.iter().map(|d| -h + d));
        pts.push(0.0);
        pts.extend(inner.iter().rev().map(|d| h - d));
        pts.push(h);
        pts.sort_by(|x, y| x.total_cmp(y));
        pts.dedup();
        pts
    };
    let squares = integrate_with_breakpoints(|x| upper(x).norm_sqr() + lower(x).norm_sqr(), &lambda_points, q)?.value;

    let k = 4.0 * a * h;
    let fringes = k * 2.0 * h / (2.0 * PI);
    let cross = |x: f64| upper(x).conj() * lower(x);
    let fringe = if fringes <= 2000.0 {
        integrate_panels(cross, -h, h, PI / (4.0 * k), q)?.value.re
    } else {
        let amp = |x: f64| cross(x) * C64::from_polar(1.0, -k * x);
        let phase = |x: f64| k * x;
        let slope = |_: f64| k;
        (by_parts(&amp, &phase, &slope, h, step) - by_parts(&amp, &phase, &slope, -h, step)).re
    };
    Ok(chirps - C64::new(squares + 2.0 * fringe, 0.0))
}

/// Antiderivative of `c e^{iφ}` at `x` from repeated integration by parts,
/// `e^{iφ} Σ g_n` with `g_0 = c/iφ'` and `g_{n+1} = -g_n'/iφ'`, four terms,
/// derivatives by nested central differences with spacing `h`.
fn by_parts(c: &dyn Fn(f64) -> C64, phase: &dyn Fn(f64) -> f64, slope: &dyn Fn(f64) -> f64, x: f64, h: f64) -> C64 {
    const TERMS: usize = 4;
    let width = TERMS - 1;
    let mut g: Vec<C64> = (0..=2 * width)
        .map(|j| {
            let xj = x + (j as f64 - width as f64) * h;
            c(xj) / (I * slope(xj))
        })
        .collect();
    let mut sum = g[width];
    for _ in 1..TERMS {
        // Each pass differentiates once and loses one point at each end.
        let next: Vec<C64> = (1..g.len() - 1)
            .map(|j| {
                let xj = x + (j as f64 - (g.len() / 2) as f64) * h;
                -(g[j + 1] - g[j - 1]) / (2.0 * h) / (I * slope(xj))
            })
            .collect();
        g = next;
        sum += g[g.len() / 2];
    }
    C64::from_polar(1.0, phase(x)) * sum
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn evolution_preserves_norm() {
        let p = GaussianPacket::new(0.7, 2.0, 0.3, 1.5).unwrap();
        let q = QuadratureSpec::default();
        for &t in &[0.0, 0.1, 3.0] {
            let c = p.centre_at(t);
            let w = p.width_at(t);
            let n = integrate_panels(|x| p.evolved(x, t).norm_sqr(), c - 12.0 * w, c + 12.0 * w, w / 4.0, &q).unwrap();
            assert!((n.value - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn whole_line_segment_reproduces_evolution() {
        let p = GaussianPacket::new(1.0, 1.0, 0.5, -2.0).unwrap();
        let t = 0.3;
        for &x in &[-3.0, -0.4, 0.0, 1.7] {
            let full = propagated_segment(x, (f64::NEG_INFINITY, f64::INFINITY), &p, t);
            assert!((full - p.evolved(x, t)).norm() < 1e-13, "{full} vs {}", p.evolved(x, t));
            let split = propagated_segment(x, (f64::NEG_INFINITY, 0.2), &p, t)
                + propagated_segment(x, (0.2, f64::INFINITY), &p, t);
            assert!((split - full).norm() < 1e-13);
        }
    }

    #[test]
    fn segment_matches_direct_quadrature() {
        let p = GaussianPacket::new(1.0, 1.0, 0.2, 1.0).unwrap();
        let t = 0.05;
        let q = QuadratureSpec { abs_tol: 1e-13, rel_tol: 1e-12, ..QuadratureSpec::default() };
        for &x2 in &[-1.3, 0.1, 2.4] {
            let direct =
                integrate_panels(|x1| free_propagator(x2, x1, t, 1.0) * p.initial(x1), -1.0, 1.0, 0.01, &q).unwrap();
            assert!((direct.value - propagated_segment(x2, (-1.0, 1.0), &p, t)).norm() < 1e-10);
        }
    }

    #[test]
    fn empty_interval_and_zero_width() {
        let p = GaussianPacket::centred(1.0, 1.0).unwrap();
        let q = QuadratureSpec::default();
        assert_eq!(localization_probability(0.0, &p, 0.01, &q).unwrap(), 0.0);
        assert_eq!(localization_decoherence(0.0, &p, 0.1, &q).unwrap(), C64::new(0.0, 0.0));
        assert!(localization_probability(1.0, &GaussianPacket::new(1.0, 1.0, 0.5, 0.0).unwrap(), 0.01, &q).is_err());
    }
}
