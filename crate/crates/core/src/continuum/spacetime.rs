//! Spacetime coarse graining: "the particle stayed in `x > 0` throughout
//! `[0, T]`" (`R`) versus "it entered `x < 0` at some time" (`R̄`).
//!
//! The restricted evolution is the free evolution with a hard wall at the
//! origin, obtained by the method of images. The packet starts far to the
//! right and moves left with momentum `K0 < 0`; `X = X0 + K0 T / M` is where
//! its centre would be at `T` without the wall.

#[allow(unused_imports)]
use num_traits::Float;

use core::f64::consts::PI;

use super::free_particle::GaussianPacket;
use super::quad::{integrate_panels, QuadratureSpec};
use crate::hilbert::linalg::C64;
use crate::{Error, Result};

/// Which approximations behind the closed-form expressions hold.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SpacetimeRegime {
    /// `X0 ≥ 3σ`: the initial packet has negligible weight at `x < 0`.
    pub starts_clear_of_wall: bool,
    /// `T ≤ 2σ²M / 10`: spreading is negligible.
    pub short_time: bool,
    /// `X ≥ -2σ`: inside the range over which the approximations are checked.
    pub within_validated_range: bool,
}

impl SpacetimeRegime {
    pub fn holds(&self) -> bool {
        self.starts_clear_of_wall && self.short_time && self.within_validated_range
    }
}

pub fn spacetime_regime(p: &GaussianPacket, t: f64) -> SpacetimeRegime {
    SpacetimeRegime {
        starts_clear_of_wall: p.x0 >= 3.0 * p.sigma,
        short_time: t <= 0.1 * p.spreading_time(),
        within_validated_range: p.centre_at(t) >= -2.0 * p.sigma,
    }
}

/// Hard-wall evolution `Φ_U(x, T) - Φ_U(-x, T)` for `x > 0`, with `Φ_U`
/// the freely evolved packet; zero for `x ≤ 0`.
pub fn restricted_wavefunction(x: f64, t: f64, p: &GaussianPacket) -> C64 {
    if x <= 0.0 {
        return C64::new(0.0, 0.0);
    }
    p.evolved(x, t) - p.evolved(-x, t)
}

fn check(p: &GaussianPacket, t: f64) -> Result<()> {
    if !(t >= 0.0 && t.is_finite()) {
        return Err(Error::InvalidParameter(alloc::format!("T = {t} must be non-negative")));
    }
    if p.k0 == 0.0 {
        return Err(Error::InvalidParameter(alloc::string::String::from("packet momentum must be nonzero")));
    }
    Ok(())
}

fn upper_limit(x: f64, p: &GaussianPacket, q: &QuadratureSpec) -> f64 {
    x.max(0.0) + q.truncation_sigmas * p.sigma
}

fn panel(p: &GaussianPacket) -> f64 {
    // cos(2K0 x) has period π/|K0|.
    (PI / p.k0.abs() / 8.0).min(p.sigma / 4.0)
}

/// `p_R` with the packet moved rigidly to `X` (no spreading):
/// `(2πσ²)^{-1/2} ∫_0^∞ [e^{-(x-X)²/2σ²} - e^{-(x²+X²)/2σ²} cos 2K0x] dx`.
/// `p_R̄ = 1 - p_R`.
pub fn spacetime_remain_probability(p: &GaussianPacket, t: f64, q: &QuadratureSpec) -> Result<f64> {
    check(p, t)?;
    let x_c = p.centre_at(t);
    let s2 = p.sigma * p.sigma;
    let k0 = p.k0;
    let f = |x: f64| (-(x - x_c).powi(2) / (2.0 * s2)).exp() - (-(x * x + x_c * x_c) / (2.0 * s2)).exp() * (2.0 * k0 * x).cos();
    let r = integrate_panels(f, 0.0, upper_limit(x_c, p, q), panel(p), q)?;
    Ok(r.value / (2.0 * PI * s2).sqrt())
}

/// `p_R = Re <Ψ(T)|Φ_R(T)>` with both states evolved exactly (spreading
/// included) and the wall handled by images.
pub fn spacetime_remain_probability_images(p: &GaussianPacket, t: f64, q: &QuadratureSpec) -> Result<f64> {
    check(p, t)?;
    let hi = upper_limit(p.centre_at(t), p, q) + q.truncation_sigmas * (p.width_at(t) - p.sigma);
    let f = |x: f64| (p.evolved(x, t).conj() * restricted_wavefunction(x, t, p)).re;
    Ok(integrate_panels(f, 0.0, hi, panel(p), q)?.value)
}

/// `D(R, R̄) = <Φ_R(T)|Φ_R̄(T)>` in the rigid-packet approximation:
/// `(2πσ²)^{-1/2} ∫_0^∞ [e^{-(x²+X²)/2σ²} e^{-2iK0x} - e^{-(x+X)²/2σ²}] dx`.
pub fn spacetime_decoherence(p: &GaussianPacket, t: f64, q: &QuadratureSpec) -> Result<C64> {
    check(p, t)?;
    let x_c = p.centre_at(t);
    let s2 = p.sigma * p.sigma;
    let k0 = p.k0;
    let f = |x: f64| {
        C64::from_polar((-(x * x + x_c * x_c) / (2.0 * s2)).exp(), -2.0 * k0 * x)
            - (-(x + x_c).powi(2) / (2.0 * s2)).exp()
    };
    let hi = upper_limit(-x_c, p, q);
    let r = integrate_panels(f, 0.0, hi, panel(p), q)?;
    Ok(r.value / (2.0 * PI * s2).sqrt())
}

/// A packet whose unobstructed centre reaches `x_final` at time `T` when
/// launched from `max(3σ, x_final)` with momentum `k0 < 0`.
pub fn packet_reaching(x_final: f64, sigma: f64, mass: f64, k0: f64) -> Result<(GaussianPacket, f64)> {
    if !(k0 < 0.0) {
        return Err(Error::InvalidParameter(alloc::format!("k0 = {k0} must be negative")));
    }
    let x0 = (3.0 * sigma).max(x_final);
    let p = GaussianPacket::new(sigma, mass, x0, k0)?;
    Ok((p, (x0 - x_final) * mass / -k0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn at(x: f64) -> (GaussianPacket, f64) {
        packet_reaching(x, 1.0, 1.0, -20.0).unwrap()
    }

    #[test]
    fn wall_condition() {
        let (p, t) = at(0.5);
        assert!(restricted_wavefunction(1e-12, t, &p).norm() < 1e-10);
        assert_eq!(restricted_wavefunction(-1.0, t, &p), C64::new(0.0, 0.0));
    }

    #[test]
    fn symmetric_point_values() {
        let q = QuadratureSpec::default();
        let (p, t) = at(0.0);
        assert!((spacetime_remain_probability(&p, t, &q).unwrap() - 0.5).abs() < 1e-9);
        assert!((spacetime_decoherence(&p, t, &q).unwrap().re + 0.5).abs() < 1e-9);
    }

    #[test]
    fn far_right_means_certain_to_remain() {
        let q = QuadratureSpec::default();
        let (p, t) = at(8.0);
        assert!((spacetime_remain_probability(&p, t, &q).unwrap() - 1.0).abs() < 1e-3);
        assert!(spacetime_decoherence(&p, t, &q).unwrap().norm() < 1e-6);
        assert!(spacetime_regime(&p, t).holds());
    }

    #[test]
    fn rigid_and_spreading_forms_agree_in_regime() {
        let q = QuadratureSpec::default();
        let p = GaussianPacket::new(1.0, 10.0, 4.0, -20.0).unwrap();
        let t = 2.0;
        assert!(spacetime_regime(&p, t).holds());
        let rigid = spacetime_remain_probability(&p, t, &q).unwrap();
        let images = spacetime_remain_probability_images(&p, t, &q).unwrap();
        assert!((rigid - images).abs() < 1e-2, "{rigid} vs {images}");
    }
}
