//! Two-slit interference: histories "through the upper / lower slit, then
//! arriving in a screen bin".
//!
//! The source sits on the axis, the slits a distance `d/2` either side of
//! it, and the screen a distance `D` beyond. The amplitude from slit `U` to
//! the screen point `y` is `a e^{ikS_U} / S_U`.

use alloc::format;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use core::f64::consts::PI;

use super::quad::{integrate_panels, integrate_with_breakpoints, QuadratureSpec};
use crate::hilbert::linalg::C64;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TwoSlitGeometry {
    /// Slit separation.
    pub d: f64,
    /// Slit-to-screen distance.
    pub big_d: f64,
    /// Wave number.
    pub k: f64,
    /// Source amplitude; only `|a|²` enters the densities.
    pub a: C64,
}

impl TwoSlitGeometry {
    pub fn new(d: f64, big_d: f64, k: f64, a: C64) -> Result<Self> {
        for (name, v) in [("d", d), ("D", big_d), ("k", k)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::InvalidParameter(format!("{name} = {v} must be positive")));
            }
        }
        if !(a.re.is_finite() && a.im.is_finite()) {
            return Err(Error::InvalidParameter(format!("amplitude {a} is not finite")));
        }
        Ok(TwoSlitGeometry { d, big_d, k, a })
    }

    /// Geometry from the dimensionless products `kd`, `kD` with `k = 1`
    /// and `a = 1`.
    pub fn from_products(kd: f64, k_big_d: f64) -> Result<Self> {
        Self::new(kd, k_big_d, 1.0, C64::new(1.0, 0.0))
    }

    /// `2πD / (kd)`, the fringe spacing near the axis.
    pub fn fringe_spacing(&self) -> f64 {
        2.0 * PI * self.big_d / (self.k * self.d)
    }

    /// Path lengths `(S_U, S_L)` from each slit to the screen point `y`.
    pub fn path_lengths(&self, y: f64) -> (f64, f64) {
        let h = 0.5 * self.d;
        ((h - y).hypot(self.big_d), (h + y).hypot(self.big_d))
    }

    /// `(Ψ_U(y), Ψ_L(y))`
    pub fn amplitudes(&self, y: f64) -> (C64, C64) {
        let (su, sl) = self.path_lengths(y);
        (self.a * C64::from_polar(1.0 / su, self.k * su), self.a * C64::from_polar(1.0 / sl, self.k * sl))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Slit {
    Upper,
    Lower,
}

/// Candidate densities at a screen point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SlitDensities {
    pub upper: f64,
    pub lower: f64,
    /// `|Ψ_U + Ψ_L|²`, computed independently of the two above.
    pub total: f64,
}

pub fn two_slit_densities(y: f64, g: &TwoSlitGeometry) -> SlitDensities {
    let (su, sl) = g.path_lengths(y);
    let a2 = g.a.norm_sqr();
    let interference = (g.k * (sl - su)).cos() / (su * sl);
    let (pu, pl) = g.amplitudes(y);
    SlitDensities {
        upper: a2 * (1.0 / (su * su) + interference),
        lower: a2 * (1.0 / (sl * sl) + interference),
        total: (pu + pl).norm_sqr(),
    }
}

fn density(y: f64, which: Slit, g: &TwoSlitGeometry) -> f64 {
    let d = two_slit_densities(y, g);
    match which {
        Slit::Upper => d.upper,
        Slit::Lower => d.lower,
    }
}

/// Probability of passing through `which` and arriving in `[lo, hi]`.
pub fn two_slit_bin_probability(bin: (f64, f64), which: Slit, g: &TwoSlitGeometry, q: &QuadratureSpec) -> Result<f64> {
    let (lo, hi) = bin;
    if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
        return Err(Error::InvalidParameter(format!("bin [{lo}, {hi}] must be finite and ordered")));
    }
    Ok(integrate_panels(|y| density(y, which, g), lo, hi, g.fringe_spacing() / 8.0, q)?.value)
}

/// Integral of `|Ψ_U + Ψ_L|²` over the screen, cut off where the `1/S²`
/// envelope has fallen below `1e-8` of its value on the axis.
pub fn two_slit_total_probability(g: &TwoSlitGeometry, q: &QuadratureSpec) -> Result<f64> {
    let s0 = (0.5 * g.d).hypot(g.big_d);
    let cutoff = (1e4 * s0).max(g.d);
    // Fine panels where the fringes are, then geometrically growing ones
    // where the phase difference has saturated.
    let near = 4.0 * (g.big_d + g.d);
    let step = g.fringe_spacing() / 8.0;
    let n = (near / step).ceil() as usize;
    let mut points: Vec<f64> = (0..=n).map(|i| i as f64 * near / n as f64).collect();
    let mut y = near;
    while y < cutoff {
        y = (y * 1.25).min(cutoff);
        points.push(y);
    }
    let mut all: Vec<f64> = points.iter().rev().map(|p| -p).collect();
    all.extend_from_slice(&points[1..]);
    Ok(integrate_with_breakpoints(|y| two_slit_densities(y, g).total, &all, q)?.value)
}

/// Outcome for one trial bin width.
#[derive(Clone, Debug, PartialEq)]
pub struct BinWidthTrial {
    pub width: f64,
    /// Smallest bin probability over both slits and all bins.
    pub min_probability: f64,
    pub passes: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BinWidthScan {
    /// Smallest tested width whose bins are all non-negative.
    pub smallest_passing: Option<f64>,
    pub fringe_spacing: f64,
    pub trials: Vec<BinWidthTrial>,
}

/// The default screen window `[-D/2, D/2]`.
pub fn default_screen_range(g: &TwoSlitGeometry) -> (f64, f64) {
    (-0.5 * g.big_d, 0.5 * g.big_d)
}

/// Uniform bins of `width` tiling `[lo, hi]` from `lo`; the last bin is cut
/// at `hi`.
pub fn uniform_bins(range: (f64, f64), width: f64) -> Vec<(f64, f64)> {
    let (lo, hi) = range;
    let mut bins = Vec::new();
    let mut i = 0usize;
    loop {
        let a = lo + i as f64 * width;
        if a >= hi {
            break;
        }
        bins.push((a, (a + width).min(hi)));
        i += 1;
    }
    bins
}

/// Tries each width (largest first) and records whether every bin of both
/// slit histories has non-negative probability.
pub fn min_lp_binwidth(
    g: &TwoSlitGeometry,
    y_range: (f64, f64),
    widths: &[f64],
    q: &QuadratureSpec,
) -> Result<BinWidthScan> {
    if widths.is_empty() {
        return Err(Error::EmptyInput("bin widths"));
    }
    if widths.iter().any(|w| !(*w > 0.0 && w.is_finite())) || widths.windows(2).any(|w| w[1] > w[0]) {
        return Err(Error::InvalidParameter(format!("widths must be positive and descending: {widths:?}")));
    }
    let (lo, hi) = y_range;
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(Error::InvalidParameter(format!("screen range [{lo}, {hi}] is empty")));
    }
    let mut trials = Vec::with_capacity(widths.len());
    let mut smallest_passing = None;
    for &width in widths {
        let mut min_probability = f64::INFINITY;
        for bin in uniform_bins(y_range, width) {
            for which in [Slit::Upper, Slit::Lower] {
                min_probability = min_probability.min(two_slit_bin_probability(bin, which, g, q)?);
            }
        }
        let passes = min_probability >= 0.0;
        if passes {
            smallest_passing = Some(width);
        }
        trials.push(BinWidthTrial { width, min_probability, passes });
    }
    Ok(BinWidthScan { smallest_passing, fringe_spacing: g.fringe_spacing(), trials })
}
