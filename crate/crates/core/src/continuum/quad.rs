//! Globally adaptive 7/15-point Gauss-Kronrod quadrature for real or
//! complex integrands.

use alloc::collections::BinaryHeap;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::ops::{Add, Mul, Sub};

#[allow(unused_imports)]
use num_traits::Float;

use crate::hilbert::linalg::C64;
use crate::{Error, Result};

const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];

const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];

// Gauss weights for XGK[1], XGK[3], XGK[5] and the centre.
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

/// Values that can be integrated: real or complex.
pub trait QuadValue: Copy + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> {
    fn zero() -> Self;
    fn magnitude(self) -> f64;
}

impl QuadValue for f64 {
    fn zero() -> Self {
        0.0
    }
    fn magnitude(self) -> f64 {
        self.abs()
    }
}

impl QuadValue for C64 {
    fn zero() -> Self {
        C64::new(0.0, 0.0)
    }
    fn magnitude(self) -> f64 {
        self.norm()
    }
}

/// Accuracy targets shared by every continuum computation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadratureSpec {
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// Bisections allowed beyond the initial panels.
    pub max_subdivisions: usize,
    /// Half-width, in units of the packet width, at which infinite ranges
    /// are cut off.
    pub truncation_sigmas: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec { abs_tol: 1e-10, rel_tol: 1e-8, max_subdivisions: 1 << 14, truncation_sigmas: 10.0 }
    }
}

impl QuadratureSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0 && self.rel_tol > 0.0 && self.truncation_sigmas > 0.0) {
            return Err(Error::InvalidParameter(alloc::format!("quadrature tolerances must be positive: {self:?}")));
        }
        Ok(())
    }

    /// Same settings with both tolerances scaled by `factor`.
    pub fn tightened(&self, factor: f64) -> Self {
        QuadratureSpec { abs_tol: self.abs_tol * factor, rel_tol: self.rel_tol * factor, ..*self }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadResult<T> {
    pub value: T,
    /// Estimated absolute error.
    pub error: f64,
    pub intervals: usize,
}

struct Segment<T> {
    a: f64,
    b: f64,
    value: T,
    error: f64,
}

impl<T> PartialEq for Segment<T> {
    fn eq(&self, other: &Self) -> bool {
        self.error.total_cmp(&other.error) == Ordering::Equal
    }
}
impl<T> Eq for Segment<T> {}
impl<T> PartialOrd for Segment<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<T> Ord for Segment<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn kronrod<T: QuadValue>(f: &mut impl FnMut(f64) -> T, a: f64, b: f64) -> Segment<T> {
    let centre = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(centre);
    let mut k = fc * WGK[7];
    let mut g = fc * WG[3];
    for j in 0..7 {
        let dx = half * XGK[j];
        let pair = f(centre - dx) + f(centre + dx);
        k = k + pair * WGK[j];
        if j % 2 == 1 {
            g = g + pair * WG[j / 2];
        }
    }
    let value = k * half;
    let error = ((k - g) * half).magnitude();
    Segment { a, b, value, error }
}

/// Integrates over `[a, b]`.
pub fn integrate<T: QuadValue>(f: impl FnMut(f64) -> T, a: f64, b: f64, spec: &QuadratureSpec) -> Result<QuadResult<T>> {
    integrate_with_breakpoints(f, &[a, b], spec)
}

/// Integrates over `[a, b]` starting from panels no wider than `panel`.
/// Used for integrands that oscillate on a known length scale.
pub fn integrate_panels<T: QuadValue>(
    f: impl FnMut(f64) -> T,
    a: f64,
    b: f64,
    panel: f64,
    spec: &QuadratureSpec,
) -> Result<QuadResult<T>> {
    if a == b {
        return Ok(QuadResult { value: T::zero(), error: 0.0, intervals: 0 });
    }
    let count = if panel > 0.0 && panel.is_finite() { ((b - a).abs() / panel).ceil().max(1.0) } else { 1.0 };
    if count > 1e7 {
        return Err(Error::InvalidParameter(alloc::format!("{count} initial panels requested")));
    }
    let count = count as usize;
    let points: Vec<f64> = (0..=count).map(|i| if i == count { b } else { a + (b - a) * i as f64 / count as f64 }).collect();
    integrate_with_breakpoints(f, &points, spec)
}

/// Integrates over `[points[0], points[last]]` with the given initial
/// breakpoints (which must be monotone).
pub fn integrate_with_breakpoints<T: QuadValue>(
    mut f: impl FnMut(f64) -> T,
    points: &[f64],
    spec: &QuadratureSpec,
) -> Result<QuadResult<T>> {
    spec.validate()?;
    if points.len() < 2 {
        return Err(Error::EmptyInput("quadrature breakpoints"));
    }
    if points.iter().any(|p| !p.is_finite()) {
        return Err(Error::InvalidParameter(alloc::format!("non-finite integration limit in {points:?}")));
    }
    let mut heap = BinaryHeap::with_capacity(points.len() + 2 * spec.max_subdivisions.min(1 << 16));
    let mut total = T::zero();
    let mut total_error = 0.0;
    for w in points.windows(2) {
        if w[0] == w[1] {
            continue;
        }
        let seg = kronrod(&mut f, w[0], w[1]);
        total = total + seg.value;
        total_error += seg.error;
        heap.push(seg);
    }
    // Segments too short to split further are set aside with their error.
    let mut frozen_value = T::zero();
    let mut frozen_error = 0.0;
    let mut subdivisions = 0;
    loop {
        let target = spec.abs_tol.max(spec.rel_tol * total.magnitude());
        if total_error + frozen_error <= target {
            break;
        }
        let worst = match heap.pop() {
            Some(s) => s,
            None => break,
        };
        let mid = 0.5 * (worst.a + worst.b);
        if !(mid > worst.a.min(worst.b) && mid < worst.a.max(worst.b)) || (worst.b - worst.a).abs() < 1e-14 * (1.0 + mid.abs()) {
            frozen_value = frozen_value + worst.value;
            frozen_error += worst.error;
            total_error -= worst.error;
            if frozen_error > target {
                break;
            }
            continue;
        }
        if subdivisions >= spec.max_subdivisions {
            heap.push(worst);
            break;
        }
        subdivisions += 1;
        let left = kronrod(&mut f, worst.a, mid);
        let right = kronrod(&mut f, mid, worst.b);
        total = total - worst.value + left.value + right.value;
        total_error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }
    // Re-sum to shed the drift from incremental updates.
    let mut value = frozen_value;
    let mut error = frozen_error;
    let intervals = heap.len();
    for s in heap.into_iter() {
        value = value + s.value;
        error += s.error;
    }
    let target = spec.abs_tol.max(spec.rel_tol * value.magnitude());
    if !(error <= target) || !value.magnitude().is_finite() {
        return Err(Error::QuadratureDiverged { estimate: value.magnitude(), error, intervals });
    }
    Ok(QuadResult { value, error, intervals })
}
