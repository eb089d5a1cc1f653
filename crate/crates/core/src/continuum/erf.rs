//! Complex error function and the Faddeeva function `w(z) = e^{-z²} erfc(-iz)`.

#[allow(unused_imports)]
use num_traits::Float;

use core::f64::consts::PI;

use crate::hilbert::linalg::C64;

// Rational-expansion scale and coefficients (40 terms, highest degree
// first) for w in the closed upper half plane.
const W_SCALE: f64 = 5.3182958969449885;
const W_COEFFS: [f64; 40] = [
    -1.899694947394927e-15,
    1.128073562364402e-15,
    1.1357687198999241e-14,
    -5.409310282882142e-15,
    -7.074086260286855e-14,
    1.37256205867155e-14,
    4.5329666782606727e-13,
    1.2031458219387989e-13,
    -2.907688342182867e-12,
    -2.7276023158200452e-12,
    1.7714495214011192e-11,
    3.47272670930455e-11,
    -9.055124450928292e-11,
    -3.5632339865976533e-10,
    2.1086006347066517e-10,
    3.0177805400090707e-09,
    3.2497465180436973e-09,
    -1.8315616783040462e-08,
    -6.35177348504429e-08,
    1.4198642399935674e-08,
    5.912136951899494e-07,
    1.483566113220078e-06,
    -1.0660138984947143e-06,
    -1.8007447144750956e-05,
    -5.591309264248318e-05,
    -3.939363145489569e-05,
    0.0004398070159869668,
    0.0027054056330737914,
    0.010048186242783424,
    0.029202916471241867,
    0.07182361779074337,
    0.15504263802479495,
    0.29989437996150065,
    0.5266528988277086,
    0.8472174576593818,
    1.2563815675765133,
    1.7253830848179779,
    2.201513794878312,
    2.61605415276186,
    2.8996245093897053,
];

fn faddeeva_upper(z: C64) -> C64 {
    let iz = C64::new(-z.im, z.re);
    let l = C64::new(W_SCALE, 0.0);
    let denom = l - iz;
    let big_z = (l + iz) / denom;
    let p = W_COEFFS.iter().fold(C64::new(0.0, 0.0), |acc, &c| acc * big_z + c);
    p * 2.0 / (denom * denom) + denom.inv() / PI.sqrt()
}

/// Faddeeva function `w(z) = e^{-z²} erfc(-iz)`.
///
/// Accurate to a few ulps in the closed upper half plane; below the real
/// axis `w(z) = 2e^{-z²} - w(-z)`, which grows like `e^{y²}`.
pub fn faddeeva_w(z: C64) -> C64 {
    if z.im >= 0.0 {
        faddeeva_upper(z)
    } else {
        (-z * z).exp() * 2.0 - faddeeva_upper(-z)
    }
}

fn erf_series(z: C64) -> C64 {
    let z2 = z * z;
    let mut term = z;
    let mut sum = z;
    for n in 1..200 {
        term = -term * z2 / n as f64;
        let contrib = term / (2 * n + 1) as f64;
        sum += contrib;
        if contrib.norm() < 1e-17 * sum.norm() {
            break;
        }
    }
    sum * (2.0 / PI.sqrt())
}

/// `erf(x + iy)` on the whole plane.
///
/// Where the true value exceeds the `f64` range the components saturate to
/// signed infinities (a component that is exactly zero stays zero); the
/// result is never NaN for finite input.
pub fn complex_erf(z: C64) -> C64 {
    if z.re.is_nan() || z.im.is_nan() {
        return C64::new(f64::NAN, f64::NAN);
    }
    // erf(-z) = -erf(z), erf(z̄) = conj(erf(z)).
    let (sx, sy) = (if z.re < 0.0 { -1.0 } else { 1.0 }, if z.im < 0.0 { -1.0 } else { 1.0 });
    let q = C64::new(z.re.abs(), z.im.abs());
    let e = first_quadrant_erf(q);
    C64::new(sx * e.re, sy * e.im)
}

fn first_quadrant_erf(z: C64) -> C64 {
    if z.norm() < 2.0 {
        return erf_series(z);
    }
    let (x, y) = (z.re, z.im);
    let iz = C64::new(-y, x);
    let w = faddeeva_upper(iz);
    // |e^{-z²} w(iz)| = e^{y² - x²} |w(iz)|
    let log_mag = y * y - x * x + w.norm().ln();
    if log_mag < 709.0 {
        let tail = C64::from_polar(1.0, -2.0 * x * y) * (y * y - x * x).exp() * w;
        let e = C64::new(1.0, 0.0) - tail;
        // Exact on the axes: real for real z, imaginary for imaginary z.
        return C64::new(if x == 0.0 { 0.0 } else { e.re }, if y == 0.0 { 0.0 } else { e.im });
    }
    // The "1" is negligible; only the direction of -e^{-z²} w(iz) matters.
    let dir = -(C64::from_polar(1.0, -2.0 * x * y) * w);
    let saturate = |c: f64| if c == 0.0 { 0.0 } else { c.signum() * f64::INFINITY };
    // On the imaginary axis erf is purely imaginary.
    let re = if x == 0.0 { 0.0 } else { saturate(dir.re) };
    C64::new(re, saturate(dir.im))
}
