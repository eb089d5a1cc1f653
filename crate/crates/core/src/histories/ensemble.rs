use alloc::format;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::hilbert::linalg::{norm_sqr, C64};
use crate::hilbert::{ClassOperator, StateVector};
use crate::{Error, Result};

/// `cos Θ` below this counts as a strictly negative candidate probability.
pub const NEGATIVITY_THRESHOLD: f64 = -1e-15;

/// `N` identical subsystems each with `<Ψ|C₁|Ψ> = z`; one history with
/// `n_c` factors of `C₁` and `N - n_c` of `C₂ = I - C₁`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EnsembleSpec {
    pub z: C64,
    pub n: usize,
    pub n_c: usize,
}

impl EnsembleSpec {
    pub fn new(z: C64, n: usize, n_c: usize) -> Result<Self> {
        if n_c > n {
            return Err(Error::InvalidParameter(format!("n_c = {n_c} exceeds ensemble size {n}")));
        }
        if !(z.re.is_finite() && z.im.is_finite()) {
            return Err(Error::InvalidParameter(format!("non-finite amplitude {z}")));
        }
        Ok(EnsembleSpec { z, n, n_c })
    }

    /// From amplitude `A ≥ 0` and phase `φ`.
    pub fn polar(amplitude: f64, phase: f64, n: usize, n_c: usize) -> Result<Self> {
        if !(amplitude >= 0.0) {
            return Err(Error::InvalidParameter(format!("amplitude {amplitude} must be non-negative")));
        }
        Self::new(C64::from_polar(amplitude, phase), n, n_c)
    }
}

/// Returns `(log magnitude, phase)` of `z^n (1-z)^(N-n)`, with `-∞` for a
/// vanishing factor raised to a positive power.
fn polar_parts(z: C64, n: usize, n_c: usize) -> (f64, f64) {
    let w = C64::new(1.0, 0.0) - z;
    let n_w = n - n_c;
    let mut log_mag = 0.0;
    let mut phase = 0.0;
    for (base, power) in [(z, n_c), (w, n_w)] {
        if power == 0 {
            continue;
        }
        let m = base.norm();
        if m == 0.0 {
            return (f64::NEG_INFINITY, 0.0);
        }
        log_mag += power as f64 * m.ln();
        phase += power as f64 * base.arg();
    }
    (log_mag, phase)
}

/// `Re[z^{n_c} (1 - z)^{N - n_c}]`, evaluated in polar form.
pub fn ensemble_candidate_probability(spec: &EnsembleSpec) -> f64 {
    let (log_mag, phase) = polar_parts(spec.z, spec.n, spec.n_c);
    if log_mag == f64::NEG_INFINITY {
        return 0.0;
    }
    log_mag.exp() * phase.cos()
}

/// Candidate probability of one history for every `n_c = 0..=N`.
pub fn ensemble_table(z: C64, n: usize) -> Vec<f64> {
    (0..=n).map(|n_c| ensemble_candidate_probability(&EnsembleSpec { z, n, n_c })).collect()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HorizonWitness {
    pub n: usize,
    pub n_c: usize,
    pub value: f64,
}

/// Smallest `N ≤ n_max` at which some history has a strictly negative
/// candidate probability. The sign test is on `cos Θ` so it survives
/// underflow of the magnitude at large `N`.
pub fn ensemble_positivity_horizon(z: C64, n_max: usize) -> Result<Option<HorizonWitness>> {
    if !(z.norm() <= 1.0) {
        return Err(Error::InvalidParameter(format!("|z| = {} exceeds 1", z.norm())));
    }
    for n in 1..=n_max {
        for n_c in 0..=n {
            let (log_mag, phase) = polar_parts(z, n, n_c);
            if log_mag == f64::NEG_INFINITY {
                continue;
            }
            let c = phase.cos();
            if c < NEGATIVITY_THRESHOLD {
                return Ok(Some(HorizonWitness { n, n_c, value: log_mag.exp() * c }));
            }
        }
    }
    Ok(None)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProductProbabilities {
    /// `Re Π <Ψ_i|C_i|Ψ_i>`
    pub lp_joint: f64,
    /// `Π Re <Ψ_i|C_i|Ψ_i>`
    pub lp_product_of_marginals: f64,
    /// `Π ||C_i|Ψ_i>||²`
    pub md_joint: f64,
}

/// History of independent subsystems, without forming the tensor product.
pub fn product_history_probability(factors: &[(&StateVector, &ClassOperator)]) -> Result<ProductProbabilities> {
    if factors.is_empty() {
        return Err(Error::EmptyInput("subsystem factors"));
    }
    let mut joint = C64::new(1.0, 0.0);
    let mut marginals = 1.0;
    let mut md = 1.0;
    for (psi, c) in factors {
        if psi.dim() != c.dim() {
            return Err(Error::DimensionMismatch { expected: c.dim(), found: psi.dim() });
        }
        let branch = c.matrix().apply(psi.amplitudes());
        let amp: C64 = psi.amplitudes().iter().zip(&branch).map(|(a, b)| a.conj() * b).sum();
        joint *= amp;
        marginals *= amp.re;
        md *= norm_sqr(&branch);
    }
    Ok(ProductProbabilities { lp_joint: joint.re, lp_product_of_marginals: marginals, md_joint: md })
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::PI;

    #[test]
    fn real_half_gives_binomial_branch() {
        for n in 0..20 {
            for n_c in 0..=n {
                let p = ensemble_candidate_probability(&EnsembleSpec::polar(0.5, 0.0, n, n_c).unwrap());
                assert!((p - 0.5f64.powi(n as i32)).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn cube_of_rotated_half() {
        let z = C64::from_polar(0.5, PI / 4.0);
        let p = ensemble_candidate_probability(&EnsembleSpec::new(z, 3, 3).unwrap());
        let direct = (z * z * z).re;
        assert!((p - direct).abs() < 1e-15);
        assert!((p + 0.08838834764831845).abs() < 1e-12);
        let w = ensemble_positivity_horizon(z, 10).unwrap().unwrap();
        assert_eq!((w.n, w.n_c), (3, 3));
    }

    #[test]
    fn single_member_sums_to_one() {
        let spec1 = EnsembleSpec::polar(0.7, 1.1, 1, 1).unwrap();
        let spec0 = EnsembleSpec::polar(0.7, 1.1, 1, 0).unwrap();
        let (p1, p0) = (ensemble_candidate_probability(&spec1), ensemble_candidate_probability(&spec0));
        assert!((p1 - 0.7 * 1.1f64.cos()).abs() < 1e-15);
        assert!((p1 + p0 - 1.0).abs() < 1e-15);
    }

    #[test]
    fn purely_imaginary_amplitude() {
        let w = ensemble_positivity_horizon(C64::new(0.0, 0.9), 10).unwrap().unwrap();
        assert_eq!(w.n, 2);
        assert_eq!(w.n_c, 2);
        assert!((w.value + 0.81).abs() < 1e-14);
    }

    #[test]
    fn zero_amplitude_never_fails() {
        assert_eq!(ensemble_positivity_horizon(C64::new(0.0, 0.0), 50).unwrap(), None);
        assert_eq!(ensemble_table(C64::new(0.0, 0.0), 3), alloc::vec![1.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn amplitude_above_one_is_rejected() {
        assert!(ensemble_positivity_horizon(C64::new(1.2, 0.0), 3).is_err());
        assert!(EnsembleSpec::new(C64::new(0.1, 0.0), 2, 3).is_err());
    }
}
