#[allow(unused_imports)]
use num_traits::Float;

use crate::hilbert::linalg::norm_sqr;
use crate::hilbert::{ProjectiveDecomposition, StateVector};
use crate::{Error, Result};

/// `-Σ p log p + Σ p log Tr P_α` in nats, with `p = ||P_α Ψ||²` and
/// `0 log 0 = 0`.
pub fn entropy(psi: &StateVector, decomp: &ProjectiveDecomposition) -> Result<f64> {
    if psi.dim() != decomp.dim() {
        return Err(Error::DimensionMismatch { expected: decomp.dim(), found: psi.dim() });
    }
    let mut s = 0.0;
    for p in decomp.projectors() {
        let weight = norm_sqr(&p.matrix().apply(psi.amplitudes()));
        if weight > 0.0 {
            let trace = p.matrix().trace().re;
            s += weight * (trace.ln() - weight.ln());
        }
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::Projector;
    use crate::C64;
    use alloc::vec;

    #[test]
    fn trivial_decomposition_gives_log_dimension() {
        let psi = StateVector::from_real(&[1.0, 2.0, 3.0, 4.0, 5.0]).unwrap();
        let s = entropy(&psi, &ProjectiveDecomposition::trivial(5)).unwrap();
        assert_eq!(s, 5f64.ln());
    }

    #[test]
    fn basis_containing_state_gives_zero() {
        let psi = StateVector::from_real(&[0.6, 0.8]).unwrap();
        let d = ProjectiveDecomposition::from_basis(&[
            vec![C64::new(0.6, 0.0), C64::new(0.8, 0.0)],
            vec![C64::new(-0.8, 0.0), C64::new(0.6, 0.0)],
        ])
        .unwrap();
        assert!(entropy(&psi, &d).unwrap().abs() < 1e-15);
    }

    #[test]
    fn qubit_at_angle() {
        let theta = 1.2f64;
        let psi = StateVector::from_real(&[(theta / 2.0).cos(), (theta / 2.0).sin()]).unwrap();
        let d = ProjectiveDecomposition::binary(Projector::basis(2, &[0]).unwrap(), "up").unwrap();
        let (p, q) = ((theta / 2.0).cos().powi(2), (theta / 2.0).sin().powi(2));
        let want = -(p * p.ln() + q * q.ln());
        assert!((entropy(&psi, &d).unwrap() - want).abs() < 1e-15);
    }
}
