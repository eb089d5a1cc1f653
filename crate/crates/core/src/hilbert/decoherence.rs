use alloc::vec::Vec;

use super::history::{ClassOperator, HistorySet};
use super::linalg::{inner, C64};
use super::space::{Projector, StateVector};
use crate::{Error, Result};

fn check_dim(psi: &StateVector, dim: usize) -> Result<()> {
    if psi.dim() != dim {
        return Err(Error::DimensionMismatch { expected: dim, found: psi.dim() });
    }
    Ok(())
}

/// `Re <Ψ|C|Ψ>`
pub fn candidate_probability(psi: &StateVector, c: &ClassOperator) -> Result<f64> {
    check_dim(psi, c.dim())?;
    Ok(c.matrix().expectation(psi.amplitudes(), psi.amplitudes()).re)
}

/// `<Ψ|C|Ψ>` including the imaginary part.
pub fn complex_amplitude(psi: &StateVector, c: &ClassOperator) -> Result<C64> {
    check_dim(psi, c.dim())?;
    Ok(c.matrix().expectation(psi.amplitudes(), psi.amplitudes()))
}

/// `C|Ψ>`
pub fn branch_state(psi: &StateVector, c: &ClassOperator) -> Result<Vec<C64>> {
    check_dim(psi, c.dim())?;
    Ok(c.matrix().apply(psi.amplitudes()))
}

/// `D(α, β) = <Ψ|C_α† C_β|Ψ>`
pub fn decoherence_functional(psi: &StateVector, ca: &ClassOperator, cb: &ClassOperator) -> Result<C64> {
    let a = branch_state(psi, ca)?;
    let b = branch_state(psi, cb)?;
    Ok(inner(&a, &b))
}

/// Absolute thresholds for each decoherence condition.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    pub md: f64,
    pub rlp: f64,
    pub lp: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { md: 1e-8, rlp: 1e-8, lp: 1e-10 }
    }
}

/// Strongest condition satisfied, in order of decreasing restriction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Verdict {
    Medium,
    RealLinear,
    Linear,
    ExtendedOnly,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Medium => "MD",
            Verdict::RealLinear => "RLP",
            Verdict::Linear => "LP",
            Verdict::ExtendedOnly => "EP_ONLY",
        }
    }

    pub fn is_linearly_positive(self) -> bool {
        self != Verdict::ExtendedOnly
    }
}

impl core::fmt::Display for Verdict {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Result of [`classify_set`]. Residuals and witnesses are always filled in,
/// whatever the verdict.
#[derive(Clone, Debug, PartialEq)]
pub struct Classification {
    pub verdict: Verdict,
    /// `max |D(α,β)|` over `α ≠ β` (0 for one-member sets).
    pub md_residual: f64,
    pub md_witness: Option<(usize, usize)>,
    /// `max |Im <Ψ|C_α|Ψ>|`
    pub rlp_residual: f64,
    pub rlp_witness: usize,
    /// `min p(α)`
    pub lp_violation: f64,
    pub lp_witness: usize,
    /// `|Σ p(α) - 1|`
    pub sum_residual: f64,
    pub tolerances: Tolerances,
    /// Pairs `α < β` with `|D(α,β)| > tol.md`.
    pub md_offenders: Vec<(usize, usize)>,
    /// Members with `|Im| > tol.rlp`.
    pub rlp_offenders: Vec<usize>,
    /// Members with `p < -tol.lp`.
    pub lp_offenders: Vec<usize>,
    pub probabilities: Vec<f64>,
    pub imaginary_parts: Vec<f64>,
    /// `D` row-major, `n × n`.
    pub functional: Vec<C64>,
}

impl Classification {
    pub fn len(&self) -> usize {
        self.probabilities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probabilities.is_empty()
    }

    pub fn d(&self, alpha: usize, beta: usize) -> C64 {
        self.functional[alpha * self.len() + beta]
    }
}

/// Computes every candidate probability, imaginary part and off-diagonal
/// element of the decoherence functional and reports the strongest of
/// MD, RLP, LP that holds (EP_ONLY otherwise).
pub fn classify_set(psi: &StateVector, set: &HistorySet, tol: &Tolerances) -> Result<Classification> {
    check_dim(psi, set.dim())?;
    let n = set.len();
    let branches: Vec<Vec<C64>> =
        set.members().iter().map(|c| c.matrix().apply(psi.amplitudes())).collect();
    let amplitudes: Vec<C64> = branches.iter().map(|b| inner(psi.amplitudes(), b)).collect();
    let probabilities: Vec<f64> = amplitudes.iter().map(|z| z.re).collect();
    let imaginary_parts: Vec<f64> = amplitudes.iter().map(|z| z.im).collect();

    let mut functional = alloc::vec![C64::new(0.0, 0.0); n * n];
    let mut md_residual = 0.0f64;
    let mut md_witness = None;
    let mut md_offenders = Vec::new();
    for a in 0..n {
        functional[a * n + a] = C64::new(inner(&branches[a], &branches[a]).re, 0.0);
        for b in a + 1..n {
            let d = inner(&branches[a], &branches[b]);
            functional[a * n + b] = d;
            functional[b * n + a] = d.conj();
            let m = d.norm();
            if md_witness.is_none() || m > md_residual {
                md_residual = m;
                md_witness = Some((a, b));
            }
            if m > tol.md {
                md_offenders.push((a, b));
            }
        }
    }

    let (mut rlp_residual, mut rlp_witness) = (0.0f64, 0);
    let (mut lp_violation, mut lp_witness) = (f64::INFINITY, 0);
    let mut rlp_offenders = Vec::new();
    let mut lp_offenders = Vec::new();
    for i in 0..n {
        let im = imaginary_parts[i].abs();
        if im > rlp_residual {
            rlp_residual = im;
            rlp_witness = i;
        }
        if im > tol.rlp {
            rlp_offenders.push(i);
        }
        if probabilities[i] < lp_violation {
            lp_violation = probabilities[i];
            lp_witness = i;
        }
        if probabilities[i] < -tol.lp {
            lp_offenders.push(i);
        }
    }
    let sum_residual = (probabilities.iter().sum::<f64>() - 1.0).abs();

    let lp = lp_violation >= -tol.lp;
    let verdict = if md_residual <= tol.md {
        Verdict::Medium
    } else if lp && rlp_residual <= tol.rlp {
        Verdict::RealLinear
    } else if lp {
        Verdict::Linear
    } else {
        Verdict::ExtendedOnly
    };

    Ok(Classification {
        verdict,
        md_residual,
        md_witness,
        rlp_residual,
        rlp_witness,
        lp_violation,
        lp_witness,
        sum_residual,
        tolerances: *tol,
        md_offenders,
        rlp_offenders,
        lp_offenders,
        probabilities,
        imaginary_parts,
        functional,
    })
}

/// Ascending eigenvalues of `P_a P_b + P_b P_a`.
pub fn hermitian_product_eigenvalues(pa: &Projector, pb: &Projector) -> Result<Vec<f64>> {
    if pa.dim() != pb.dim() {
        return Err(Error::DimensionMismatch { expected: pa.dim(), found: pb.dim() });
    }
    let g = &(pa.matrix() * pb.matrix()) + &(pb.matrix() * pa.matrix());
    Ok(g.eigh().values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::{make_projector, Matrix};
    use alloc::string::ToString;
    use alloc::vec;

    #[test]
    fn identity_has_probability_one() {
        let psi = StateVector::from_real(&[1.0, 2.0, -0.5]).unwrap();
        let c = ClassOperator::identity(3);
        assert!((candidate_probability(&psi, &c).unwrap() - 1.0).abs() < 1e-15);
        assert!((decoherence_functional(&psi, &c, &c).unwrap() - C64::new(1.0, 0.0)).norm() < 1e-15);
        assert_eq!(branch_state(&psi, &c).unwrap(), psi.amplitudes().to_vec());
    }

    #[test]
    fn real_part_matches_hermitian_part() {
        let psi = StateVector::normalized(vec![C64::new(0.3, 0.1), C64::new(-0.2, 0.8)]).unwrap();
        let c = ClassOperator::opaque(Matrix::from_fn(2, |i, j| C64::new(i as f64 - 0.3, j as f64 + 0.2)));
        let direct = candidate_probability(&psi, &c).unwrap();
        let herm = c.matrix().hermitian_part().expectation(psi.amplitudes(), psi.amplitudes()).re;
        assert!((direct - herm).abs() < 1e-15);
    }

    #[test]
    fn rank_one_product_eigenvalues() {
        // |a> = e_0, |b> = (e_0 + e_1)/√2, c = 1/√2.
        let s = 0.5f64.sqrt();
        let pa = make_projector(&[vec![C64::new(1.0, 0.0), C64::new(0.0, 0.0)]]).unwrap();
        let pb = make_projector(&[vec![C64::new(s, 0.0), C64::new(s, 0.0)]]).unwrap();
        let ev = hermitian_product_eigenvalues(&pa, &pb).unwrap();
        assert!((ev[0] - (0.5 - s)).abs() < 1e-14);
        assert!((ev[0] + 0.20710678118654752).abs() < 1e-14);
        assert!((ev[1] - (0.5 + s)).abs() < 1e-14);
    }

    #[test]
    fn commuting_pair_has_no_negative_eigenvalue() {
        let pa = Projector::basis(3, &[0, 1]).unwrap();
        let pb = Projector::basis(3, &[1, 2]).unwrap();
        let ev = hermitian_product_eigenvalues(&pa, &pb).unwrap();
        assert!(ev[0] > -1e-15);
    }

    #[test]
    fn verdict_names() {
        assert_eq!(Verdict::ExtendedOnly.as_str(), "EP_ONLY");
        assert_eq!(Verdict::RealLinear.to_string(), "RLP");
    }
}
