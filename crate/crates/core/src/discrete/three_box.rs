//! A particle in one of three boxes `A, B, C`, zero Hamiltonian, prepared
//! in `(|A> + |B> + |C>)/√3` and tested at the final time for
//! `Φ = (|A> + |B> - |C>)/√3`.

use alloc::vec;

use crate::hilbert::linalg::C64;
use crate::hilbert::{
    full_chain_set, ClassOperator, Hamiltonian, HistorySet, ProjectiveDecomposition, Projector, StateVector,
};
use crate::Result;

#[derive(Clone, Debug)]
pub struct ThreeBox {
    pub psi: StateVector,
    pub phi: StateVector,
    pub p_phi: Projector,
    pub p_a: Projector,
    pub p_b: Projector,
    pub p_c: Projector,
    pub hamiltonian: Hamiltonian,
}

impl Default for ThreeBox {
    fn default() -> Self {
        Self::new()
    }
}

impl ThreeBox {
    pub fn new() -> Self {
        let psi = StateVector::from_real(&[1.0, 1.0, 1.0]).expect("nonzero");
        let phi = StateVector::from_real(&[1.0, 1.0, -1.0]).expect("nonzero");
        ThreeBox {
            p_phi: phi.projector(),
            psi,
            phi,
            p_a: Projector::basis(3, &[0]).expect("in range"),
            p_b: Projector::basis(3, &[1]).expect("in range"),
            p_c: Projector::basis(3, &[2]).expect("in range"),
            hamiltonian: Hamiltonian::zero(3),
        }
    }

    /// `{P_Φ, P_Φ̄}`
    pub fn final_decomposition(&self) -> ProjectiveDecomposition {
        ProjectiveDecomposition::binary(self.p_phi.clone(), "Φ").expect("binary")
    }

    pub fn box_decomposition(&self, which: char) -> ProjectiveDecomposition {
        let (p, label) = match which {
            'A' => (&self.p_a, "A"),
            'B' => (&self.p_b, "B"),
            _ => (&self.p_c, "C"),
        };
        ProjectiveDecomposition::binary(p.clone(), label).expect("binary")
    }

    /// `{A, B, C}` at one time.
    pub fn three_way_decomposition(&self) -> ProjectiveDecomposition {
        ProjectiveDecomposition::new(
            vec![self.p_a.clone(), self.p_b.clone(), self.p_c.clone()],
            vec!["A".into(), "B".into(), "C".into()],
        )
        .expect("complete basis")
    }

    /// `P_Φ P_A, P_Φ P_Ā, P_Φ̄ P_A, P_Φ̄ P_Ā`, labelled `(Φ,A)` etc.
    pub fn box_a_set(&self) -> Result<HistorySet> {
        full_chain_set(&[(self.box_decomposition('A'), 1.0), (self.final_decomposition(), 2.0)], &self.hamiltonian)
    }

    /// The eight histories `P_Φ P_A P_B, ...`; `A` and `B` commute so the
    /// order of the two intermediate projections is immaterial. Members run
    /// `(Φ,A,B), (Φ,A,B̄), (Φ,Ā,B), (Φ,Ā,B̄), (Φ̄,A,B), ...`.
    pub fn box_ab_set(&self) -> Result<HistorySet> {
        full_chain_set(
            &[
                (self.box_decomposition('B'), 0.5),
                (self.box_decomposition('A'), 1.0),
                (self.final_decomposition(), 2.0),
            ],
            &self.hamiltonian,
        )
    }

    pub fn operator(p: &Projector) -> ClassOperator {
        ClassOperator::opaque(p.matrix().clone())
    }

    /// `<Φ|Ψ>`
    pub fn overlap(&self) -> C64 {
        self.phi.inner(&self.psi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::candidate_probability;

    #[test]
    fn overlap_is_one_third() {
        let m = ThreeBox::new();
        assert!((m.overlap() - C64::new(1.0 / 3.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn four_set_values() {
        let m = ThreeBox::new();
        let set = m.box_a_set().unwrap();
        let want = [
            ("(Φ,A)", 1.0 / 9.0),
            ("(Φ,A\u{304})", 0.0),
            ("(Φ\u{304},A)", 2.0 / 9.0),
            ("(Φ\u{304},A\u{304})", 2.0 / 3.0),
        ];
        for (label, value) in want {
            let i = set.index_of(label).unwrap();
            assert!((candidate_probability(&m.psi, &set.members()[i]).unwrap() - value).abs() < 1e-15);
        }
    }

    #[test]
    fn complement_sums_to_identity() {
        let m = ThreeBox::new();
        let s = m.p_a.matrix() + m.p_a.complement().matrix();
        assert_eq!(s, crate::hilbert::Matrix::identity(3));
    }
}
