mod common;

use common::*;
use histoq_core::discrete::three_box::ThreeBox;
use histoq_core::hilbert::*;
use histoq_core::C64;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn chain_sets_are_exhaustive_and_normalized(seed in any::<u64>()) {
        let m = random_model(&mut rng(seed), 2..=6, 4);
        prop_assert!(m.set.exhaustiveness_residual() < 1e-10);
        let total: f64 = m.set.members().iter().map(|c| candidate_probability(&m.psi, c).unwrap()).sum();
        prop_assert!((total - 1.0).abs() < 1e-10);
    }

    #[test]
    fn chain_probabilities_are_at_most_one(seed in any::<u64>()) {
        let m = random_model(&mut rng(seed), 2..=6, 4);
        for c in m.set.members() {
            prop_assert!(c.is_chain());
            prop_assert!(candidate_probability(&m.psi, c).unwrap() <= 1.0 + 1e-12);
        }
    }

    #[test]
    fn probability_splits_into_norm_and_cross_terms(seed in any::<u64>()) {
        let m = random_model(&mut rng(seed), 2..=6, 3);
        let c = classify_set(&m.psi, &m.set, &Tolerances::default()).unwrap();
        let n = c.len();
        for a in 0..n {
            let cross: f64 = (0..n).filter(|b| *b != a).map(|b| c.d(b, a).re).sum();
            prop_assert!((c.probabilities[a] - c.d(a, a).re - cross).abs() < 1e-10);
            prop_assert!(c.d(a, a).re >= -1e-12 && c.d(a, a).im.abs() < 1e-12);
        }
    }

    #[test]
    fn reversed_chains_have_equal_probability(seed in any::<u64>()) {
        let mut r = rng(seed);
        let m = random_model(&mut r, 2..=6, 4);
        let steps: Vec<ChainStep> = m
            .decompositions
            .iter()
            .map(|(d, t)| ChainStep::new(d, rand::Rng::gen_range(&mut r, 0..d.len()), *t))
            .collect();
        let forward = chain_class_operator(&steps, &m.hamiltonian).unwrap();
        let backward = reversed_chain_class_operator(&steps, &m.hamiltonian).unwrap();
        let pf = candidate_probability(&m.psi, &forward).unwrap();
        let pb = candidate_probability(&m.psi, &backward).unwrap();
        prop_assert!((pf - pb).abs() < 1e-12);
    }

    #[test]
    fn projector_from_vectors(seed in any::<u64>(), dim in 2usize..7) {
        let mut r = rng(seed);
        let rank = 1 + (seed as usize) % dim;
        let p = random_projector(&mut r, dim, rank);
        prop_assert_eq!(p.rank(), rank);
        let m = p.matrix();
        prop_assert!((m * m).max_abs_diff(m) < 1e-12);
        prop_assert!(m.hermiticity_residual() < 1e-12);
    }
}

#[test]
fn medium_decoherence_implies_positivity() {
    // Chains through commuting decompositions, plus random ones: every set
    // that comes out medium decoherent must have non-negative probabilities.
    let mut seen_md = 0;
    for seed in 0..300u64 {
        let mut r = rng(seed);
        let dim = 2 + (seed as usize % 5);
        let psi = random_state(&mut r, dim);
        let set = if seed % 2 == 0 {
            let basis = random_basis(&mut r, dim);
            let d = ProjectiveDecomposition::from_basis(&basis).unwrap();
            full_chain_set(&[(d.clone(), 0.0), (d, 1.0)], &Hamiltonian::zero(dim)).unwrap()
        } else {
            random_model(&mut r, dim..=dim, 2).set
        };
        let c = classify_set(&psi, &set, &Tolerances::default()).unwrap();
        if c.md_residual < 1e-12 {
            seen_md += 1;
            assert!(c.lp_violation > -1e-10);
            assert_eq!(c.verdict, Verdict::Medium);
        }
    }
    assert!(seen_md >= 100);
}

#[test]
fn three_box_sets() {
    let m = ThreeBox::new();
    let four = classify_set(&m.psi, &m.box_a_set().unwrap(), &Tolerances::default()).unwrap();
    assert_eq!(four.verdict, Verdict::Medium);
    assert!(four.md_residual < 1e-12);
    let eight = classify_set(&m.psi, &m.box_ab_set().unwrap(), &Tolerances::default()).unwrap();
    assert_eq!(eight.verdict, Verdict::ExtendedOnly);
    assert!((eight.lp_violation + 1.0 / 9.0).abs() < 1e-12);
    let want = [0.0, 1.0 / 9.0, 1.0 / 9.0, -1.0 / 9.0, 0.0, 2.0 / 9.0, 2.0 / 9.0, 4.0 / 9.0];
    for (p, w) in eight.probabilities.iter().zip(want) {
        assert!((p - w).abs() < 1e-12);
    }
}

#[test]
fn rank_one_pair_eigenvalues() {
    let mut r = rng(7);
    for _ in 0..200 {
        let dim = 2 + rand::Rng::gen_range(&mut r, 0..7);
        let a = StateVector::normalized(gaussian_vector(&mut r, dim)).unwrap();
        let b = StateVector::normalized(gaussian_vector(&mut r, dim)).unwrap();
        let c = a.inner(&b).norm();
        let ev = hermitian_product_eigenvalues(&a.projector(), &b.projector()).unwrap();
        assert!((ev[0] - (c * c - c)).abs() < 1e-10);
        assert!((ev[dim - 1] - (c * c + c)).abs() < 1e-10);
        for v in &ev[1..dim - 1] {
            assert!(v.abs() < 1e-10);
        }
    }
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let a = StateVector::from_real(&[1.0, 0.0]).unwrap();
    let b = StateVector::from_real(&[s, s]).unwrap();
    let ev = hermitian_product_eigenvalues(&a.projector(), &b.projector()).unwrap();
    assert!((ev[0] - (0.5 - s)).abs() < 1e-12);
}

#[test]
fn commuting_projectors_have_no_negative_eigenvalue() {
    let mut r = rng(11);
    for _ in 0..100 {
        let dim = 2 + rand::Rng::gen_range(&mut r, 0..7);
        let basis = random_basis(&mut r, dim);
        let pa = make_projector(&basis[..1]).unwrap();
        let pb = make_projector(&basis[1..]).unwrap();
        let ev = hermitian_product_eigenvalues(&pa, &pb).unwrap();
        assert!(ev[0] > -1e-12);
        let ev = hermitian_product_eigenvalues(&pa, &pa).unwrap();
        assert!(ev[0] > -1e-12);
    }
}

#[test]
fn noncommuting_pairs_always_have_a_negative_eigenvalue() {
    let mut r = rng(13);
    for _ in 0..1000 {
        let dim = 2 + rand::Rng::gen_range(&mut r, 0..7);
        let ra = 1 + rand::Rng::gen_range(&mut r, 0..dim - 1);
        let rb = 1 + rand::Rng::gen_range(&mut r, 0..dim - 1);
        let pa = random_projector(&mut r, dim, ra);
        let pb = random_projector(&mut r, dim, rb);
        assert!(pa.matrix().commutator(pb.matrix()).max_abs() > 1e-6);
        let ev = hermitian_product_eigenvalues(&pa, &pb).unwrap();
        assert!(ev[0] < -1e-12, "dim {dim}, ranks {ra},{rb}: {}", ev[0]);
    }
}

#[test]
fn heisenberg_projectors_stay_projectors() {
    let mut r = rng(17);
    let h = random_hamiltonian(&mut r, 5);
    let p = random_projector(&mut r, 5, 2);
    let pt = heisenberg_projector(&p, &h, 2.3).unwrap();
    let m = pt.matrix();
    assert!((m * m).max_abs_diff(m) < 1e-12);
    let u = h.propagator(2.3);
    let expect = &(&u.adjoint() * p.matrix()) * &u;
    assert!(m.max_abs_diff(&expect) < 1e-12);
    assert!((u.trace() - h.eigen().values.iter().map(|e| C64::from_polar(1.0, -2.3 * e)).sum::<C64>()).norm() < 1e-12);
}
