//! Random generators shared by the integration tests.
#![allow(dead_code)]

use histoq_core::hilbert::{
    full_chain_set, make_projector, Hamiltonian, HistorySet, Matrix, ProjectiveDecomposition, Projector, StateVector,
};
use histoq_core::histories::Partition;
use histoq_core::C64;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gaussian_vector(rng: &mut impl Rng, dim: usize) -> Vec<C64> {
    (0..dim).map(|_| C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))).collect()
}

pub fn random_state(rng: &mut impl Rng, dim: usize) -> StateVector {
    StateVector::normalized(gaussian_vector(rng, dim)).expect("nonzero with probability one")
}

/// Haar-ish orthonormal basis: Gram-Schmidt of Gaussian vectors.
pub fn random_basis(rng: &mut impl Rng, dim: usize) -> Vec<Vec<C64>> {
    let raw: Vec<Vec<C64>> = (0..dim).map(|_| gaussian_vector(rng, dim)).collect();
    histoq_core::hilbert::linalg::orthonormalize(&raw).expect("independent with probability one")
}

pub fn random_hamiltonian(rng: &mut impl Rng, dim: usize) -> Hamiltonian {
    let a = Matrix::from_fn(dim, |_, _| C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)));
    Hamiltonian::new((&a + &a.adjoint()).scale(C64::new(0.5, 0.0))).expect("hermitian")
}

/// A random basis split into `2..=min(dim, 3)` nonempty blocks.
pub fn random_decomposition(rng: &mut impl Rng, dim: usize) -> ProjectiveDecomposition {
    let basis = random_basis(rng, dim);
    let blocks = rng.gen_range(2..=dim.min(3));
    let mut owner: Vec<usize> = (0..dim).map(|i| if i < blocks { i } else { rng.gen_range(0..blocks) }).collect();
    owner.shuffle(rng);
    let projectors: Vec<Projector> = (0..blocks)
        .map(|b| {
            let vs: Vec<Vec<C64>> = basis.iter().zip(&owner).filter(|(_, o)| **o == b).map(|(v, _)| v.clone()).collect();
            make_projector(&vs).expect("orthonormal input")
        })
        .collect();
    let labels = (0..blocks).map(|b| format!("{}", (b'a' + b as u8) as char)).collect();
    ProjectiveDecomposition::new(projectors, labels).expect("complete")
}

pub struct RandomModel {
    pub psi: StateVector,
    pub hamiltonian: Hamiltonian,
    pub decompositions: Vec<(ProjectiveDecomposition, f64)>,
    pub set: HistorySet,
}

/// Dimension in `dims`, chains of 1..=`max_len` decompositions at
/// increasing random times, full chain set.
pub fn random_model(rng: &mut impl Rng, dims: std::ops::RangeInclusive<usize>, max_len: usize) -> RandomModel {
    let dim = rng.gen_range(dims);
    let len = rng.gen_range(1..=max_len);
    let hamiltonian = random_hamiltonian(rng, dim);
    let mut t = 0.0;
    let decompositions: Vec<(ProjectiveDecomposition, f64)> = (0..len)
        .map(|_| {
            t += rng.gen_range(0.1..2.0);
            (random_decomposition(rng, dim), t)
        })
        .collect();
    let set = full_chain_set(&decompositions, &hamiltonian).expect("valid chain");
    RandomModel { psi: random_state(rng, dim), hamiltonian, decompositions, set }
}

/// Random partition of `0..n` into `1..=n` blocks.
pub fn random_partition(rng: &mut impl Rng, n: usize) -> Partition {
    let k = rng.gen_range(1..=n);
    let mut owner: Vec<usize> = (0..n).map(|i| if i < k { i } else { rng.gen_range(0..k) }).collect();
    owner.shuffle(rng);
    let blocks: Vec<Vec<usize>> = (0..k).map(|b| (0..n).filter(|i| owner[*i] == b).collect()).collect();
    Partition::unlabelled(blocks, n).expect("valid partition")
}

/// A projector of the given rank onto a random subspace.
pub fn random_projector(rng: &mut impl Rng, dim: usize, rank: usize) -> Projector {
    let vs: Vec<Vec<C64>> = (0..rank).map(|_| gaussian_vector(rng, dim)).collect();
    make_projector(&vs).expect("independent with probability one")
}
