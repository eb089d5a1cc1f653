//! Spin-1/2 histories: the spin along `n1` at one time, then along `n2`.
//!
//! Frame: `z` along `n2`, `n1 = (sin δ, 0, cos δ)`, and the state points
//! along polar angles `(θ, φ)`. Probabilities are indexed `(s2, s1)` in the
//! order `++, +-, -+, --`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::hilbert::linalg::{Matrix, C64};
use crate::hilbert::{
    classify_set, full_chain_set, Classification, Hamiltonian, HistorySet, ProjectiveDecomposition, Projector,
    StateVector, Tolerances,
};
use crate::{Error, Result};

use core::f64::consts::PI;

/// Cells whose smallest candidate probability is at least this are positive.
pub const GRID_THRESHOLD: f64 = -1e-14;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpinState {
    pub theta: f64,
    pub phi: f64,
}

impl SpinState {
    /// `θ ∈ [0, π]`, `φ ∈ [0, 2π)`.
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        if !(0.0..=PI).contains(&theta) {
            return Err(Error::InvalidParameter(format!("theta = {theta} outside [0, pi]")));
        }
        if !(0.0..2.0 * PI).contains(&phi) {
            return Err(Error::InvalidParameter(format!("phi = {phi} outside [0, 2 pi)")));
        }
        Ok(SpinState { theta, phi })
    }

    /// `(e^{iφ/2} cos(θ/2), e^{-iφ/2} sin(θ/2))`
    pub fn state_vector(&self) -> StateVector {
        let up = C64::from_polar((self.theta / 2.0).cos(), self.phi / 2.0);
        let down = C64::from_polar((self.theta / 2.0).sin(), -self.phi / 2.0);
        StateVector::normalized(vec![up, down]).expect("spin state has unit norm")
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpinGeometry {
    pub delta: f64,
}

impl SpinGeometry {
    /// `δ ∈ [0, π]`, the angle between the two directions.
    pub fn new(delta: f64) -> Result<Self> {
        if !(0.0..=PI).contains(&delta) {
            return Err(Error::InvalidParameter(format!("delta = {delta} outside [0, pi]")));
        }
        Ok(SpinGeometry { delta })
    }

    pub fn n1(&self) -> [f64; 3] {
        [self.delta.sin(), 0.0, self.delta.cos()]
    }

    pub fn n2(&self) -> [f64; 3] {
        [0.0, 0.0, 1.0]
    }
}

/// `½(I + s n·σ)` for a unit vector `n` and `s = ±1`.
pub fn spin_projector(n: [f64; 3], s: f64) -> Projector {
    let h = 0.5 * s;
    let m = Matrix::from_rows(&[
        vec![C64::new(0.5 + h * n[2], 0.0), C64::new(h * n[0], -h * n[1])],
        vec![C64::new(h * n[0], h * n[1]), C64::new(0.5 - h * n[2], 0.0)],
    ])
    .expect("2x2");
    Projector::from_matrix(m).expect("spin projector")
}

fn spin_decomposition(n: [f64; 3]) -> ProjectiveDecomposition {
    ProjectiveDecomposition::new(
        vec![spin_projector(n, 1.0), spin_projector(n, -1.0)],
        vec![String::from("+"), String::from("-")],
    )
    .expect("spin decomposition")
}

/// The four histories `P^{n2}_{s2} P^{n1}_{s1}` with zero Hamiltonian.
pub fn spin_history_set(g: &SpinGeometry) -> HistorySet {
    let decomps = [(spin_decomposition(g.n1()), 0.0), (spin_decomposition(g.n2()), 1.0)];
    full_chain_set(&decomps, &Hamiltonian::zero(2)).expect("spin history set")
}

/// Closed-form `p(s2, s1)` in the order `++, +-, -+, --`.
pub fn spin_candidate_probabilities(s: &SpinState, g: &SpinGeometry) -> [f64; 4] {
    let (ct2, st2) = ((s.theta / 2.0).cos().powi(2), (s.theta / 2.0).sin().powi(2));
    let (cd2, sd2) = ((g.delta / 2.0).cos().powi(2), (g.delta / 2.0).sin().powi(2));
    let cross = 0.25 * s.phi.cos() * s.theta.sin() * g.delta.sin();
    [ct2 * cd2 + cross, ct2 * sd2 - cross, st2 * sd2 + cross, st2 * cd2 - cross]
}

/// Closed-form `<Ψ_{++}|Ψ_{+-}>` and `<Ψ_{--}|Ψ_{-+}>`, the off-diagonal
/// elements not forced to vanish by orthogonality of the final projectors.
/// Both vanish exactly when `θ = δ, φ = 0` or `θ = π - δ, φ = π` (or `sin δ = 0`).
pub fn spin_md_offdiagonals(s: &SpinState, g: &SpinGeometry) -> [C64; 2] {
    let (st, ct) = s.theta.sin_cos();
    let (sd, cd) = g.delta.sin_cos();
    let (sp, cp) = s.phi.sin_cos();
    let pre = 0.25 * sd;
    let first = C64::new(ct * sd - st * cd * cp, st * sp) * pre;
    let second = C64::new(-ct * sd + st * cd * cp, st * sp) * pre;
    [first, second]
}

/// Classification of the four-member set through the matrix path.
pub fn spin_classification(s: &SpinState, g: &SpinGeometry, tol: &Tolerances) -> Classification {
    classify_set(&s.state_vector(), &spin_history_set(g), tol).expect("dimensions agree")
}

/// Which `(θ, φ)` cells give a linearly positive set for fixed `δ`.
#[derive(Clone, Debug, PartialEq)]
pub struct PositivityRegionGrid {
    pub delta: f64,
    pub theta_samples: Vec<f64>,
    pub phi_samples: Vec<f64>,
    /// Row-major over `(theta, phi)`.
    pub positive: Vec<bool>,
    pub min_probability: Vec<f64>,
}

impl PositivityRegionGrid {
    pub fn cell(&self, theta_index: usize, phi_index: usize) -> bool {
        self.positive[theta_index * self.phi_samples.len() + phi_index]
    }

    pub fn negative_cells(&self) -> usize {
        self.positive.iter().filter(|p| !**p).count()
    }
}

/// Evaluates the closed forms on the Cartesian grid. Angles are used as
/// given (no range check) so the full sphere can be scanned.
pub fn spin_positivity_region(delta: f64, theta_grid: &[f64], phi_grid: &[f64]) -> Result<PositivityRegionGrid> {
    if theta_grid.is_empty() || phi_grid.is_empty() {
        return Err(Error::EmptyInput("spin grid"));
    }
    let g = SpinGeometry::new(delta)?;
    let mut positive = Vec::with_capacity(theta_grid.len() * phi_grid.len());
    let mut min_probability = Vec::with_capacity(positive.capacity());
    for &theta in theta_grid {
        for &phi in phi_grid {
            let p = spin_candidate_probabilities(&SpinState { theta, phi }, &g);
            let m = p.iter().fold(f64::INFINITY, |a, &b| a.min(b));
            positive.push(m >= GRID_THRESHOLD);
            min_probability.push(m);
        }
    }
    Ok(PositivityRegionGrid {
        delta,
        theta_samples: theta_grid.to_vec(),
        phi_samples: phi_grid.to_vec(),
        positive,
        min_probability,
    })
}
