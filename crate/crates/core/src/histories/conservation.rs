use alloc::vec::Vec;

use crate::hilbert::{
    candidate_probability, classify_set, full_chain_set, heisenberg_projector, ClassOperator, Hamiltonian,
    HistorySet, ProjectiveDecomposition, StateVector, Tolerances, Verdict,
};
use crate::{Error, Result};

const SUM_TOL: f64 = 1e-10;

/// `p(j', β, j)` for one history `P_{j'}(t') C_β P_j(t)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConservationTerm {
    pub initial: usize,
    pub intermediate: usize,
    pub last: usize,
    pub probability: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConservationReport {
    /// `p(j) = Re <Ψ|P_j(t)|Ψ>`
    pub initial_probabilities: Vec<f64>,
    pub terms: Vec<ConservationTerm>,
    /// `max_{j', j} |Σ_β p(j', β, j) - δ_{j'j} p(j)|`
    pub sum_residual: f64,
    pub sum_rule_holds: bool,
    /// `max |p(j', β, j)|` over `j' ≠ j`.
    pub max_cross_term: f64,
    pub verdict: Verdict,
    /// `Some(every cross term within tol)` when the whole set is linearly
    /// positive, `None` otherwise (the implication says nothing then).
    pub cross_terms_vanish: Option<bool>,
}

/// Builds every history `P^A_{j'}(t') C_β P^A_j(t)` with `C_β` running over
/// the chains through `intermediate`, and checks that the conserved quantity
/// cannot change: summed over `β` exactly, term by term when the set is
/// linearly positive.
pub fn check_conservation(
    psi: &StateVector,
    h: &Hamiltonian,
    conserved: &ProjectiveDecomposition,
    intermediate: &[(ProjectiveDecomposition, f64)],
    t: f64,
    t_final: f64,
    tol: f64,
) -> Result<ConservationReport> {
    for (index, p) in conserved.projectors().iter().enumerate() {
        let residual = p.matrix().commutator(h.matrix()).max_abs();
        if residual > tol {
            return Err(Error::NotConserved { index, residual });
        }
    }
    let mut chain = Vec::with_capacity(intermediate.len() + 2);
    chain.push((conserved.clone(), t));
    chain.extend(intermediate.iter().cloned());
    chain.push((conserved.clone(), t_final));
    let set: HistorySet = full_chain_set(&chain, h)?;

    let k = conserved.len();
    let inner_count = set.len() / (k * k);
    let classification = classify_set(psi, &set, &Tolerances { lp: tol, ..Tolerances::default() })?;

    let mut initial_probabilities = Vec::with_capacity(k);
    for p in conserved.projectors() {
        let pt = heisenberg_projector(p, h, t)?;
        initial_probabilities.push(candidate_probability(psi, &ClassOperator::opaque(pt.matrix().clone()))?);
    }

    // Member order: the last event is the most significant digit and the
    // first event the least.
    let mut terms = Vec::with_capacity(set.len());
    let mut sums = alloc::vec![0.0f64; k * k];
    for (index, &probability) in classification.probabilities.iter().enumerate() {
        let last = index / (inner_count * k);
        let intermediate = (index / k) % inner_count;
        let initial = index % k;
        sums[last * k + initial] += probability;
        terms.push(ConservationTerm { initial, intermediate, last, probability });
    }

    let mut sum_residual = 0.0f64;
    for last in 0..k {
        for initial in 0..k {
            let expected = if last == initial { initial_probabilities[initial] } else { 0.0 };
            sum_residual = sum_residual.max((sums[last * k + initial] - expected).abs());
        }
    }
    let max_cross_term = terms
        .iter()
        .filter(|t| t.initial != t.last)
        .fold(0.0f64, |m, t| m.max(t.probability.abs()));
    let verdict = classification.verdict;
    let cross_terms_vanish = verdict.is_linearly_positive().then_some(max_cross_term < tol);

    Ok(ConservationReport {
        initial_probabilities,
        terms,
        sum_residual,
        sum_rule_holds: sum_residual < SUM_TOL,
        max_cross_term,
        verdict,
        cross_terms_vanish,
    })
}
