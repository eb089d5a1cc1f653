use alloc::vec::Vec;

use crate::hilbert::linalg::{norm, norm_sqr, C64};
use crate::hilbert::{
    candidate_probability, chain_class_operator, ChainStep, ClassOperator, Hamiltonian, HistorySet, StateVector,
};
use crate::{Error, Result};

/// Smallest `|p(cond)|` [`conditional_probability`] will divide by.
pub const CONDITIONING_FLOOR: f64 = 1e-12;

/// `p(joint) / p(cond)`; the result may lie outside `[0, 1]` when the set
/// the two operators come from is not linearly positive.
pub fn conditional_probability(psi: &StateVector, joint: &ClassOperator, cond: &ClassOperator) -> Result<f64> {
    conditional_probability_with_floor(psi, joint, cond, CONDITIONING_FLOOR)
}

pub fn conditional_probability_with_floor(
    psi: &StateVector,
    joint: &ClassOperator,
    cond: &ClassOperator,
    floor: f64,
) -> Result<f64> {
    let denominator = candidate_probability(psi, cond)?;
    if !(denominator.abs() > floor) {
        return Err(Error::ZeroConditioning { probability: denominator });
    }
    Ok(candidate_probability(psi, joint)? / denominator)
}

/// One future alternative computed directly and by chaining through a
/// past set.
#[derive(Clone, Debug, PartialEq)]
pub struct FutureProbability {
    /// `p(γ | cond)`
    pub direct: f64,
    /// `Σ_β p(γ | cond, β) p(β | cond)`
    pub chained: f64,
    /// `p(β | cond)` for every past alternative (possibly virtual).
    pub past_conditionals: Vec<f64>,
}

/// Products are taken in the order `future · cond · past`.
pub fn chain_future_probability(
    psi: &StateVector,
    future: &HistorySet,
    past: &HistorySet,
    cond: &ClassOperator,
) -> Result<Vec<FutureProbability>> {
    let p_cond = candidate_probability(psi, cond)?;
    if !(p_cond.abs() > CONDITIONING_FLOOR) {
        return Err(Error::ZeroConditioning { probability: p_cond });
    }
    let cond_past: Vec<ClassOperator> =
        past.members().iter().map(|b| cond.then_after(b)).collect::<Result<_>>()?;
    let p_cond_past: Vec<f64> =
        cond_past.iter().map(|c| candidate_probability(psi, c)).collect::<Result<_>>()?;
    let past_conditionals: Vec<f64> = p_cond_past.iter().map(|p| p / p_cond).collect();

    let mut out = Vec::with_capacity(future.len());
    for gamma in future.members() {
        let direct = conditional_probability(psi, &gamma.then_after(cond)?, cond)?;
        let mut chained = 0.0;
        for (cp, p_beta) in cond_past.iter().zip(&past_conditionals) {
            // p(γ | cond, β) = p(γ, cond, β) / p(cond, β)
            let given_beta = conditional_probability(psi, &gamma.then_after(cp)?, cp)?;
            chained += given_beta * p_beta;
        }
        out.push(FutureProbability { direct, chained, past_conditionals: past_conditionals.clone() });
    }
    Ok(out)
}

/// Probability of a future chain given a realized past chain: the realized
/// branch is normalized and the future chain applied to it.
pub fn prediction_conditional(
    psi: &StateVector,
    realized: &[ChainStep<'_>],
    future: &[ChainStep<'_>],
    h: &Hamiltonian,
) -> Result<f64> {
    if let (Some(last), Some(first)) = (realized.last(), future.first()) {
        if !(first.time > last.time) {
            return Err(Error::TimesNotIncreasing { index: realized.len() });
        }
    }
    let branch = chain_class_operator(realized, h)?.matrix().apply(psi.amplitudes());
    let n = norm(&branch);
    if !(n > CONDITIONING_FLOOR) {
        return Err(Error::ZeroBranch { norm: n });
    }
    let normalized: Vec<C64> = branch.iter().map(|a| a / n).collect();
    let evolved = chain_class_operator(future, h)?.matrix().apply(&normalized);
    Ok(norm_sqr(&evolved))
}
