//! Operations on whole history sets.

mod coarse;
mod conditional;
mod conservation;
mod ensemble;
mod entropy;
mod records;

pub use coarse::{coarse_grain, verify_sum_rules, Partition, SumRuleReport, SUM_RULE_TOL};
pub use conditional::{
    chain_future_probability, conditional_probability, conditional_probability_with_floor,
    prediction_conditional, FutureProbability, CONDITIONING_FLOOR,
};
pub use conservation::{check_conservation, ConservationReport, ConservationTerm};
pub use ensemble::{
    ensemble_candidate_probability, ensemble_positivity_horizon, ensemble_table,
    product_history_probability, EnsembleSpec, HorizonWitness, ProductProbabilities,
    NEGATIVITY_THRESHOLD,
};
pub use entropy::entropy;
pub use records::{verify_records, RecordReport, RecordSet, BRANCH_EXISTENCE_THRESHOLD};
