//! Finite-sample econometrics: estimators, the Studentized max statistic,
//! simulated Gaussian critical values, two-step moment selection, confidence
//! sets, and attention-frequency bound estimators.

pub mod bounds;
pub mod correlation;
pub mod critical;
pub mod estimate;
pub mod test;

pub use bounds::{
    attention_bound_lower, attention_bound_upper, joint_attention_bounds,
    joint_attention_bounds_on_rule, BoundEstimate, BoundSide, BoundTarget, BoundTerm,
};
pub use correlation::{estimate_correlation, CorrelationMatrix, EventTerm};
pub use critical::{critical_value, critical_value_unfloored, DEFAULT_DRAWS, MIN_DRAWS};
pub use estimate::{constraint_stats, estimate_choice_rule, ConstraintStats};
pub use test::{
    confidence_set, test_preference, test_preference_on_system, two_step_selection,
    ConfidenceSet, Method, TestOptions, TestResult,
};
