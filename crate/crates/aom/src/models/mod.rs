//! Attention-rule constructors, the overload check, induced choice rules,
//! and the synthetic-data sampler.

pub mod attention;
pub mod dataset;

pub use attention::{
    attention_frequency, check_attention_overload, independent_consideration,
    induced_choice_rule, logit_attention, random_competition_filter, AttentionRule,
    OverloadReport, OverloadViolation, WeightedFilter, OVERLOAD_TOL,
};
pub use dataset::{sample_dataset, Dataset};
