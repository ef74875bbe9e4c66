//! Population-level characterization machinery: constraint enumeration,
//! attention-compensation checks, revealed preference, attention bounds, and
//! representation construction.

pub mod bounds;
pub mod constraints;
pub mod lp;
pub mod represent;
pub mod revealed;

pub use bounds::{attention_bounds_population, AttentionBounds, AttentionClass};
pub use constraints::{
    ac_satisfied, enumerate_constraints, evaluate_constraint, Constraint, ConstraintKind,
    ConstraintSystem, VIOLATION_TOL,
};
pub use represent::{
    construct_pessimistic_representation, pessimistic_targets, solve_menu_attention,
};
pub use revealed::{
    binary_regularity_revelations, is_aom, regularity_disjunctions, revealed_preference_pac,
    Disjunction, PacResult, RevealedRelation,
};
