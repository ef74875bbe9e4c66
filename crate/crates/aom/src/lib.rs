//! Preference and attention elicitation from stochastic choice data under
//! attention overload.
//!
//! The model: a decision maker draws a random consideration set from each
//! choice problem and picks its best element by a fixed strict preference.
//! Attention overload means every alternative's attention frequency weakly
//! falls as the menu grows. The crate provides
//!
//! - the population-level characterization machinery (attention-compensation
//!   inequalities, revealed preference, sharp attention-frequency bounds,
//!   pessimistic representations),
//! - finite-sample inference (Studentized max statistics, simulated Gaussian
//!   critical values, two-step moment selection, confidence sets, bias-aware
//!   bound estimators), and
//! - a CLI for simulation, testing, elicitation, and reproduction of the
//!   reference simulation study.

pub mod characterize;
pub mod core;
pub mod error;
pub mod extensions;
pub mod io;
pub mod inference;
pub mod models;
pub mod rng;
pub mod cli;
pub mod sim;

pub use crate::core::{
    all_preferences, canonical_menu, enumerate_nested_pairs, upper_contour, Alphabet, ChoiceRule,
    Domain, Mask, Menu, Preference,
};
pub use crate::error::{Error, Result};
