//! Domain types and menu/preference combinatorics shared by all modules.

pub mod alphabet;
pub mod choice;
pub mod domain;
pub mod mask;
pub mod preference;

pub use alphabet::{canonical_menu, Alphabet, Menu};
pub use choice::ChoiceRule;
pub use domain::{enumerate_nested_pairs, Domain};
pub use mask::{Mask, MAX_ALTERNATIVES};
pub use preference::{all_preferences, upper_contour, Preference};
