//! Default-option handling (choice overload) and attentive-at-binaries
//! revelation.

pub mod binaries;
pub mod default_option;

pub use binaries::{eta_revealed_preference, joint_characterization_check, EtaRevelation};
pub use default_option::{
    check_choice_overload, normalize_default, ChoiceOverloadReport, DefaultChoiceRule,
};
