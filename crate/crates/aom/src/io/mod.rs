//! Data formats: CSV choice data, structured reports, and text literals for
//! menus, preferences, and bound targets.

pub mod dataset;
pub mod parse;
pub mod report;

pub use dataset::{
    load_dataset, load_dataset_from, write_dataset, write_dataset_to, DatasetFormat,
    LoadedDataset,
};
pub use parse::{parse_menu, parse_preference, parse_target, render_preference};
pub use report::Value;
