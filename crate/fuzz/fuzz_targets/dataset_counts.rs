#![no_main]

use libfuzzer_sys::fuzz_target;

use aom::io::dataset::{load_dataset_from, DatasetFormat};

fuzz_target!(|data: &[u8]| {
    let _ = load_dataset_from(data, DatasetFormat::Counts);
});
