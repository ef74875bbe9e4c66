#![no_main]

use libfuzzer_sys::fuzz_target;

use aom::io::dataset::{load_dataset_from, DatasetFormat};

fuzz_target!(|data: &[u8]| {
    // The loader must reject or accept, never panic. Accepted datasets must
    // re-serialize and re-load to the same observations.
    if let Ok(loaded) = load_dataset_from(data, DatasetFormat::Long) {
        let mut buf = Vec::new();
        aom::io::dataset::write_dataset_to(
            &mut buf,
            &loaded.alphabet,
            &loaded.dataset,
            DatasetFormat::Long,
        )
        .expect("write succeeds on loaded data");
        let back = load_dataset_from(buf.as_slice(), DatasetFormat::Long)
            .expect("own output loads");
        assert_eq!(back.dataset.len(), loaded.dataset.len());
    }
});
