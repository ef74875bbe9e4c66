#![no_main]

use libfuzzer_sys::fuzz_target;

use aom::io::report::{from_slice, to_string};

fuzz_target!(|data: &[u8]| {
    // Parsing must never panic; anything that parses must serialize
    // deterministically and parse again to the same bytes.
    if let Ok(value) = from_slice(data) {
        let text = to_string(&value);
        let reparsed = from_slice(text.as_bytes()).expect("own output parses");
        assert_eq!(to_string(&reparsed), text);
    }
});
