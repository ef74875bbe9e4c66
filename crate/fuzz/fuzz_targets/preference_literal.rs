#![no_main]

use libfuzzer_sys::fuzz_target;

use aom::core::Alphabet;
use aom::io::parse::{parse_preference, render_preference};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let alphabet = Alphabet::new(["a", "b", "c", "d", "e"]).expect("fixed alphabet");
    if let Ok(pref) = parse_preference(text, &alphabet) {
        // Anything accepted must round-trip through rendering.
        let rendered = render_preference(&pref, &alphabet);
        let back = parse_preference(&rendered, &alphabet).expect("rendered literal parses");
        assert_eq!(back, pref);
    }
});
