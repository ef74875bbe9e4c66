#![no_main]

use libfuzzer_sys::fuzz_target;

use aom::core::Alphabet;
use aom::io::parse::{parse_menu, parse_target};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let alphabet = Alphabet::new(["a", "b", "c", "d", "e"]).expect("fixed alphabet");
    if let Ok((alt, menu)) = parse_target(text, &alphabet) {
        assert!(menu.contains(alt));
    }
    let _ = parse_menu(text, &alphabet);
});
