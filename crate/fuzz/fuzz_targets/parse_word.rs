#![no_main]

use libfuzzer_sys::fuzz_target;
use sp2n::center::{is_valid_word, isolated_cyclic_count, Word};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(w) = text.parse::<Word>() {
        let back: Word = w.to_string().parse().expect("printed word parses");
        assert_eq!(back, w);
        if w.len() <= 64 {
            assert!(isolated_cyclic_count(&w) <= w.len());
            let _ = is_valid_word(&w);
        }
    }
});
