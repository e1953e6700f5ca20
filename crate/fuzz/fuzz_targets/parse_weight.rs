#![no_main]

use libfuzzer_sys::fuzz_target;
use sp2n::weights::Weight;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(k) = text.parse::<Weight>() {
        let back: Weight = k.to_string().parse().expect("printed weight parses");
        assert_eq!(back, k);
    }
});
