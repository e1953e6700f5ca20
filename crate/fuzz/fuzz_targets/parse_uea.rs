#![no_main]

use libfuzzer_sys::fuzz_target;
use sp2n::UeaElement;

// The first byte picks the rank; accepted input must print back to itself.
fuzz_target!(|data: &[u8]| {
    let Some((&n, rest)) = data.split_first() else { return };
    let n = 1 + (n % 3) as usize;
    let Ok(text) = std::str::from_utf8(rest) else { return };
    if let Ok(x) = UeaElement::parse(text, n) {
        let printed = x.to_string();
        let back = UeaElement::parse(&printed, n).expect("printed element parses");
        assert_eq!(back, x);
        assert_eq!(back.to_string(), printed);
    }
});
