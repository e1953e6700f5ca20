#![no_main]

use libfuzzer_sys::fuzz_target;
use sp2n::nh::FourierExpansion;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(f) = FourierExpansion::from_json(text) {
        let printed = f.to_json().expect("accepted expansion prints");
        let back = FourierExpansion::from_json(&printed).expect("printed expansion parses");
        assert_eq!(back, f);
    }
});
