//! Replays the checked-in fuzz corpus through the round-trip properties the
//! fuzz targets assert.

use std::fs;
use std::path::{Path, PathBuf};

use sp2n::center::Word;
use sp2n::nh::FourierExpansion;
use sp2n::weights::Weight;
use sp2n::UeaElement;

fn seeds(target: &str) -> Vec<(PathBuf, Vec<u8>)> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<(PathBuf, Vec<u8>)> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {}", dir.display(), e))
        .map(|e| e.unwrap().path())
        .map(|p| {
            let bytes = fs::read(&p).unwrap();
            (p, bytes)
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {}", target);
    out
}

#[test]
fn uea_seeds() {
    for (path, data) in seeds("parse_uea") {
        let (&n, rest) = data.split_first().unwrap();
        let n = 1 + (n % 3) as usize;
        let text = std::str::from_utf8(rest).unwrap();
        let x = UeaElement::parse(text, n).unwrap_or_else(|e| panic!("{}: {}", path.display(), e));
        assert_eq!(UeaElement::parse(&x.to_string(), n).unwrap(), x);
    }
}

#[test]
fn word_seeds() {
    for (path, data) in seeds("parse_word") {
        let w: Word = std::str::from_utf8(&data).unwrap().parse().unwrap_or_else(|e| panic!("{}: {}", path.display(), e));
        assert_eq!(w.to_string().parse::<Word>().unwrap(), w);
    }
}

#[test]
fn weight_seeds() {
    for (path, data) in seeds("parse_weight") {
        let k: Weight = std::str::from_utf8(&data).unwrap().parse().unwrap_or_else(|e| panic!("{}: {}", path.display(), e));
        assert_eq!(k.to_string().parse::<Weight>().unwrap(), k);
    }
}

#[test]
fn expansion_seeds() {
    for (path, data) in seeds("parse_expansion") {
        let text = std::str::from_utf8(&data).unwrap();
        let f = FourierExpansion::from_json(text).unwrap_or_else(|e| panic!("{}: {}", path.display(), e));
        let printed = f.to_json().unwrap();
        assert_eq!(FourierExpansion::from_json(&printed).unwrap(), f);
    }
}

proptest::proptest! {
    #![proptest_config(proptest::prelude::ProptestConfig::with_cases(512))]

    #[test]
    fn parsers_accept_only_what_they_print(
        text in r"[-+*/0-9 ,()\nBE]{0,40}",
        n in 1usize..=3,
    ) {
        if let Ok(x) = UeaElement::parse(&text, n) {
            proptest::prop_assert_eq!(UeaElement::parse(&x.to_string(), n).unwrap(), x);
        }
        if let Ok(w) = text.parse::<Word>() {
            proptest::prop_assert_eq!(w.to_string().parse::<Word>().unwrap(), w);
        }
        if let Ok(k) = text.parse::<Weight>() {
            proptest::prop_assert_eq!(k.to_string().parse::<Weight>().unwrap(), k);
        }
        let _ = FourierExpansion::from_json(&text);
    }

    #[test]
    fn mangled_expansions_never_panic(cut in 0usize..409, byte in proptest::prelude::any::<u8>()) {
        let seed = fs::read(Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus/parse_expansion/holomorphic_weight12.json")).unwrap();
        let mut data = seed.clone();
        let at = cut.min(data.len() - 1);
        data[at] = byte;
        if let Ok(text) = std::str::from_utf8(&data) {
            if let Ok(f) = FourierExpansion::from_json(text) {
                proptest::prop_assert_eq!(FourierExpansion::from_json(&f.to_json().unwrap()).unwrap(), f);
            }
        }
    }
}
