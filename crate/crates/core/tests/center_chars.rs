use proptest::prelude::*;
use sp2n::algebra::{rat, GenOrder};
use sp2n::center::{center_generator, enumerate_words, is_central};
use sp2n::rep::VermaModule;
use sp2n::weights::{dot_orbit, infinitesimal_character, CenterCharacters, Weight};
use sp2n::{multiply, pbw_normal_form, Gen, UeaElement};

#[test]
fn rank_one_casimir_is_the_trace_of_the_square() {
    // Tr [[B, E+], [E-, -B]]^2 = 2 B^2 + E+ E- + E- E+
    let b = UeaElement::gen(1, Gen::b(1, 1));
    let p = UeaElement::gen(1, Gen::eplus(1, 1));
    let m = UeaElement::gen(1, Gen::eminus(1, 1));
    let mut expected = multiply(&b, &b).unwrap().scale(&rat(2));
    expected.add_scaled(&multiply(&p, &m).unwrap(), &rat(1));
    expected.add_scaled(&multiply(&m, &p).unwrap(), &rat(1));
    let ord = GenOrder::HXYPM;
    assert_eq!(pbw_normal_form(&center_generator(1, 1), ord), pbw_normal_form(&expected, ord));
}

#[test]
fn generators_through_d6_are_central_in_rank_two() {
    for r in 1..=3 {
        assert!(is_central(&center_generator(r, 2)), "D_{} at n = 2", 2 * r);
    }
}

#[test]
fn word_counts_grow() {
    let counts: Vec<usize> = (1..=3).map(|r| enumerate_words(r).len()).collect();
    assert_eq!(counts[0], 4);
    assert!(counts.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn weight_twelve_gives_240() {
    let chi = infinitesimal_character(&Weight::new(vec![12]), &center_generator(1, 1)).unwrap();
    assert_eq!(chi, rat(240));
}

fn dominant(n: usize) -> impl Strategy<Value = Weight> {
    prop::collection::vec(-4i64..=9, n).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        Weight::new(v)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn characters_are_constant_on_dot_orbits(k in (1usize..=3).prop_flat_map(dominant)) {
        let chars = CenterCharacters::new(k.rank());
        let base = chars.chi(&k).unwrap();
        for w in dot_orbit(&k).unwrap() {
            prop_assert_eq!(chars.chi(&w).unwrap(), base.clone());
        }
    }

    #[test]
    fn verma_highest_weight_vector_sees_the_character(k in (1usize..=2).prop_flat_map(dominant)) {
        let n = k.rank();
        let module = VermaModule::new(&k).unwrap();
        let chars = CenterCharacters::new(n).chi(&k).unwrap();
        for r in 1..=n {
            let v = module.act_uea(&center_generator(r, n), &module.hw()).unwrap();
            prop_assert_eq!(v, module.hw().scale(&chars[r - 1]));
        }
    }
}
