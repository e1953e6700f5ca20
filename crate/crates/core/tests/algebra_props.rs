use proptest::prelude::*;
use sp2n::algebra::{ratq, Strategy as Reduction};
use sp2n::{commutator, iota_involution, multiply, pbw_normal_form, Gen, GenOrder, Monomial, UeaElement};

const ORDERS: [GenOrder; 3] = [GenOrder::HXYPM, GenOrder::PMHXY, GenOrder::HYXPM];

fn element(n: usize) -> impl proptest::strategy::Strategy<Value = UeaElement> {
    from_gens(n, Gen::all(n))
}

fn k_element(n: usize) -> impl proptest::strategy::Strategy<Value = UeaElement> {
    from_gens(n, Gen::all(n).into_iter().filter(|g| g.is_b()).collect())
}

fn from_gens(n: usize, gens: Vec<Gen>) -> impl proptest::strategy::Strategy<Value = UeaElement> {
    let term = (prop::collection::vec(0..gens.len(), 0..4), -6i64..=6, 1i64..=4);
    prop::collection::vec(term, 1..4).prop_map(move |terms| {
        let mut x = UeaElement::zero(n);
        for (idx, p, q) in terms {
            x.add_term(Monomial(idx.into_iter().map(|i| gens[i]).collect()), ratq(p, q));
        }
        x
    })
}

fn ranked() -> impl proptest::strategy::Strategy<Value = (UeaElement, UeaElement, UeaElement)> {
    (1usize..=3).prop_flat_map(|n| (element(n), element(n), element(n)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn text_round_trip((x, _, _) in ranked()) {
        let text = x.to_string();
        let back = UeaElement::parse(&text, x.rank()).unwrap();
        prop_assert_eq!(&back, &x);
        prop_assert_eq!(back.to_string(), text);
    }

    #[test]
    fn normal_form_is_idempotent_and_sorted((x, _, _) in ranked(), o in 0usize..3) {
        let ord = ORDERS[o];
        let nf = pbw_normal_form(&x, ord);
        prop_assert!(nf.is_normal(ord));
        prop_assert_eq!(pbw_normal_form(&nf, ord), nf);
    }

    #[test]
    fn reduction_strategies_agree((x, _, _) in ranked(), o in 0usize..3) {
        let ord = ORDERS[o];
        prop_assert_eq!(x.normal_form_with(ord, Reduction::Leftmost), x.normal_form_with(ord, Reduction::Rightmost));
    }

    #[test]
    fn normal_forms_agree_across_orders((x, y, _) in ranked()) {
        // x - y vanishes in U(g) iff its normal form in any one order vanishes.
        let mut d = x.clone();
        d.add_scaled(&y, &ratq(-1, 1));
        let zero: Vec<bool> = ORDERS.iter().map(|&o| pbw_normal_form(&d, o).is_zero()).collect();
        prop_assert!(zero.iter().all(|&z| z == zero[0]));
        let back = pbw_normal_form(&pbw_normal_form(&x, GenOrder::PMHXY), GenOrder::HXYPM);
        prop_assert_eq!(back, pbw_normal_form(&x, GenOrder::HXYPM));
    }

    #[test]
    fn multiplication_is_associative((x, y, z) in ranked()) {
        let ord = GenOrder::HXYPM;
        let left = multiply(&multiply(&x, &y).unwrap(), &z).unwrap();
        let right = multiply(&x, &multiply(&y, &z).unwrap()).unwrap();
        prop_assert_eq!(pbw_normal_form(&left, ord), pbw_normal_form(&right, ord));
        let reduced = multiply(&pbw_normal_form(&x, ord), &pbw_normal_form(&y, ord)).unwrap();
        prop_assert_eq!(pbw_normal_form(&reduced, ord), pbw_normal_form(&multiply(&x, &y).unwrap(), ord));
    }

    #[test]
    fn commutator_is_antisymmetric((x, y, _) in ranked()) {
        let ord = GenOrder::HXYPM;
        let mut s = commutator(&x, &y).unwrap();
        s.add_scaled(&commutator(&y, &x).unwrap(), &ratq(1, 1));
        prop_assert!(pbw_normal_form(&s, ord).is_zero());
    }

    #[test]
    fn iota_is_an_involutive_antiautomorphism((x, y) in (1usize..=3).prop_flat_map(|n| (k_element(n), k_element(n)))) {
        let ord = GenOrder::HXYPM;
        prop_assert_eq!(iota_involution(&iota_involution(&x).unwrap()).unwrap(), x.clone());
        let lhs = iota_involution(&multiply(&x, &y).unwrap()).unwrap();
        let rhs = multiply(&iota_involution(&y).unwrap(), &iota_involution(&x).unwrap()).unwrap();
        prop_assert_eq!(pbw_normal_form(&lhs, ord), pbw_normal_form(&rhs, ord));
    }
}

#[test]
fn iota_rejects_noncompact_generators() {
    let x = UeaElement::gen(1, Gen::eplus(1, 1));
    assert!(iota_involution(&x).is_err());
}

#[test]
fn parse_rejects_foreign_indices() {
    assert!(UeaElement::parse("1 * B(1,3)", 2).is_err());
    assert!(UeaElement::parse("1 * E+(0,1)", 2).is_err());
    assert!(UeaElement::parse("1/0 * B(1,1)", 1).is_err());
}
