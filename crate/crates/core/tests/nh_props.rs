use proptest::prelude::*;
use sp2n::nh::{char_projection, omega_op, op_e, op_e_power, Entry, FourierExpansion};
use sp2n::rep::GlIrrep;
use sp2n::verify::{random_expansion, random_nh_entry, rng};
use sp2n::weights::Weight;

fn entries(seed: u64, n: usize, order: u32) -> (Entry, Entry, Entry) {
    let mut r = rng(seed);
    let mut next = || random_nh_entry(&mut r, n, order, 2).unwrap();
    (next(), next(), next())
}

fn units(order: u32) -> Vec<i64> {
    (1..order as i64).filter(|a| num_integer::gcd(*a, order as i64) == 1).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn entries_form_a_ring(seed in any::<u64>(), n in 1usize..=2, big in any::<bool>()) {
        let order = if big { 12 } else { 4 };
        let (a, b, c) = entries(seed, n, order);
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn galois_acts_by_ring_automorphisms(seed in any::<u64>(), big in any::<bool>()) {
        let order = if big { 12 } else { 4 };
        let (a, b, _) = entries(seed, 2, order);
        for s in units(order) {
            let g = |e: &Entry| e.galois(s, order).unwrap();
            prop_assert_eq!(g(&a.mul(&b)), g(&a).mul(&g(&b)));
            prop_assert_eq!(g(&a.add(&b)), g(&a).add(&g(&b)));
            for t in units(order) {
                let st = (s * t) % order as i64;
                prop_assert_eq!(a.galois(t, order).unwrap().galois(s, order).unwrap(), a.galois(st, order).unwrap());
            }
        }
    }

    #[test]
    fn expansions_round_trip_through_json(seed in any::<u64>(), shape in 0usize..4) {
        let (k, order) = [(vec![6], 4), (vec![-3], 12), (vec![3, 1], 12), (vec![2, 2], 4)][shape].clone();
        let f = random_expansion(&mut rng(seed), &Weight::new(k), order, 3, 2).unwrap();
        let text = f.to_json().unwrap();
        let back = FourierExpansion::from_json(&text).unwrap();
        prop_assert_eq!(back.to_json().unwrap(), text);
        prop_assert_eq!(back, f);
    }

    #[test]
    fn e_lowers_the_degree(seed in any::<u64>(), degree in 0u32..3) {
        let f = random_expansion(&mut rng(seed), &Weight::new(vec![4, 2]), 4, 2, degree).unwrap();
        prop_assert!(op_e_power(&f, degree as usize + 1).unwrap().is_empty());
        let ef = op_e(&f).unwrap();
        prop_assert!(ef.is_empty() || ef.nearly_holomorphic_degree().unwrap() < degree.max(1));
    }

    #[test]
    fn omega_and_projections_are_linear(seed in any::<u64>()) {
        let k = Weight::new(vec![8]);
        let rho = GlIrrep::new(&k).unwrap();
        let mut r = rng(seed);
        let f = random_expansion(&mut r, &k, 12, 2, 2).unwrap();
        let g = random_expansion(&mut r, &k, 12, 2, 2).unwrap();
        let sum = f.add(&g).unwrap();
        prop_assert_eq!(omega_op(1, &sum, &rho).unwrap(), omega_op(1, &f, &rho).unwrap().add(&omega_op(1, &g, &rho).unwrap()).unwrap());
        let cands = [Weight::new(vec![8]), Weight::new(vec![6]), Weight::new(vec![4])];
        let p = |x: &FourierExpansion| char_projection(&cands[1], &cands, x, &rho).unwrap();
        prop_assert_eq!(p(&sum), p(&f).add(&p(&g)).unwrap());
    }
}

#[test]
fn foreign_orders_do_not_mix() {
    let a = random_expansion(&mut rng(1), &Weight::new(vec![4]), 4, 1, 0).unwrap();
    let b = random_expansion(&mut rng(1), &Weight::new(vec![4]), 12, 1, 0).unwrap();
    assert!(a.add(&b).is_err());
}
