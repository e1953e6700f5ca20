//! Seeded random test data.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{ratq, Gen, GenKind, Monomial, Rat, UeaElement};
use crate::error::Result;
use crate::nh::{var_count, CoeffPoly, Entry, FourierExpansion, Frac, MPoly};
use crate::weights::Weight;

pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A nonzero rational with small numerator and denominator.
pub fn random_rat<R: Rng>(rng: &mut R) -> Rat {
    let mut p = rng.gen_range(-9..=8);
    if p >= 0 {
        p += 1;
    }
    ratq(p, rng.gen_range(1..=5))
}

pub fn random_monomial<R: Rng>(rng: &mut R, gens: &[Gen], max_degree: usize) -> Monomial {
    let d = rng.gen_range(0..=max_degree);
    Monomial((0..d).map(|_| *gens.choose(rng).expect("generators")).collect())
}

pub fn random_uea<R: Rng>(rng: &mut R, n: usize, max_terms: usize, max_degree: usize) -> UeaElement {
    let gens = Gen::all(n);
    let mut x = UeaElement::zero(n);
    for _ in 0..rng.gen_range(1..=max_terms) {
        x.add_term(random_monomial(rng, &gens, max_degree), random_rat(rng));
    }
    x
}

/// A random element of U(k), i.e. built from `B` generators only.
pub fn random_k_element<R: Rng>(rng: &mut R, n: usize, max_terms: usize, max_degree: usize) -> UeaElement {
    let gens: Vec<Gen> = Gen::all(n).into_iter().filter(|g| g.kind == GenKind::B).collect();
    let mut x = UeaElement::zero(n);
    for _ in 0..rng.gen_range(1..=max_terms) {
        x.add_term(random_monomial(rng, &gens, max_degree), random_rat(rng));
    }
    x
}

/// A random sum of products `E+ ... E- ... B ...` of total degree at most `max_degree`.
pub fn random_block_element<R: Rng>(rng: &mut R, n: usize, max_terms: usize, max_degree: usize) -> UeaElement {
    let all = Gen::all(n);
    let of = |k: GenKind| -> Vec<Gen> { all.iter().copied().filter(|g| g.kind == k).collect() };
    let (plus, minus, b) = (of(GenKind::EPlus), of(GenKind::EMinus), of(GenKind::B));
    let mut x = UeaElement::zero(n);
    for _ in 0..rng.gen_range(1..=max_terms) {
        let mut gens = Vec::new();
        let d = rng.gen_range(0..=max_degree);
        let np = rng.gen_range(0..=d);
        let nm = rng.gen_range(0..=d - np);
        for (count, pool) in [(np, &plus), (nm, &minus), (d - np - nm, &b)] {
            gens.extend((0..count).map(|_| *pool.choose(rng).expect("generators")));
        }
        x.add_term(Monomial(gens), random_rat(rng));
    }
    x
}

/// A random polynomial of degree at most `degree` in the entries of
/// `(pi y)^{-1}`, with coefficients in Q(zeta_order).
pub fn random_nh_entry<R: Rng>(rng: &mut R, n: usize, order: u32, degree: u32) -> Result<Entry> {
    let vars = var_count(n);
    let mut e = Entry::zero();
    for _ in 0..rng.gen_range(1..=3) {
        let mut m = MPoly::one();
        for _ in 0..rng.gen_range(0..=degree) {
            m = m.mul(&MPoly::var(rng.gen_range(0..vars)));
        }
        let f = Frac::poly(m).invert_arg(n).y_to_s(n).scale(&random_rat(rng));
        e = e.add(&Entry::zeta_term(order, 0, rng.gen_range(0..order as i64), f)?);
    }
    Ok(e)
}

pub fn random_h<R: Rng>(rng: &mut R, n: usize) -> Vec<Vec<i64>> {
    let mut h = vec![vec![0; n]; n];
    for i in 0..n {
        for j in i..n {
            let x = rng.gen_range(-2..=3);
            h[i][j] = x;
            h[j][i] = x;
        }
    }
    h
}

/// A nearly holomorphic expansion of degree at most `degree` valued in the
/// irreducible of highest weight `weight`.
pub fn random_expansion<R: Rng>(
    rng: &mut R,
    weight: &Weight,
    order: u32,
    terms: usize,
    degree: u32,
) -> Result<FourierExpansion> {
    let n = weight.rank();
    let mut f = FourierExpansion::new(order, 1, weight.clone())?;
    for _ in 0..terms {
        let key = f.h_key(&random_h(rng, n))?;
        let v = rng.gen_range(0..f.dim());
        f.add_coefficient(key, CoeffPoly::single(v, random_nh_entry(rng, n, order, degree)?))?;
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_are_deterministic() {
        let a = random_uea(&mut rng(7), 2, 4, 3);
        let b = random_uea(&mut rng(7), 2, 4, 3);
        assert_eq!(a, b);
        let w = Weight::new(vec![3, 1]);
        let f = random_expansion(&mut rng(3), &w, 12, 3, 2).unwrap();
        assert_eq!(f, random_expansion(&mut rng(3), &w, 12, 3, 2).unwrap());
        assert!(f.nearly_holomorphic_degree().map_or(false, |d| d <= 2));
    }

    #[test]
    fn block_elements_have_block_shape() {
        let mut r = rng(1);
        for _ in 0..20 {
            let x = random_block_element(&mut r, 2, 3, 4);
            for m in x.terms().keys() {
                let rank: Vec<u8> = m
                    .gens()
                    .iter()
                    .map(|g| match g.kind {
                        GenKind::EPlus => 0,
                        GenKind::EMinus => 1,
                        GenKind::B => 2,
                    })
                    .collect();
                assert!(rank.windows(2).all(|p| p[0] <= p[1]));
            }
        }
    }
}
