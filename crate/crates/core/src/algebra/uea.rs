use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::gen::{Gen, GenKind};
use super::rat::Rat;
use crate::error::{Error, Result};

/// An ordered word in the generators; the empty word is the identity.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(pub Vec<Gen>);

impl Monomial {
    pub fn one() -> Monomial {
        Monomial(Vec::new())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn gens(&self) -> &[Gen] {
        &self.0
    }

    pub fn count(&self, kind: GenKind) -> usize {
        self.0.iter().filter(|g| g.kind == kind).count()
    }

    pub fn concat(&self, other: &Monomial) -> Monomial {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Monomial(v)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A finite rational combination of monomials at a fixed rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UeaElement {
    n: usize,
    terms: BTreeMap<Monomial, Rat>,
}

impl UeaElement {
    pub fn zero(n: usize) -> Self {
        UeaElement { n, terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> Self {
        Self::scalar(n, Rat::one())
    }

    pub fn scalar(n: usize, c: Rat) -> Self {
        Self::term(n, Monomial::one(), c)
    }

    pub fn term(n: usize, m: Monomial, c: Rat) -> Self {
        let mut x = Self::zero(n);
        x.add_term(m, c);
        x
    }

    pub fn gen(n: usize, g: Gen) -> Self {
        Self::term(n, Monomial(vec![g]), Rat::one())
    }

    pub fn product(n: usize, gens: &[Gen]) -> Self {
        Self::term(n, Monomial(gens.to_vec()), Rat::one())
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Rat> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<Monomial, Rat> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn coeff(&self, m: &Monomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &UeaElement, c: &Rat) {
        assert_eq!(self.n, other.n, "rank mismatch");
        for (m, a) in &other.terms {
            self.add_term(m.clone(), a * c);
        }
    }

    pub fn scale(&self, c: &Rat) -> UeaElement {
        let mut out = Self::zero(self.n);
        if c.is_zero() {
            return out;
        }
        for (m, a) in &self.terms {
            out.terms.insert(m.clone(), a * c);
        }
        out
    }

    pub fn check(&self) -> Result<()> {
        for m in self.terms.keys() {
            for g in m.gens() {
                g.check(self.n)?;
            }
        }
        Ok(())
    }

    /// True when every monomial has only B factors.
    pub fn is_k_element(&self) -> bool {
        self.terms.keys().all(|m| m.gens().iter().all(Gen::is_b))
    }
}

/// Concatenation product.
pub fn multiply(x: &UeaElement, y: &UeaElement) -> Result<UeaElement> {
    if x.n != y.n {
        return Err(Error::RankMismatch(x.n, y.n));
    }
    let mut out = UeaElement::zero(x.n);
    for (a, ca) in &x.terms {
        for (b, cb) in &y.terms {
            out.add_term(a.concat(b), ca * cb);
        }
    }
    Ok(out)
}

/// `xy - yx`, without normal ordering.
pub fn commutator(x: &UeaElement, y: &UeaElement) -> Result<UeaElement> {
    let mut out = multiply(x, y)?;
    out.add_scaled(&multiply(y, x)?, &-Rat::one());
    Ok(out)
}

/// The anti-involution of U(k) reversing monomials and transposing each B.
pub fn iota_involution(x: &UeaElement) -> Result<UeaElement> {
    let mut out = UeaElement::zero(x.n);
    for (m, c) in &x.terms {
        let mut v = Vec::with_capacity(m.degree());
        for g in m.gens().iter().rev() {
            if !g.is_b() {
                return Err(Error::Invalid(format!("iota is defined on B generators only, found {}", g)));
            }
            v.push(Gen::b(g.j(), g.i()));
        }
        out.add_term(Monomial(v), c.clone());
    }
    Ok(out)
}

/// The anti-involution swapping E+ and E- and transposing B.
pub fn theta(x: &UeaElement) -> UeaElement {
    let mut out = UeaElement::zero(x.n);
    for (m, c) in &x.terms {
        let v = m.gens().iter().rev().map(|g| theta_gen(*g)).collect();
        out.add_term(Monomial(v), c.clone());
    }
    out
}

pub(crate) fn theta_gen(g: Gen) -> Gen {
    match g.kind {
        GenKind::B => Gen::b(g.j(), g.i()),
        GenKind::EPlus => Gen::eminus(g.i(), g.j()),
        GenKind::EMinus => Gen::eplus(g.i(), g.j()),
    }
}

impl Add for &UeaElement {
    type Output = UeaElement;
    fn add(self, rhs: &UeaElement) -> UeaElement {
        let mut out = self.clone();
        out.add_scaled(rhs, &Rat::one());
        out
    }
}

impl Sub for &UeaElement {
    type Output = UeaElement;
    fn sub(self, rhs: &UeaElement) -> UeaElement {
        let mut out = self.clone();
        out.add_scaled(rhs, &-Rat::one());
        out
    }
}

impl Neg for &UeaElement {
    type Output = UeaElement;
    fn neg(self) -> UeaElement {
        self.scale(&-Rat::one())
    }
}

impl Mul for &UeaElement {
    type Output = UeaElement;
    fn mul(self, rhs: &UeaElement) -> UeaElement {
        multiply(self, rhs).expect("rank mismatch")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat::rat;

    #[test]
    fn identity_and_bilinearity() {
        let x = &UeaElement::gen(1, Gen::b(1, 1)) + &UeaElement::gen(1, Gen::eplus(1, 1));
        assert_eq!(&UeaElement::one(1) * &x, x);
        let a = UeaElement::gen(1, Gen::b(1, 1)).scale(&rat(2));
        let b = UeaElement::gen(1, Gen::eplus(1, 1)).scale(&rat(3));
        let ab = &a * &b;
        assert_eq!(ab.len(), 1);
        assert_eq!(ab.coeff(&Monomial(vec![Gen::b(1, 1), Gen::eplus(1, 1)])), rat(6));
    }

    #[test]
    fn rank_mismatch() {
        assert!(multiply(&UeaElement::one(1), &UeaElement::one(2)).is_err());
    }

    #[test]
    fn commutator_self_is_zero() {
        let x = &UeaElement::product(2, &[Gen::b(1, 2), Gen::eplus(1, 2)]) + &UeaElement::one(2);
        assert!(commutator(&x, &x).unwrap().is_zero());
    }

    #[test]
    fn iota_examples() {
        let x = UeaElement::gen(2, Gen::b(1, 2));
        assert_eq!(iota_involution(&x).unwrap(), UeaElement::gen(2, Gen::b(2, 1)));
        let y = UeaElement::product(2, &[Gen::b(1, 1), Gen::b(1, 2)]);
        assert_eq!(
            iota_involution(&y).unwrap(),
            UeaElement::product(2, &[Gen::b(2, 1), Gen::b(1, 1)])
        );
        assert!(iota_involution(&UeaElement::gen(2, Gen::eplus(1, 1))).is_err());
    }

    #[test]
    fn monomial_order_is_degree_first() {
        let a = Monomial(vec![Gen::eminus(1, 1)]);
        let b = Monomial(vec![Gen::b(1, 1), Gen::b(1, 1)]);
        assert!(a < b);
        assert!(Monomial::one() < a);
    }
}
