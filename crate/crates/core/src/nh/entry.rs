//! Scalars of the coefficient ring: finite sums `pi^p zeta^j F` with `F` a
//! rational function in the matrix variables with only `det` in the
//! denominator and `j` running over the power basis of Q(zeta_N).

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::cyclo::{CycScalar, CycloTable};
use super::poly::{Frac, MPoly};
use crate::algebra::Rat;
use crate::error::{Error, Result};
use crate::linalg::Ring;

#[derive(Clone, Debug, Default)]
pub struct Entry {
    /// Cyclotomic order; 0 while only rational coefficients occur.
    order: u32,
    terms: BTreeMap<(i64, u32), Frac>,
}

impl PartialEq for Entry {
    fn eq(&self, other: &Entry) -> bool {
        self.terms == other.terms
    }
}

impl Eq for Entry {}

impl Entry {
    pub fn zero() -> Entry {
        Entry::default()
    }

    pub fn constant(c: Rat) -> Entry {
        Entry::frac(Frac::constant(c))
    }

    pub fn frac(f: Frac) -> Entry {
        Entry::monomial(0, f)
    }

    /// `pi^p f`.
    pub fn monomial(p: i64, f: Frac) -> Entry {
        let mut e = Entry::zero();
        if !f.is_zero() {
            e.terms.insert((p, 0), f);
        }
        e
    }

    pub fn pi_power(p: i64) -> Entry {
        Entry::monomial(p, Frac::constant(Rat::one()))
    }

    /// `pi^p zeta_N^j f` for any integer `j`.
    pub fn zeta_term(order: u32, p: i64, j: i64, f: Frac) -> Result<Entry> {
        let table = CycloTable::get(order)?;
        let mut e = Entry { order, terms: BTreeMap::new() };
        for (idx, c) in table.power(j).iter().enumerate() {
            if !c.is_zero() {
                e.add_frac(p, idx as u32, f.scale(c));
            }
        }
        Ok(e)
    }

    /// `i = zeta_N^{N/4}`.
    pub fn i(order: u32) -> Result<Entry> {
        let j = CycloTable::get(order)?.i_exponent();
        Entry::zeta_term(order, 0, j, Frac::constant(Rat::one()))
    }

    pub fn from_scalar(c: &CycScalar) -> Entry {
        let mut e = Entry { order: c.order(), terms: BTreeMap::new() };
        for (&p, z) in c.terms() {
            for (j, q) in z.coeffs().iter().enumerate() {
                e.add_frac(p, j as u32, Frac::constant(q.clone()));
            }
        }
        e
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn terms(&self) -> &BTreeMap<(i64, u32), Frac> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn with_order(mut self, order: u32) -> Entry {
        self.order = order;
        self
    }

    pub fn add_frac(&mut self, p: i64, j: u32, f: Frac) {
        if f.is_zero() {
            return;
        }
        let key = (p, j);
        let sum = match self.terms.remove(&key) {
            Some(old) => old.add(&f),
            None => f,
        };
        if !sum.is_zero() {
            self.terms.insert(key, sum);
        }
    }

    fn merged_order(&self, other: &Entry) -> u32 {
        match (self.order, other.order) {
            (0, o) | (o, 0) => o,
            (a, b) => {
                assert_eq!(a, b, "mixing cyclotomic orders");
                a
            }
        }
    }

    pub fn add(&self, other: &Entry) -> Entry {
        let mut out = self.clone();
        out.order = self.merged_order(other);
        for ((p, j), f) in &other.terms {
            out.add_frac(*p, *j, f.clone());
        }
        out
    }

    pub fn neg(&self) -> Entry {
        Entry { order: self.order, terms: self.terms.iter().map(|(k, f)| (*k, f.neg())).collect() }
    }

    pub fn sub(&self, other: &Entry) -> Entry {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rat) -> Entry {
        if c.is_zero() {
            return Entry { order: self.order, terms: BTreeMap::new() };
        }
        Entry { order: self.order, terms: self.terms.iter().map(|(k, f)| (*k, f.scale(c))).collect() }
    }

    pub fn mul(&self, other: &Entry) -> Entry {
        let order = self.merged_order(other);
        let mut out = Entry { order, terms: BTreeMap::new() };
        let table = (order > 0).then(|| CycloTable::get(order).expect("orders are validated on entry"));
        for ((p1, j1), f1) in &self.terms {
            for ((p2, j2), f2) in &other.terms {
                let f = f1.mul(f2);
                let p = p1 + p2;
                let j = j1 + j2;
                match table {
                    Some(t) if j as usize >= t.phi() => {
                        for (idx, c) in t.power(j as i64).iter().enumerate() {
                            if !c.is_zero() {
                                out.add_frac(p, idx as u32, f.scale(c));
                            }
                        }
                    }
                    _ => out.add_frac(p, j, f),
                }
            }
        }
        out
    }

    /// Multiplies every term by a rational function.
    pub fn mul_frac(&self, g: &Frac) -> Entry {
        let mut out = Entry { order: self.order, terms: BTreeMap::new() };
        for ((p, j), f) in &self.terms {
            out.add_frac(*p, *j, f.mul(g));
        }
        out
    }

    /// Multiplies by `pi^p`.
    pub fn shift_pi(&self, p: i64) -> Entry {
        Entry { order: self.order, terms: self.terms.iter().map(|((q, j), f)| ((q + p, *j), f.clone())).collect() }
    }

    pub fn deriv(&self, var: usize) -> Entry {
        let mut out = Entry { order: self.order, terms: BTreeMap::new() };
        for ((p, j), f) in &self.terms {
            out.add_frac(*p, *j, f.deriv(var));
        }
        out
    }

    pub fn reduce(&mut self) {
        let terms = std::mem::take(&mut self.terms);
        for (k, f) in terms {
            let f = f.reduced();
            if !f.is_zero() {
                self.terms.insert(k, f);
            }
        }
    }

    pub fn reduced(mut self) -> Entry {
        self.reduce();
        self
    }

    /// Applies `f -> f'` to each rational function, regrouping afterwards.
    pub fn map_frac(&self, mut op: impl FnMut(&Frac) -> Frac) -> Entry {
        let mut out = Entry { order: self.order, terms: BTreeMap::new() };
        for ((p, j), f) in &self.terms {
            out.add_frac(*p, *j, op(f));
        }
        out
    }

    pub fn try_map_frac(&self, mut op: impl FnMut(&Frac) -> Option<Frac>) -> Option<Entry> {
        let mut out = Entry { order: self.order, terms: BTreeMap::new() };
        for ((p, j), f) in &self.terms {
            out.add_frac(*p, *j, op(f)?);
        }
        Some(out)
    }

    /// The automorphism `zeta -> zeta^a`, fixing `pi` and the variables.
    pub fn galois(&self, a: i64, order: u32) -> Result<Entry> {
        let table = CycloTable::get(order)?;
        if !table.is_unit(a) {
            return Err(Error::Invalid(format!("{} is not a unit modulo {}", a, order)));
        }
        let mut out = Entry { order, terms: BTreeMap::new() };
        for ((p, j), f) in &self.terms {
            for (idx, c) in table.power(a * *j as i64).iter().enumerate() {
                if !c.is_zero() {
                    out.add_frac(*p, idx as u32, f.scale(c));
                }
            }
        }
        Ok(out)
    }

    /// Smallest and largest powers of `pi` present.
    pub fn pi_range(&self) -> Option<(i64, i64)> {
        let lo = self.terms.keys().map(|k| k.0).min()?;
        let hi = self.terms.keys().map(|k| k.0).max()?;
        Some((lo, hi))
    }
}

impl Ring for Entry {
    fn nil() -> Self {
        Entry::zero()
    }
    fn unit() -> Self {
        Entry::constant(Rat::one())
    }
    fn from_rat(c: &Rat) -> Self {
        Entry::constant(c.clone())
    }
    fn plus(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn times(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn is_nil(&self) -> bool {
        self.is_zero()
    }
    fn scaled(&self, c: &Rat) -> Self {
        self.scale(c)
    }
}

/// The polynomial `var` as an entry.
pub fn var_entry(n: usize, var: usize) -> Entry {
    Entry::frac(Frac::new(MPoly::var(var), 0, n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    #[test]
    fn i_squares_to_minus_one() {
        for order in [4, 8, 12] {
            let i = Entry::i(order).unwrap();
            assert_eq!(i.mul(&i), Entry::constant(rat(-1)).with_order(order));
            let z = Entry::zeta_term(order, 0, 1, Frac::constant(rat(1))).unwrap();
            let mut p = Entry::constant(rat(1));
            for _ in 0..order {
                p = p.mul(&z);
            }
            assert_eq!(p, Entry::constant(rat(1)));
        }
    }

    #[test]
    fn conjugation_and_pi() {
        let i = Entry::i(4).unwrap().shift_pi(2);
        assert_eq!(i.galois(3, 4).unwrap(), i.neg());
        assert_eq!(i.galois(1, 4).unwrap(), i);
        assert!(i.galois(2, 4).is_err());
        assert!(Entry::constant(rat(3)).galois(2, 12).is_err());
    }

    #[test]
    fn variables_and_derivatives() {
        let x = var_entry(1, 0);
        let sq = x.mul(&x).shift_pi(-1);
        assert_eq!(sq.deriv(0), x.scale(&rat(2)).shift_pi(-1));
    }
}
