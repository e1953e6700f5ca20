//! The cyclotomic field Q(zeta_N) in its power basis, and Laurent
//! polynomials over it in a formal symbol pi.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Mutex, OnceLock};

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::algebra::{fmt_rat, rat, Rat};
use crate::error::{Error, Result};

/// Reduction data for one cyclotomic order.
#[derive(Debug)]
pub struct CycloTable {
    order: u32,
    phi: usize,
    /// `zeta^j` in the power basis, for `0 <= j < N`.
    powers: Vec<Vec<Rat>>,
}

fn poly_divide(num: &[Rat], den: &[Rat]) -> Vec<Rat> {
    let mut r = num.to_vec();
    let dl = den.len();
    let mut q = vec![Rat::zero(); r.len() + 1 - dl];
    for i in (0..q.len()).rev() {
        let c = &r[i + dl - 1] / &den[dl - 1];
        if c.is_zero() {
            continue;
        }
        for (j, d) in den.iter().enumerate() {
            r[i + j] -= &c * d;
        }
        q[i] = c;
    }
    debug_assert!(r.iter().all(Zero::is_zero));
    q
}

/// Coefficients of the N-th cyclotomic polynomial, constant term first.
pub fn cyclotomic_poly(order: u32) -> Vec<Rat> {
    let mut num = vec![Rat::zero(); order as usize + 1];
    num[0] = rat(-1);
    num[order as usize] = rat(1);
    for d in 1..order {
        if order.is_multiple_of(d) {
            num = poly_divide(&num, &cyclotomic_poly(d));
        }
    }
    num
}

impl CycloTable {
    fn new(order: u32) -> CycloTable {
        let poly = cyclotomic_poly(order);
        let phi = poly.len() - 1;
        let mut powers = Vec::with_capacity(order as usize);
        let mut cur = vec![Rat::zero(); phi];
        cur[0] = Rat::one();
        for _ in 0..order {
            powers.push(cur.clone());
            // multiply by zeta and reduce the overflowing coefficient
            let top = cur[phi - 1].clone();
            for i in (1..phi).rev() {
                cur[i] = cur[i - 1].clone();
            }
            cur[0] = Rat::zero();
            if !top.is_zero() {
                for (c, p) in cur.iter_mut().zip(&poly) {
                    *c -= &top * p;
                }
            }
        }
        CycloTable { order, phi, powers }
    }

    /// The table for order `N`, which must be a positive multiple of 4.
    pub fn get(order: u32) -> Result<&'static CycloTable> {
        if order == 0 || !order.is_multiple_of(4) {
            return Err(Error::Invalid(format!("cyclotomic order {} is not a positive multiple of 4", order)));
        }
        if order > 10_000 {
            return Err(Error::Invalid(format!("cyclotomic order {} is too large", order)));
        }
        static TABLES: OnceLock<Mutex<HashMap<u32, &'static CycloTable>>> = OnceLock::new();
        let mut map = TABLES.get_or_init(Default::default).lock().unwrap_or_else(|e| e.into_inner());
        Ok(map.entry(order).or_insert_with(|| Box::leak(Box::new(CycloTable::new(order)))))
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Degree of the field, Euler's phi of N.
    pub fn phi(&self) -> usize {
        self.phi
    }

    /// `zeta^e` for any integer exponent.
    pub fn power(&self, e: i64) -> &[Rat] {
        &self.powers[e.rem_euclid(self.order as i64) as usize]
    }

    /// Basis exponent of `i = zeta^{N/4}`.
    pub fn i_exponent(&self) -> i64 {
        (self.order / 4) as i64
    }

    /// Reduces a coefficient vector of any length modulo the cyclotomic polynomial.
    pub fn reduce(&self, coeffs: &[Rat]) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); self.phi];
        for (e, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, p) in out.iter_mut().zip(self.power(e as i64)) {
                if !p.is_zero() {
                    *o += c * p;
                }
            }
        }
        out
    }

    pub fn is_unit(&self, a: i64) -> bool {
        a.rem_euclid(self.order as i64).gcd(&(self.order as i64)) == 1
    }
}

/// An element of Q(zeta_N) in the power basis `1, zeta, ..., zeta^{phi-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cyclo {
    order: u32,
    coeffs: Vec<Rat>,
}

impl Cyclo {
    pub fn zero(order: u32) -> Result<Cyclo> {
        let t = CycloTable::get(order)?;
        Ok(Cyclo { order, coeffs: vec![Rat::zero(); t.phi()] })
    }

    pub fn from_rat(order: u32, c: Rat) -> Result<Cyclo> {
        let mut z = Cyclo::zero(order)?;
        z.coeffs[0] = c;
        Ok(z)
    }

    /// `zeta^e`.
    pub fn zeta_power(order: u32, e: i64) -> Result<Cyclo> {
        let t = CycloTable::get(order)?;
        Ok(Cyclo { order, coeffs: t.power(e).to_vec() })
    }

    pub fn i(order: u32) -> Result<Cyclo> {
        let t = CycloTable::get(order)?;
        Cyclo::zeta_power(order, t.i_exponent())
    }

    /// From coordinates with respect to `1, zeta, ..., zeta^{len-1}`, reduced.
    pub fn from_coeffs(order: u32, coeffs: &[Rat]) -> Result<Cyclo> {
        let t = CycloTable::get(order)?;
        Ok(Cyclo { order, coeffs: t.reduce(coeffs) })
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// The reduced coordinates padded with zeros to length N.
    pub fn padded(&self) -> Vec<Rat> {
        let mut v = self.coeffs.clone();
        v.resize(self.order as usize, Rat::zero());
        v
    }

    fn table(&self) -> &'static CycloTable {
        CycloTable::get(self.order).expect("order validated on construction")
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(Zero::is_zero)
    }

    fn check(&self, other: &Cyclo) {
        assert_eq!(self.order, other.order, "mixing cyclotomic orders");
    }

    pub fn add(&self, other: &Cyclo) -> Cyclo {
        self.check(other);
        Cyclo { order: self.order, coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect() }
    }

    pub fn neg(&self) -> Cyclo {
        Cyclo { order: self.order, coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }

    pub fn sub(&self, other: &Cyclo) -> Cyclo {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rat) -> Cyclo {
        Cyclo { order: self.order, coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn mul(&self, other: &Cyclo) -> Cyclo {
        self.check(other);
        let mut full = vec![Rat::zero(); 2 * self.coeffs.len()];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    full[i + j] += a * b;
                }
            }
        }
        Cyclo { order: self.order, coeffs: self.table().reduce(&full) }
    }

    /// The automorphism `zeta -> zeta^a`.
    pub fn galois(&self, a: i64) -> Result<Cyclo> {
        let t = self.table();
        if !t.is_unit(a) {
            return Err(Error::Invalid(format!("{} is not a unit modulo {}", a, self.order)));
        }
        let mut full = vec![Rat::zero(); self.order as usize];
        for (e, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                full[(a * e as i64).rem_euclid(self.order as i64) as usize] += c;
            }
        }
        Ok(Cyclo { order: self.order, coeffs: t.reduce(&full) })
    }
}

impl fmt::Display for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (e, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            parts.push(match e {
                0 => fmt_rat(c),
                _ => format!("{}*z^{}", fmt_rat(c), e),
            });
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// An element of Q(zeta_N)[pi, 1/pi] with pi a formal symbol.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycScalar {
    order: u32,
    terms: BTreeMap<i64, Cyclo>,
}

impl CycScalar {
    pub fn zero(order: u32) -> Result<CycScalar> {
        CycloTable::get(order)?;
        Ok(CycScalar { order, terms: BTreeMap::new() })
    }

    pub fn one(order: u32) -> Result<CycScalar> {
        CycScalar::monomial(Cyclo::from_rat(order, Rat::one())?, 0)
    }

    pub fn from_rat(order: u32, c: Rat) -> Result<CycScalar> {
        CycScalar::monomial(Cyclo::from_rat(order, c)?, 0)
    }

    /// `c * pi^e`.
    pub fn monomial(c: Cyclo, e: i64) -> Result<CycScalar> {
        let mut s = CycScalar::zero(c.order())?;
        if !c.is_zero() {
            s.terms.insert(e, c);
        }
        Ok(s)
    }

    /// `pi^e`.
    pub fn pi_power(order: u32, e: i64) -> Result<CycScalar> {
        CycScalar::monomial(Cyclo::from_rat(order, Rat::one())?, e)
    }

    pub fn i(order: u32) -> Result<CycScalar> {
        CycScalar::monomial(Cyclo::i(order)?, 0)
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn terms(&self) -> &BTreeMap<i64, Cyclo> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn insert_add(&mut self, e: i64, c: Cyclo) {
        let merged = match self.terms.remove(&e) {
            Some(old) => old.add(&c),
            None => c,
        };
        if !merged.is_zero() {
            self.terms.insert(e, merged);
        }
    }

    pub fn add(&self, other: &CycScalar) -> CycScalar {
        assert_eq!(self.order, other.order, "mixing cyclotomic orders");
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert_add(*e, c.clone());
        }
        out
    }

    pub fn neg(&self) -> CycScalar {
        CycScalar { order: self.order, terms: self.terms.iter().map(|(e, c)| (*e, c.neg())).collect() }
    }

    pub fn sub(&self, other: &CycScalar) -> CycScalar {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &CycScalar) -> CycScalar {
        assert_eq!(self.order, other.order, "mixing cyclotomic orders");
        let mut out = CycScalar { order: self.order, terms: BTreeMap::new() };
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.insert_add(e1 + e2, c1.mul(c2));
            }
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> CycScalar {
        let mut out = CycScalar { order: self.order, terms: BTreeMap::new() };
        for (e, x) in &self.terms {
            out.insert_add(*e, x.scale(c));
        }
        out
    }

    /// Fixes pi and maps `zeta -> zeta^a`.
    pub fn galois(&self, a: i64) -> Result<CycScalar> {
        let mut out = CycScalar { order: self.order, terms: BTreeMap::new() };
        for (e, c) in &self.terms {
            out.insert_add(*e, c.galois(a)?);
        }
        if !CycloTable::get(self.order)?.is_unit(a) {
            return Err(Error::Invalid(format!("{} is not a unit modulo {}", a, self.order)));
        }
        Ok(out)
    }
}

impl fmt::Display for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(e, c)| format!("({})*pi^{}", c, e)).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ratq;

    #[test]
    fn cyclotomic_polynomials() {
        let ints = |o: u32| -> Vec<i64> {
            cyclotomic_poly(o).iter().map(|c| i64::try_from(c.to_integer()).unwrap()).collect()
        };
        assert_eq!(ints(4), vec![1, 0, 1]);
        assert_eq!(ints(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(ints(8), vec![1, 0, 0, 0, 1]);
        assert_eq!(CycloTable::get(20).unwrap().phi(), 8);
        assert!(CycloTable::get(6).is_err());
    }

    #[test]
    fn i_squares_to_minus_one() {
        for order in [4, 8, 12, 20, 24] {
            let i = Cyclo::i(order).unwrap();
            assert_eq!(i.mul(&i), Cyclo::from_rat(order, rat(-1)).unwrap());
            let z = Cyclo::zeta_power(order, 1).unwrap();
            let mut p = Cyclo::from_rat(order, rat(1)).unwrap();
            for _ in 0..order {
                p = p.mul(&z);
            }
            assert_eq!(p, Cyclo::from_rat(order, rat(1)).unwrap());
        }
    }

    #[test]
    fn galois_conjugation() {
        let q = ratq(3, 7);
        let x = CycScalar::i(4).unwrap().scale(&q);
        assert_eq!(x.galois(3).unwrap(), x.neg());
        assert_eq!(x.galois(1).unwrap(), x);
        assert!(x.galois(2).is_err());
        let r = CycScalar::from_rat(12, q).unwrap().mul(&CycScalar::pi_power(12, -2).unwrap());
        for a in [1, 5, 7, 11] {
            assert_eq!(r.galois(a).unwrap(), r);
        }
    }

    #[test]
    fn galois_is_multiplicative() {
        let a = Cyclo::from_coeffs(12, &[rat(1), rat(2), rat(0), rat(-1)]).unwrap();
        let b = Cyclo::from_coeffs(12, &[rat(0), ratq(1, 2), rat(3), rat(0), rat(0), rat(1)]).unwrap();
        for s in [5, 7, 11] {
            assert_eq!(a.mul(&b).galois(s).unwrap(), a.galois(s).unwrap().mul(&b.galois(s).unwrap()));
        }
    }
}
