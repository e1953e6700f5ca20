//! Integral weights, the dot action of the Weyl group of type C, and
//! infinitesimal characters of the center generators.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::{GenKind, GenOrder, Rat, UeaElement};
use crate::center::center_generator;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn new(entries: Vec<i64>) -> Weight {
        Weight(entries)
    }

    pub fn scalar(n: usize, k: i64) -> Weight {
        Weight(vec![k; n])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn is_dominant(&self) -> bool {
        self.0.windows(2).all(|p| p[0] >= p[1])
    }

    /// Dominant with last entry at least 1.
    pub fn is_dominant_positive(&self) -> bool {
        self.is_dominant() && self.0.last().is_some_and(|&k| k >= 1)
    }

    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn last(&self) -> i64 {
        *self.0.last().expect("weights have rank at least 1")
    }

    pub fn require_dominant(&self) -> Result<()> {
        if self.is_dominant() {
            Ok(())
        } else {
            Err(Error::NonDominant(self.to_string()))
        }
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for Weight {
    type Err = Error;

    /// Comma-separated integers, optionally in parentheses: `5,3` or `(5,3)`.
    fn from_str(s: &str) -> Result<Weight> {
        let t = s.trim();
        let t = t.strip_prefix('(').and_then(|x| x.strip_suffix(')')).unwrap_or(t);
        let mut out = Vec::new();
        for part in t.split(',') {
            let p = part.trim();
            let ok = !p.is_empty()
                && p.len() <= 12
                && p.strip_prefix('-').unwrap_or(p).bytes().all(|b| b.is_ascii_digit())
                && p != "-";
            if !ok {
                return Err(Error::parse(1, format!("bad weight entry `{}`", p)));
            }
            out.push(p.parse().map_err(|_| Error::parse(1, format!("bad weight entry `{}`", p)))?);
        }
        Ok(Weight(out))
    }
}

/// A signed permutation: `sigma` is a 0-based permutation, `flips[i]` means epsilon_i = -1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeylElement {
    pub sigma: Vec<usize>,
    pub flips: Vec<bool>,
}

impl WeylElement {
    pub fn identity(n: usize) -> WeylElement {
        WeylElement { sigma: (0..n).collect(), flips: vec![false; n] }
    }

    pub fn new(sigma: Vec<usize>, flips: Vec<bool>) -> Result<WeylElement> {
        let n = sigma.len();
        let mut seen = vec![false; n];
        for &s in &sigma {
            if s >= n || seen[s] {
                return Err(Error::Invalid(format!("{:?} is not a permutation", sigma)));
            }
            seen[s] = true;
        }
        if flips.len() != n {
            return Err(Error::Invalid("sign vector has the wrong length".into()));
        }
        Ok(WeylElement { sigma, flips })
    }

    /// All 2^n n! elements, in a fixed order.
    pub fn all(n: usize) -> Result<Vec<WeylElement>> {
        if n > 6 {
            return Err(Error::RankTooLarge(n));
        }
        let mut perms = vec![Vec::new()];
        for len in 0..n {
            let mut next = Vec::new();
            for p in &perms {
                for pos in 0..=len {
                    let mut q: Vec<usize> = p.clone();
                    q.insert(pos, len);
                    next.push(q);
                }
            }
            perms = next;
        }
        perms.sort();
        let mut out = Vec::new();
        for p in perms {
            for mask in 0..(1u32 << n) {
                let flips = (0..n).map(|i| mask >> i & 1 == 1).collect();
                out.push(WeylElement { sigma: p.clone(), flips });
            }
        }
        Ok(out)
    }
}

/// `k'_i = eps_i (k_sigma(i) - sigma(i)) + i` with 1-based positions.
pub fn dot_action(w: &WeylElement, k: &Weight) -> Weight {
    let out = (0..k.rank())
        .map(|i| {
            let s = w.sigma[i];
            let v = k.0[s] - (s as i64 + 1);
            let v = if w.flips[i] { -v } else { v };
            v + i as i64 + 1
        })
        .collect();
    Weight(out)
}

pub fn dot_orbit(k: &Weight) -> Result<BTreeSet<Weight>> {
    Ok(WeylElement::all(k.rank())?.iter().map(|w| dot_action(w, k)).collect())
}

/// The part of an element that survives on a highest weight vector, as a
/// polynomial in the diagonal eigenvalues.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterPoly {
    n: usize,
    terms: Vec<(Rat, Vec<u32>)>,
}

impl CharacterPoly {
    /// Normal-orders with diagonal B first, then lowering, raising, E+, E-;
    /// a monomial acts on a highest weight vector by a scalar only if it is
    /// purely diagonal, every other monomial ends in an annihilating factor or
    /// changes the weight.
    pub fn new(d: &UeaElement) -> CharacterPoly {
        let n = d.rank();
        let nf = d.normal_form(GenOrder::HYXPM);
        let mut terms = Vec::new();
        for (m, c) in nf.terms() {
            let diagonal = m.gens().iter().all(|g| g.kind == GenKind::B && g.i == g.j);
            if !diagonal {
                continue;
            }
            let mut exps = vec![0u32; n];
            for g in m.gens() {
                exps[g.i() - 1] += 1;
            }
            terms.push((c.clone(), exps));
        }
        CharacterPoly { n, terms }
    }

    pub fn eval(&self, k: &Weight) -> Result<Rat> {
        if k.rank() != self.n {
            return Err(Error::RankMismatch(self.n, k.rank()));
        }
        let mut acc = Rat::zero();
        for (c, exps) in &self.terms {
            let mut t = c.clone();
            for (e, &ki) in exps.iter().zip(&k.0) {
                t *= Rat::from_integer(BigInt::from(ki).pow(*e));
            }
            acc += t;
        }
        Ok(acc)
    }
}

pub fn infinitesimal_character(k: &Weight, d: &UeaElement) -> Result<Rat> {
    CharacterPoly::new(d).eval(k)
}

/// The character polynomials of D_2, ..., D_2n at one rank.
#[derive(Clone, Debug)]
pub struct CenterCharacters {
    polys: Vec<CharacterPoly>,
}

impl CenterCharacters {
    pub fn new(n: usize) -> CenterCharacters {
        CenterCharacters { polys: (1..=n).map(|r| CharacterPoly::new(&center_generator(r, n))).collect() }
    }

    pub fn rank(&self) -> usize {
        self.polys.len()
    }

    /// `chi_k(D_2i)` for i = 1..n.
    pub fn chi(&self, k: &Weight) -> Result<Vec<Rat>> {
        self.polys.iter().map(|p| p.eval(k)).collect()
    }

    pub fn chi_at(&self, i: usize, k: &Weight) -> Result<Rat> {
        self.polys
            .get(i.wrapping_sub(1))
            .ok_or_else(|| Error::IndexOutOfRange(format!("D_{} at rank {}", 2 * i, self.rank())))?
            .eval(k)
    }

    pub fn separate(&self, k: &Weight, kp: &Weight) -> Result<bool> {
        Ok(self.chi(k)? != self.chi(kp)?)
    }
}

pub fn characters_separate(k: &Weight, kp: &Weight) -> Result<bool> {
    if k.rank() != kp.rank() {
        return Err(Error::RankMismatch(k.rank(), kp.rank()));
    }
    CenterCharacters::new(k.rank()).separate(k, kp)
}

/// `{r : 1 <= r <= k_n - n, r = k_n - n mod 2}`, ascending.
pub fn critical_points(k: &Weight) -> Vec<i64> {
    let top = k.last() - k.rank() as i64;
    (1..=top).filter(|r| (top - r) % 2 == 0).collect()
}

pub fn is_integer(x: &Rat) -> bool {
    x.denom().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn w(s: &str) -> Weight {
        s.parse().unwrap()
    }

    #[test]
    fn parse_weights() {
        assert_eq!(w("5,3"), Weight(vec![5, 3]));
        assert_eq!(w("(-2, 7)"), Weight(vec![-2, 7]));
        assert!("5,,3".parse::<Weight>().is_err());
        assert!("a".parse::<Weight>().is_err());
        assert!("-".parse::<Weight>().is_err());
        assert_eq!(w("5,3").to_string(), "(5,3)");
    }

    #[test]
    fn dot_examples() {
        let k = w("7,2");
        assert_eq!(dot_action(&WeylElement::identity(2), &k), k);
        let flip = WeylElement::new(vec![0], vec![true]).unwrap();
        assert_eq!(dot_action(&flip, &w("9")), w("-7"));
        let swap = WeylElement::new(vec![1, 0], vec![false, false]).unwrap();
        assert_eq!(dot_action(&swap, &w("5,3")), w("2,6"));
    }

    #[test]
    fn orbits() {
        let o = dot_orbit(&w("9")).unwrap();
        assert_eq!(o.into_iter().collect::<Vec<_>>(), vec![w("-7"), w("9")]);
        assert_eq!(dot_orbit(&w("1")).unwrap().len(), 1);
        assert_eq!(WeylElement::all(3).unwrap().len(), 48);
        let o = dot_orbit(&w("5,3,1")).unwrap();
        assert_eq!(48 % o.len(), 0);
        assert!(dot_orbit(&Weight(vec![1; 7])).is_err());
    }

    #[test]
    fn character_examples() {
        let d2 = center_generator(1, 1);
        assert_eq!(infinitesimal_character(&w("12"), &d2).unwrap(), rat(240));
        let d2 = center_generator(1, 2);
        for (k1, k2) in [(5, 3), (4, 2), (1, 1), (10, 7)] {
            let k = Weight(vec![k1, k2]);
            let expect = 2 * k1 * k1 + 2 * k2 * k2 - 4 * k1 - 8 * k2;
            assert_eq!(infinitesimal_character(&k, &d2).unwrap(), rat(expect));
        }
        assert_eq!(infinitesimal_character(&w("3,1"), &UeaElement::one(2)).unwrap(), rat(1));
    }

    #[test]
    fn separation_examples() {
        assert!(!characters_separate(&w("5,3"), &w("5,3")).unwrap());
        assert!(characters_separate(&w("5,3"), &w("4,2")).unwrap());
        for k in 2..8 {
            assert!(!characters_separate(&Weight(vec![k]), &Weight(vec![2 - k])).unwrap());
        }
    }

    #[test]
    fn critical_examples() {
        assert_eq!(critical_points(&w("9,8")), vec![2, 4, 6]);
        assert_eq!(critical_points(&w("4,3")), vec![1]);
        assert!(critical_points(&w("4,2")).is_empty());
    }
}
