//! Fourier coefficients: vectors in `V` of multilinear polynomials in slot
//! arguments `u_1, ..., u_e` (symmetric matrices), with [`Entry`] scalars.

use std::collections::BTreeMap;

use super::entry::Entry;
use super::poly::{var_count, var_index, var_pair};
use crate::error::{Error, Result};

/// A basis element: the `v`-th vector of `V` times the product over slots
/// `s` of the coordinate `(u_s)_{ij}` with `(i, j) = var_pair(slots[s])`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CKey {
    pub v: u32,
    pub slots: Vec<u8>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CoeffPoly {
    terms: BTreeMap<CKey, Entry>,
}

/// A linear substitution of one slot: each coordinate maps to a combination
/// of coordinates.
pub type SlotMap = Vec<Vec<(u8, Entry)>>;

/// The substitution `u -> M u M^t` for a symmetric argument `u`.
pub fn congruence_map(n: usize, m: &[Vec<Entry>]) -> SlotMap {
    (0..var_count(n))
        .map(|v| {
            let (i, j) = var_pair(n, v);
            let mut acc: BTreeMap<u8, Entry> = BTreeMap::new();
            for k in 0..n {
                if m[i][k].is_zero() {
                    continue;
                }
                for l in 0..n {
                    if m[j][l].is_zero() {
                        continue;
                    }
                    let slot = acc.entry(var_index(n, k, l) as u8).or_default();
                    *slot = slot.add(&m[i][k].mul(&m[j][l]));
                }
            }
            acc.into_iter().filter(|(_, e)| !e.is_zero()).collect()
        })
        .collect()
}

impl CoeffPoly {
    pub fn zero() -> CoeffPoly {
        CoeffPoly::default()
    }

    pub fn single(v: usize, e: Entry) -> CoeffPoly {
        let mut c = CoeffPoly::zero();
        c.add_term(CKey { v: v as u32, slots: Vec::new() }, e);
        c
    }

    pub fn terms(&self) -> &BTreeMap<CKey, Entry> {
        &self.terms
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

    pub fn add_term(&mut self, key: CKey, e: Entry) {
        if e.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&key) {
            Some(old) => old.add(&e),
            None => e,
        };
        if !sum.is_zero() {
            self.terms.insert(key, sum);
        }
    }

    pub fn add_assign(&mut self, other: &CoeffPoly) {
        for (k, e) in &other.terms {
            self.add_term(k.clone(), e.clone());
        }
    }

    pub fn add(&self, other: &CoeffPoly) -> CoeffPoly {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn neg(&self) -> CoeffPoly {
        self.map(|e| e.neg())
    }

    pub fn sub(&self, other: &CoeffPoly) -> CoeffPoly {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Entry) -> CoeffPoly {
        self.map(|e| e.mul(c))
    }

    pub fn map(&self, mut op: impl FnMut(&Entry) -> Entry) -> CoeffPoly {
        let mut out = CoeffPoly::zero();
        for (k, e) in &self.terms {
            out.add_term(k.clone(), op(e));
        }
        out
    }

    pub fn try_map(&self, mut op: impl FnMut(&Entry) -> Result<Entry>) -> Result<CoeffPoly> {
        let mut out = CoeffPoly::zero();
        for (k, e) in &self.terms {
            out.add_term(k.clone(), op(e)?);
        }
        Ok(out)
    }

    /// Number of slot arguments, if the keys agree.
    pub fn slot_count(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(|k| k.slots.len());
        let first = it.next()?;
        it.all(|x| x == first).then_some(first)
    }

    pub fn max_v(&self) -> Option<usize> {
        self.terms.keys().map(|k| k.v as usize).max()
    }

    /// Applies a matrix acting on `V`.
    pub fn apply_matrix(&self, m: &[Vec<Entry>]) -> Result<CoeffPoly> {
        let mut out = CoeffPoly::zero();
        for (k, e) in &self.terms {
            let col = k.v as usize;
            if m.first().is_none_or(|r| col >= r.len()) {
                return Err(Error::Dimension(format!("basis index {} outside a {}-dimensional space", col, m.len())));
            }
            for (row, r) in m.iter().enumerate() {
                if r[col].is_zero() {
                    continue;
                }
                out.add_term(CKey { v: row as u32, slots: k.slots.clone() }, r[col].mul(e));
            }
        }
        Ok(out)
    }

    /// Substitutes a linear map into slot `s`.
    pub fn substitute_slot(&self, s: usize, map: &SlotMap) -> CoeffPoly {
        let mut out = CoeffPoly::zero();
        for (k, e) in &self.terms {
            for (nv, c) in &map[k.slots[s] as usize] {
                let mut slots = k.slots.clone();
                slots[s] = *nv;
                out.add_term(CKey { v: k.v, slots }, e.mul(c));
            }
        }
        out
    }

    /// Evaluates slot `s` at a symmetric matrix, removing it.
    pub fn evaluate_slot(&self, n: usize, s: usize, m: &[Vec<Entry>]) -> CoeffPoly {
        let mut out = CoeffPoly::zero();
        for (k, e) in &self.terms {
            let (i, j) = var_pair(n, k.slots[s] as usize);
            if m[i][j].is_zero() {
                continue;
            }
            let mut slots = k.slots.clone();
            slots.remove(s);
            out.add_term(CKey { v: k.v, slots }, e.mul(&m[i][j]));
        }
        out
    }

    /// Keeps the component `v` only, relabelled as the first basis vector.
    pub fn component(&self, v: usize) -> CoeffPoly {
        let mut out = CoeffPoly::zero();
        for (k, e) in &self.terms {
            if k.v as usize == v {
                out.add_term(CKey { v: 0, slots: k.slots.clone() }, e.clone());
            }
        }
        out
    }

    pub fn reduce(&mut self) {
        let terms = std::mem::take(&mut self.terms);
        for (k, e) in terms {
            let e = e.reduced();
            if !e.is_zero() {
                self.terms.insert(k, e);
            }
        }
    }

    pub fn reduced(mut self) -> CoeffPoly {
        self.reduce();
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use crate::nh::entry::var_entry;

    #[test]
    fn congruence_by_identity_is_trivial() {
        let n = 2;
        let id: Vec<Vec<Entry>> =
            (0..n).map(|i| (0..n).map(|j| if i == j { Entry::constant(rat(1)) } else { Entry::zero() }).collect()).collect();
        let map = congruence_map(n, &id);
        for (v, row) in map.iter().enumerate() {
            assert_eq!(row.len(), 1);
            assert_eq!(row[0], (v as u8, Entry::constant(rat(1))));
        }
    }

    #[test]
    fn congruence_of_swap() {
        // u -> P u P with P the swap matrix exchanges u_11 and u_22
        let n = 2;
        let one = Entry::constant(rat(1));
        let p = vec![vec![Entry::zero(), one.clone()], vec![one.clone(), Entry::zero()]];
        let map = congruence_map(n, &p);
        assert_eq!(map[0], vec![(2, one.clone())]);
        assert_eq!(map[1], vec![(1, one.clone())]);
        assert_eq!(map[2], vec![(0, one)]);
    }

    #[test]
    fn evaluate_and_substitute() {
        let n = 1;
        let mut c = CoeffPoly::zero();
        c.add_term(CKey { v: 0, slots: vec![0] }, Entry::constant(rat(3)));
        let y = var_entry(n, 0);
        let map = congruence_map(n, &[vec![y.clone()]]);
        let sub = c.substitute_slot(0, &map);
        let val = sub.evaluate_slot(n, 0, &[vec![Entry::constant(rat(2))]]);
        assert_eq!(val, CoeffPoly::single(0, y.mul(&y).scale(&rat(6))));
    }
}
