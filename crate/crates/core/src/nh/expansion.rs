//! Formal Fourier expansions `sum_h q_h(S) e(tr(h z))` with `S = (pi y)^{1/2}`,
//! and their JSON interchange format.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::coeff::{CKey, CoeffPoly};
use super::cyclo::CycloTable;
use super::entry::Entry;
use super::poly::{var_count, var_index, var_pair, Exps, Frac, MPoly};
use crate::algebra::{fmt_rat, parse_rat, Rat};
use crate::error::{Error, Result};
use crate::rep::weyl_dimension;
use crate::weights::Weight;

/// Largest rank accepted, so that variable names `Sij` stay unambiguous.
pub const MAX_RANK: usize = 9;
const MAX_EXPONENT: u32 = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FourierExpansion {
    n: usize,
    order: u32,
    denom: i64,
    weight: Weight,
    dim: usize,
    slots: usize,
    /// Keyed by the upper triangle of the numerator matrix `denom * h`, in
    /// variable order.
    terms: BTreeMap<Vec<i64>, CoeffPoly>,
}

impl FourierExpansion {
    /// An empty expansion of rank `n`, cyclotomic order `order`, exponent
    /// denominator `denom`, valued in the irreducible of highest weight `weight`.
    pub fn new(order: u32, denom: i64, weight: Weight) -> Result<FourierExpansion> {
        let n = weight.rank();
        if n == 0 || n > MAX_RANK {
            return Err(Error::RankTooLarge(n));
        }
        CycloTable::get(order)?;
        if denom <= 0 {
            return Err(Error::Invalid(format!("denominator {} is not positive", denom)));
        }
        let dim = weyl_dimension(&weight)? as usize;
        Ok(FourierExpansion { n, order, denom, weight, dim, slots: 0, terms: BTreeMap::new() })
    }

    /// The same header with no terms.
    pub fn empty_like(&self) -> FourierExpansion {
        FourierExpansion { terms: BTreeMap::new(), ..self.clone() }
    }

    pub(crate) fn with_shape(&self, weight: Weight, dim: usize, slots: usize) -> FourierExpansion {
        FourierExpansion { weight, dim, slots, terms: BTreeMap::new(), ..self.clone() }
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn denominator(&self) -> i64 {
        self.denom
    }

    pub fn weight(&self) -> &Weight {
        &self.weight
    }

    /// Dimension of the value space `V`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of multilinear slot arguments.
    pub fn slots(&self) -> usize {
        self.slots
    }

    pub fn terms(&self) -> &BTreeMap<Vec<i64>, CoeffPoly> {
        &self.terms
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// Upper-triangle key of a full symmetric numerator matrix.
    pub fn h_key(&self, h: &[Vec<i64>]) -> Result<Vec<i64>> {
        let n = self.n;
        if h.len() != n || h.iter().any(|r| r.len() != n) {
            return Err(Error::Invalid(format!("h must be a {}x{} matrix", n, n)));
        }
        for i in 0..n {
            for j in 0..i {
                if h[i][j] != h[j][i] {
                    return Err(Error::Invalid("h is not symmetric".into()));
                }
            }
        }
        Ok((0..var_count(n)).map(|v| {
            let (i, j) = var_pair(n, v);
            h[i][j]
        })
        .collect())
    }

    /// Full numerator matrix of a key.
    pub fn h_matrix(&self, key: &[i64]) -> Vec<Vec<i64>> {
        let n = self.n;
        (0..n).map(|i| (0..n).map(|j| key[var_index(n, i, j)]).collect()).collect()
    }

    /// Adds `c` to the coefficient at `h` (given by [`FourierExpansion::h_key`]).
    pub fn add_coefficient(&mut self, key: Vec<i64>, c: CoeffPoly) -> Result<()> {
        if key.len() != var_count(self.n) {
            return Err(Error::Invalid(format!("h key has length {}, expected {}", key.len(), var_count(self.n))));
        }
        if let Some(v) = c.max_v() {
            if v >= self.dim {
                return Err(Error::Dimension(format!("basis index {} outside a {}-dimensional space", v, self.dim)));
            }
        }
        if c.terms().keys().any(|k| k.slots.len() != self.slots) {
            return Err(Error::Dimension(format!("coefficient does not have {} slots", self.slots)));
        }
        for e in c.terms().values() {
            if e.order() != 0 && e.order() != self.order {
                return Err(Error::Invalid(format!("coefficient of order {} in an expansion of order {}", e.order(), self.order)));
            }
        }
        let slot = self.terms.entry(key.clone()).or_default();
        slot.add_assign(&c);
        slot.reduce();
        if slot.is_zero() {
            self.terms.remove(&key);
        }
        Ok(())
    }

    /// Adds the holomorphic term `c e(tr(h z)) b_v`.
    pub fn add_holomorphic(&mut self, h: &[Vec<i64>], v: usize, c: Entry) -> Result<()> {
        let key = self.h_key(h)?;
        self.add_coefficient(key, CoeffPoly::single(v, c))
    }

    pub(crate) fn insert_unchecked(&mut self, key: Vec<i64>, c: CoeffPoly) {
        let c = c.reduced();
        if c.is_zero() {
            self.terms.remove(&key);
        } else {
            self.terms.insert(key, c);
        }
    }

    fn check_compatible(&self, other: &FourierExpansion) -> Result<()> {
        if self.n != other.n || self.order != other.order || self.denom != other.denom {
            return Err(Error::Invalid("expansions have different rank, order or denominator".into()));
        }
        if self.dim != other.dim || self.slots != other.slots {
            return Err(Error::Dimension("expansions take values in different spaces".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &FourierExpansion) -> Result<FourierExpansion> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (k, c) in &other.terms {
            let sum = out.terms.get(k).map_or_else(|| c.clone(), |x| x.add(c));
            out.insert_unchecked(k.clone(), sum);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &FourierExpansion) -> Result<FourierExpansion> {
        self.add(&other.scale(&Entry::constant(-Rat::one())))
    }

    /// Multiplies every coefficient by a scalar.
    pub fn scale(&self, c: &Entry) -> FourierExpansion {
        self.map_coefficients(|q| q.scale(c))
    }

    pub(crate) fn map_coefficients(&self, mut op: impl FnMut(&CoeffPoly) -> CoeffPoly) -> FourierExpansion {
        let mut out = self.empty_like();
        for (k, c) in &self.terms {
            out.insert_unchecked(k.clone(), op(c));
        }
        out
    }

    pub(crate) fn try_map_coefficients(
        &self,
        mut op: impl FnMut(&[i64], &CoeffPoly) -> Result<CoeffPoly>,
    ) -> Result<FourierExpansion> {
        let mut out = self.empty_like();
        for (k, c) in &self.terms {
            out.insert_unchecked(k.clone(), op(k, c)?);
        }
        Ok(out)
    }

    /// The Galois action `zeta -> zeta^a` on all coefficients.
    pub fn galois_act(&self, a: i64) -> Result<FourierExpansion> {
        let table = CycloTable::get(self.order)?;
        if !table.is_unit(a) {
            return Err(Error::Invalid(format!("{} is not a unit modulo {}", a, self.order)));
        }
        self.try_map_coefficients(|_, c| c.try_map(|e| e.galois(a, self.order)))
    }

    /// Rewrites every coefficient as a function of `Y = S^2 = pi y`.
    pub(crate) fn to_y(&self) -> Result<FourierExpansion> {
        let n = self.n;
        self.try_map_coefficients(|k, c| {
            c.try_map(|e| {
                e.try_map_frac(|f| f.s_to_y(n)).ok_or_else(|| {
                    Error::OddCoefficient(format!("coefficient at h = {:?} is not a function of S^2", self.h_matrix(k)))
                })
            })
        })
    }

    /// Inverse of [`FourierExpansion::to_y`].
    pub(crate) fn from_y(&self) -> FourierExpansion {
        let n = self.n;
        self.map_coefficients(|c| c.map(|e| e.map_frac(|f| f.y_to_s(n))))
    }

    /// Whether every coefficient is a function of `S^2` and `det(S)^{-2}`.
    pub fn is_even(&self) -> bool {
        self.to_y().is_ok()
    }

    /// The largest degree in the entries of `(pi y)^{-1}` if every
    /// coefficient is a polynomial in them, `None` otherwise.
    pub fn nearly_holomorphic_degree(&self) -> Option<u32> {
        let y = self.to_y().ok()?;
        let mut deg = 0;
        for c in y.terms.values() {
            for e in c.terms().values() {
                for f in e.terms().values() {
                    let g = f.invert_arg(self.n);
                    if g.den() != 0 {
                        return None;
                    }
                    deg = deg.max(g.num().degree().unwrap_or(0));
                }
            }
        }
        Some(deg)
    }

    /// Serializes to the interchange format. Only V-valued expansions
    /// (no slot arguments) can be written.
    pub fn to_json(&self) -> Result<String> {
        if self.slots != 0 {
            return Err(Error::Invalid("only expansions without slot arguments can be written".into()));
        }
        let order = self.order as usize;
        let mut terms = Vec::new();
        for (key, c) in &self.terms {
            let mut records: BTreeMap<(u32, i64, u32, Exps), Vec<Rat>> = BTreeMap::new();
            for (ck, e) in c.terms() {
                for ((p, j), f) in e.terms() {
                    for (mono, q) in f.num().terms() {
                        let z = records.entry((ck.v, *p, f.den(), mono.clone())).or_insert_with(|| vec![Rat::zero(); order]);
                        z[*j as usize] += q;
                    }
                }
            }
            let coefficient = records
                .into_iter()
                .filter(|(_, z)| z.iter().any(|x| !x.is_zero()))
                .map(|((v, p, den, mono), z)| MonoRepr {
                    pi_exp: p,
                    zeta: z.iter().map(fmt_rat).collect(),
                    s_exponents: mono
                        .iter()
                        .enumerate()
                        .filter(|(_, &e)| e > 0)
                        .map(|(idx, &e)| {
                            let (i, j) = var_pair(self.n, idx);
                            (format!("S{}{}", i + 1, j + 1), e as u32)
                        })
                        .collect(),
                    det_s_exp: -(den as i64),
                    v_index: v as usize,
                })
                .collect();
            terms.push(TermRepr { h: self.h_matrix(key), coefficient });
        }
        let repr = FileRepr {
            n: self.n,
            order: self.order,
            denominator: self.denom,
            rep_weight: self.weight.entries().to_vec(),
            terms,
        };
        let mut s = serde_json::to_string_pretty(&repr).map_err(|e| Error::Computation(e.to_string()))?;
        s.push('\n');
        Ok(s)
    }

    /// Parses the interchange format.
    pub fn from_json(text: &str) -> Result<FourierExpansion> {
        let repr: FileRepr = serde_json::from_str(text).map_err(|e| Error::parse(e.line(), e.to_string()))?;
        if repr.rep_weight.len() != repr.n {
            return Err(Error::Invalid(format!("rep_weight has {} entries for rank {}", repr.rep_weight.len(), repr.n)));
        }
        let mut out = FourierExpansion::new(repr.order, repr.denominator, Weight::new(repr.rep_weight))?;
        let n = out.n;
        let table = CycloTable::get(out.order)?;
        for t in repr.terms {
            let key = out.h_key(&t.h)?;
            let mut c = CoeffPoly::zero();
            for m in t.coefficient {
                if m.zeta.len() != out.order as usize {
                    return Err(Error::Invalid(format!("zeta has {} entries, expected {}", m.zeta.len(), out.order)));
                }
                if m.v_index >= out.dim {
                    return Err(Error::Dimension(format!("v_index {} outside a {}-dimensional space", m.v_index, out.dim)));
                }
                if m.det_s_exp > 0 || m.det_s_exp < -(MAX_EXPONENT as i64) {
                    return Err(Error::Invalid(format!("det_s_exp {} outside [-{}, 0]", m.det_s_exp, MAX_EXPONENT)));
                }
                let mut exps = vec![0u16; var_count(n)];
                for (name, e) in &m.s_exponents {
                    let idx = parse_var(name, n)?;
                    if *e > MAX_EXPONENT {
                        return Err(Error::Invalid(format!("exponent {} of {} exceeds {}", e, name, MAX_EXPONENT)));
                    }
                    exps[idx] = *e as u16;
                }
                let mono = MPoly::monomial(exps, Rat::one());
                let mut zeta = Vec::with_capacity(m.zeta.len());
                for z in &m.zeta {
                    zeta.push(parse_rat(z).ok_or_else(|| Error::Invalid(format!("bad rational {:?}", z)))?);
                }
                let mut e = Entry::zero().with_order(out.order);
                for (j, q) in table.reduce(&zeta).into_iter().enumerate() {
                    if !q.is_zero() {
                        e.add_frac(m.pi_exp, j as u32, Frac::new(mono.scale(&q), (-m.det_s_exp) as u32, n));
                    }
                }
                c.add_term(CKey { v: m.v_index as u32, slots: Vec::new() }, e);
            }
            out.add_coefficient(key, c)?;
        }
        Ok(out)
    }
}

fn parse_var(name: &str, n: usize) -> Result<usize> {
    let b = name.as_bytes();
    let bad = || Error::Invalid(format!("bad variable name {:?}", name));
    if b.len() != 3 || b[0] != b'S' || !b[1].is_ascii_digit() || !b[2].is_ascii_digit() {
        return Err(bad());
    }
    let i = (b[1] - b'0') as usize;
    let j = (b[2] - b'0') as usize;
    if i == 0 || i > j || j > n {
        return Err(bad());
    }
    Ok(var_index(n, i - 1, j - 1))
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileRepr {
    n: usize,
    #[serde(rename = "N")]
    order: u32,
    denominator: i64,
    rep_weight: Vec<i64>,
    terms: Vec<TermRepr>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TermRepr {
    h: Vec<Vec<i64>>,
    coefficient: Vec<MonoRepr>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MonoRepr {
    pi_exp: i64,
    zeta: Vec<String>,
    s_exponents: BTreeMap<String, u32>,
    det_s_exp: i64,
    v_index: usize,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn sample() -> FourierExpansion {
        let mut f = FourierExpansion::new(12, 2, Weight::new(vec![5, 3])).unwrap();
        let i = Entry::i(12).unwrap();
        f.add_holomorphic(&[vec![2, 1], vec![1, 4]], 1, i.shift_pi(-1).scale(&rat(3))).unwrap();
        let s = Frac::new(MPoly::var(0).mul(&MPoly::var(2)), 1, 2);
        f.add_holomorphic(&[vec![0, 0], vec![0, 2]], 0, Entry::frac(s).add(&Entry::constant(rat(-1)))).unwrap();
        f
    }

    #[test]
    fn json_round_trip() {
        let f = sample();
        let text = f.to_json().unwrap();
        let g = FourierExpansion::from_json(&text).unwrap();
        assert_eq!(f, g);
        assert_eq!(g.to_json().unwrap(), text);
    }

    #[test]
    fn json_validation() {
        let text = sample().to_json().unwrap();
        let base: serde_json::Value = serde_json::from_str(&text).unwrap();
        let mut short = base.clone();
        short["terms"][0]["coefficient"][0]["zeta"].as_array_mut().unwrap().pop();
        assert!(FourierExpansion::from_json(&short.to_string()).is_err());
        let mut asym = base.clone();
        asym["terms"][1]["h"][1][0] = 0.into();
        assert!(FourierExpansion::from_json(&asym.to_string()).is_err());
        let mut big = base.clone();
        big["terms"][0]["coefficient"][0]["v_index"] = 3.into();
        assert!(FourierExpansion::from_json(&big.to_string()).is_err());
        let mut pos = base;
        pos["terms"][0]["coefficient"][0]["det_s_exp"] = 1.into();
        assert!(FourierExpansion::from_json(&pos.to_string()).is_err());
        assert!(FourierExpansion::from_json("{}").is_err());
        assert!(parse_var("S21", 2).is_err());
        assert!(parse_var("S13", 2).is_err());
        assert_eq!(parse_var("S22", 2).unwrap(), 2);
    }

    #[test]
    fn galois_on_expansions() {
        let f = sample();
        assert_eq!(f.galois_act(1).unwrap(), f);
        assert!(f.galois_act(3).is_err());
        let g = f.galois_act(5).unwrap().galois_act(5).unwrap();
        assert_eq!(g, f);
    }

    #[test]
    fn parity_and_degree() {
        let f = sample();
        assert!(!f.is_even());
        let mut g = FourierExpansion::new(4, 1, Weight::new(vec![2])).unwrap();
        // (pi y)^{-1} = S^{-2}
        g.add_holomorphic(&[vec![1]], 0, Entry::frac(Frac::new(MPoly::one(), 2, 1))).unwrap();
        assert!(g.is_even());
        assert_eq!(g.nearly_holomorphic_degree(), Some(1));
        let y = g.to_y().unwrap();
        assert_eq!(y.from_y(), g);
    }
}
