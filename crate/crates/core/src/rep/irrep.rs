use std::collections::{BTreeMap, HashMap, VecDeque};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::{Gen, Rat};
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix, Ring};
use crate::weights::Weight;

/// A vector in the n-th tensor power of the standard representation;
/// keys are tuples of 0-based basis letters.
pub type Tensor = BTreeMap<Vec<u8>, Rat>;

/// `prod_{i<j} (k_i - k_j + j - i) / (j - i)`.
pub fn weyl_dimension(k: &Weight) -> Result<u64> {
    k.require_dominant()?;
    let n = k.rank();
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..n {
        for j in i + 1..n {
            num *= BigInt::from(k.0[i] - k.0[j] + (j - i) as i64);
            den *= BigInt::from((j - i) as i64);
        }
    }
    let q = num / den;
    u64::try_from(q).map_err(|_| Error::Computation("dimension overflows u64".into()))
}

#[derive(Clone, Debug)]
struct WeightSpace {
    members: Vec<usize>,
    pivots: Vec<Vec<u8>>,
    inv: Matrix,
}

/// An irreducible rational GL_n-representation with highest weight `k`,
/// realized inside `(C^n)^{tensor d} tensor det^{k_n}`, `d = sum(k_i - k_n)`.
///
/// Basis vector `j` equals `lowering[j]` applied to the highest weight tensor;
/// index 0 is the highest weight vector.
#[derive(Clone, Debug)]
pub struct GlIrrep {
    k: Weight,
    degree: usize,
    tensors: Vec<Tensor>,
    lowering: Vec<Vec<Gen>>,
    weights: Vec<Weight>,
    spaces: BTreeMap<Weight, WeightSpace>,
    action: Vec<Matrix>,
}

fn wedge(len: usize) -> Tensor {
    let mut out = Tensor::new();
    let mut perm: Vec<u8> = (0..len as u8).collect();
    heap_permutations(&mut perm, len, &mut |p, sign| {
        out.insert(p.to_vec(), Rat::from_integer(BigInt::from(sign)));
    });
    out
}

fn heap_permutations(a: &mut Vec<u8>, len: usize, f: &mut impl FnMut(&[u8], i64)) {
    fn sign_of(p: &[u8]) -> i64 {
        let mut s = 1;
        for i in 0..p.len() {
            for j in i + 1..p.len() {
                if p[i] > p[j] {
                    s = -s;
                }
            }
        }
        s
    }
    fn go(a: &mut Vec<u8>, k: usize, f: &mut impl FnMut(&[u8], i64)) {
        if k <= 1 {
            let s = sign_of(a);
            f(a, s);
            return;
        }
        for i in 0..k {
            go(a, k - 1, f);
            if k.is_multiple_of(2) {
                a.swap(i, k - 1);
            } else {
                a.swap(0, k - 1);
            }
        }
    }
    go(a, len, f)
}

fn tensor_product(a: &Tensor, b: &Tensor) -> Tensor {
    let mut out = Tensor::new();
    for (ka, ca) in a {
        for (kb, cb) in b {
            let mut k = ka.clone();
            k.extend_from_slice(kb);
            out.insert(k, ca * cb);
        }
    }
    out
}

/// `e_{i,j}` acting as a derivation on a tensor (0-based letters).
fn apply_elementary(i: u8, j: u8, t: &Tensor) -> Tensor {
    let mut out = Tensor::new();
    for (key, c) in t {
        for p in 0..key.len() {
            if key[p] == j {
                let mut nk = key.clone();
                nk[p] = i;
                let e = out.entry(nk).or_insert_with(Rat::zero);
                *e += c;
            }
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn tensor_weight(key: &[u8], n: usize, shift: i64) -> Weight {
    let mut w = vec![shift; n];
    for &l in key {
        w[l as usize] += 1;
    }
    Weight(w)
}

struct Echelon {
    rows: Vec<(Vec<u8>, Tensor)>,
}

impl Echelon {
    fn reduce(&self, v: &Tensor) -> Tensor {
        let mut v = v.clone();
        for (pk, r) in &self.rows {
            let Some(c) = v.get(pk).cloned() else { continue };
            for (key, x) in r {
                let e = v.entry(key.clone()).or_insert_with(Rat::zero);
                *e -= &c * x;
            }
            v.retain(|_, x| !x.is_zero());
        }
        v
    }

    fn push(&mut self, reduced: Tensor) {
        let (pk, c) = reduced.iter().next().map(|(k, c)| (k.clone(), c.clone())).expect("non-zero");
        let inv = c.recip();
        let row = reduced.into_iter().map(|(k, x)| (k, x * &inv)).collect();
        self.rows.push((pk, row));
    }
}

impl GlIrrep {
    pub fn new(k: &Weight) -> Result<GlIrrep> {
        k.require_dominant()?;
        let n = k.rank();
        if n == 0 {
            return Err(Error::Invalid("rank must be positive".into()));
        }
        if n > 255 {
            return Err(Error::RankTooLarge(n));
        }
        let kn = k.last();
        let lambda: Vec<i64> = k.0.iter().map(|x| x - kn).collect();
        let degree = lambda.iter().sum::<i64>() as usize;
        let mut hw = Tensor::from([(Vec::new(), Rat::one())]);
        for c in 1..=lambda[0] {
            let len = lambda.iter().filter(|&&x| x >= c).count();
            hw = tensor_product(&hw, &wedge(len));
        }

        let mut tensors = vec![hw.clone()];
        let mut lowering: Vec<Vec<Gen>> = vec![Vec::new()];
        let mut weights = vec![k.clone()];
        let mut echelons: HashMap<Weight, Echelon> = HashMap::new();
        let mut first = Echelon { rows: Vec::new() };
        first.push(hw);
        echelons.insert(k.clone(), first);
        let mut queue = VecDeque::from([0usize]);
        while let Some(j) = queue.pop_front() {
            for a in 0..n - 1 {
                let w = apply_elementary(a as u8 + 1, a as u8, &tensors[j]);
                if w.is_empty() {
                    continue;
                }
                let mut wt = weights[j].clone();
                wt.0[a] -= 1;
                wt.0[a + 1] += 1;
                let ech = echelons.entry(wt.clone()).or_insert_with(|| Echelon { rows: Vec::new() });
                let red = ech.reduce(&w);
                if red.is_empty() {
                    continue;
                }
                ech.push(red);
                let mut word = vec![Gen::b(a + 2, a + 1)];
                word.extend_from_slice(&lowering[j]);
                tensors.push(w);
                lowering.push(word);
                weights.push(wt);
                queue.push_back(tensors.len() - 1);
            }
        }
        let expected = weyl_dimension(k)? as usize;
        if tensors.len() != expected {
            return Err(Error::Computation(format!(
                "irrep {} has dimension {}, expected {}",
                k,
                tensors.len(),
                expected
            )));
        }

        let mut spaces: BTreeMap<Weight, WeightSpace> = BTreeMap::new();
        for (idx, wt) in weights.iter().enumerate() {
            spaces
                .entry(wt.clone())
                .or_insert_with(|| WeightSpace { members: Vec::new(), pivots: Vec::new(), inv: Vec::new() })
                .members
                .push(idx);
        }
        for sp in spaces.values_mut() {
            let keys: Vec<Vec<u8>> = {
                let mut ks: Vec<Vec<u8>> = sp.members.iter().flat_map(|&m| tensors[m].keys().cloned()).collect();
                ks.sort();
                ks.dedup();
                ks
            };
            let mut rows: Matrix = sp
                .members
                .iter()
                .map(|&m| keys.iter().map(|key| tensors[m].get(key).cloned().unwrap_or_else(Rat::zero)).collect())
                .collect();
            let piv = linalg::rref(&mut rows);
            sp.pivots = piv.iter().map(|&c| keys[c].clone()).collect();
            let sub: Matrix = sp
                .pivots
                .iter()
                .map(|key| sp.members.iter().map(|&m| tensors[m].get(key).cloned().unwrap_or_else(Rat::zero)).collect())
                .collect();
            sp.inv = linalg::inverse(&sub).ok_or_else(|| Error::Computation("singular weight space".into()))?;
        }

        let mut rep = GlIrrep { k: k.clone(), degree, tensors, lowering, weights, spaces, action: Vec::new() };
        let dim = rep.dim();
        let mut action = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut m = linalg::zeros(dim, dim);
                for col in 0..dim {
                    let img = apply_elementary(i as u8, j as u8, &rep.tensors[col]);
                    let coords = rep.coords(&img);
                    for (row, c) in coords.into_iter().enumerate() {
                        m[row][col] = c;
                    }
                    if i == j {
                        m[col][col] += Rat::from_integer(BigInt::from(kn));
                    }
                }
                action.push(m);
            }
        }
        rep.action = action;
        Ok(rep)
    }

    pub fn highest_weight(&self) -> &Weight {
        &self.k
    }

    pub fn rank(&self) -> usize {
        self.k.rank()
    }

    pub fn dim(&self) -> usize {
        self.tensors.len()
    }

    /// Tensor degree of the polynomial part, `sum(k_i - k_n)`.
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Exponent of the determinant twist, `k_n`.
    pub fn det_power(&self) -> i64 {
        self.k.last()
    }

    /// `k(rho) = sum k_i`, the degree of the determinant restricted to scalars.
    pub fn total_weight(&self) -> i64 {
        self.k.total()
    }

    pub fn hw_index(&self) -> usize {
        0
    }

    pub fn weight(&self, idx: usize) -> &Weight {
        &self.weights[idx]
    }

    pub fn weights(&self) -> &[Weight] {
        &self.weights
    }

    /// The lowering word `L_j` with `L_j v_k` equal to basis vector `j`.
    pub fn lowering_word(&self, idx: usize) -> &[Gen] {
        &self.lowering[idx]
    }

    /// Matrix of `B(i,j)` (1-based indices).
    pub fn action(&self, i: usize, j: usize) -> &Matrix {
        &self.action[(i - 1) * self.rank() + (j - 1)]
    }

    /// Coordinates of a tensor lying in the span of the basis.
    pub fn coords(&self, t: &Tensor) -> Vec<Rat> {
        let n = self.rank();
        let kn = self.det_power();
        let mut out = vec![Rat::zero(); self.dim()];
        let mut by_weight: BTreeMap<Weight, Tensor> = BTreeMap::new();
        for (key, c) in t {
            by_weight.entry(tensor_weight(key, n, kn)).or_default().insert(key.clone(), c.clone());
        }
        for (wt, part) in by_weight {
            let Some(sp) = self.spaces.get(&wt) else { continue };
            let vals: Vec<Rat> = sp.pivots.iter().map(|k| part.get(k).cloned().unwrap_or_else(Rat::zero)).collect();
            for (local, &idx) in sp.members.iter().enumerate() {
                out[idx] = sp.inv[local].iter().zip(&vals).fold(Rat::zero(), |acc, (a, b)| acc + a * b);
            }
        }
        out
    }

    /// Matrix of the polynomial part `g^{tensor d}` in this basis, for any
    /// matrix `g` over a commutative ring. The full representation is
    /// `det(g)^{k_n}` times this.
    pub fn rho_poly<R: Ring>(&self, g: &[Vec<R>]) -> Vec<Vec<R>> {
        let dim = self.dim();
        let mut out = vec![vec![R::nil(); dim]; dim];
        for (col, b) in self.tensors.iter().enumerate() {
            for sp in self.spaces.values() {
                let vals: Vec<R> = sp
                    .pivots
                    .iter()
                    .map(|s| {
                        let mut acc = R::nil();
                        for (t, c) in b {
                            let mut prod = R::from_rat(c);
                            for (sm, tm) in s.iter().zip(t) {
                                prod = prod.times(&g[*sm as usize][*tm as usize]);
                                if prod.is_nil() {
                                    break;
                                }
                            }
                            if !prod.is_nil() {
                                acc = acc.plus(&prod);
                            }
                        }
                        acc
                    })
                    .collect();
                for (local, &row) in sp.members.iter().enumerate() {
                    let mut acc = R::nil();
                    for (a, v) in sp.inv[local].iter().zip(&vals) {
                        if !a.is_nil() && !v.is_nil() {
                            acc = acc.plus(&v.scaled(a));
                        }
                    }
                    out[row][col] = acc;
                }
            }
        }
        out
    }

    /// `rho(g)` for a rational matrix with non-zero determinant.
    pub fn rho_rational(&self, g: &Matrix) -> Result<Matrix> {
        let d = linalg::det(g);
        if d.is_zero() {
            return Err(Error::Invalid("singular matrix".into()));
        }
        let p = self.rho_poly(g);
        let kn = self.det_power();
        let f = if kn >= 0 { num_traits::pow(d, kn as usize) } else { num_traits::pow(d.recip(), (-kn) as usize) };
        Ok(p.into_iter().map(|row| row.into_iter().map(|x| x * &f).collect()).collect())
    }

    /// `L_rho(w)`: the coefficient of the highest weight vector.
    pub fn lrho_project(&self, w: &[Rat]) -> Rat {
        w[self.hw_index()].clone()
    }

    /// Applies an element of U(k) (B generators only) to a coordinate vector.
    pub fn act_k(&self, x: &crate::algebra::UeaElement, v: &[Rat]) -> Result<Vec<Rat>> {
        let mut out = vec![Rat::zero(); self.dim()];
        for (m, c) in x.terms() {
            let mut w = v.to_vec();
            for g in m.gens().iter().rev() {
                if !g.is_b() {
                    return Err(Error::Invalid(format!("{} does not act on F_k", g)));
                }
                w = linalg::mat_vec(self.action(g.i(), g.j()), &w);
            }
            for (o, x) in out.iter_mut().zip(w) {
                *o += x * c;
            }
        }
        Ok(out)
    }

    /// The matrix of an element of U(k).
    pub fn matrix_of(&self, x: &crate::algebra::UeaElement) -> Result<Matrix> {
        let dim = self.dim();
        let mut out = linalg::zeros(dim, dim);
        for col in 0..dim {
            let mut e = vec![Rat::zero(); dim];
            e[col] = Rat::one();
            for (row, v) in self.act_k(x, &e)?.into_iter().enumerate() {
                out[row][col] = v;
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, UeaElement};

    fn w(s: &str) -> Weight {
        s.parse().unwrap()
    }

    #[test]
    fn dimensions() {
        assert_eq!(weyl_dimension(&w("4,4,4")).unwrap(), 1);
        assert_eq!(weyl_dimension(&w("5,3")).unwrap(), 3);
        assert_eq!(weyl_dimension(&w("2,1,0")).unwrap(), 8);
        assert!(weyl_dimension(&w("3,5")).is_err());
        for k in ["1,0,0", "5,3", "2,1,0", "3,1,-1", "4,4", "3,3,3", "2,0,0,0"] {
            let rep = GlIrrep::new(&w(k)).unwrap();
            assert_eq!(rep.dim() as u64, weyl_dimension(&w(k)).unwrap());
        }
    }

    #[test]
    fn examples() {
        let std = GlIrrep::new(&w("1,0,0")).unwrap();
        assert_eq!(std.dim(), 3);
        let det = GlIrrep::new(&w("7,7")).unwrap();
        assert_eq!(det.dim(), 1);
        assert_eq!(det.action(1, 1)[0][0], rat(7));
        let r = GlIrrep::new(&w("5,3")).unwrap();
        let ws: Vec<String> = r.weights().iter().map(|x| x.to_string()).collect();
        assert_eq!(ws, vec!["(5,3)", "(4,4)", "(3,5)"]);
    }

    #[test]
    fn gl_relations_and_highest_weight() {
        for k in ["2,1,0", "5,3", "3,1,-1"] {
            let rep = GlIrrep::new(&w(k)).unwrap();
            let n = rep.rank();
            for i in 1..=n {
                for j in 1..=n {
                    for a in 1..=n {
                        for b in 1..=n {
                            let lhs = linalg::mat_mul(rep.action(i, j), rep.action(a, b));
                            let rhs = linalg::mat_mul(rep.action(a, b), rep.action(i, j));
                            let mut expect = linalg::zeros(rep.dim(), rep.dim());
                            if j == a {
                                for (e, x) in expect.iter_mut().flatten().zip(rep.action(i, b).iter().flatten()) {
                                    *e += x;
                                }
                            }
                            if i == b {
                                for (e, x) in expect.iter_mut().flatten().zip(rep.action(a, j).iter().flatten()) {
                                    *e -= x;
                                }
                            }
                            let diff: Matrix = lhs
                                .iter()
                                .zip(&rhs)
                                .map(|(r1, r2)| r1.iter().zip(r2).map(|(x, y)| x - y).collect())
                                .collect();
                            assert_eq!(diff, expect);
                        }
                    }
                }
            }
            for i in 1..=n {
                for j in i + 1..=n {
                    assert!(rep.action(i, j).iter().all(|row| row[0].is_zero()));
                }
                assert_eq!(rep.action(i, i)[0][0], rat(rep.highest_weight().0[i - 1]));
            }
        }
    }

    #[test]
    fn lowering_words_reproduce_basis() {
        let rep = GlIrrep::new(&w("2,1,0")).unwrap();
        let mut hw = vec![rat(0); rep.dim()];
        hw[0] = rat(1);
        for j in 0..rep.dim() {
            let l = UeaElement::product(3, rep.lowering_word(j));
            let v = rep.act_k(&l, &hw).unwrap();
            let mut e = vec![rat(0); rep.dim()];
            e[j] = rat(1);
            assert_eq!(v, e);
        }
    }

    #[test]
    fn rho_is_multiplicative() {
        let rep = GlIrrep::new(&w("3,1,-1")).unwrap();
        let a: Matrix = vec![vec![rat(1), rat(2), rat(0)], vec![rat(0), rat(1), rat(3)], vec![rat(1), rat(0), rat(2)]];
        let b: Matrix = vec![vec![rat(2), rat(0), rat(1)], vec![rat(1), rat(1), rat(0)], vec![rat(0), rat(-1), rat(1)]];
        let lhs = rep.rho_rational(&linalg::mat_mul(&a, &b)).unwrap();
        let rhs = linalg::mat_mul(&rep.rho_rational(&a).unwrap(), &rep.rho_rational(&b).unwrap());
        assert_eq!(lhs, rhs);
        assert_eq!(rep.rho_rational(&linalg::identity(3)).unwrap(), linalg::identity(rep.dim()));
    }

    #[test]
    fn lrho() {
        let rep = GlIrrep::new(&w("5,3")).unwrap();
        assert_eq!(rep.lrho_project(&[rat(3), rat(7), rat(1)]), rat(3));
        assert_eq!(rep.lrho_project(&[rat(0), rat(7), rat(1)]), rat(0));
    }
}
