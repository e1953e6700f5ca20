use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};

use crate::algebra::{theta, Gen, GenKind, LieTable, Monomial, Rat, UeaElement};
use crate::error::{Error, Result};
use crate::linalg;
use crate::rep::GlIrrep;
use crate::weights::Weight;

/// Basis label of N(k): a sorted multiset of E+ generators and an F_k basis index.
pub type VKey = (Vec<Gen>, usize);

/// A finite combination of basis vectors of N(k), possibly of mixed grades.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VermaVector {
    terms: BTreeMap<VKey, Rat>,
}

impl VermaVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(key: VKey) -> Self {
        let mut v = Self::zero();
        v.add_term(key, Rat::one());
        v
    }

    pub fn terms(&self) -> &BTreeMap<VKey, Rat> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, key: &VKey) -> Rat {
        self.terms.get(key).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn add_term(&mut self, key: VKey, c: Rat) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(key.clone()).or_insert_with(Rat::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add_scaled(&mut self, other: &VermaVector, c: &Rat) {
        for (k, x) in &other.terms {
            self.add_term(k.clone(), x * c);
        }
    }

    pub fn scale(&self, c: &Rat) -> VermaVector {
        let mut out = VermaVector::zero();
        out.add_scaled(self, c);
        out
    }

    /// The graded components, keyed by E+-degree.
    pub fn components(&self) -> BTreeMap<usize, VermaVector> {
        let mut out: BTreeMap<usize, VermaVector> = BTreeMap::new();
        for (k, c) in &self.terms {
            out.entry(k.0.len()).or_default().add_term(k.clone(), c.clone());
        }
        out
    }

    /// The single grade of a non-zero homogeneous vector.
    pub fn grade(&self) -> Option<usize> {
        let mut grades = self.terms.keys().map(|k| k.0.len());
        let g = grades.next()?;
        grades.all(|h| h == g).then_some(g)
    }
}

fn insert_sorted(p: &[Gen], g: Gen) -> Vec<Gen> {
    let mut v = p.to_vec();
    let pos = v.partition_point(|x| *x <= g);
    v.insert(pos, g);
    v
}

fn merge_sorted(a: &[Gen], b: &[Gen]) -> Vec<Gen> {
    let mut v = a.to_vec();
    v.extend_from_slice(b);
    v.sort();
    v
}

/// The generalized Verma module `N(k) = U(g) tensor_{U(k + p-)} F_k`.
#[derive(Clone, Debug)]
pub struct VermaModule {
    n: usize,
    irrep: GlIrrep,
    table: &'static LieTable,
}

impl VermaModule {
    pub fn new(k: &Weight) -> Result<VermaModule> {
        let irrep = GlIrrep::new(k)?;
        let n = k.rank();
        Ok(VermaModule { n, irrep, table: LieTable::shared(n) })
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn irrep(&self) -> &GlIrrep {
        &self.irrep
    }

    pub fn weight_k(&self) -> &Weight {
        self.irrep.highest_weight()
    }

    /// `v_k`, the highest weight vector in grade 0.
    pub fn hw(&self) -> VermaVector {
        VermaVector::basis((Vec::new(), self.irrep.hw_index()))
    }

    pub fn weight(&self, key: &VKey) -> Weight {
        let mut w = self.irrep.weight(key.1).clone();
        for g in &key.0 {
            w.0[g.i() - 1] += 1;
            w.0[g.j() - 1] += 1;
        }
        w
    }

    fn eplus_gens(&self) -> Vec<Gen> {
        Gen::all(self.n).into_iter().filter(|g| g.kind == GenKind::EPlus).collect()
    }

    /// All sorted E+ multisets of size `m`.
    pub fn eplus_monomials(&self, m: usize) -> Vec<Vec<Gen>> {
        fn go(gens: &[Gen], start: usize, left: usize, cur: &mut Vec<Gen>, out: &mut Vec<Vec<Gen>>) {
            if left == 0 {
                out.push(cur.clone());
                return;
            }
            for s in start..gens.len() {
                cur.push(gens[s]);
                go(gens, s, left - 1, cur, out);
                cur.pop();
            }
        }
        let gens = self.eplus_gens();
        let mut out = Vec::new();
        go(&gens, 0, m, &mut Vec::new(), &mut out);
        out
    }

    pub fn basis(&self, m: usize) -> Vec<VKey> {
        let mut out = Vec::new();
        for p in self.eplus_monomials(m) {
            for b in 0..self.irrep.dim() {
                out.push((p.clone(), b));
            }
        }
        out
    }

    pub fn basis_of_weight(&self, m: usize, mu: &Weight) -> Vec<VKey> {
        self.basis(m).into_iter().filter(|k| self.weight(k) == *mu).collect()
    }

    /// The distinct weights occurring in grade `m`.
    pub fn weights_in_grade(&self, m: usize) -> BTreeSet<Weight> {
        self.basis(m).iter().map(|k| self.weight(k)).collect()
    }

    fn act_b_key(&self, i: usize, j: usize, key: &VKey, c: &Rat, out: &mut VermaVector) {
        let bij = Gen::b(i, j);
        let (p, b) = key;
        for pos in 0..p.len() {
            for (g, s) in self.table.bracket(bij, p[pos]) {
                let mut rest = p.clone();
                rest.remove(pos);
                out.add_term((insert_sorted(&rest, *g), *b), c * Rat::from_integer((*s).into()));
            }
        }
        let m = self.irrep.action(i, j);
        for (row, line) in m.iter().enumerate() {
            let x = &line[*b];
            if !x.is_zero() {
                out.add_term((p.clone(), row), c * x);
            }
        }
    }

    fn act_gen_key(&self, g: Gen, key: &VKey, c: &Rat, out: &mut VermaVector) {
        match g.kind {
            GenKind::EPlus => out.add_term((insert_sorted(&key.0, g), key.1), c.clone()),
            GenKind::B => self.act_b_key(g.i(), g.j(), key, c, out),
            GenKind::EMinus => {
                let p = &key.0;
                for pos in 0..p.len() {
                    let prefix = &p[..pos];
                    let suffix: Vec<Gen> = p[pos + 1..].to_vec();
                    for (h, s) in self.table.bracket(g, p[pos]) {
                        let mut part = VermaVector::zero();
                        let cs = c * Rat::from_integer((*s).into());
                        self.act_b_key(h.i(), h.j(), &(suffix.clone(), key.1), &cs, &mut part);
                        for ((q, a), x) in part.terms {
                            out.add_term((merge_sorted(prefix, &q), a), x);
                        }
                    }
                }
            }
        }
    }

    pub fn act_gen(&self, g: Gen, v: &VermaVector) -> VermaVector {
        let mut out = VermaVector::zero();
        for (key, c) in &v.terms {
            self.act_gen_key(g, key, c, &mut out);
        }
        out
    }

    /// Action of an enveloping algebra element, monomials applied right to left.
    pub fn act_uea(&self, x: &UeaElement, v: &VermaVector) -> Result<VermaVector> {
        if x.rank() != self.n {
            return Err(Error::RankMismatch(x.rank(), self.n));
        }
        let mut out = VermaVector::zero();
        for (m, c) in x.terms() {
            let mut w = v.clone();
            for g in m.gens().iter().rev() {
                w = self.act_gen(*g, &w);
                if w.is_zero() {
                    break;
                }
            }
            out.add_scaled(&w, c);
        }
        Ok(out)
    }

    /// The monomial `P L_j` with `P L_j v_k` equal to the basis vector `key`.
    pub fn key_monomial(&self, key: &VKey) -> Monomial {
        let mut v = key.0.clone();
        v.extend_from_slice(self.irrep.lowering_word(key.1));
        Monomial(v)
    }

    /// The contravariant form: `<v_k, v_k> = 1` and `<Xu, v> = <u, theta(X) v>`.
    pub fn form(&self, u: &VermaVector, v: &VermaVector) -> Result<Rat> {
        if let (Some(a), Some(b)) = (u.grade(), v.grade()) {
            if a != b {
                return Err(Error::Invalid(format!("grade mismatch: {} vs {}", a, b)));
            }
        }
        let hw = (Vec::new(), self.irrep.hw_index());
        let mut acc = Rat::zero();
        for (key, c) in &u.terms {
            let t = theta(&UeaElement::term(self.n, self.key_monomial(key), Rat::one()));
            let w = self.act_uea(&t, v)?;
            acc += c * w.coeff(&hw);
        }
        Ok(acc)
    }

    /// Gram matrix of the form on a list of basis keys.
    pub fn gram(&self, keys: &[VKey]) -> Result<linalg::Matrix> {
        let vecs: Vec<VermaVector> = keys.iter().map(|k| VermaVector::basis(k.clone())).collect();
        let mut out = linalg::zeros(keys.len(), keys.len());
        for (i, a) in vecs.iter().enumerate() {
            for (j, b) in vecs.iter().enumerate() {
                out[i][j] = self.form(a, b)?;
            }
        }
        Ok(out)
    }

    /// A basis of the vectors of grade `m` and weight `mu` killed by every B(i,j), i < j.
    pub fn ktype_hwvs(&self, m: usize, mu: &Weight) -> Result<Vec<VermaVector>> {
        if mu.rank() != self.n {
            return Err(Error::RankMismatch(mu.rank(), self.n));
        }
        let keys = self.basis_of_weight(m, mu);
        if keys.is_empty() {
            return Ok(Vec::new());
        }
        let mut row_index: BTreeMap<VKey, usize> = BTreeMap::new();
        let mut columns: Vec<VermaVector> = Vec::new();
        for key in &keys {
            let v = VermaVector::basis(key.clone());
            let mut img = VermaVector::zero();
            for i in 1..=self.n {
                for j in i + 1..=self.n {
                    let w = self.act_gen(Gen::b(i, j), &v);
                    for (k, c) in w.terms {
                        let tagged = (k.0.clone(), k.1 + (i * self.n + j) * self.irrep.dim());
                        img.add_term(tagged, c);
                    }
                }
            }
            for k in img.terms.keys() {
                let len = row_index.len();
                row_index.entry(k.clone()).or_insert(len);
            }
            columns.push(img);
        }
        let mut mat = linalg::zeros(row_index.len(), keys.len());
        for (col, img) in columns.iter().enumerate() {
            for (k, c) in &img.terms {
                mat[row_index[k]][col] = c.clone();
            }
        }
        let ns = if row_index.is_empty() {
            (0..keys.len())
                .map(|i| (0..keys.len()).map(|j| if i == j { Rat::one() } else { Rat::zero() }).collect())
                .collect()
        } else {
            linalg::nullspace(&mat, keys.len())
        };
        Ok(ns
            .into_iter()
            .map(|coeffs| {
                let mut v = VermaVector::zero();
                for (k, c) in keys.iter().zip(coeffs) {
                    v.add_term(k.clone(), c);
                }
                v
            })
            .collect())
    }

    /// Highest weights of K-types in grade `m` with their multiplicities.
    pub fn ktypes(&self, m: usize) -> Result<BTreeMap<Weight, usize>> {
        let mut out = BTreeMap::new();
        for mu in self.weights_in_grade(m) {
            if !mu.is_dominant() {
                continue;
            }
            let d = self.ktype_hwvs(m, &mu)?.len();
            if d > 0 {
                out.insert(mu, d);
            }
        }
        Ok(out)
    }

    /// True when `<w, x> != 0` for some `x` of the same grade and weight.
    pub fn avoids_radical(&self, w: &VermaVector, m: usize, mu: &Weight) -> Result<bool> {
        for key in self.basis_of_weight(m, mu) {
            if !self.form(w, &VermaVector::basis(key))?.is_zero() {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

/// True iff every K-type `mu` in grades `0..=m_max` of N(k') has `mu_i >= k'_i`.
pub fn ktype_bound_check(kp: &Weight, m_max: usize) -> Result<bool> {
    let module = VermaModule::new(kp)?;
    for m in 0..=m_max {
        for mu in module.ktypes(m)?.keys() {
            if mu.0.iter().zip(&kp.0).any(|(a, b)| a < b) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
