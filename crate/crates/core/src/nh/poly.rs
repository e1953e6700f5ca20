//! Polynomials in the entries `T_ij` (i <= j) of a symmetric matrix of
//! indeterminates, and their localization at `det(T)`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, Zero};

use crate::algebra::Rat;
use crate::linalg::{self, Matrix, Ring};

/// Exponent vectors without trailing zeros, so that the derived ordering is
/// lexicographic and the constant monomial is empty.
pub type Exps = Vec<u16>;

pub fn var_count(n: usize) -> usize {
    n * (n + 1) / 2
}

/// Index of `T_ij` (0-based, either order).
pub fn var_index(n: usize, i: usize, j: usize) -> usize {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    i * n - i * (i + 1) / 2 + j
}

/// Inverse of [`var_index`], with `i <= j`.
pub fn var_pair(n: usize, idx: usize) -> (usize, usize) {
    let mut rest = idx;
    for i in 0..n {
        let row = n - i;
        if rest < row {
            return (i, i + rest);
        }
        rest -= row;
    }
    panic!("variable index {} out of range for rank {}", idx, n)
}

fn trim(mut e: Exps) -> Exps {
    while e.last() == Some(&0) {
        e.pop();
    }
    e
}

fn add_exps(a: &[u16], b: &[u16]) -> Exps {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out = long.to_vec();
    for (o, x) in out.iter_mut().zip(short) {
        *o += x;
    }
    out
}

fn divides(a: &[u16], b: &[u16]) -> bool {
    a.len() <= b.len() && a.iter().zip(b).all(|(x, y)| x <= y)
}

fn sub_exps(b: &[u16], a: &[u16]) -> Exps {
    let mut out = b.to_vec();
    for (o, x) in out.iter_mut().zip(a) {
        *o -= x;
    }
    trim(out)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct MPoly {
    terms: BTreeMap<Exps, Rat>,
}

impl MPoly {
    pub fn zero() -> MPoly {
        MPoly::default()
    }

    pub fn one() -> MPoly {
        MPoly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> MPoly {
        MPoly::monomial(Vec::new(), c)
    }

    pub fn monomial(e: Exps, c: Rat) -> MPoly {
        let mut p = MPoly::zero();
        if !c.is_zero() {
            p.terms.insert(trim(e), c);
        }
        p
    }

    pub fn var(idx: usize) -> MPoly {
        let mut e = vec![0; idx + 1];
        e[idx] = 1;
        MPoly::monomial(e, Rat::one())
    }

    pub fn terms(&self) -> &BTreeMap<Exps, Rat> {
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

    /// The constant value, if the polynomial is constant.
    pub fn as_constant(&self) -> Option<Rat> {
        match self.terms.len() {
            0 => Some(Rat::zero()),
            1 => self.terms.get(&Vec::new()).cloned(),
            _ => None,
        }
    }

    pub fn add_term(&mut self, e: Exps, c: Rat) {
        if c.is_zero() {
            return;
        }
        let e = trim(e);
        let slot = self.terms.entry(e).or_insert_with(Rat::zero);
        *slot += c;
        if slot.is_zero() {
            let key = self.terms.iter().find(|(_, v)| v.is_zero()).map(|(k, _)| k.clone());
            if let Some(k) = key {
                self.terms.remove(&k);
            }
        }
    }

    pub fn add_assign(&mut self, other: &MPoly) {
        for (e, c) in &other.terms {
            let mut zero = false;
            if let Some(x) = self.terms.get_mut(e) {
                *x += c;
                zero = x.is_zero();
            } else {
                self.terms.insert(e.clone(), c.clone());
            }
            if zero {
                self.terms.remove(e);
            }
        }
    }

    pub fn add(&self, other: &MPoly) -> MPoly {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn neg(&self) -> MPoly {
        MPoly { terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }

    pub fn sub(&self, other: &MPoly) -> MPoly {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rat) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly { terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect() }
    }

    pub fn mul(&self, other: &MPoly) -> MPoly {
        let mut acc: BTreeMap<Exps, Rat> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let slot = acc.entry(add_exps(e1, e2)).or_insert_with(Rat::zero);
                *slot += c1 * c2;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        MPoly { terms: acc }
    }

    pub fn pow(&self, k: u32) -> MPoly {
        let mut out = MPoly::one();
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    pub fn deriv(&self, var: usize) -> MPoly {
        let mut out = MPoly::zero();
        for (e, c) in &self.terms {
            let Some(&p) = e.get(var) else { continue };
            if p == 0 {
                continue;
            }
            let mut ne = e.clone();
            ne[var] -= 1;
            out.terms.insert(trim(ne), c * Rat::from_integer(p.into()));
        }
        out
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().map(|&x| x as u32).sum()).max()
    }

    pub fn homogeneous_parts(&self) -> BTreeMap<u32, MPoly> {
        let mut out: BTreeMap<u32, MPoly> = BTreeMap::new();
        for (e, c) in &self.terms {
            let d = e.iter().map(|&x| x as u32).sum();
            out.entry(d).or_default().terms.insert(e.clone(), c.clone());
        }
        out
    }

    /// Exact quotient by `g`, or `None` if `g` does not divide.
    pub fn div_exact(&self, g: &MPoly) -> Option<MPoly> {
        let (lg, lc) = g.terms.iter().next_back()?;
        let mut r = self.clone();
        let mut q = MPoly::zero();
        while let Some((lr, cr)) = r.terms.iter().next_back() {
            if !divides(lg, lr) {
                return None;
            }
            let t = MPoly::monomial(sub_exps(lr, lg), cr / lc);
            r = r.sub(&t.mul(g));
            q.add_assign(&t);
        }
        Some(q)
    }

    /// Substitutes `vals[k]` for variable `k`.
    pub fn compose(&self, vals: &[MPoly]) -> MPoly {
        let mut cache: HashMap<(usize, u16), MPoly> = HashMap::new();
        let mut out = MPoly::zero();
        for (e, c) in &self.terms {
            let mut t = MPoly::constant(c.clone());
            for (k, &p) in e.iter().enumerate() {
                if p == 0 {
                    continue;
                }
                let pw = cache.entry((k, p)).or_insert_with(|| vals[k].pow(p as u32));
                t = t.mul(pw);
            }
            out.add_assign(&t);
        }
        out
    }

    pub fn max_var(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }
}

impl Ring for MPoly {
    fn nil() -> Self {
        MPoly::zero()
    }
    fn unit() -> Self {
        MPoly::one()
    }
    fn from_rat(c: &Rat) -> Self {
        MPoly::constant(c.clone())
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

/// Per-rank polynomial data: the generic symmetric matrix, its determinant,
/// adjugate and square.
#[derive(Debug)]
pub struct SymData {
    pub n: usize,
    pub matrix: Vec<Vec<MPoly>>,
    pub det: MPoly,
    pub adj: Vec<Vec<MPoly>>,
    /// `(T^2)_ij` indexed by variable.
    pub square: Vec<MPoly>,
    /// `adj(T)_ij` indexed by variable.
    pub adj_vars: Vec<MPoly>,
}

impl SymData {
    fn new(n: usize) -> SymData {
        let matrix: Vec<Vec<MPoly>> = (0..n).map(|i| (0..n).map(|j| MPoly::var(var_index(n, i, j))).collect()).collect();
        let det = linalg::det_ring(&matrix);
        let adj = linalg::adjugate(&matrix);
        let sq = linalg::mat_mul_ring(&matrix, &matrix);
        let square = (0..var_count(n)).map(|v| {
            let (i, j) = var_pair(n, v);
            sq[i][j].clone()
        });
        let adj_vars = (0..var_count(n)).map(|v| {
            let (i, j) = var_pair(n, v);
            adj[i][j].clone()
        });
        SymData { n, square: square.collect(), adj_vars: adj_vars.collect(), matrix, det, adj }
    }

    pub fn get(n: usize) -> &'static SymData {
        static DATA: OnceLock<Mutex<HashMap<usize, &'static SymData>>> = OnceLock::new();
        let mut map = DATA.get_or_init(Default::default).lock().unwrap_or_else(|e| e.into_inner());
        map.entry(n).or_insert_with(|| Box::leak(Box::new(SymData::new(n))))
    }
}

/// `num / det(T)^den`. Arithmetic does not cancel common factors;
/// [`Frac::reduce`] brings a value to its canonical form, in which `det(T)`
/// does not divide `num` unless `den == 0`.
#[derive(Clone, Debug, Default)]
pub struct Frac {
    num: MPoly,
    den: u32,
    /// Rank of the matrix of indeterminates; 0 while unknown, which is only
    /// possible for `den == 0`.
    n: u8,
}

/// Equality of values: both sides are lifted to the larger power of `det(T)`.
impl PartialEq for Frac {
    fn eq(&self, other: &Frac) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        let (n, den) = (self.rank(other), self.den.max(other.den));
        self.lifted(den, n) == other.lifted(den, n)
    }
}

impl Eq for Frac {}

impl Frac {
    pub fn poly(num: MPoly) -> Frac {
        Frac { num, den: 0, n: 0 }
    }

    pub fn new(num: MPoly, den: u32, n: usize) -> Frac {
        Frac { num, den, n: n as u8 }
    }

    pub fn constant(c: Rat) -> Frac {
        Frac::poly(MPoly::constant(c))
    }

    /// `det(T)^k` for any integer `k`.
    pub fn det_power(n: usize, k: i64) -> Frac {
        if k >= 0 {
            Frac::new(SymData::get(n).det.pow(k as u32), 0, n)
        } else {
            Frac::new(MPoly::one(), (-k) as u32, n)
        }
    }

    pub fn num(&self) -> &MPoly {
        &self.num
    }

    pub fn den(&self) -> u32 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn rank(&self, other: &Frac) -> u8 {
        self.n.max(other.n)
    }

    fn det(n: u8) -> &'static MPoly {
        assert!(n > 0, "determinant power with unknown rank");
        &SymData::get(n as usize).det
    }

    /// Numerator over `det^den` for a larger `den`.
    fn lifted(&self, den: u32, n: u8) -> MPoly {
        if den == self.den {
            self.num.clone()
        } else {
            self.num.mul(&Frac::det(n).pow(den - self.den))
        }
    }

    pub fn add(&self, other: &Frac) -> Frac {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return other.clone();
        }
        let n = self.rank(other);
        let den = self.den.max(other.den);
        let num = self.lifted(den, n).add(&other.lifted(den, n));
        Frac { num, den, n }
    }

    pub fn neg(&self) -> Frac {
        Frac { num: self.num.neg(), den: self.den, n: self.n }
    }

    pub fn mul(&self, other: &Frac) -> Frac {
        Frac { num: self.num.mul(&other.num), den: self.den + other.den, n: self.rank(other) }
    }

    pub fn scale(&self, c: &Rat) -> Frac {
        Frac { num: self.num.scale(c), den: self.den, n: self.n }
    }

    /// Partial derivative in variable `var`; the rank must be known when `den > 0`.
    pub fn deriv(&self, var: usize) -> Frac {
        if self.den == 0 {
            return Frac { num: self.num.deriv(var), den: 0, n: self.n };
        }
        let det = Frac::det(self.n);
        let m = Rat::from_integer(self.den.into());
        let num = self.num.deriv(var).mul(det).sub(&self.num.mul(&det.deriv(var)).scale(&m));
        Frac { num, den: self.den + 1, n: self.n }
    }

    pub fn with_rank(mut self, n: usize) -> Frac {
        self.n = n as u8;
        self
    }

    pub fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den = 0;
            return;
        }
        while self.den > 0 {
            match self.num.div_exact(Frac::det(self.n)) {
                Some(q) => {
                    self.num = q;
                    self.den -= 1;
                }
                None => break,
            }
        }
    }

    pub fn reduced(mut self) -> Frac {
        self.reduce();
        self
    }

    /// Substitutes polynomials for the variables; `det_image` is the image of
    /// `det(T)` and the result's denominator is `det_image^den`, which must be
    /// a power `det(T')^k` of the target determinant: the caller supplies
    /// `(k, rank')`.
    fn compose_with(&self, vals: &[MPoly], den_scale: u32, n: usize) -> Frac {
        Frac { num: self.num.compose(vals), den: self.den * den_scale, n: n as u8 }
    }

    /// `Y -> S^2`: reads a fraction in `Y = S^2` as a fraction in `S`.
    pub fn y_to_s(&self, n: usize) -> Frac {
        self.compose_with(&SymData::get(n).square, 2, n)
    }

    /// The inverse of [`Frac::y_to_s`], if this fraction is even.
    pub fn s_to_y(&self, n: usize) -> Option<Frac> {
        let mut f = self.clone().with_rank(n).reduced();
        if f.den % 2 == 1 {
            f.num = f.num.mul(&SymData::get(n).det);
            f.den += 1;
        }
        let mut q = MPoly::zero();
        for (d, part) in f.num.homogeneous_parts() {
            if d % 2 == 1 {
                return None;
            }
            q.add_assign(&square_root_part(n, d / 2, &part)?);
        }
        Some(Frac::new(q, f.den / 2, n).reduced())
    }

    /// `T -> T^{-1}`: the fraction `g(W) = f(W^{-1})`, reduced.
    pub fn invert_arg(&self, n: usize) -> Frac {
        let sym = SymData::get(n);
        let mut out = Frac::new(MPoly::zero(), 0, n);
        for (d, part) in self.num.homogeneous_parts() {
            // part(adj W / det W) * det(W)^den
            let p = part.compose(&sym.adj_vars);
            let shift = self.den as i64 - d as i64;
            let t = Frac::new(p, 0, n).mul(&Frac::det_power(n, shift));
            out = out.add(&t);
        }
        out.reduced()
    }
}

impl Ring for Frac {
    fn nil() -> Self {
        Frac::default()
    }
    fn unit() -> Self {
        Frac::constant(Rat::one())
    }
    fn from_rat(c: &Rat) -> Self {
        Frac::constant(c.clone())
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

/// Monomials of total degree `d` in `m` variables, in a fixed order.
fn monomials(m: usize, d: u32) -> Vec<Exps> {
    fn go(m: usize, d: u32, prefix: &mut Vec<u16>, out: &mut Vec<Exps>) {
        if prefix.len() + 1 == m {
            prefix.push(d as u16);
            out.push(trim(prefix.clone()));
            prefix.pop();
            return;
        }
        for a in (0..=d).rev() {
            prefix.push(a as u16);
            go(m, d - a, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if m == 0 {
        if d == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    go(m, d, &mut Vec::new(), &mut out);
    out
}

/// Solver data for writing a degree `2d` polynomial in `S` as a degree `d`
/// polynomial in the entries of `S^2`.
struct RootSolver {
    ymons: Vec<Exps>,
    images: Vec<MPoly>,
    pivots: Vec<Exps>,
    inv: Matrix,
}

impl RootSolver {
    fn new(n: usize, d: u32) -> RootSolver {
        let sym = SymData::get(n);
        let ymons = monomials(var_count(n), d);
        let images: Vec<MPoly> = ymons.iter().map(|e| MPoly::monomial(e.clone(), Rat::one()).compose(&sym.square)).collect();
        let mut smons: Vec<Exps> = images.iter().flat_map(|p| p.terms().keys().cloned()).collect();
        smons.sort();
        smons.dedup();
        // rows are Y-monomials, columns S-monomials; pivot columns pick an
        // invertible square block
        let mut rows: Matrix =
            images.iter().map(|p| smons.iter().map(|s| p.terms().get(s).cloned().unwrap_or_else(Rat::zero)).collect()).collect();
        let piv = linalg::rref(&mut rows);
        assert_eq!(piv.len(), ymons.len(), "entries of S^2 are algebraically independent");
        let pivots: Vec<Exps> = piv.iter().map(|&c| smons[c].clone()).collect();
        let block: Matrix = pivots
            .iter()
            .map(|s| images.iter().map(|p| p.terms().get(s).cloned().unwrap_or_else(Rat::zero)).collect())
            .collect();
        let inv = linalg::inverse(&block).expect("pivot block is invertible");
        RootSolver { ymons, images, pivots, inv }
    }

    fn get(n: usize, d: u32) -> Arc<RootSolver> {
        static SOLVERS: OnceLock<Mutex<HashMap<(usize, u32), Arc<RootSolver>>>> = OnceLock::new();
        let map = SOLVERS.get_or_init(Default::default);
        if let Some(s) = map.lock().unwrap_or_else(|e| e.into_inner()).get(&(n, d)) {
            return s.clone();
        }
        let s = Arc::new(RootSolver::new(n, d));
        map.lock().unwrap_or_else(|e| e.into_inner()).insert((n, d), s.clone());
        s
    }
}

/// `Q` homogeneous of degree `d` with `Q(S^2) = part`, if it exists.
fn square_root_part(n: usize, d: u32, part: &MPoly) -> Option<MPoly> {
    let solver = RootSolver::get(n, d);
    let b: Vec<Rat> = solver.pivots.iter().map(|s| part.terms().get(s).cloned().unwrap_or_else(Rat::zero)).collect();
    let x = linalg::mat_vec(&solver.inv, &b);
    let mut q = MPoly::zero();
    let mut check = MPoly::zero();
    for ((e, img), c) in solver.ymons.iter().zip(&solver.images).zip(&x) {
        if c.is_zero() {
            continue;
        }
        q.add_term(e.clone(), c.clone());
        check.add_assign(&img.scale(c));
    }
    (check == *part).then_some(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn v(i: usize) -> MPoly {
        MPoly::var(i)
    }

    #[test]
    fn indexing() {
        for n in 1..5 {
            for idx in 0..var_count(n) {
                let (i, j) = var_pair(n, idx);
                assert!(i <= j);
                assert_eq!(var_index(n, i, j), idx);
                assert_eq!(var_index(n, j, i), idx);
            }
        }
        assert_eq!(var_index(3, 1, 1), 3);
    }

    #[test]
    fn determinant_and_division() {
        let sym = SymData::get(2);
        let expect = v(0).mul(&v(2)).sub(&v(1).mul(&v(1)));
        assert_eq!(sym.det, expect);
        let p = sym.det.mul(&v(1).add(&MPoly::constant(rat(3))));
        assert_eq!(p.div_exact(&sym.det), Some(v(1).add(&MPoly::constant(rat(3)))));
        assert_eq!(v(0).div_exact(&sym.det), None);
    }

    #[test]
    fn fractions_reduce() {
        let sym = SymData::get(2);
        let f = Frac::new(sym.det.mul(&v(0)), 2, 2).reduced();
        assert_eq!(f, Frac::new(v(0), 1, 2));
        let g = Frac::new(v(0), 1, 2).add(&Frac::new(v(0).neg(), 1, 2)).reduced();
        assert!(g.is_zero());
        assert_eq!(g.den(), 0);
    }

    #[test]
    fn equality_ignores_representation() {
        let sym = SymData::get(2);
        let f = Frac::new(v(0), 1, 2);
        let lifted = Frac::new(v(0).mul(&sym.det.pow(2)), 3, 2);
        assert_eq!(f, lifted);
        assert_ne!(f, Frac::new(v(0), 2, 2));
    }

    proptest::proptest! {
        #[test]
        fn reduction_is_canonical(cs in proptest::collection::vec(-4i64..=4, 6), lift in 0u32..3, den in 0u32..3) {
            let sym = SymData::get(2);
            let mut p = MPoly::zero();
            for (idx, c) in cs.iter().enumerate() {
                p = p.add(&v(idx % 3).pow(idx as u32 / 3).scale(&rat(*c)));
            }
            let f = Frac::new(p.clone(), den, 2);
            let g = Frac::new(p.mul(&sym.det.pow(lift)), den + lift, 2);
            let (rf, rg) = (f.clone().reduced(), g.clone().reduced());
            proptest::prop_assert_eq!(&rf, &rg);
            proptest::prop_assert_eq!(rf.num(), rg.num());
            proptest::prop_assert_eq!(rf.den(), rg.den());
            proptest::prop_assert_eq!(&rf, &f);
            proptest::prop_assert!(rf.den() == 0 || rf.num().div_exact(&sym.det).is_none());
        }
    }

    #[test]
    fn derivative_of_inverse_determinant() {
        // d/dT (1/T) = -1/T^2 at rank 1
        let f = Frac::det_power(1, -1);
        assert_eq!(f.deriv(0).reduced(), Frac::new(MPoly::constant(rat(-1)), 2, 1));
    }

    #[test]
    fn square_roots() {
        for n in 1..=3 {
            let sym = SymData::get(n);
            let y = v(0).mul(&v(var_count(n) - 1)).add(&MPoly::constant(rat(2)));
            let f = Frac::new(y.clone(), 1, n);
            let s = f.y_to_s(n);
            assert_eq!(s.s_to_y(n), Some(f.clone()));
            // det(S) alone is odd, det(S)^2 is even
            assert_eq!(Frac::new(sym.det.clone(), 0, n).s_to_y(n), None);
            assert_eq!(Frac::new(sym.det.pow(2), 0, n).s_to_y(n), Some(Frac::new(sym.det.clone(), 0, n)));
            assert_eq!(Frac::new(MPoly::one(), 2, n).s_to_y(n), Some(Frac::new(MPoly::one(), 1, n)));
            assert_eq!(Frac::new(v(0), 0, n).s_to_y(n), None);
        }
    }

    #[test]
    fn inversion_is_an_involution() {
        let n = 2;
        let f = Frac::new(v(0).add(&v(1).mul(&v(2))), 1, n);
        assert_eq!(f.invert_arg(n).invert_arg(n), f.clone().reduced());
    }
}
