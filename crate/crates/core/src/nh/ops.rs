//! The differential operators `D`, `D-bar`, `C`, `E` and `D_rho^e` on formal
//! expansions. Internally every coefficient is written in `Y = pi y`; the
//! derivative `d/dz` acts on a function of `Y` as `(pi / 2i) d/dY`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::One;

use super::coeff::{congruence_map, CKey, CoeffPoly, SlotMap};
use super::cyclo::CycloTable;
use super::entry::{var_entry, Entry};
use super::expansion::FourierExpansion;
use super::poly::{var_count, var_index, var_pair, Frac, MPoly, SymData};
use crate::algebra::{rat, ratq, Rat};
use crate::error::{Error, Result};
use crate::linalg;
use crate::rep::GlIrrep;
use crate::weights::Weight;

/// How a slot argument transforms under `GL_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Twist {
    /// `h(u) -> h(a^t u a)`.
    Tau,
    /// `h(u) -> h(a^{-1} u a^{-t})`.
    Sigma,
}

/// `rho` twisted by one `tau` or `sigma` factor per slot argument.
#[derive(Clone, Debug)]
pub struct ValueRep {
    pub rho: GlIrrep,
    pub slots: Vec<Twist>,
}

impl ValueRep {
    pub fn plain(rho: &GlIrrep) -> ValueRep {
        ValueRep { rho: rho.clone(), slots: Vec::new() }
    }

    /// `rho (x) tw^e (x) self.slots`, the new slots first.
    pub fn prepend(&self, tw: Twist, e: usize) -> ValueRep {
        let mut slots = vec![tw; e];
        slots.extend_from_slice(&self.slots);
        ValueRep { rho: self.rho.clone(), slots }
    }
}

type PolyMatrix = Vec<Vec<MPoly>>;

/// `rho_poly(T)` or `rho_poly(adj T)` for the generic symmetric `T`.
fn generic_rho_poly(rho: &GlIrrep, adjugate: bool) -> Arc<PolyMatrix> {
    static CACHE: OnceLock<Mutex<HashMap<(Vec<i64>, bool), Arc<PolyMatrix>>>> = OnceLock::new();
    let key = (rho.highest_weight().entries().to_vec(), adjugate);
    let cache = CACHE.get_or_init(Default::default);
    if let Some(m) = cache.lock().unwrap_or_else(|e| e.into_inner()).get(&key) {
        return m.clone();
    }
    let sym = SymData::get(rho.rank());
    let arg = if adjugate { &sym.adj } else { &sym.matrix };
    let m = Arc::new(rho.rho_poly(arg));
    cache.lock().unwrap_or_else(|e| e.into_inner()).insert(key, m.clone());
    m
}

/// `rho(c T)` (or `rho((c T)^{-1})` when `inverse`) for the generic symmetric
/// matrix `T` and a scalar `c = lam * pi^p`.
pub(crate) fn rho_matrix(rho: &GlIrrep, lam: &Rat, p: i64, inverse: bool) -> Vec<Vec<Entry>> {
    let n = rho.rank();
    let total = rho.total_weight();
    let (sign, det_exp) = if inverse { (-1, -(rho.degree() as i64) - rho.det_power()) } else { (1, rho.det_power()) };
    let e = sign * total;
    let c = if e >= 0 { num_traits::pow(lam.clone(), e as usize) } else { num_traits::pow(lam.recip(), (-e) as usize) };
    let scalar = Frac::det_power(n, det_exp).scale(&c);
    let polys = generic_rho_poly(rho, inverse);
    polys
        .iter()
        .map(|row| row.iter().map(|q| Entry::monomial(p * e, Frac::new(q.clone(), 0, n).mul(&scalar))).collect())
        .collect()
}

/// `c T` or `(c T)^{-1}` as a matrix of entries.
pub(crate) fn scaled_matrix(n: usize, lam: &Rat, p: i64, inverse: bool) -> Vec<Vec<Entry>> {
    let sym = SymData::get(n);
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if inverse {
                        Entry::monomial(-p, Frac::new(sym.adj[i][j].scale(&lam.recip()), 1, n))
                    } else {
                        Entry::monomial(p, Frac::new(sym.matrix[i][j].scale(lam), 0, n))
                    }
                })
                .collect()
        })
        .collect()
}

/// Applies `rep(c T)` (or its inverse) to a Y-form expansion.
fn rep_apply(f: &FourierExpansion, rep: &ValueRep, lam: &Rat, p: i64, inverse: bool) -> Result<FourierExpansion> {
    let n = f.rank();
    let m = rho_matrix(&rep.rho, lam, p, inverse);
    let a = scaled_matrix(n, lam, p, inverse);
    let a_inv = scaled_matrix(n, lam, p, !inverse);
    let tau = congruence_map(n, &a);
    let sigma = congruence_map(n, &a_inv);
    let maps: Vec<&SlotMap> = rep.slots.iter().map(|t| if *t == Twist::Tau { &tau } else { &sigma }).collect();
    f.try_map_coefficients(|_, c| {
        let mut c = c.apply_matrix(&m)?;
        for (s, map) in maps.iter().enumerate() {
            c = c.substitute_slot(s, map);
        }
        Ok(c)
    })
}

/// `tr(h e_v)` for the symmetric basis element of variable `v`, times the
/// common denominator.
fn pairing(n: usize, key: &[i64], v: usize) -> i64 {
    let (i, j) = var_pair(n, v);
    if i == j {
        key[v]
    } else {
        2 * key[v]
    }
}

/// `D` (`holomorphic`) or `D-bar` on a Y-form expansion.
fn d_y(f: &FourierExpansion, holomorphic: bool) -> Result<FourierExpansion> {
    let n = f.rank();
    let i = Entry::i(f.order())?;
    // pi / (2i) = -(i/2) pi
    let half_i_pi = i.shift_pi(1).scale(&ratq(if holomorphic { -1 } else { 1 }, 2));
    let mut out = f.with_shape(f.weight().clone(), f.dim(), f.slots() + 1);
    for (key, c) in f.terms() {
        let mut acc = CoeffPoly::zero();
        for v in 0..var_count(n) {
            let w = pairing(n, key, v);
            let expo = (holomorphic && w != 0).then(|| i.shift_pi(1).scale(&Rat::new((2 * w).into(), f.denominator().into())));
            for (k, e) in c.terms() {
                let mut slots = Vec::with_capacity(k.slots.len() + 1);
                slots.push(v as u8);
                slots.extend_from_slice(&k.slots);
                let key = CKey { v: k.v, slots };
                let de = e.deriv(v);
                if !de.is_zero() {
                    acc.add_term(key.clone(), de.mul(&half_i_pi));
                }
                if let Some(x) = &expo {
                    acc.add_term(key, e.mul(x));
                }
            }
        }
        out.insert_unchecked(key.clone(), acc);
    }
    Ok(out)
}

/// `C` (`holomorphic`) or `E` on a Y-form expansion: `4 (D f)(y u y)`.
fn c_y(f: &FourierExpansion, holomorphic: bool) -> Result<FourierExpansion> {
    let n = f.rank();
    let g = d_y(f, holomorphic)?;
    let y_over_pi: Vec<Vec<Entry>> =
        (0..n).map(|i| (0..n).map(|j| var_entry(n, var_index(n, i, j)).shift_pi(-1)).collect()).collect();
    let map = congruence_map(n, &y_over_pi);
    let four = Entry::constant(rat(4));
    Ok(g.map_coefficients(|c| c.substitute_slot(0, &map).scale(&four)))
}

/// `D_rep^e` on a Y-form expansion; the new slots come first and transform by `tau`.
pub(crate) fn drho_y(f: &FourierExpansion, rep: &ValueRep, e: usize) -> Result<FourierExpansion> {
    // 2y = (2 / pi) Y
    let two = rat(2);
    let mut g = rep_apply(f, rep, &two, -1, false)?;
    for _ in 0..e {
        g = c_y(&g, true)?;
    }
    rep_apply(&g, &rep.prepend(Twist::Tau, e), &two, -1, true)
}

pub(crate) fn e_y(f: &FourierExpansion) -> Result<FourierExpansion> {
    c_y(f, false)
}

fn check_rep(f: &FourierExpansion, rep: &ValueRep) -> Result<()> {
    if rep.rho.rank() != f.rank() {
        return Err(Error::RankMismatch(f.rank(), rep.rho.rank()));
    }
    if rep.rho.dim() != f.dim() || rep.slots.len() != f.slots() {
        return Err(Error::Dimension(format!(
            "expansion valued in a {}-dimensional space with {} slots, representation of dimension {} with {} slots",
            f.dim(),
            f.slots(),
            rep.rho.dim(),
            rep.slots.len()
        )));
    }
    Ok(())
}

/// `(D f)(u) = sum_v u_v df/dz_v`.
pub fn op_d(f: &FourierExpansion) -> Result<FourierExpansion> {
    Ok(d_y(&f.to_y()?, true)?.from_y())
}

/// `(D-bar f)(u) = sum_v u_v df/dz-bar_v`.
pub fn op_dbar(f: &FourierExpansion) -> Result<FourierExpansion> {
    Ok(d_y(&f.to_y()?, false)?.from_y())
}

/// `(C f)(u) = 4 (D f)(y u y)`.
pub fn op_c(f: &FourierExpansion) -> Result<FourierExpansion> {
    Ok(c_y(&f.to_y()?, true)?.from_y())
}

/// `(E f)(u) = 4 (D-bar f)(y u y)`.
pub fn op_e(f: &FourierExpansion) -> Result<FourierExpansion> {
    Ok(e_y(&f.to_y()?)?.from_y())
}

/// `E^e f`.
pub fn op_e_power(f: &FourierExpansion, e: usize) -> Result<FourierExpansion> {
    let mut g = f.to_y()?;
    for _ in 0..e {
        g = e_y(&g)?;
    }
    Ok(g.from_y())
}

/// `D_rho^e f = (rho (x) tau^e)(2y)^{-1} C^e (rho(2y) f)`.
pub fn op_drho_e(f: &FourierExpansion, rep: &ValueRep, e: usize) -> Result<FourierExpansion> {
    check_rep(f, rep)?;
    Ok(drho_y(&f.to_y()?, rep, e)?.from_y())
}

/// Multiplies by `(pi i)^p`.
pub fn scale_pi_i(f: &FourierExpansion, p: i64) -> Result<FourierExpansion> {
    let j = CycloTable::get(f.order())?.i_exponent() * p;
    Ok(f.scale(&Entry::zeta_term(f.order(), p, j, Frac::constant(Rat::one()))?))
}

/// Evaluates every slot at `1` for rank one, turning `Ml_e(T, V)` into `V`.
/// In rank one `tau` is `det^2` and `sigma` is `det^{-2}`, which fixes the
/// weight of the result.
pub fn collapse_slots_rank_one(f: &FourierExpansion, twists: &[Twist]) -> Result<FourierExpansion> {
    if f.rank() != 1 {
        return Err(Error::RankMismatch(1, f.rank()));
    }
    if twists.len() != f.slots() {
        return Err(Error::Dimension(format!("{} twists for {} slots", twists.len(), f.slots())));
    }
    let shift: i64 = twists.iter().map(|t| if *t == Twist::Tau { 2 } else { -2 }).sum();
    let one = vec![vec![Entry::constant(Rat::one())]];
    let weight = Weight::new(vec![f.weight().0[0] + shift]);
    let mut out = f.with_shape(weight, f.dim(), 0);
    for (k, c) in f.terms() {
        let mut c = c.clone();
        for _ in 0..f.slots() {
            c = c.evaluate_slot(1, 0, &one);
        }
        out.insert_unchecked(k.clone(), c);
    }
    Ok(out)
}

/// Matrix of entries `S`, `S^{-1}` for the generic symmetric `S`.
pub(crate) fn generic_matrix(n: usize, inverse: bool) -> Vec<Vec<Entry>> {
    scaled_matrix(n, &Rat::one(), 0, inverse)
}

pub(crate) fn entry_matmul(a: &[Vec<Entry>], b: &[Vec<Entry>]) -> Vec<Vec<Entry>> {
    linalg::mat_mul_ring(a, b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scalar_exp(k: i64, h: i64, c: Entry) -> FourierExpansion {
        let mut f = FourierExpansion::new(4, 1, Weight::new(vec![k])).unwrap();
        f.add_holomorphic(&[vec![h]], 0, c).unwrap();
        f
    }

    fn one_slot(f: &FourierExpansion, key: i64, slot: u8, e: Entry) -> FourierExpansion {
        let mut g = f.with_shape(f.weight().clone(), f.dim(), 1);
        let mut c = CoeffPoly::zero();
        c.add_term(CKey { v: 0, slots: vec![slot] }, e);
        g.insert_unchecked(vec![key], c);
        g
    }

    #[test]
    fn d_of_exponential() {
        let f = scalar_exp(0, 3, Entry::constant(rat(1)));
        let i = Entry::i(4).unwrap();
        let expect = one_slot(&f, 3, 0, i.shift_pi(1).scale(&rat(6)));
        assert_eq!(op_d(&f).unwrap(), expect);
        assert!(op_dbar(&f).unwrap().is_empty());
        assert!(op_e(&f).unwrap().is_empty());
        assert!(op_d(&f.empty_like()).unwrap().is_empty());
    }

    #[test]
    fn e_of_inverse_y() {
        // y^{-1} = pi (pi y)^{-1} = pi S^{-2}
        let f = scalar_exp(0, 0, Entry::monomial(1, Frac::new(MPoly::one(), 2, 1)));
        let i = Entry::i(4).unwrap();
        let expect = one_slot(&f, 0, 0, i.scale(&rat(-2)));
        assert_eq!(op_e(&f).unwrap(), expect);
        assert!(op_e_power(&f, 2).unwrap().is_empty());
    }

    #[test]
    fn odd_coefficients_are_rejected() {
        let f = scalar_exp(0, 1, Entry::frac(Frac::new(MPoly::var(0), 0, 1)));
        assert!(matches!(op_d(&f), Err(Error::OddCoefficient(_))));
    }

    #[test]
    fn maass_raising_in_rank_one() {
        // D_k e(hz) = u (2 pi i h + k / (2 i y)) e(hz), and 1/(2iy) = -(i/2) pi S^{-2}
        let k = 6;
        let f = scalar_exp(k, 2, Entry::constant(rat(1)));
        let rho = GlIrrep::new(&Weight::new(vec![k])).unwrap();
        let g = op_drho_e(&f, &ValueRep::plain(&rho), 1).unwrap();
        let i = Entry::i(4).unwrap();
        let c = i.shift_pi(1).scale(&rat(4)).add(&i.mul(&Entry::monomial(1, Frac::new(MPoly::one(), 2, 1))).scale(&ratq(-k, 2)));
        assert_eq!(g, one_slot(&f, 2, 0, c));
    }

    #[test]
    fn raising_recursion() {
        let rho = GlIrrep::new(&Weight::new(vec![3, 1])).unwrap();
        let mut f = FourierExpansion::new(4, 1, rho.highest_weight().clone()).unwrap();
        let i = Entry::i(4).unwrap();
        f.add_holomorphic(&[vec![1, 1], vec![1, 2]], 0, i.clone()).unwrap();
        f.add_holomorphic(&[vec![2, 0], vec![0, 1]], 2, Entry::constant(rat(3))).unwrap();
        let rep = ValueRep::plain(&rho);
        let two = op_drho_e(&f, &rep, 2).unwrap();
        let once = op_drho_e(&f, &rep, 1).unwrap();
        let twice = op_drho_e(&once, &rep.prepend(Twist::Tau, 1), 1).unwrap();
        assert_eq!(two, twice);
    }

    #[test]
    fn pi_i_powers() {
        let f = scalar_exp(0, 1, Entry::constant(rat(1)));
        for p in -3..=3 {
            let g = scale_pi_i(&scale_pi_i(&f, p).unwrap(), -p).unwrap();
            assert_eq!(g, f);
        }
        let i = Entry::i(4).unwrap();
        assert_eq!(scale_pi_i(&f, -1).unwrap(), f.scale(&i.neg().shift_pi(-1)));
    }
}
