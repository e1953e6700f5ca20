//! Elements of the enveloping algebra as operators on expansions, the
//! operators `Omega_2i`, the character projections and the ladder operator.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Mutex, OnceLock};

use num_traits::{One, Signed, Zero};

use super::entry::Entry;
use super::expansion::FourierExpansion;
use super::ops::{drho_y, e_y, entry_matmul, generic_matrix, rho_matrix, Twist, ValueRep};
use crate::algebra::{iota_involution, rat, ratq, GenKind, GenOrder, Monomial, Rat, UeaElement};
use crate::center::center_generator;
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::rep::{scalar_ladder, GlIrrep};
use crate::weights::{CenterCharacters, Weight};

type Block = (Vec<(usize, usize)>, Vec<(usize, usize)>);

/// Splits `R` into `E+ ... E- ... X` groups with `X` in U(k).
fn block_groups(r: &UeaElement) -> Result<BTreeMap<Block, UeaElement>> {
    let n = r.rank();
    let mut groups: BTreeMap<Block, UeaElement> = BTreeMap::new();
    for (m, c) in r.terms() {
        let gens = m.gens();
        let plus = gens.iter().take_while(|g| g.kind == GenKind::EPlus).count();
        let minus = gens[plus..].iter().take_while(|g| g.kind == GenKind::EMinus).count();
        let rest = &gens[plus + minus..];
        if rest.iter().any(|g| !g.is_b()) {
            return Err(Error::NotBlockForm(m.to_string()));
        }
        let key = (
            gens[..plus].iter().map(|g| (g.i(), g.j())).collect(),
            gens[plus..plus + minus].iter().map(|g| (g.i(), g.j())).collect(),
        );
        groups.entry(key).or_insert_with(|| UeaElement::zero(n)).add_term(Monomial(rest.to_vec()), c.clone());
    }
    Ok(groups)
}

/// `A = W1 + W2` with `W1 = (A + cI)/2`, `W2 = (A - cI)/2` both invertible,
/// `c` the least positive integer that works.
pub fn invertible_split(a: &Matrix) -> (Matrix, Matrix, i64) {
    let dim = a.len();
    let shifted = |c: i64| -> Matrix {
        let mut m = a.clone();
        for (i, row) in m.iter_mut().enumerate().take(dim) {
            row[i] += rat(c);
            for x in row.iter_mut() {
                *x /= rat(2);
            }
        }
        m
    };
    let mut c = 1;
    loop {
        let w1 = shifted(c);
        let w2 = shifted(-c);
        if !linalg::det(&w1).is_zero() && !linalg::det(&w2).is_zero() {
            return (w1, w2, c);
        }
        c += 1;
    }
}

fn entry_matrix(m: &Matrix) -> Vec<Vec<Entry>> {
    m.iter().map(|r| r.iter().map(|x| Entry::constant(x.clone())).collect()).collect()
}

/// `S U S / pi` for `U = 2i (e_ab + e_ba)` (an `E+` slot) or
/// `pi S^{-1} V S^{-1}` for `V = -(i/2) (e_ab + e_ba)` (an `E-` slot).
fn slot_matrix(n: usize, order: u32, a: usize, b: usize, plus: bool) -> Result<Vec<Vec<Entry>>> {
    let i = Entry::i(order)?;
    let mut u = vec![vec![Entry::zero(); n]; n];
    // E = 4 Dbar(y u y) realizes iota_-(v) only up to a factor 4, so the
    // E- slot carries v/4 (checked against the group action numerically).
    let c = if plus { i.scale(&rat(2)) } else { i.scale(&ratq(-1, 2)) };
    u[a - 1][b - 1] = u[a - 1][b - 1].add(&c);
    u[b - 1][a - 1] = u[b - 1][a - 1].add(&c);
    let s = generic_matrix(n, !plus);
    let m = entry_matmul(&entry_matmul(&s, &u), &s);
    let p = if plus { -1 } else { 1 };
    Ok(m.into_iter().map(|r| r.into_iter().map(|e| e.shift_pi(p)).collect()).collect())
}

/// `pi^{(k(rho1) - k(rho2))/2} R~ f`, where
/// `(R~ f)(z) = rho2(y^{-1/2}) (R f^{rho1})(g_z)`. `R` must be a sum of
/// products `E+ ... E+ E- ... E- B ... B`. `rho2` either has the dimension of
/// `rho1` or is one-dimensional, acting on `rho1`'s space by a scalar.
pub fn apply_lie_element_normalized(
    r: &UeaElement,
    f: &FourierExpansion,
    rho1: &GlIrrep,
    rho2: &GlIrrep,
) -> Result<FourierExpansion> {
    let n = f.rank();
    if r.rank() != n {
        return Err(Error::RankMismatch(n, r.rank()));
    }
    if rho1.rank() != n || rho2.rank() != n {
        return Err(Error::RankMismatch(n, rho1.rank().max(rho2.rank())));
    }
    if f.slots() != 0 || f.dim() != rho1.dim() {
        return Err(Error::Dimension(format!(
            "expansion valued in a {}-dimensional space, representation of dimension {}",
            f.dim(),
            rho1.dim()
        )));
    }
    let scalar_target = rho2.dim() != rho1.dim();
    if scalar_target && rho2.dim() != 1 {
        return Err(Error::Dimension(format!("cannot map a {}-dimensional space to a {}-dimensional one", rho1.dim(), rho2.dim())));
    }
    let groups = block_groups(r)?;
    let fy = f.to_y()?;
    let rho1_s = rho_matrix(rho1, &Rat::one(), 0, false);
    let rho2_inv = rho_matrix(rho2, &Rat::one(), 0, true);

    // rho1(S) applied to D^s_{rho1 (x) sigma^t} E^t f, per (s, t)
    let mut psi: HashMap<(usize, usize), FourierExpansion> = HashMap::new();
    let mut plus_slots: HashMap<(usize, usize), Vec<Vec<Entry>>> = HashMap::new();
    let mut minus_slots: HashMap<(usize, usize), Vec<Vec<Entry>>> = HashMap::new();
    for (plus, minus) in groups.keys() {
        for &(i, j) in plus {
            if let std::collections::hash_map::Entry::Vacant(e) = plus_slots.entry((i, j)) {
                e.insert(slot_matrix(n, f.order(), i, j, true)?);
            }
        }
        for &(i, j) in minus {
            if let std::collections::hash_map::Entry::Vacant(e) = minus_slots.entry((i, j)) {
                e.insert(slot_matrix(n, f.order(), i, j, false)?);
            }
        }
    }
    let mut acc = f.empty_like();
    for ((plus, minus), x) in &groups {
        let key = (plus.len(), minus.len());
        if let std::collections::hash_map::Entry::Vacant(e) = psi.entry(key) {
            let mut g = fy.clone();
            for _ in 0..key.1 {
                g = e_y(&g)?;
            }
            let rep = ValueRep::plain(rho1).prepend(Twist::Sigma, key.1);
            let g = drho_y(&g, &rep, key.0)?.from_y();
            let g = g.try_map_coefficients(|_, c| c.apply_matrix(&rho1_s))?;
            e.insert(g);
        }
        let a = rho1.matrix_of(&iota_involution(x)?)?;
        if a.iter().all(|row| row.iter().all(Zero::is_zero)) {
            continue;
        }
        let (w1, w2, _) = invertible_split(&a);
        let (w1, w2) = (entry_matrix(&w1), entry_matrix(&w2));
        let mats: Vec<&Vec<Vec<Entry>>> =
            plus.iter().map(|p| &plus_slots[p]).chain(minus.iter().map(|m| &minus_slots[m])).collect();
        for (h, c) in psi[&key].terms() {
            let mut c = c.clone();
            for m in &mats {
                c = c.evaluate_slot(n, 0, m);
            }
            let mut sum = c.apply_matrix(&w1)?;
            sum.add_assign(&c.apply_matrix(&w2)?);
            let prev = acc.terms().get(h).cloned().unwrap_or_default();
            acc.insert_unchecked(h.clone(), prev.add(&sum));
        }
    }
    if scalar_target {
        let s = &rho2_inv[0][0];
        Ok(acc.map_coefficients(|c| c.scale(s)))
    } else {
        let mut out = acc.with_shape(rho2.highest_weight().clone(), rho2.dim(), 0);
        for (h, c) in acc.terms() {
            out.insert_unchecked(h.clone(), c.apply_matrix(&rho2_inv)?);
        }
        Ok(out)
    }
}

/// `R~ f` itself; the normalizing power of `pi` must be integral.
pub fn apply_lie_element(r: &UeaElement, f: &FourierExpansion, rho1: &GlIrrep, rho2: &GlIrrep) -> Result<FourierExpansion> {
    let diff = rho2.total_weight() - rho1.total_weight();
    if diff % 2 != 0 {
        return Err(Error::Parity(format!("pi^({}/2) is not an integral power", diff)));
    }
    let g = apply_lie_element_normalized(r, f, rho1, rho2)?;
    Ok(g.scale(&Entry::pi_power(diff / 2)))
}

/// `D_2i` normal-ordered as `E+ E- B`, cached per rank.
pub fn center_block_form(i: usize, n: usize) -> UeaElement {
    static CACHE: OnceLock<Mutex<HashMap<(usize, usize), UeaElement>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(x) = cache.lock().unwrap_or_else(|e| e.into_inner()).get(&(i, n)) {
        return x.clone();
    }
    let x = center_generator(i, n).normal_form(GenOrder::PMHXY);
    cache.lock().unwrap_or_else(|e| e.into_inner()).insert((i, n), x.clone());
    x
}

/// `Omega_2i f = rho(y^{-1/2}) (D_2i f^rho)(g_z)`.
pub fn omega_op(i: usize, f: &FourierExpansion, rho: &GlIrrep) -> Result<FourierExpansion> {
    let n = f.rank();
    if i == 0 || i > n {
        return Err(Error::IndexOutOfRange(format!("Omega_{} at rank {}", 2 * i, n)));
    }
    let d = center_block_form(i, n);
    let g = apply_lie_element_normalized(&d, f, rho, rho)?;
    if !g.is_even() {
        return Err(Error::Computation(format!("Omega_{} produced an odd coefficient", 2 * i)));
    }
    if f.nearly_holomorphic_degree().is_some() && g.nearly_holomorphic_degree().is_none() {
        return Err(Error::Computation(format!("Omega_{} left the nearly holomorphic space", 2 * i)));
    }
    Ok(g)
}

/// `C_k^{-1} prod_{k' != k} sum_i sgn(chi_k(D_2i) - chi_k'(D_2i)) (Omega_2i - chi_k'(D_2i))`.
pub fn char_projection(k: &Weight, candidates: &[Weight], f: &FourierExpansion, rho: &GlIrrep) -> Result<FourierExpansion> {
    let n = f.rank();
    if !candidates.contains(k) {
        return Err(Error::Invalid(format!("{} is not among the candidates", k)));
    }
    let chars = CenterCharacters::new(n);
    let mut chis = Vec::with_capacity(candidates.len());
    for c in candidates {
        if c.rank() != n {
            return Err(Error::RankMismatch(n, c.rank()));
        }
        chis.push(chars.chi(c)?);
    }
    for a in 0..candidates.len() {
        for b in 0..a {
            if chis[a] == chis[b] && candidates[a] != candidates[b] {
                return Err(Error::Invalid(format!(
                    "candidates {} and {} have the same infinitesimal character",
                    candidates[a], candidates[b]
                )));
            }
        }
    }
    let chi_k = chars.chi(k)?;
    let mut norm = Rat::one();
    let mut g = f.clone();
    let mut seen = Vec::new();
    for (c, chi) in candidates.iter().zip(&chis) {
        if c == k || seen.contains(c) {
            continue;
        }
        seen.push(c.clone());
        let mut next = g.empty_like();
        let mut total = Rat::zero();
        for idx in 0..n {
            let diff = &chi_k[idx] - &chi[idx];
            total += diff.abs();
            if diff.is_zero() {
                continue;
            }
            let term = omega_op(idx + 1, &g, rho)?.sub(&g.scale(&Entry::constant(chi[idx].clone())))?;
            let term = if diff.is_positive() { term } else { term.scale(&Entry::constant(rat(-1))) };
            next = next.add(&term)?;
        }
        norm *= total;
        g = next;
    }
    Ok(g.scale(&Entry::constant(norm.recip())))
}

/// The ladder operator: `L_rho(pi^{(sum k - n k_1)/2} Y~ f)` valued in `det^{k_1}`.
pub fn dk_operator(k: &Weight, f: &FourierExpansion) -> Result<FourierExpansion> {
    let ladder = scalar_ladder(k)?;
    let rho1 = GlIrrep::new(k)?;
    let rho2 = GlIrrep::new(&Weight::scalar(k.rank(), k.0[0]))?;
    let g = apply_lie_element_normalized(&ladder.y, f, &rho1, &rho2)?;
    let mut out = g.with_shape(rho2.highest_weight().clone(), 1, 0);
    for (h, c) in g.terms() {
        out.insert_unchecked(h.clone(), c.component(rho1.hw_index()));
    }
    Ok(out)
}

/// Whether `f` is annihilated by `E^e`.
pub fn killed_by_e_power(f: &FourierExpansion, e: usize) -> Result<bool> {
    Ok(super::ops::op_e_power(f, e)?.is_empty())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Gen, UeaElement};

    fn holo(k: &[i64], order: u32, h: &[Vec<i64>], v: usize) -> FourierExpansion {
        let mut f = FourierExpansion::new(order, 1, Weight::new(k.to_vec())).unwrap();
        f.add_holomorphic(h, v, Entry::constant(rat(1))).unwrap();
        f
    }

    #[test]
    fn simple_elements_in_rank_one() {
        let k = 7;
        let rho = GlIrrep::new(&Weight::new(vec![k])).unwrap();
        let f = holo(&[k], 4, &[vec![2]], 0);
        let one = UeaElement::one(1);
        assert_eq!(apply_lie_element(&one, &f, &rho, &rho).unwrap(), f);
        let b = UeaElement::gen(1, Gen::b(1, 1));
        assert_eq!(apply_lie_element(&b, &f, &rho, &rho).unwrap(), f.scale(&Entry::constant(rat(k))));
        let em = UeaElement::gen(1, Gen::eminus(1, 1));
        assert!(apply_lie_element(&em, &f, &rho, &rho).unwrap().is_empty());
        let bad = UeaElement::product(1, &[Gen::b(1, 1), Gen::eplus(1, 1)]);
        assert!(matches!(apply_lie_element(&bad, &f, &rho, &rho), Err(Error::NotBlockForm(_))));
    }

    #[test]
    fn casimir_eigenvalue_weight_twelve() {
        let rho = GlIrrep::new(&Weight::new(vec![12])).unwrap();
        let f = holo(&[12], 4, &[vec![1]], 0);
        let g = omega_op(1, &f, &rho).unwrap();
        assert_eq!(g, f.scale(&Entry::constant(rat(240))));
    }

    #[test]
    fn raise_lower_in_rank_one() {
        // g holomorphic of weight 4 and h = delta_4 g; classically
        // E+ E- h = 16 delta_4 (y^2 dbar h) = -16 h, so Omega h = chi_(4) h = 16 h.
        use crate::nh::{collapse_slots_rank_one, op_drho_e, Twist, ValueRep};
        let g = holo(&[4], 4, &[vec![1]], 0);
        let raised = op_drho_e(&g, &ValueRep::plain(&GlIrrep::new(&Weight::new(vec![4])).unwrap()), 1).unwrap();
        let h = collapse_slots_rank_one(&raised, &[Twist::Tau]).unwrap();
        let rho = GlIrrep::new(&Weight::new(vec![6])).unwrap();
        let pm = UeaElement::product(1, &[Gen::eplus(1, 1), Gen::eminus(1, 1)]);
        assert_eq!(apply_lie_element(&pm, &h, &rho, &rho).unwrap(), h.scale(&Entry::constant(rat(-16))));
        assert_eq!(omega_op(1, &h, &rho).unwrap(), h.scale(&Entry::constant(rat(16))));
    }

    #[test]
    fn split_is_invertible() {
        let a = vec![vec![rat(1), rat(0)], vec![rat(0), rat(-1)]];
        let (w1, w2, c) = invertible_split(&a);
        assert_eq!(c, 2);
        assert!(!linalg::det(&w1).is_zero() && !linalg::det(&w2).is_zero());
    }
}
