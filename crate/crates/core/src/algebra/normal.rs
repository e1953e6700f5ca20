use std::collections::HashMap;
use std::rc::Rc;
use std::sync::{Mutex, OnceLock};

use num_traits::{One, Zero};

use super::gen::{Gen, GenKind, GenOrder};
use super::rat::{rat, Rat};
use super::uea::{Monomial, UeaElement};
use crate::error::Result;

/// Precomputed structure constants `[a, b]` for all generator pairs at one rank.
#[derive(Debug)]
pub struct LieTable {
    n: usize,
    gens: Vec<Gen>,
    table: Vec<Vec<(Gen, i64)>>,
}

fn delta(a: u8, b: u8) -> i64 {
    (a == b) as i64
}

fn push(out: &mut Vec<(Gen, i64)>, g: Gen, c: i64) {
    if c == 0 {
        return;
    }
    if let Some(slot) = out.iter_mut().find(|(h, _)| *h == g) {
        slot.1 += c;
    } else {
        out.push((g, c));
    }
}

fn raw_bracket(a: Gen, b: Gen) -> Vec<(Gen, i64)> {
    use GenKind::*;
    let (i, j, k, l) = (a.i, a.j, b.i, b.j);
    let u = |x: u8| x as usize;
    let mut out = Vec::new();
    match (a.kind, b.kind) {
        (EPlus, EPlus) | (EMinus, EMinus) => {}
        (EPlus, EMinus) => {
            push(&mut out, Gen::b(u(j), u(l)), delta(i, k));
            push(&mut out, Gen::b(u(i), u(k)), delta(j, l));
            push(&mut out, Gen::b(u(j), u(k)), delta(i, l));
            push(&mut out, Gen::b(u(i), u(l)), delta(j, k));
        }
        (B, EPlus) => {
            push(&mut out, Gen::eplus(u(i), u(l)), delta(j, k));
            push(&mut out, Gen::eplus(u(i), u(k)), delta(j, l));
        }
        (B, EMinus) => {
            push(&mut out, Gen::eminus(u(j), u(l)), -delta(i, k));
            push(&mut out, Gen::eminus(u(j), u(k)), -delta(i, l));
        }
        (B, B) => {
            push(&mut out, Gen::b(u(i), u(l)), delta(j, k));
            push(&mut out, Gen::b(u(k), u(j)), -delta(i, l));
        }
        (EMinus, EPlus) | (EPlus, B) | (EMinus, B) => {
            return raw_bracket(b, a).into_iter().map(|(g, c)| (g, -c)).collect();
        }
    }
    out.retain(|(_, c)| *c != 0);
    out.sort();
    out
}

impl LieTable {
    pub fn new(n: usize) -> LieTable {
        let gens = Gen::all(n);
        let mut table = Vec::with_capacity(gens.len() * gens.len());
        for a in &gens {
            for b in &gens {
                table.push(raw_bracket(*a, *b));
            }
        }
        LieTable { n, gens, table }
    }

    /// A process-wide table for rank `n`, built on first use.
    pub fn shared(n: usize) -> &'static LieTable {
        static TABLES: OnceLock<Mutex<HashMap<usize, &'static LieTable>>> = OnceLock::new();
        let mut map = TABLES.get_or_init(Default::default).lock().unwrap();
        map.entry(n).or_insert_with(|| Box::leak(Box::new(LieTable::new(n))))
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn gens(&self) -> &[Gen] {
        &self.gens
    }

    pub fn bracket(&self, a: Gen, b: Gen) -> &[(Gen, i64)] {
        let g = self.gens.len();
        &self.table[a.index(self.n) * g + b.index(self.n)]
    }
}

/// `[a, b]` as an element of degree at most one.
pub fn bracket(a: Gen, b: Gen, n: usize) -> Result<UeaElement> {
    a.check(n)?;
    b.check(n)?;
    let mut out = UeaElement::zero(n);
    for (g, c) in LieTable::shared(n).bracket(a, b) {
        out.add_term(Monomial(vec![*g]), rat(*c));
    }
    Ok(out)
}

/// Which out-of-order adjacent pair gets rewritten first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Strategy {
    #[default]
    Leftmost,
    Rightmost,
}

type Reduced = Rc<Vec<(Vec<Gen>, Rat)>>;

struct Reducer<'a> {
    table: &'a LieTable,
    ord: GenOrder,
    strategy: Strategy,
    memo: HashMap<Vec<Gen>, Reduced>,
}

impl Reducer<'_> {
    fn inversion(&self, w: &[Gen]) -> Option<usize> {
        let out_of_order = |p: &usize| self.ord.cmp(&w[*p], &w[*p + 1]).is_gt();
        let n = w.len().saturating_sub(1);
        match self.strategy {
            Strategy::Leftmost => (0..n).find(out_of_order),
            Strategy::Rightmost => (0..n).rev().find(out_of_order),
        }
    }

    fn reduce(&mut self, w: &[Gen]) -> Reduced {
        if let Some(r) = self.memo.get(w) {
            return r.clone();
        }
        let result: Reduced = match self.inversion(w) {
            None => Rc::new(vec![(w.to_vec(), Rat::one())]),
            Some(p) => {
                let mut acc: HashMap<Vec<Gen>, Rat> = HashMap::new();
                let mut swapped = w.to_vec();
                swapped.swap(p, p + 1);
                for (m, c) in self.reduce(&swapped).iter() {
                    *acc.entry(m.clone()).or_insert_with(Rat::zero) += c;
                }
                let table = self.table;
                for (g, c) in table.bracket(w[p], w[p + 1]) {
                    let mut shorter = Vec::with_capacity(w.len() - 1);
                    shorter.extend_from_slice(&w[..p]);
                    shorter.push(*g);
                    shorter.extend_from_slice(&w[p + 2..]);
                    let c = rat(*c);
                    for (m, d) in self.reduce(&shorter).iter() {
                        *acc.entry(m.clone()).or_insert_with(Rat::zero) += d * &c;
                    }
                }
                let mut v: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
                v.sort_by(|a, b| a.0.cmp(&b.0));
                Rc::new(v)
            }
        };
        self.memo.insert(w.to_vec(), result.clone());
        result
    }
}

impl UeaElement {
    /// Normal form with respect to `ord`, rewriting `ab -> ba + [a,b]`.
    pub fn normal_form(&self, ord: GenOrder) -> UeaElement {
        self.normal_form_with(ord, Strategy::Leftmost)
    }

    pub fn normal_form_with(&self, ord: GenOrder, strategy: Strategy) -> UeaElement {
        let n = self.rank();
        let mut r = Reducer { table: LieTable::shared(n), ord, strategy, memo: HashMap::new() };
        let mut out = UeaElement::zero(n);
        for (m, c) in self.terms() {
            for (w, d) in r.reduce(m.gens()).iter() {
                out.add_term(Monomial(w.clone()), c * d);
            }
        }
        out
    }

    pub fn is_normal(&self, ord: GenOrder) -> bool {
        self.terms().keys().all(|m| ord.is_sorted(m.gens()))
    }
}

pub fn pbw_normal_form(x: &UeaElement, ord: GenOrder) -> UeaElement {
    x.normal_form(ord)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::uea::commutator;

    fn g(n: usize, x: Gen) -> UeaElement {
        UeaElement::gen(n, x)
    }

    #[test]
    fn bracket_examples() {
        let four_b = g(1, Gen::b(1, 1)).scale(&rat(4));
        assert_eq!(bracket(Gen::eplus(1, 1), Gen::eminus(1, 1), 1).unwrap(), four_b);
        assert!(bracket(Gen::eplus(1, 2), Gen::eplus(1, 2), 2).unwrap().is_zero());
        assert_eq!(
            bracket(Gen::b(1, 2), Gen::b(2, 1), 2).unwrap(),
            &g(2, Gen::b(1, 1)) - &g(2, Gen::b(2, 2))
        );
        assert_eq!(bracket(Gen::b(1, 1), Gen::eplus(1, 2), 2).unwrap(), g(2, Gen::eplus(1, 2)));
        assert!(bracket(Gen::b(1, 3), Gen::b(1, 1), 2).is_err());
    }

    #[test]
    fn normal_form_examples() {
        let x = UeaElement::product(1, &[Gen::eminus(1, 1), Gen::eplus(1, 1)]);
        let expect = &UeaElement::product(1, &[Gen::eplus(1, 1), Gen::eminus(1, 1)])
            - &g(1, Gen::b(1, 1)).scale(&rat(4));
        assert_eq!(x.normal_form(GenOrder::PMHXY), expect);
        assert_eq!(x.normal_form(GenOrder::HXYPM), expect);

        let y = UeaElement::product(2, &[Gen::b(2, 1), Gen::b(1, 2)]);
        let expect = &(&UeaElement::product(2, &[Gen::b(1, 2), Gen::b(2, 1)]) - &g(2, Gen::b(1, 1)))
            + &g(2, Gen::b(2, 2));
        assert_eq!(y.normal_form(GenOrder::HXYPM), expect);

        let sorted = UeaElement::product(2, &[Gen::b(1, 1), Gen::b(1, 2), Gen::eplus(1, 1)]);
        assert_eq!(sorted.normal_form(GenOrder::HXYPM), sorted);
    }

    #[test]
    fn commutator_matches_bracket() {
        let c = commutator(&g(1, Gen::eplus(1, 1)), &g(1, Gen::eminus(1, 1))).unwrap();
        assert_eq!(c.normal_form(GenOrder::HXYPM), g(1, Gen::b(1, 1)).scale(&rat(4)));
        let x = UeaElement::product(2, &[Gen::b(1, 2), Gen::eminus(1, 2)]);
        assert!(commutator(&x, &UeaElement::one(2)).unwrap().normal_form(GenOrder::HXYPM).is_zero());
    }

    #[test]
    fn strategies_agree_on_a_long_word() {
        let w = [Gen::eminus(1, 2), Gen::b(2, 1), Gen::eplus(1, 1), Gen::b(1, 2), Gen::eminus(2, 2), Gen::eplus(1, 2)];
        let x = UeaElement::product(2, &w);
        for ord in [GenOrder::HXYPM, GenOrder::PMHXY] {
            let a = x.normal_form_with(ord, Strategy::Leftmost);
            let b = x.normal_form_with(ord, Strategy::Rightmost);
            assert_eq!(a, b);
            assert!(a.is_normal(ord));
        }
    }
}
