//! Center generators D_2r built from signed traces of constrained words.

use std::fmt;
use std::str::FromStr;

use num_traits::One;

use crate::algebra::{commutator, Gen, GenOrder, Monomial, Rat, UeaElement};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    B,
    BStar,
    EPlus,
    EMinus,
}

impl Letter {
    pub const ALL: [Letter; 4] = [Letter::B, Letter::BStar, Letter::EPlus, Letter::EMinus];

    fn may_precede(self, next: Letter) -> bool {
        use Letter::*;
        matches!(
            (self, next),
            (EPlus, EMinus) | (EPlus, BStar) | (EMinus, EPlus) | (EMinus, B) | (B, EPlus) | (B, B) | (BStar, EMinus) | (BStar, BStar)
        )
    }

    /// Matrix entry `(X)_{k,l}` of the letter as a generator.
    pub fn entry(self, k: usize, l: usize) -> Gen {
        match self {
            Letter::B => Gen::b(k, l),
            Letter::BStar => Gen::b(l, k),
            Letter::EPlus => Gen::eplus(k, l),
            Letter::EMinus => Gen::eminus(k, l),
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Letter::B => "B",
            Letter::BStar => "B*",
            Letter::EPlus => "E+",
            Letter::EMinus => "E-",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn count(&self, l: Letter) -> usize {
        self.0.iter().filter(|&&x| x == l).count()
    }

    pub fn rotate(&self, s: usize) -> Word {
        let mut v = self.0.clone();
        if !v.is_empty() {
            let s = s % v.len();
            v.rotate_left(s);
        }
        Word(v)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            write!(f, "{}", l)?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Word> {
        let b = s.as_bytes();
        let mut out = Vec::new();
        let mut p = 0;
        while p < b.len() {
            let (l, w) = match (b[p], b.get(p + 1)) {
                (b'B', Some(b'*')) => (Letter::BStar, 2),
                (b'B', _) => (Letter::B, 1),
                (b'E', Some(b'+')) => (Letter::EPlus, 2),
                (b'E', Some(b'-')) => (Letter::EMinus, 2),
                _ => return Err(Error::parse(1, format!("bad letter at byte {} of `{}`", p, s))),
            };
            out.push(l);
            p += w;
        }
        if out.is_empty() {
            return Err(Error::parse(1, "empty word"));
        }
        Ok(Word(out))
    }
}

/// Adjacency conditions hold for every letter but the last, and E+ and E- occur equally often.
pub fn is_valid_word(w: &Word) -> bool {
    !w.is_empty()
        && w.0.windows(2).all(|p| p[0].may_precede(p[1]))
        && w.count(Letter::EPlus) == w.count(Letter::EMinus)
}

/// All valid words of length 2r, in lexicographic order of letters.
pub fn enumerate_words(r: usize) -> Vec<Word> {
    fn go(len: usize, cur: &mut Vec<Letter>, balance: i64, out: &mut Vec<Word>) {
        let remaining = (len - cur.len()) as i64;
        if balance.abs() > remaining {
            return;
        }
        if remaining == 0 {
            out.push(Word(cur.clone()));
            return;
        }
        for l in Letter::ALL {
            if let Some(prev) = cur.last() {
                if !prev.may_precede(l) {
                    continue;
                }
            }
            let b = balance
                + match l {
                    Letter::EPlus => 1,
                    Letter::EMinus => -1,
                    _ => 0,
                };
            cur.push(l);
            go(len, cur, b, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if r > 0 {
        go(2 * r, &mut Vec::new(), 0, &mut out);
    }
    out
}

fn path_matching(usable: &[bool]) -> usize {
    let (mut prev2, mut prev1) = (0usize, 0usize);
    for &u in usable {
        let cur = if u { prev1.max(prev2 + 1) } else { prev1 };
        prev2 = prev1;
        prev1 = cur;
    }
    prev1
}

/// Maximal number of pairwise disjoint cyclic occurrences of `E-B` and `BE+`.
pub fn isolated_cyclic_count(w: &Word) -> usize {
    let m = w.len();
    if m < 2 {
        return 0;
    }
    let usable: Vec<bool> = (0..m)
        .map(|p| {
            matches!(
                (w.0[p], w.0[(p + 1) % m]),
                (Letter::EMinus, Letter::B) | (Letter::B, Letter::EPlus)
            )
        })
        .collect();
    let skip_wrap = path_matching(&usable[..m - 1]);
    let take_wrap = if usable[m - 1] {
        1 + if m >= 4 { path_matching(&usable[1..m - 2]) } else { 0 }
    } else {
        0
    };
    skip_wrap.max(take_wrap)
}

/// `Tr(w)`: the sum over index cycles of the product of letter entries.
pub fn trace_word(w: &Word, n: usize) -> UeaElement {
    let m = w.len();
    let mut out = UeaElement::zero(n);
    if m == 0 || n == 0 {
        return out;
    }
    let mut idx = vec![1usize; m];
    loop {
        let gens: Vec<Gen> = (0..m).map(|p| w.0[p].entry(idx[p], idx[(p + 1) % m])).collect();
        out.add_term(Monomial(gens), Rat::one());
        let mut p = 0;
        while p < m && idx[p] == n {
            idx[p] = 1;
            p += 1;
        }
        if p == m {
            break;
        }
        idx[p] += 1;
    }
    out
}

/// How the sign of each word in `D_2r` is chosen.
///
/// `Isolated` uses `(-1)^L(w)`. `Transpose` uses `(-1)^(number of B*)`, the
/// sign coming from the matrix `[[B, E+], [E-, -B*]]`. The two agree on every
/// word of length at most 4; from length 6 on only `Transpose` gives central
/// elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum SignRule {
    Isolated,
    #[default]
    Transpose,
}

impl SignRule {
    pub fn sign(self, w: &Word) -> Rat {
        let odd = match self {
            SignRule::Isolated => isolated_cyclic_count(w) % 2 == 1,
            SignRule::Transpose => w.count(Letter::BStar) % 2 == 1,
        };
        if odd {
            -Rat::one()
        } else {
            Rat::one()
        }
    }
}

impl FromStr for SignRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<SignRule> {
        match s {
            "isolated" => Ok(SignRule::Isolated),
            "transpose" => Ok(SignRule::Transpose),
            _ => Err(Error::Invalid(format!("unknown sign rule `{}`", s))),
        }
    }
}

fn signed_sum(r: usize, n: usize, shift: usize, rule: SignRule) -> UeaElement {
    let mut out = UeaElement::zero(n);
    for w in enumerate_words(r) {
        let w = w.rotate(shift);
        out.add_scaled(&trace_word(&w, n), &rule.sign(&w));
    }
    out
}

/// `D_2r`, the signed sum of `Tr(w)` over valid words of length 2r.
pub fn center_generator(r: usize, n: usize) -> UeaElement {
    signed_sum(r, n, 0, SignRule::default())
}

pub fn center_generator_with(r: usize, n: usize, rule: SignRule) -> UeaElement {
    signed_sum(r, n, 0, rule)
}

/// The same signed sum with every word rotated left by `shift` letters first.
pub fn rotated_center_sum(r: usize, n: usize, shift: usize, rule: SignRule) -> UeaElement {
    signed_sum(r, n, shift, rule)
}

/// True iff `[x, g]` has zero normal form for every generator `g`.
pub fn is_central(x: &UeaElement) -> bool {
    central_defect(x).is_none()
}

/// The first generator failing to commute with `x`, with the normal-ordered commutator.
pub fn central_defect(x: &UeaElement) -> Option<(Gen, UeaElement)> {
    let n = x.rank();
    let x = x.normal_form(GenOrder::HXYPM);
    for g in Gen::all(n) {
        let c = commutator(&x, &UeaElement::gen(n, g)).expect("same rank");
        let c = c.normal_form(GenOrder::HXYPM);
        if !c.is_zero() {
            return Some((g, c));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn validity_examples() {
        assert!(is_valid_word(&w("E+E-")));
        assert!(!is_valid_word(&w("E+B")));
        assert!(!is_valid_word(&w("E+E-E-E+")));
        assert!(is_valid_word(&w("BB")));
        assert!(!is_valid_word(&w("BB*")));
    }

    #[test]
    fn rank_one_words() {
        let words: Vec<String> = enumerate_words(1).iter().map(|w| w.to_string()).collect();
        assert_eq!(words, vec!["BB", "B*B*", "E+E-", "E-E+"]);
        for r in 1..=4 {
            let ws = enumerate_words(r);
            let mut brute = 0;
            for code in 0..4usize.pow(2 * r as u32) {
                let letters = (0..2 * r).map(|p| Letter::ALL[(code >> (2 * p)) & 3]).collect();
                if is_valid_word(&Word(letters)) {
                    brute += 1;
                }
            }
            assert_eq!(ws.len(), brute);
            assert!(ws.iter().all(|x| x.count(Letter::EPlus) == x.count(Letter::EMinus)));
        }
    }

    #[test]
    fn isolated_count_examples() {
        assert_eq!(isolated_cyclic_count(&w("E-BE+B*")), 1);
        assert_eq!(isolated_cyclic_count(&w("E-BBE+")), 2);
        assert_eq!(isolated_cyclic_count(&w("E+E-BB")), 2);
        assert_eq!(isolated_cyclic_count(&w("BB")), 0);
        assert_eq!(isolated_cyclic_count(&w("BE+")), 1);
    }

    #[test]
    fn isolated_count_is_rotation_invariant() {
        for r in 1..=4 {
            for x in enumerate_words(r) {
                let l = isolated_cyclic_count(&x);
                for s in 0..x.len() {
                    assert_eq!(isolated_cyclic_count(&x.rotate(s)), l, "{}", x);
                }
            }
        }
    }

    #[test]
    fn trace_examples() {
        let t = trace_word(&w("E+E-"), 1);
        assert_eq!(t, UeaElement::product(1, &[Gen::eplus(1, 1), Gen::eminus(1, 1)]));
        let t = trace_word(&w("BB"), 2);
        let mut e = UeaElement::zero(2);
        for (a, b) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
            e.add_term(Monomial(vec![Gen::b(a, b), Gen::b(b, a)]), rat(1));
        }
        assert_eq!(t, e);
        assert_eq!(trace_word(&w("B*B*"), 1), UeaElement::product(1, &[Gen::b(1, 1), Gen::b(1, 1)]));
    }

    #[test]
    fn d2_rank_one() {
        let d2 = center_generator(1, 1);
        let b = Gen::b(1, 1);
        let (p, m) = (Gen::eplus(1, 1), Gen::eminus(1, 1));
        let mut e = UeaElement::product(1, &[b, b]).scale(&rat(2));
        e.add_term(Monomial(vec![p, m]), rat(1));
        e.add_term(Monomial(vec![m, p]), rat(1));
        assert_eq!(d2, e);
        let mut nf = UeaElement::product(1, &[b, b]).scale(&rat(2));
        nf.add_term(Monomial(vec![b]), rat(-4));
        nf.add_term(Monomial(vec![p, m]), rat(2));
        assert_eq!(d2.normal_form(GenOrder::HXYPM), nf);
        assert_eq!(center_generator(1, 2).terms().values().map(|c| c.clone()).sum::<Rat>(), rat(16));
    }

    #[test]
    fn sign_rules_agree_up_to_length_four() {
        for r in 1..=2 {
            for x in enumerate_words(r) {
                assert_eq!(SignRule::Isolated.sign(&x), SignRule::Transpose.sign(&x), "{}", x);
            }
        }
        let x = w("E-BBBE+B*");
        assert_ne!(SignRule::Isolated.sign(&x), SignRule::Transpose.sign(&x));
    }

    #[test]
    fn isolated_rule_is_not_central_at_length_six() {
        assert!(!is_central(&center_generator_with(3, 2, SignRule::Isolated)));
        assert!(is_central(&center_generator_with(3, 2, SignRule::Transpose)));
    }

    #[test]
    fn rotated_sums_agree() {
        let d4 = center_generator(2, 2).normal_form(GenOrder::HXYPM);
        for s in 1..4 {
            let rot = rotated_center_sum(2, 2, s, SignRule::Transpose);
            assert_eq!(rot.normal_form(GenOrder::HXYPM), d4);
        }
    }

    #[test]
    fn centrality_small() {
        assert!(is_central(&center_generator(1, 1)));
        assert!(is_central(&center_generator(1, 2)));
        assert!(!is_central(&UeaElement::gen(1, Gen::b(1, 1))));
        assert!(is_central(&UeaElement::one(2)));
    }
}
