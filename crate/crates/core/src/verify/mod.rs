//! Property checks for every module, grouped into suites. Each check runs a
//! family of cases and keeps the first few counterexamples.

mod random;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::algebra::{bracket, commutator, multiply, rat, Gen, GenKind, GenOrder, Rat, Strategy, UeaElement};
use crate::center::{
    center_generator, central_defect, enumerate_words, is_valid_word, isolated_cyclic_count, rotated_center_sum,
    Letter, SignRule, Word,
};
use crate::error::{Error, Result};
use crate::nh::{
    apply_lie_element, char_projection, collapse_slots_rank_one, dk_operator, killed_by_e_power, omega_op,
    op_drho_e, op_e_power, scale_pi_i, CycloTable, Entry, FourierExpansion, Twist, ValueRep,
};
use crate::rep::{ktype_bound_check, ladder_grade, scalar_ladder, GlIrrep, VermaModule, VermaVector};
use crate::weights::{dot_action, dot_orbit, is_integer, CenterCharacters, Weight, WeylElement};

pub use random::{
    random_block_element, random_expansion, random_h, random_k_element, random_monomial, random_nh_entry,
    random_rat, random_uea, rng, TestRng,
};

const MAX_EXAMPLES: usize = 3;

/// Outcome of one property over a family of cases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub cases: usize,
    pub failures: usize,
    pub examples: Vec<String>,
}

impl Check {
    pub fn new(name: impl Into<String>) -> Check {
        Check { name: name.into(), cases: 0, failures: 0, examples: Vec::new() }
    }

    /// Records one case; `describe` is only called for failures.
    pub fn case(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.examples.len() < MAX_EXAMPLES {
                self.examples.push(describe());
            }
        }
    }

    /// A check with no cases at all counts as failed.
    pub fn passed(&self) -> bool {
        self.failures == 0 && self.cases > 0
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            write!(f, "PASS {} ({} cases)", self.name, self.cases)
        } else {
            write!(f, "FAIL {} ({} of {} cases failed)", self.name, self.failures, self.cases)?;
            for e in &self.examples {
                write!(f, "\n  counterexample: {}", e)?;
            }
            Ok(())
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{}", c)?;
        }
        let failed = self.checks.iter().filter(|c| !c.passed()).count();
        writeln!(f, "{} checks, {} passed, {} failed", self.checks.len(), self.checks.len() - failed, failed)
    }
}

fn one_line(x: &impl fmt::Display) -> String {
    x.to_string().trim_end().replace('\n', "; ")
}

// ---- enveloping algebra ----

pub fn antisymmetry(n: usize) -> Result<Check> {
    let mut c = Check::new(format!("lie.antisymmetry n={}", n));
    for a in Gen::all(n) {
        for b in Gen::all(n) {
            let s = (&bracket(a, b, n)? + &bracket(b, a, n)?).normal_form(GenOrder::HXYPM);
            c.case(s.is_zero(), || format!("[{a},{b}] + [{b},{a}] = {}", one_line(&s)));
        }
    }
    Ok(c)
}

fn jacobiator(a: Gen, b: Gen, c: Gen, n: usize) -> Result<UeaElement> {
    let g = |x: Gen| UeaElement::gen(n, x);
    let t1 = commutator(&g(a), &bracket(b, c, n)?)?;
    let t2 = commutator(&g(b), &bracket(c, a, n)?)?;
    let t3 = commutator(&g(c), &bracket(a, b, n)?)?;
    Ok((&(&t1 + &t2) + &t3).normal_form(GenOrder::HXYPM))
}

/// All generator triples.
pub fn jacobi_exhaustive(n: usize) -> Result<Check> {
    let mut c = Check::new(format!("lie.jacobi n={} exhaustive", n));
    let gens = Gen::all(n);
    for &a in &gens {
        for &b in &gens {
            for &d in &gens {
                let j = jacobiator(a, b, d, n)?;
                c.case(j.is_zero(), || format!("({a}, {b}, {d}) gives {}", one_line(&j)));
            }
        }
    }
    Ok(c)
}

pub fn jacobi_sampled(n: usize, count: usize, rng: &mut TestRng) -> Result<Check> {
    let mut c = Check::new(format!("lie.jacobi n={} sampled", n));
    let gens = Gen::all(n);
    for _ in 0..count {
        let pick = |r: &mut TestRng| gens[r.gen_range(0..gens.len())];
        let (a, b, d) = (pick(rng), pick(rng), pick(rng));
        let j = jacobiator(a, b, d, n)?;
        c.case(j.is_zero(), || format!("({a}, {b}, {d}) gives {}", one_line(&j)));
    }
    Ok(c)
}

/// The normal form of `ab - ba` is the table bracket, in both block orders.
pub fn commutator_matches_bracket(n: usize) -> Result<Check> {
    let mut c = Check::new(format!("lie.commutator n={}", n));
    for a in Gen::all(n) {
        for b in Gen::all(n) {
            let br = bracket(a, b, n)?;
            for ord in [GenOrder::HXYPM, GenOrder::PMHXY] {
                let x = commutator(&UeaElement::gen(n, a), &UeaElement::gen(n, b))?.normal_form(ord);
                c.case(x == br, || format!("nf({a}{b} - {b}{a}) = {} but [{a},{b}] = {}", one_line(&x), one_line(&br)));
            }
        }
    }
    Ok(c)
}

/// Leftmost-first and rightmost-first rewriting reach the same sorted result.
pub fn pbw_confluence(n: usize, count: usize, rng: &mut TestRng) -> Result<Check> {
    let mut c = Check::new(format!("lie.confluence n={}", n));
    for _ in 0..count {
        let x = random_uea(rng, n, 4, 4);
        for ord in [GenOrder::HXYPM, GenOrder::PMHXY] {
            let l = x.normal_form_with(ord, Strategy::Leftmost);
            let r = x.normal_form_with(ord, Strategy::Rightmost);
            c.case(l == r && l.is_normal(ord), || format!("x = {}", one_line(&x)));
        }
    }
    Ok(c)
}

/// `nf(nf(x)) = nf(x)` and `nf(xy) = nf(nf(x) nf(y))`.
pub fn normal_form_laws(n: usize, count: usize, rng: &mut TestRng) -> Result<Check> {
    let mut c = Check::new(format!("lie.normal-form-laws n={}", n));
    let ord = GenOrder::HXYPM;
    for _ in 0..count {
        let x = random_uea(rng, n, 3, 3);
        let y = random_uea(rng, n, 3, 3);
        let (nx, ny) = (x.normal_form(ord), y.normal_form(ord));
        c.case(nx.normal_form(ord) == nx, || format!("not idempotent on {}", one_line(&x)));
        let lhs = multiply(&x, &y)?.normal_form(ord);
        let rhs = multiply(&nx, &ny)?.normal_form(ord);
        c.case(lhs == rhs, || format!("not multiplicative on x = {}, y = {}", one_line(&x), one_line(&y)));
    }
    Ok(c)
}

pub fn uea_round_trip(n: usize, count: usize, rng: &mut TestRng) -> Result<Check> {
    let mut c = Check::new(format!("lie.text-round-trip n={}", n));
    for _ in 0..count {
        let x = random_uea(rng, n, 5, 4);
        let text = x.to_string();
        let back = UeaElement::parse(&text, n)?;
        c.case(back == x && back.to_string() == text, || one_line(&x));
    }
    Ok(c)
}

// ---- center ----

pub fn centrality(r: usize, n: usize) -> Result<Check> {
    let mut c = Check::new(format!("center.central r={} n={}", r, n));
    match central_defect(&center_generator(r, n)) {
        None => c.case(true, String::new),
        Some((g, x)) => c.case(false, || format!("[D_{}, {}] = {}", 2 * r, g, one_line(&x))),
    }
    Ok(c)
}

/// The generated words equal a brute-force filter of all letter strings.
pub fn word_enumeration(r: usize) -> Result<Check> {
    let mut c = Check::new(format!("center.words r={}", r));
    let words = enumerate_words(r);
    let mut brute = Vec::new();
    let len = 2 * r;
    for code in 0..4usize.pow(len as u32) {
        let w = Word((0..len).map(|p| Letter::ALL[code / 4usize.pow((len - 1 - p) as u32) % 4]).collect());
        if is_valid_word(&w) {
            brute.push(w);
        }
    }
    let listed: BTreeSet<String> = words.iter().map(|w| w.to_string()).collect();
    let expected: BTreeSet<String> = brute.iter().map(|w| w.to_string()).collect();
    c.case(listed.len() == words.len(), || "duplicate words".into());
    c.case(listed == expected, || format!("enumerated {:?}, brute force {:?}", listed, expected));
    for w in &words {
        c.case(w.count(Letter::EPlus) == w.count(Letter::EMinus), || format!("{} is unbalanced", w));
    }
    if r == 1 {
        let four: BTreeSet<String> = ["BB", "B*B*", "E+E-", "E-E+"].iter().map(|s| s.to_string()).collect();
        c.case(listed == four, || format!("rank one words {:?}", listed));
    }
    Ok(c)
}

/// The three worked values of L.
pub fn isolated_count_examples() -> Result<Check> {
    let mut c = Check::new("center.isolated-count-examples");
    for (w, l) in [("E-BE+B*", 1), ("E-BBE+", 2), ("E+E-BB", 2)] {
        let got = isolated_cyclic_count(&w.parse::<Word>()?);
        c.case(got == l, || format!("L({}) = {}, expected {}", w, got, l));
    }
    Ok(c)
}

/// L is rotation invariant, and rotating every word before summing gives the same element.
pub fn rotation_invariance(r: usize, n: usize) -> Result<Check> {
    let mut c = Check::new(format!("center.rotation r={} n={}", r, n));
    for w in enumerate_words(r) {
        for s in 1..w.len() {
            let (a, b) = (isolated_cyclic_count(&w), isolated_cyclic_count(&w.rotate(s)));
            c.case(a == b, || format!("L({}) = {} but L({}) = {}", w, a, w.rotate(s), b));
        }
    }
    let base = center_generator(r, n).normal_form(GenOrder::HXYPM);
    for s in 1..2 * r {
        let rot = rotated_center_sum(r, n, s, SignRule::default()).normal_form(GenOrder::HXYPM);
        c.case(rot == base, || format!("shift {} changes D_{}", s, 2 * r));
    }
    Ok(c)
}

/// Every monomial of the sorted generator has as many E+ as E- factors.
pub fn equal_count(r: usize, n: usize) -> Result<Check> {
    let mut c = Check::new(format!("center.equal-count r={} n={}", r, n));
    for m in center_generator(r, n).normal_form(GenOrder::HXYPM).terms().keys() {
        c.case(m.count(GenKind::EPlus) == m.count(GenKind::EMinus), || m.to_string());
    }
    Ok(c)
}

// ---- characters ----

/// All weights with entries in `lo..=hi`, optionally only dominant ones, in lexicographic order.
pub fn weight_grid(n: usize, lo: i64, hi: i64, dominant: bool) -> Vec<Weight> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::new();
        for w in &out {
            for x in lo..=hi {
                if dominant && w.last().is_some_and(|&p| p < x) {
                    continue;
                }
                let mut v: Vec<i64> = w.clone();
                v.push(x);
                next.push(v);
            }
        }
        out = next;
    }
    out.into_iter().map(Weight).collect()
}

fn d2_closed_form(k: &Weight) -> Option<Rat> {
    let v = match k.0[..] {
        [a] => 2 * a * a - 4 * a,
        [a, b] => 2 * a * a + 2 * b * b - 4 * a - 8 * b,
        _ => return None,
    };
    Some(rat(v))
}

/// `chi_k(D_2)` against the closed forms for rank one and two, and every
/// `chi_k(D_2i)` against the action of `D_2i` on the highest weight vector of
/// N(k) when `k` is dominant.
pub fn character_values(n: usize, lo: i64, hi: i64) -> Result<Check> {
    let mut c = Check::new(format!("chars.values n={} k in [{},{}]", n, lo, hi));
    let chars = CenterCharacters::new(n);
    let gens: Vec<UeaElement> = (1..=n).map(|r| center_generator(r, n)).collect();
    for k in weight_grid(n, lo, hi, false) {
        let chi = chars.chi(&k)?;
        if let Some(expected) = d2_closed_form(&k) {
            c.case(chi[0] == expected, || format!("chi_{}(D_2) = {}, closed form {}", k, chi[0], expected));
        }
        if k.is_dominant() {
            let module = VermaModule::new(&k)?;
            let hw = module.hw();
            for (i, d) in gens.iter().enumerate() {
                let got = module.act_uea(d, &hw)?;
                c.case(got == hw.scale(&chi[i]), || format!("D_{} v_{} is not chi v", 2 * i + 2, k));
            }
        }
    }
    Ok(c)
}

pub fn integrality(n: usize, lo: i64, hi: i64) -> Result<Check> {
    let mut c = Check::new(format!("chars.integrality n={} k in [{},{}]", n, lo, hi));
    let chars = CenterCharacters::new(n);
    for k in weight_grid(n, lo, hi, true) {
        for (i, x) in chars.chi(&k)?.iter().enumerate() {
            c.case(is_integer(x), || format!("chi_{}(D_{}) = {}", k, 2 * i + 2, x));
        }
    }
    Ok(c)
}

/// Characters are constant on dot orbits, and orbit sizes divide the group order.
pub fn dot_invariance(weights: &[Weight]) -> Result<Check> {
    let n = weights.first().map_or(1, Weight::rank);
    let mut c = Check::new(format!("chars.dot-invariance n={} ({} weights)", n, weights.len()));
    let chars = CenterCharacters::new(n);
    let group = WeylElement::all(n)?;
    for k in weights {
        let chi = chars.chi(k)?;
        for w in &group {
            let kw = dot_action(w, k);
            let other = chars.chi(&kw)?;
            c.case(other == chi, || format!("chi differs between {} and {}", k, kw));
        }
        let size = dot_orbit(k)?.len();
        c.case(group.len() % size == 0, || format!("orbit of {} has {} elements", k, size));
    }
    Ok(c)
}

fn in_separation_range(k: &Weight, kp: &Weight) -> bool {
    let n = k.rank() as i64;
    (k.last() >= n && kp.last() >= n) || k.last() + kp.last() > 2 * n
}

/// Distinct dominant weights with entries in `[-bound, bound]` have distinct
/// character vectors whenever both last entries are at least `n` or their sum
/// exceeds `2n`.
pub fn separation(n: usize, bound: i64) -> Result<Check> {
    let mut c = Check::new(format!("chars.separation n={} |entries| <= {}", n, bound));
    let chars = CenterCharacters::new(n);
    let ws = weight_grid(n, -bound, bound, true);
    let chis: Vec<Vec<Rat>> = ws.iter().map(|k| chars.chi(k)).collect::<Result<_>>()?;
    for a in 0..ws.len() {
        for b in a + 1..ws.len() {
            if in_separation_range(&ws[a], &ws[b]) {
                c.case(chis[a] != chis[b], || format!("{} and {} share a character", ws[a], ws[b]));
            }
        }
    }
    Ok(c)
}

// ---- highest weight modules ----

/// `X(Yv) - Y(Xv) = [X,Y] v` on a basis of the grades up to `max_grade`.
pub fn action_relations(k: &Weight, max_grade: usize) -> Result<Check> {
    let mut c = Check::new(format!("verma.relations k={} grades<={}", k, max_grade));
    let module = VermaModule::new(k)?;
    let n = k.rank();
    let gens = Gen::all(n);
    for grade in 0..=max_grade {
        for key in module.basis(grade) {
            let v = VermaVector::basis(key);
            for &x in &gens {
                let xv = module.act_gen(x, &v);
                for &y in &gens {
                    let mut lhs = module.act_gen(x, &module.act_gen(y, &v));
                    lhs.add_scaled(&module.act_gen(y, &xv), &rat(-1));
                    let rhs = module.act_uea(&bracket(x, y, n)?, &v)?;
                    c.case(lhs == rhs, || format!("[{}, {}] on {:?}", x, y, v.terms().keys().next()));
                }
            }
        }
    }
    Ok(c)
}

/// Each `D_2i` acts on the grades up to `max_grade` by `chi_k(D_2i)`.
pub fn central_action(k: &Weight, max_grade: usize) -> Result<Check> {
    let mut c = Check::new(format!("verma.central-action k={} grades<={}", k, max_grade));
    let module = VermaModule::new(k)?;
    let n = k.rank();
    let chi = CenterCharacters::new(n).chi(k)?;
    for r in 1..=n {
        let d = center_generator(r, n).normal_form(GenOrder::PMHXY);
        for grade in 0..=max_grade {
            for key in module.basis(grade) {
                let v = VermaVector::basis(key);
                let got = module.act_uea(&d, &v)?;
                c.case(got == v.scale(&chi[r - 1]), || format!("D_{} on {:?}", 2 * r, v.terms().keys().next()));
            }
        }
    }
    Ok(c)
}

/// Multiplicities in `Sym^2(C^n) (x) F_k` by the Pieri rule: each `mu`
/// obtained by adding a horizontal strip of two boxes occurs once.
pub fn pieri_grade_one(k: &Weight) -> BTreeMap<Weight, usize> {
    let n = k.rank();
    let mut out = BTreeMap::new();
    for i in 0..n {
        for j in i..n {
            let mut mu = k.0.clone();
            mu[i] += 1;
            mu[j] += 1;
            let strip = (1..n).all(|p| mu[p] <= k.0[p - 1]);
            if strip {
                out.insert(Weight(mu), 1);
            }
        }
    }
    out
}

pub fn grade_one_branching(k: &Weight) -> Result<Check> {
    let mut c = Check::new(format!("verma.branching k={}", k));
    let found = VermaModule::new(k)?.ktypes(1)?;
    let expected = pieri_grade_one(k);
    c.case(found == expected, || format!("found {:?}, Pieri rule gives {:?}", found, expected));
    Ok(c)
}

pub fn ktype_bound(k: &Weight, m_max: usize) -> Result<Check> {
    let mut c = Check::new(format!("verma.ktype-bound k={} grades<={}", k, m_max));
    c.case(ktype_bound_check(k, m_max)?, || format!("a K-type of N({}) is not above {}", k, k));
    Ok(c)
}

fn random_vector(rng: &mut TestRng, keys: &[crate::rep::VKey]) -> VermaVector {
    let mut v = VermaVector::zero();
    for key in keys {
        if rng.gen_bool(0.5) {
            v.add_term(key.clone(), random_rat(rng));
        }
    }
    v
}

/// `<E+(i,j) u, v> = <u, E-(i,j) v>` on random vectors of adjacent grades.
pub fn contravariance(k: &Weight, max_grade: usize, count: usize, rng: &mut TestRng) -> Result<Check> {
    let mut c = Check::new(format!("verma.contravariance k={}", k));
    let module = VermaModule::new(k)?;
    let n = k.rank();
    let plus: Vec<Gen> = Gen::all(n).into_iter().filter(|g| g.kind == GenKind::EPlus).collect();
    for t in 0..count {
        let m = t % max_grade.max(1);
        let u = random_vector(rng, &module.basis(m));
        let v = random_vector(rng, &module.basis(m + 1));
        for &g in &plus {
            let lhs = module.form(&module.act_gen(g, &u), &v)?;
            let rhs = module.form(&u, &module.act_gen(Gen::eminus(g.i(), g.j()), &v))?;
            c.case(lhs == rhs, || format!("{} in grade {}: {} vs {}", g, m, lhs, rhs));
        }
    }
    Ok(c)
}

/// The ladder element exists at the expected grade and passes its certificate.
pub fn ladder(k: &Weight) -> Result<Check> {
    let mut c = Check::new(format!("verma.ladder k={}", k));
    let y = scalar_ladder(k)?;
    let n = k.rank() as i64;
    let grade = (n * k.0[0] - k.total()) / 2;
    c.case(y.m as i64 == grade && ladder_grade(k)? == y.m, || format!("grade {} instead of {}", y.m, grade));
    c.case(y.certify()?, || format!("certificate fails for {}", k));
    for m in y.y.terms().keys() {
        let e = m.count(GenKind::EPlus);
        let shape = m.gens()[..e].iter().all(|g| g.kind == GenKind::EPlus)
            && m.gens()[e..].iter().all(|g| g.kind == GenKind::B);
        c.case(shape && e == y.m, || format!("monomial {} is not E+^{} times U(k)", m, y.m));
    }
    Ok(c)
}

// ---- nearly holomorphic calculus ----

fn units(order: u32) -> Result<Vec<i64>> {
    let t = CycloTable::get(order)?;
    Ok((1..order as i64).filter(|a| t.is_unit(*a)).collect())
}

/// Weights and cyclotomic orders cycled through by the random equivariance checks.
fn sample_shape(n: usize, idx: usize) -> (Weight, u32) {
    let weights: &[&[i64]] = match n {
        1 => &[&[6], &[-2], &[3], &[12]],
        _ => &[&[3, 1], &[2, 2], &[4, 2], &[1, 0]],
    };
    let order = if idx.is_multiple_of(2) { 4 } else { 12 };
    (Weight::new(weights[(idx / 2) % weights.len()].to_vec()), order)
}

fn check_nh_rank(n: usize) -> Result<()> {
    if n == 0 || n > 2 {
        return Err(Error::RankTooLarge(n));
    }
    Ok(())
}

/// `(pi i)^{-p} D_rho^p` and `(pi i)^p E^p` commute with `zeta -> zeta^a`.
pub fn raise_lower_equivariance(n: usize, count: usize, rng: &mut TestRng) -> Result<Check> {
    check_nh_rank(n)?;
    let mut c = Check::new(format!("nhcalc.raise-lower-galois n={}", n));
    for idx in 0..count {
        let (w, order) = sample_shape(n, idx);
        let f = random_expansion(rng, &w, order, 2, 1)?;
        let rep = ValueRep::plain(&GlIrrep::new(&w)?);
        for p in 1..=2usize {
            let raise = |g: &FourierExpansion| scale_pi_i(&op_drho_e(g, &rep, p)?, -(p as i64));
            let lower = |g: &FourierExpansion| scale_pi_i(&op_e_power(g, p)?, p as i64);
            let (df, ef) = (raise(&f)?, lower(&f)?);
            for a in units(order)? {
                let s = f.galois_act(a)?;
                c.case(df.galois_act(a)? == raise(&s)?, || format!("D^{} with a = {} on weight {}", p, a, w));
                c.case(ef.galois_act(a)? == lower(&s)?, || format!("E^{} with a = {} on weight {}", p, a, w));
            }
        }
    }
    Ok(c)
}

/// `pi^{(k(rho1) - k(rho2))/2} R~` commutes with the Galois action for random
/// block-form `R` with rational coefficients.
pub fn master_equivariance(n: usize, count: usize, rng: &mut TestRng) -> Result<Check> {
    check_nh_rank(n)?;
    let mut c = Check::new(format!("nhcalc.master-galois n={}", n));
    for idx in 0..count {
        let (w, order) = sample_shape(n, idx);
        let f = random_expansion(rng, &w, order, 2, 1)?;
        let rho = GlIrrep::new(&w)?;
        let r = random_block_element(rng, n, 2, 3);
        let rf = apply_lie_element(&r, &f, &rho, &rho)?;
        for a in units(order)? {
            let lhs = apply_lie_element(&r, &f.galois_act(a)?, &rho, &rho)?;
            c.case(lhs == rf.galois_act(a)?, || format!("R = {} with a = {} on weight {}", one_line(&r), a, w));
        }
    }
    Ok(c)
}

/// `Omega_2i` commutes with the Galois action.
pub fn omega_equivariance(n: usize, count: usize, rng: &mut TestRng) -> Result<Check> {
    check_nh_rank(n)?;
    let mut c = Check::new(format!("nhcalc.omega-galois n={}", n));
    for idx in 0..count {
        let (w, order) = sample_shape(n, idx);
        let f = random_expansion(rng, &w, order, 2, 1)?;
        let rho = GlIrrep::new(&w)?;
        for i in 1..=n {
            let of = omega_op(i, &f, &rho)?;
            for a in units(order)? {
                let lhs = omega_op(i, &f.galois_act(a)?, &rho)?;
                c.case(lhs == of.galois_act(a)?, || format!("Omega_{} with a = {} on weight {}", 2 * i, a, w));
            }
        }
    }
    Ok(c)
}

/// The ladder operator commutes with the Galois action.
pub fn dk_equivariance(count: usize, rng: &mut TestRng) -> Result<Check> {
    let mut c = Check::new("nhcalc.dk-galois");
    let shapes: [(&[i64], u32); 4] = [(&[5, 3], 4), (&[6, 4], 12), (&[5, 3], 12), (&[5], 4)];
    for idx in 0..count {
        let (w, order) = shapes[idx % shapes.len()];
        let k = Weight::new(w.to_vec());
        let f = random_expansion(rng, &k, order, 2, 1)?;
        let df = dk_operator(&k, &f)?;
        for a in units(order)? {
            let lhs = dk_operator(&k, &f.galois_act(a)?)?;
            c.case(lhs == df.galois_act(a)?, || format!("a = {} on weight {}", a, k));
        }
    }
    Ok(c)
}

fn single_term(k: &Weight, h: &[Vec<i64>], v: usize) -> Result<FourierExpansion> {
    let mut f = FourierExpansion::new(4, 1, k.clone())?;
    f.add_holomorphic(h, v, Entry::constant(rat(1)))?;
    Ok(f)
}

/// Single holomorphic terms valued in `F_lambda` are eigen-expansions of
/// every `Omega_2i` with eigenvalue `chi_lambda(D_2i)`.
pub fn omega_eigen(lambdas: &[Weight]) -> Result<Check> {
    let mut c = Check::new(format!("nhcalc.omega-eigen ({} weights)", lambdas.len()));
    for lambda in lambdas {
        let n = lambda.rank();
        let rho = GlIrrep::new(lambda)?;
        let chi = CenterCharacters::new(n).chi(lambda)?;
        let hs: Vec<Vec<Vec<i64>>> = vec![
            vec![vec![0; n]; n],
            (0..n).map(|i| (0..n).map(|j| if i == j { 2 } else { 1 }).collect()).collect(),
        ];
        for h in &hs {
            for v in 0..rho.dim() {
                let f = single_term(lambda, h, v)?;
                for i in 1..=n {
                    let g = omega_op(i, &f, &rho)?;
                    let expected = f.scale(&Entry::constant(chi[i - 1].clone()));
                    c.case(g == expected, || format!("Omega_{} on weight {} at h = {:?}, v = {}", 2 * i, lambda, h, v));
                }
            }
        }
    }
    Ok(c)
}

/// `E^{e+1}` kills nearly holomorphic expansions of degree at most `e`.
pub fn e_nilpotence(n: usize, count: usize, rng: &mut TestRng) -> Result<Check> {
    check_nh_rank(n)?;
    let mut c = Check::new(format!("nhcalc.e-nilpotence n={}", n));
    for idx in 0..count {
        let (w, order) = sample_shape(n, idx);
        let e = (idx % 3) as u32;
        let f = random_expansion(rng, &w, order, 2, e)?;
        let deg = f.nearly_holomorphic_degree();
        c.case(deg.is_some_and(|d| d <= e), || format!("degree {:?} exceeds {}", deg, e));
        c.case(killed_by_e_power(&f, e as usize + 1)?, || format!("E^{} survives on degree {}", e + 1, e));
    }
    Ok(c)
}

/// In rank one, `D^j` of a holomorphic term of weight `k - 2j` is an
/// eigen-expansion of weight `k` with character `chi_{k-2j}`. With these for
/// `j = 0..=depth` the projections are idempotent, kill the other
/// eigen-expansions and sum to the identity.
pub fn projection_algebra(k: i64, depth: usize, rng: &mut TestRng) -> Result<Check> {
    let mut c = Check::new(format!("nhcalc.projections k={} depth={}", k, depth));
    let weight = Weight::new(vec![k]);
    let rho = GlIrrep::new(&weight)?;
    let candidates: Vec<Weight> = (0..=depth).map(|j| Weight::new(vec![k - 2 * j as i64])).collect();
    let chars = CenterCharacters::new(1);
    let mut eigen = Vec::new();
    for (j, wj) in candidates.iter().enumerate() {
        let g = single_term(wj, &[vec![j as i64 + 1]], 0)?;
        let raised = op_drho_e(&g, &ValueRep::plain(&GlIrrep::new(wj)?), j)?;
        let e = collapse_slots_rank_one(&raised, &vec![Twist::Tau; j])?;
        let chi = chars.chi_at(1, wj)?;
        let omega = omega_op(1, &e, &rho)?;
        c.case(!e.is_empty() && omega == e.scale(&Entry::constant(chi)), || format!("D^{} g is not an eigen-expansion", j));
        eigen.push(e);
    }
    for (a, ka) in candidates.iter().enumerate() {
        for (b, e) in eigen.iter().enumerate() {
            let p = char_projection(ka, &candidates, e, &rho)?;
            let expected = if a == b { e.clone() } else { e.empty_like() };
            c.case(p == expected, || format!("projection to {} of the eigen-expansion for {}", ka, candidates[b]));
        }
    }
    let mut f = eigen[0].empty_like();
    for e in &eigen {
        f = f.add(&e.scale(&Entry::constant(random_rat(rng))))?;
    }
    let mut total = f.empty_like();
    for ka in &candidates {
        let p = char_projection(ka, &candidates, &f, &rho)?;
        c.case(char_projection(ka, &candidates, &p, &rho)? == p, || format!("projection to {} is not idempotent", ka));
        c.case(char_projection(ka, std::slice::from_ref(ka), &f, &rho)? == f, || "singleton family is not the identity".into());
        total = total.add(&p)?;
    }
    c.case(total == f, || "projections do not sum to the identity".into());
    Ok(c)
}

/// The ladder operator maps single holomorphic terms to even nearly
/// holomorphic scalar expansions, and is the identity for scalar weights.
pub fn dk_output(k: &Weight, rng: &mut TestRng) -> Result<Check> {
    let mut c = Check::new(format!("nhcalc.dk-output k={}", k));
    let n = k.rank();
    let h: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| if i == j { 2 } else { 1 }).collect()).collect();
    let dim = GlIrrep::new(k)?.dim();
    let mut nonzero = false;
    for v in 0..dim {
        let g = dk_operator(k, &single_term(k, &h, v)?)?;
        nonzero |= !g.is_empty();
        c.case(g.is_even() && g.nearly_holomorphic_degree().is_some(), || format!("D_k on component {} left the space", v));
        c.case(g.dim() == 1 && g.weight() == &Weight::scalar(n, k.0[0]), || format!("output weight {}", g.weight()));
    }
    c.case(nonzero, || "every component maps to zero".into());
    let scalar = Weight::scalar(n, k.0[0]);
    let f = random_expansion(rng, &scalar, 12, 3, 2)?;
    c.case(dk_operator(&scalar, &f)? == f, || format!("D_k is not the identity for {}", scalar));
    Ok(c)
}

pub fn expansion_round_trip(n: usize, count: usize, rng: &mut TestRng) -> Result<Check> {
    check_nh_rank(n)?;
    let mut c = Check::new(format!("nhcalc.json-round-trip n={}", n));
    for idx in 0..count {
        let (w, order) = sample_shape(n, idx);
        let f = random_expansion(rng, &w, order, 3, 2)?;
        let text = f.to_json()?;
        let back = FourierExpansion::from_json(&text)?;
        c.case(back == f && back.to_json()? == text, || text.clone());
    }
    Ok(c)
}

// ---- suites ----

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Suite {
    Lie,
    Center,
    Chars,
    Verma,
    NhCalc,
    All,
}

impl Suite {
    pub const EACH: [Suite; 5] = [Suite::Lie, Suite::Center, Suite::Chars, Suite::Verma, Suite::NhCalc];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Lie => "lie",
            Suite::Center => "center",
            Suite::Chars => "chars",
            Suite::Verma => "verma",
            Suite::NhCalc => "nhcalc",
            Suite::All => "all",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Suite> {
        Suite::EACH
            .into_iter()
            .chain([Suite::All])
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Invalid(format!("unknown suite `{}`", s)))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Options {
    /// Restricts the suite to one rank; `None` runs the default ranks.
    pub n: Option<usize>,
    /// Includes the slow cases.
    pub long: bool,
    pub seed: u64,
}

impl Default for Options {
    fn default() -> Options {
        Options { n: None, long: false, seed: 20140101 }
    }
}

impl Options {
    fn ranks(&self, default: &[usize]) -> Vec<usize> {
        self.n.map_or_else(|| default.to_vec(), |n| vec![n])
    }
}

fn sample_weights(n: usize) -> Result<Vec<Weight>> {
    let ws: &[&[i64]] = match n {
        1 => &[&[7], &[4], &[-1]],
        2 => &[&[5, 3], &[4, 4], &[3, 1], &[2, -1]],
        3 => &[&[2, 1, 0], &[3, 3, 1]],
        _ => return Err(Error::RankTooLarge(n)),
    };
    Ok(ws.iter().map(|w| Weight::new(w.to_vec())).collect())
}

fn lie_suite(opts: &Options, out: &mut Report) -> Result<()> {
    let mut rng = rng(opts.seed);
    for n in opts.ranks(&[1, 2, 3]) {
        out.push(antisymmetry(n)?);
        if n <= 2 {
            out.push(jacobi_exhaustive(n)?);
        } else {
            out.push(jacobi_sampled(n, 500, &mut rng)?);
        }
        out.push(commutator_matches_bracket(n)?);
        out.push(pbw_confluence(n, 100, &mut rng)?);
        out.push(normal_form_laws(n, 100, &mut rng)?);
        out.push(uea_round_trip(n, 100, &mut rng)?);
    }
    Ok(())
}

fn center_suite(opts: &Options, out: &mut Report) -> Result<()> {
    let mut cases = vec![(1, 1), (1, 2), (2, 2), (1, 3)];
    if opts.long {
        cases.extend([(2, 3), (3, 3)]);
    }
    if opts.n.is_none() {
        for r in 1..=3 {
            out.push(word_enumeration(r)?);
        }
        out.push(isolated_count_examples()?);
    }
    for (r, n) in cases {
        if opts.n.is_none_or(|m| m == n) {
            out.push(centrality(r, n)?);
            out.push(equal_count(r, n)?);
            if r <= 2 && n <= 2 {
                out.push(rotation_invariance(r, n)?);
            }
        }
    }
    Ok(())
}

fn chars_suite(opts: &Options, out: &mut Report) -> Result<()> {
    let mut rng = rng(opts.seed);
    for n in opts.ranks(&[1, 2]) {
        if n <= 2 {
            out.push(character_values(n, 1, 10)?);
            out.push(integrality(n, 1, 10)?);
            out.push(dot_invariance(&weight_grid(n, 1, 10, true))?);
            out.push(dot_invariance(&weight_grid(n, -6, 10, false))?);
            out.push(separation(n, 12)?);
        } else {
            out.push(integrality(n, 1, 6)?);
            let sample: Vec<Weight> =
                (0..20).map(|_| Weight::new((0..n).map(|_| rng.gen_range(-6..=10)).collect())).collect();
            out.push(dot_invariance(&sample)?);
        }
    }
    Ok(())
}

fn verma_suite(opts: &Options, out: &mut Report) -> Result<()> {
    let mut rng = rng(opts.seed);
    for n in opts.ranks(&[1, 2, 3]) {
        for k in sample_weights(n)? {
            if n <= 2 {
                out.push(action_relations(&k, 2)?);
                out.push(central_action(&k, 2)?);
            }
            out.push(grade_one_branching(&k)?);
            out.push(ktype_bound(&k, 3)?);
            out.push(contravariance(&k, 2, 10, &mut rng)?);
        }
        if n == 2 {
            for k in [[5, 3], [7, 3], [6, 4]] {
                out.push(ladder(&Weight::new(k.to_vec()))?);
            }
        }
    }
    Ok(())
}

fn nhcalc_suite(opts: &Options, out: &mut Report) -> Result<()> {
    let mut rng = rng(opts.seed);
    let ranks = opts.ranks(&[1, 2]);
    for &n in &ranks {
        out.push(raise_lower_equivariance(n, 50, &mut rng)?);
        out.push(master_equivariance(n, 50, &mut rng)?);
        out.push(omega_equivariance(n, 50, &mut rng)?);
        out.push(e_nilpotence(n, 30, &mut rng)?);
        out.push(expansion_round_trip(n, 100, &mut rng)?);
        out.push(omega_eigen(&sample_weights(n)?)?);
    }
    if ranks.contains(&1) {
        out.push(projection_algebra(12, 3, &mut rng)?);
    }
    if ranks.contains(&2) {
        out.push(dk_equivariance(50, &mut rng)?);
        for k in [[5, 3], [7, 3], [6, 4]] {
            out.push(dk_output(&Weight::new(k.to_vec()), &mut rng)?);
        }
    }
    Ok(())
}

pub fn run_suite(suite: Suite, opts: &Options) -> Result<Report> {
    let mut out = Report::default();
    let suites = if suite == Suite::All { Suite::EACH.to_vec() } else { vec![suite] };
    for s in suites {
        match s {
            Suite::Lie => lie_suite(opts, &mut out)?,
            Suite::Center => center_suite(opts, &mut out)?,
            Suite::Chars => chars_suite(opts, &mut out)?,
            Suite::Verma => verma_suite(opts, &mut out)?,
            Suite::NhCalc => nhcalc_suite(opts, &mut out)?,
            Suite::All => unreachable!("expanded above"),
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn check_reports_counterexamples() {
        let mut c = Check::new("demo");
        assert!(!c.passed());
        c.case(true, || unreachable!());
        assert!(c.passed());
        for i in 0..5 {
            c.case(false, || format!("case {}", i));
        }
        let text = c.to_string();
        assert!(text.starts_with("FAIL demo (5 of 6 cases failed)"));
        assert_eq!(text.matches("counterexample").count(), 3);
    }

    #[test]
    fn suites_parse_by_name() {
        for s in Suite::EACH.into_iter().chain([Suite::All]) {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn lie_suite_for_one_rank() {
        let opts = Options { n: Some(1), ..Options::default() };
        let report = run_suite(Suite::Lie, &opts).unwrap();
        assert!(report.passed());
        assert_eq!(report.checks.len(), 6);
        assert!(report.to_string().ends_with("6 checks, 6 passed, 0 failed\n"));
    }

    #[test]
    fn weight_grid_sizes() {
        assert_eq!(weight_grid(2, 1, 10, false).len(), 100);
        assert_eq!(weight_grid(2, 1, 10, true).len(), 55);
        assert!(weight_grid(3, 0, 3, true).iter().all(|w| w.is_dominant()));
    }

    #[test]
    fn pieri_oracle_in_rank_two() {
        let got = pieri_grade_one(&Weight::new(vec![5, 3]));
        let keys: Vec<Weight> = got.keys().cloned().collect();
        // Sym^2 (x) F_(5,3) has dimension 3 * 3 = 1 + 3 + 5
        assert_eq!(keys, vec![Weight::new(vec![5, 5]), Weight::new(vec![6, 4]), Weight::new(vec![7, 3])]);
        let edge = pieri_grade_one(&Weight::new(vec![4, 4]));
        assert_eq!(edge.keys().cloned().collect::<Vec<_>>(), vec![Weight::new(vec![6, 4])]);
    }

    #[test]
    fn projections_in_rank_one() {
        assert!(projection_algebra(10, 2, &mut rng(5)).unwrap().passed());
    }
}
