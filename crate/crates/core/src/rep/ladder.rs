use num_traits::{One, Zero};

use crate::algebra::{fmt_rat, Rat, UeaElement};
use crate::error::{Error, Result};
use crate::rep::{VermaModule, VermaVector};
use crate::weights::Weight;

/// `Y` with `Y v_k` a highest weight vector of weight `(k_1, ..., k_1)` in
/// grade `m` of N(k), outside the radical of the contravariant form.
#[derive(Clone, Debug)]
pub struct Ladder {
    pub k: Weight,
    pub m: usize,
    pub y: UeaElement,
    pub vector: VermaVector,
    /// Dimension of the highest weight space the vector was chosen from.
    pub solution_dim: usize,
}

pub fn ladder_grade(k: &Weight) -> Result<usize> {
    k.require_dominant()?;
    let n = k.rank() as i64;
    let k1 = k.0[0];
    if k.0.iter().any(|x| (x - k1).rem_euclid(2) != 0) {
        return Err(Error::Parity(format!("entries of {} differ in parity", k)));
    }
    if k.last() <= n {
        return Err(Error::Invalid(format!("need k_n > n for {}", k)));
    }
    Ok(((n * k1 - k.total()) / 2) as usize)
}

pub fn scalar_ladder(k: &Weight) -> Result<Ladder> {
    let m = ladder_grade(k)?;
    let module = VermaModule::new(k)?;
    let mu = Weight::scalar(k.rank(), k.0[0]);
    let hwvs = module.ktype_hwvs(m, &mu)?;
    let solution_dim = hwvs.len();
    let mut chosen = None;
    for v in hwvs {
        if module.avoids_radical(&v, m, &mu)? {
            chosen = Some(v);
            break;
        }
    }
    let vector = chosen.ok_or_else(|| {
        Error::Computation(format!(
            "no highest weight vector of weight {} in grade {} avoids the radical ({} candidates)",
            mu, m, solution_dim
        ))
    })?;
    let n = k.rank();
    let mut y = UeaElement::zero(n);
    for (key, c) in vector.terms() {
        y.add_term(module.key_monomial(key), c.clone());
    }
    let lead = y.terms().values().next().cloned().unwrap_or_else(Rat::one);
    let norm = lead.recip();
    Ok(Ladder { k: k.clone(), m, y: y.scale(&norm), vector: vector.scale(&norm), solution_dim })
}

impl Ladder {
    /// Header line followed by `Y` in the enveloping algebra text format.
    pub fn to_text(&self) -> String {
        let lead = self.y.terms().iter().next().map(|(m, c)| format!("{} * {}", fmt_rat(c), m)).unwrap_or_default();
        format!(
            "# ladder k={} m={} normalization=\"{}\" solutions={}\n{}",
            self.k, self.m, lead, self.solution_dim, self.y
        )
    }

    /// Re-derives every defining property of `Y` from scratch.
    pub fn certify(&self) -> Result<bool> {
        let module = VermaModule::new(&self.k)?;
        let n = self.k.rank();
        let mu = Weight::scalar(n, self.k.0[0]);
        let v = module.act_uea(&self.y, &module.hw())?;
        if v.is_zero() || v != self.vector || v.grade() != Some(self.m) {
            return Ok(false);
        }
        if v.terms().keys().any(|key| module.weight(key) != mu) {
            return Ok(false);
        }
        for i in 1..=n {
            for j in i + 1..=n {
                if !module.act_gen(crate::algebra::Gen::b(i, j), &v).is_zero() {
                    return Ok(false);
                }
            }
        }
        let lead_is_one = self.y.terms().values().next().is_some_and(|c| c.is_one());
        Ok(lead_is_one && !v.terms().values().all(Zero::is_zero) && module.avoids_radical(&v, self.m, &mu)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Weight {
        s.parse().unwrap()
    }

    #[test]
    fn scalar_weight_gives_one() {
        let l = scalar_ladder(&w("6,6")).unwrap();
        assert_eq!(l.m, 0);
        assert_eq!(l.y, UeaElement::one(2));
        assert!(l.certify().unwrap());
    }

    #[test]
    fn rank_two_examples() {
        for k in ["5,3", "7,3", "6,4"] {
            let l = scalar_ladder(&w(k)).unwrap();
            assert_eq!(l.m as i64, (w(k).0[0] - w(k).0[1]) / 2);
            assert!(l.certify().unwrap(), "{}", k);
        }
        assert_eq!(scalar_ladder(&w("5,3")).unwrap().solution_dim, 1);
    }

    #[test]
    fn errors() {
        assert!(matches!(scalar_ladder(&w("5,4")), Err(Error::Parity(_))));
        assert!(scalar_ladder(&w("4,2")).is_err());
        assert!(scalar_ladder(&w("3,5")).is_err());
    }

    #[test]
    fn text_header() {
        let l = scalar_ladder(&w("5,3")).unwrap();
        let t = l.to_text();
        assert!(t.starts_with("# ladder k=(5,3) m=1"));
        assert_eq!(UeaElement::parse(&t, 2).unwrap(), l.y);
    }
}
