use std::fmt;

use super::gen::{Gen, GenKind};
use super::rat::{fmt_rat, parse_rat};
use super::uea::{Monomial, UeaElement};
use crate::error::{Error, Result};

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (k, g) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", g)?;
        }
        Ok(())
    }
}

/// One term per line, `<rational> * <generators>`; the zero element is `0`.
impl fmt::Display for UeaElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return writeln!(f, "0");
        }
        for (m, c) in self.terms() {
            writeln!(f, "{} * {}", fmt_rat(c), m)?;
        }
        Ok(())
    }
}

fn parse_index(s: &str) -> Option<usize> {
    if s.is_empty() || s.len() > 3 || !s.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

pub(crate) fn parse_gen(tok: &str, n: usize) -> std::result::Result<Gen, String> {
    let (kind, rest) = if let Some(r) = tok.strip_prefix("E+") {
        (GenKind::EPlus, r)
    } else if let Some(r) = tok.strip_prefix("E-") {
        (GenKind::EMinus, r)
    } else if let Some(r) = tok.strip_prefix('B') {
        (GenKind::B, r)
    } else {
        return Err(format!("unknown generator `{}`", tok));
    };
    let inner = rest
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| format!("malformed generator `{}`", tok))?;
    let (i, j) = inner.split_once(',').ok_or_else(|| format!("malformed generator `{}`", tok))?;
    let (i, j) = match (parse_index(i.trim()), parse_index(j.trim())) {
        (Some(i), Some(j)) => (i, j),
        _ => return Err(format!("bad indices in `{}`", tok)),
    };
    if i == 0 || j == 0 || i > n || j > n {
        return Err(format!("index out of range in `{}` at rank {}", tok, n));
    }
    Ok(Gen::new(kind, i, j))
}

impl UeaElement {
    /// Parses the line format printed by `Display`. Blank lines and lines
    /// starting with `#` are skipped; repeated monomials are summed.
    pub fn parse(text: &str, n: usize) -> Result<UeaElement> {
        if n == 0 {
            return Err(Error::Invalid("rank must be positive".into()));
        }
        let mut out = UeaElement::zero(n);
        for (ln, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if line == "0" {
                continue;
            }
            let (c, gens) = line
                .split_once('*')
                .ok_or_else(|| Error::parse(ln + 1, "expected `<rational> * <generators>`"))?;
            let c = parse_rat(c.trim()).ok_or_else(|| Error::parse(ln + 1, "bad coefficient"))?;
            let gens = gens.trim();
            let mut factors = Vec::new();
            if gens != "1" {
                for tok in gens.split_whitespace() {
                    factors.push(parse_gen(tok, n).map_err(|m| Error::parse(ln + 1, m))?);
                }
                if factors.is_empty() {
                    return Err(Error::parse(ln + 1, "missing generators"));
                }
            }
            out.add_term(Monomial(factors), c);
        }
        Ok(out)
    }
}
