use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratq(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

pub fn fmt_rat(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn parse_int(s: &str, allow_sign: bool) -> Option<BigInt> {
    let digits = match s.as_bytes().first() {
        Some(b'-') | Some(b'+') if allow_sign => &s[1..],
        _ => s,
    };
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

/// Parses `p/q` or `p` with an optional sign on the numerator.
pub fn parse_rat(s: &str) -> Option<Rat> {
    match s.split_once('/') {
        None => parse_int(s, true).map(Rat::from_integer),
        Some((p, q)) => {
            let p = parse_int(p, true)?;
            let q = parse_int(q, false)?;
            if q.is_zero() {
                return None;
            }
            Some(Rat::new(p, q))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        assert_eq!(parse_rat("6/4"), Some(ratq(3, 2)));
        assert_eq!(fmt_rat(&ratq(3, 2)), "3/2");
        assert_eq!(fmt_rat(&ratq(-4, 2)), "-2");
        assert_eq!(parse_rat("-7"), Some(rat(-7)));
        assert_eq!(parse_rat("1/0"), None);
        assert_eq!(parse_rat("1/-2"), None);
        assert_eq!(parse_rat(""), None);
        assert_eq!(parse_rat("- 1"), None);
    }
}
