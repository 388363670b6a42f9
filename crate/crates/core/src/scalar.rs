//! Exact rational scalars. Everything in this crate is computed over `Q`;
//! there is no floating point anywhere.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

/// The scalar field: arbitrary-precision rationals.
pub type Q = BigRational;

/// Shorthand for a rational from an integer.
pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Shorthand for a rational `n/d`.
pub fn qr(n: i64, d: i64) -> Q {
    assert!(d != 0, "zero denominator");
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Parses a rational literal of the form `p` or `p/q` (no decimals).
pub fn parse_rational(s: &str) -> Result<Q, String> {
    let s = s.trim();
    if s.contains('.') {
        return Err(format!("decimal literals are not accepted: {s:?}"));
    }
    s.parse::<Q>().map_err(|e| format!("bad rational {s:?}: {e}"))
}

/// Formats a rational as `p/q` with `q > 0` and gcd-reduced, or `p` when `q = 1`.
///
/// `BigRational` keeps exactly this canonical form internally, so `Display`
/// already produces it; this wrapper exists to pin the convention by name.
pub fn format_rational(q: &Q) -> String {
    q.to_string()
}

/// `(-1)^k` as a rational sign.
pub fn sign_pow(k: u32) -> Q {
    if k % 2 == 0 {
        Q::one()
    } else {
        -Q::one()
    }
}

/// Exact binomial coefficient `C(n, k)` for small `k`.
pub fn binomial(n: i64, k: u32) -> Q {
    let mut acc = Q::one();
    for i in 0..k as i64 {
        acc *= Q::from_integer(BigInt::from(n - i));
        acc /= Q::from_integer(BigInt::from(i + 1));
    }
    acc
}

/// Exact factorial as a rational.
pub fn factorial(n: u32) -> Q {
    let mut acc = Q::one();
    for i in 2..=n as i64 {
        acc *= Q::from_integer(BigInt::from(i));
    }
    acc
}

pub fn is_zero(q: &Q) -> bool {
    q.is_zero()
}

pub fn abs(q: &Q) -> Q {
    q.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_literals_round_trip() {
        for s in ["0", "3", "-1/2", "7/3", "-24"] {
            let q = parse_rational(s).unwrap();
            assert_eq!(format_rational(&q), s);
        }
    }

    #[test]
    fn rejects_decimals_and_garbage() {
        assert!(parse_rational("0.5").is_err());
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("1/0").is_err());
    }

    #[test]
    fn non_canonical_input_is_reduced() {
        assert_eq!(format_rational(&parse_rational("2/4").unwrap()), "1/2");
        assert_eq!(format_rational(&parse_rational("3/-6").unwrap()), "-1/2");
    }

    #[test]
    fn binomial_small_values() {
        assert_eq!(binomial(5, 2), qi(10));
        assert_eq!(binomial(-1, 2), qi(1));
        assert_eq!(binomial(3, 0), qi(1));
        assert_eq!(binomial(2, 5), qi(0));
    }
}
