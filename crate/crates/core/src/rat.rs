//! Exact rational scalars.
//!
//! Every symbolic computation in this crate runs over `Rat`, an
//! arbitrary-precision rational kept in lowest terms. Floating point
//! appears only in the Monte-Carlo integrator.

use num::bigint::BigInt;
pub use num::rational::BigRational as Rat;
use num::traits::{One, Signed, Zero};

/// `n/d` as an exact rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Integer as an exact rational.
pub fn rint(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Exact factorial.
pub fn factorial(n: usize) -> Rat {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    Rat::from_integer(acc)
}

pub fn is_zero(r: &Rat) -> bool {
    r.is_zero()
}

/// Parse "p" or "p/q" with optional sign, arbitrary precision.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    match s.split_once('/') {
        Some((p, q)) => {
            let num: BigInt = p.trim().parse().ok()?;
            let den: BigInt = q.trim().parse().ok()?;
            if den.is_zero() {
                return None;
            }
            Some(Rat::new(num, den))
        }
        None => {
            let num: BigInt = s.parse().ok()?;
            Some(Rat::from_integer(num))
        }
    }
}

/// Render as "p" or "p/q" (lowest terms, q > 0).
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Magnitude part of the rendering, used when the sign is printed separately.
pub fn format_rat_abs(r: &Rat) -> String {
    format_rat(&r.abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_to_lowest_terms() {
        let r = rat(6, -8);
        assert_eq!(format_rat(&r), "-3/4");
        assert_eq!(r, rat(-3, 4));
    }

    #[test]
    fn parses_signed_fractions() {
        assert_eq!(parse_rat("-1/48"), Some(rat(-1, 48)));
        assert_eq!(parse_rat("7"), Some(rint(7)));
        assert_eq!(parse_rat("3/0"), None);
        assert_eq!(parse_rat(""), None);
    }

    #[test]
    fn factorial_values() {
        assert_eq!(factorial(0), rint(1));
        assert_eq!(factorial(5), rint(120));
    }
}
