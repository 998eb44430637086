use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{invalid, Result};

/// Reduced fraction with arbitrary-precision numerator and positive denominator.
pub type Rational = BigRational;

/// `n / d` as a reduced rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Integer `n` as a rational.
pub fn int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// Canonical decimal string: `"n"` for integers, `"n/d"` otherwise.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `"n"` or `"n/d"` (optional sign on the numerator only).
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| invalid(format!("bad rational numerator in {s:?}")))?;
    let d: BigInt = d.parse().map_err(|_| invalid(format!("bad rational denominator in {s:?}")))?;
    if d.is_zero() {
        return Err(invalid(format!("zero denominator in {s:?}")));
    }
    Ok(BigRational::new(n, d))
}
