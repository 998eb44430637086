//! Legendre, Hilbert and Artin symbols over `Q` and `Q_ℓ`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::exactnum::{factorize, is_prime, Rational};

/// Value of a quadratic symbol. Only the Artin symbol can be `Zero`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Minus,
    Zero,
    Plus,
}

impl Sign {
    pub fn value(self) -> i8 {
        match self {
            Sign::Minus => -1,
            Sign::Zero => 0,
            Sign::Plus => 1,
        }
    }

    pub fn from_bool(plus: bool) -> Sign {
        if plus {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    /// Product of two `±1` signs.
    pub fn times(self, o: Sign) -> Sign {
        match self.value() * o.value() {
            1 => Sign::Plus,
            -1 => Sign::Minus,
            _ => Sign::Zero,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:+}", self.value())
    }
}

/// A place of `Q`: the real place or a finite prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    Infinity,
    Prime(u64),
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Infinity => write!(f, "∞"),
            Place::Prime(l) => write!(f, "{l}"),
        }
    }
}

fn pow_mod(b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u128;
    let mut x = (b % m) as u128;
    let m128 = m as u128;
    while e > 0 {
        if e & 1 == 1 {
            r = r * x % m128;
        }
        x = x * x % m128;
        e >>= 1;
    }
    r as u64
}

/// Legendre symbol `(a/ℓ)` for an odd prime `ℓ ∤ a`.
pub fn legendre(a: &BigInt, l: u64) -> Result<Sign> {
    if l == 2 || !is_prime(l) {
        return Err(invalid(format!("Legendre symbol needs an odd prime, got {l}")));
    }
    let r = a.mod_floor(&BigInt::from(l)).to_u64().unwrap_or(0);
    if r == 0 {
        return Err(invalid(format!("{l} divides {a}")));
    }
    Ok(Sign::from_bool(pow_mod(r, (l - 1) / 2, l) == 1))
}

/// Splits a nonzero integer as `ℓ^v · u` with `ℓ ∤ u`.
fn split_off(n: &BigInt, l: u64) -> (u32, BigInt) {
    let bl = BigInt::from(l);
    let mut u = n.clone();
    let mut v = 0;
    loop {
        let (q, r) = u.div_rem(&bl);
        if !r.is_zero() {
            return (v, u);
        }
        u = q;
        v += 1;
    }
}

fn eps(u: &BigInt) -> bool {
    // (u - 1)/2 mod 2 for odd u
    let r = u.mod_floor(&BigInt::from(4)).to_u64().unwrap();
    r == 3
}

fn omega2(u: &BigInt) -> bool {
    // (u² - 1)/8 mod 2 for odd u
    let r = u.mod_floor(&BigInt::from(8)).to_u64().unwrap();
    r == 3 || r == 5
}

/// Same square class as `q`, but integral: `num · den`.
fn integral_rep(q: &Rational) -> BigInt {
    q.numer() * q.denom()
}

/// Hilbert symbol `(a, b)_v` for nonzero rationals.
pub fn hilbert(a: &Rational, b: &Rational, place: Place) -> Sign {
    assert!(!a.is_zero() && !b.is_zero(), "Hilbert symbol of zero");
    let (a, b) = (integral_rep(a), integral_rep(b));
    match place {
        Place::Infinity => Sign::from_bool(!(a.is_negative() && b.is_negative())),
        Place::Prime(2) => {
            let (al, u) = split_off(&a, 2);
            let (be, v) = split_off(&b, 2);
            let mut e = eps(&u) && eps(&v);
            if al % 2 == 1 && omega2(&v) {
                e = !e;
            }
            if be % 2 == 1 && omega2(&u) {
                e = !e;
            }
            Sign::from_bool(!e)
        }
        Place::Prime(l) => {
            let (al, u) = split_off(&a, l);
            let (be, v) = split_off(&b, l);
            let mut s = Sign::Plus;
            let el = (l % 4) == 3;
            if (al % 2 == 1) && (be % 2 == 1) && el {
                s = s.times(Sign::Minus);
            }
            if be % 2 == 1 {
                s = s.times(legendre(&u, l).expect("unit at l"));
            }
            if al % 2 == 1 {
                s = s.times(legendre(&v, l).expect("unit at l"));
            }
            s
        }
    }
}

/// Artin symbol `(K/ℓ)` of `K = Q(√-p)`: `+1` split, `-1` inert, `0` ramified.
pub fn artin(p: u64, l: u64) -> Sign {
    if l == p {
        return Sign::Zero;
    }
    if l == 2 {
        return match p % 8 {
            1 | 5 => Sign::Zero,
            7 => Sign::Plus,
            _ => Sign::Minus,
        };
    }
    legendre(&BigInt::from(-(p as i64)), l).expect("l odd prime different from p")
}

/// Every place at which `(a, b)_v` can be nontrivial: `∞`, `2`, and the
/// primes dividing numerators or denominators.
pub fn relevant_places(a: &Rational, b: &Rational) -> Result<Vec<Place>> {
    let mut primes = vec![2u64];
    for n in [a.numer(), a.denom(), b.numer(), b.denom()] {
        if n.abs().is_one() {
            continue;
        }
        for (l, _) in factorize(n)? {
            primes.push(l);
        }
    }
    primes.sort_unstable();
    primes.dedup();
    let mut out = vec![Place::Infinity];
    out.extend(primes.into_iter().map(Place::Prime));
    Ok(out)
}

/// Product of `(a, b)_v` over all places; always `+1` by reciprocity.
pub fn hilbert_product(a: &Rational, b: &Rational) -> Result<Sign> {
    Ok(relevant_places(a, b)?
        .into_iter()
        .fold(Sign::Plus, |acc, v| acc.times(hilbert(a, b, v))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, rat};

    #[test]
    fn legendre_examples() {
        assert_eq!(legendre(&BigInt::from(1), 7).unwrap(), Sign::Plus);
        assert_eq!(legendre(&BigInt::from(3), 5).unwrap(), Sign::Minus);
        assert_eq!(legendre(&BigInt::from(2), 7).unwrap(), Sign::Plus);
        assert!(legendre(&BigInt::from(14), 7).is_err());
        assert!(legendre(&BigInt::from(3), 2).is_err());
    }

    #[test]
    fn hilbert_examples() {
        assert_eq!(hilbert(&int(2), &int(3), Place::Prime(7)), Sign::Plus);
        assert_eq!(hilbert(&int(3), &int(-5), Place::Prime(5)), Sign::Minus);
        assert_eq!(hilbert(&int(2), &int(-7), Place::Prime(2)), Sign::Plus);
        assert_eq!(hilbert(&int(-1), &int(-1), Place::Prime(2)), Sign::Minus);
        assert_eq!(hilbert(&int(-1), &int(-1), Place::Infinity), Sign::Minus);
        assert_eq!(hilbert(&rat(3, 4), &int(-5), Place::Prime(5)), Sign::Minus);
    }

    #[test]
    fn artin_examples() {
        assert_eq!(artin(7, 2), Sign::Plus);
        assert_eq!(artin(5, 2), Sign::Zero);
        assert_eq!(artin(5, 11), Sign::Minus);
        assert_eq!(artin(3, 2), Sign::Minus);
        assert_eq!(artin(2, 2), Sign::Zero);
        assert_eq!(artin(2, 3), Sign::Plus);
    }

    #[test]
    fn reciprocity_small_grid() {
        for a in -12i64..=12 {
            for b in -12i64..=12 {
                if a != 0 && b != 0 {
                    assert_eq!(hilbert_product(&int(a), &int(b)).unwrap(), Sign::Plus, "({a},{b})");
                }
            }
        }
    }
}
