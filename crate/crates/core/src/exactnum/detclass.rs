use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Signed;

use super::factor::{factorize, is_prime};
use super::rational::Rational;
use crate::error::{invalid, Result};
use crate::symbols::{artin, hilbert, legendre, Place, Sign};

/// A class in `Q₊^× / N(K^×)`, stored as its inert-prime support and the
/// bit recording the ramified/split component.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DetClass {
    pub p: u64,
    pub inert_support: BTreeSet<u64>,
    pub rs_bit: bool,
}

impl DetClass {
    pub fn identity(p: u64) -> Self {
        DetClass { p, inert_support: BTreeSet::new(), rs_bit: false }
    }

    pub fn is_trivial(&self) -> bool {
        self.inert_support.is_empty() && !self.rs_bit
    }

    /// Group law: symmetric difference of supports, XOR of bits.
    pub fn mul(&self, other: &DetClass) -> DetClass {
        assert_eq!(self.p, other.p);
        DetClass {
            p: self.p,
            inert_support: self.inert_support.symmetric_difference(&other.inert_support).copied().collect(),
            rs_bit: self.rs_bit ^ other.rs_bit,
        }
    }

    /// The positive integer `∏ℓ · g^bit`, with `g` the ramified/split generator.
    pub fn representative(&self) -> BigInt {
        let mut r: BigInt = self.inert_support.iter().map(|&l| BigInt::from(l)).product();
        if self.rs_bit {
            r *= BigInt::from(gamma_rs_generator(self.p).expect("rs_bit set only when p ≡ 1 mod 4"));
        }
        r
    }
}

impl fmt::Display for DetClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.representative())
    }
}

/// Class of a positive rational in `Q₊^× / N(K^×)`.
pub fn det_class_of(q: &Rational, p: u64) -> Result<DetClass> {
    if !q.is_positive() {
        return Err(invalid(format!("determinant class needs a positive rational, got {q}")));
    }
    if !is_prime(p) {
        return Err(invalid(format!("{p} is not prime")));
    }
    let mut support = BTreeSet::new();
    let mut residual = q.clone();
    for (part, in_numer) in [(q.numer(), true), (q.denom(), false)] {
        for (l, e) in factorize(part)? {
            if artin(p, l) != Sign::Minus {
                continue;
            }
            let le = Rational::from_integer(BigInt::from(l).pow(e));
            if in_numer {
                residual /= le;
            } else {
                residual *= le;
            }
            if e % 2 == 1 {
                support.insert(l);
            }
        }
    }
    let rs_bit = p % 4 == 1 && hilbert(&residual, &Rational::from_integer(BigInt::from(-(p as i64))), Place::Prime(2)) == Sign::Minus;
    Ok(DetClass { p, inert_support: support, rs_bit })
}

/// Smallest prime `ℓ₀ ≡ 3 (mod 4)` that is a non-residue mod `p`; its class
/// generates the ramified/split part of the determinant class group.
pub fn gamma_rs_generator(p: u64) -> Result<u64> {
    if p % 4 != 1 || !is_prime(p) {
        return Err(invalid(format!("the ramified/split generator needs a prime p ≡ 1 mod 4, got {p}")));
    }
    let mp = Rational::from_integer(BigInt::from(-(p as i64)));
    let mut l = 3u64;
    loop {
        if is_prime(l) && l % 4 == 3 && legendre(&BigInt::from(l), p)? == Sign::Minus {
            let g = Rational::from_integer(BigInt::from(l));
            let places = [Place::Infinity, Place::Prime(2), Place::Prime(p), Place::Prime(l)];
            let expected = |pl: &Place| match pl {
                Place::Prime(x) if *x == 2 || *x == p => Sign::Minus,
                _ => Sign::Plus,
            };
            if places.iter().all(|pl| hilbert(&g, &mp, *pl) == expected(pl)) {
                return Ok(l);
            }
        }
        l += 4;
        if l > 1 << 32 {
            return Err(invalid("no generator found"));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, rat};

    #[test]
    fn examples() {
        assert!(det_class_of(&int(1), 7).unwrap().is_trivial());
        let c = det_class_of(&int(3), 5).unwrap();
        assert!(c.inert_support.is_empty() && c.rs_bit);
        let c = det_class_of(&int(11), 5).unwrap();
        assert_eq!(c.inert_support.iter().copied().collect::<Vec<_>>(), vec![11]);
        assert!(!c.rs_bit);
        let c = det_class_of(&int(2), 3).unwrap();
        assert_eq!(c.inert_support.iter().copied().collect::<Vec<_>>(), vec![2]);
        assert!(det_class_of(&int(-1), 3).is_err());
    }

    #[test]
    fn generators() {
        assert_eq!(gamma_rs_generator(5).unwrap(), 3);
        assert_eq!(gamma_rs_generator(13).unwrap(), 7);
        assert!(gamma_rs_generator(7).is_err());
    }

    #[test]
    fn class_of_two() {
        for p in [5u64, 13, 29, 37] {
            let c = det_class_of(&int(2), p).unwrap();
            let g = det_class_of(&int(gamma_rs_generator(p).unwrap() as i64), p).unwrap();
            assert_eq!(c, g);
        }
        for p in [17u64, 41, 73] {
            assert!(det_class_of(&int(2), p).unwrap().is_trivial());
        }
        assert!(det_class_of(&rat(16, 9), 11).unwrap().is_trivial());
        assert_eq!(det_class_of(&int(2), 11).unwrap().to_string(), "[2]");
    }
}
