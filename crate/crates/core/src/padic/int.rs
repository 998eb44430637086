use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{invalid, Error, Result};
use crate::exactnum::Rational;

/// A valuation that may be undetectable at the working precision.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Val {
    Finite(i64),
    Infinite,
}

impl Val {
    pub fn finite(self) -> Option<i64> {
        match self {
            Val::Finite(v) => Some(v),
            Val::Infinite => None,
        }
    }

    pub fn require(self, what: &str) -> Result<i64> {
        self.finite()
            .ok_or_else(|| Error::InsufficientPrecision(format!("{what} is zero at the working precision")))
    }
}

impl PartialOrd for Val {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for Val {
    fn cmp(&self, o: &Self) -> Ordering {
        match (self, o) {
            (Val::Finite(a), Val::Finite(b)) => a.cmp(b),
            (Val::Finite(_), Val::Infinite) => Ordering::Less,
            (Val::Infinite, Val::Finite(_)) => Ordering::Greater,
            (Val::Infinite, Val::Infinite) => Ordering::Equal,
        }
    }
}

impl fmt::Display for Val {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Val::Finite(v) => write!(f, "{v}"),
            Val::Infinite => write!(f, "∞"),
        }
    }
}

/// `ℓ^k` as a big integer.
pub fn lpow(l: u64, k: u32) -> BigInt {
    if l == 2 {
        BigInt::one() << k
    } else {
        BigInt::from(l).pow(k)
    }
}

/// ℓ-adic valuation of an integer, capped at `cap` (returned as `Infinite`).
pub(crate) fn int_val(n: &BigInt, l: u64, cap: u32) -> Val {
    if n.is_zero() {
        return Val::Infinite;
    }
    let bl = BigInt::from(l);
    let mut m = n.clone();
    let mut v = 0u32;
    while v < cap {
        let (q, r) = m.div_rem(&bl);
        if !r.is_zero() {
            return Val::Finite(v as i64);
        }
        m = q;
        v += 1;
    }
    Val::Infinite
}

/// Residue of a rational that is integral at `ℓ`, reduced modulo `ℓ^prec`.
pub(crate) fn rational_residue(q: &Rational, l: u64, prec: u32) -> Result<BigInt> {
    let m = lpow(l, prec);
    let den = q.denom().mod_floor(&m);
    let inv = mod_inverse(&den, &m).ok_or_else(|| invalid(format!("{q} is not integral at {l}")))?;
    Ok((q.numer() * inv).mod_floor(&m))
}

/// Inverse of `a` modulo `m`, if `gcd(a, m) = 1`.
pub(crate) fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

/// An element of `Z_ℓ` known modulo `ℓ^prec`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PadicInt {
    pub l: u64,
    pub prec: u32,
    pub residue: BigInt,
}

impl PadicInt {
    pub fn new(l: u64, prec: u32, value: &BigInt) -> Self {
        PadicInt { l, prec, residue: value.mod_floor(&lpow(l, prec)) }
    }

    pub fn from_i64(l: u64, prec: u32, v: i64) -> Self {
        Self::new(l, prec, &BigInt::from(v))
    }

    pub fn from_rational(l: u64, prec: u32, q: &Rational) -> Result<Self> {
        Ok(PadicInt { l, prec, residue: rational_residue(q, l, prec)? })
    }

    pub fn modulus(&self) -> BigInt {
        lpow(self.l, self.prec)
    }

    pub fn is_zero(&self) -> bool {
        self.residue.is_zero()
    }

    pub fn val(&self) -> Val {
        int_val(&self.residue, self.l, self.prec)
    }

    pub fn is_unit(&self) -> bool {
        self.val() == Val::Finite(0)
    }

    fn combine(&self, o: &PadicInt, f: impl Fn(&BigInt, &BigInt) -> BigInt) -> PadicInt {
        assert_eq!(self.l, o.l);
        let prec = self.prec.min(o.prec);
        PadicInt::new(self.l, prec, &f(&self.residue, &o.residue))
    }

    pub fn add(&self, o: &PadicInt) -> PadicInt {
        self.combine(o, |a, b| a + b)
    }

    pub fn sub(&self, o: &PadicInt) -> PadicInt {
        self.combine(o, |a, b| a - b)
    }

    pub fn mul(&self, o: &PadicInt) -> PadicInt {
        self.combine(o, |a, b| a * b)
    }

    pub fn neg(&self) -> PadicInt {
        PadicInt::new(self.l, self.prec, &-self.residue.clone())
    }

    pub fn inv(&self) -> Result<PadicInt> {
        let m = self.modulus();
        let r = mod_inverse(&self.residue, &m)
            .ok_or_else(|| invalid(format!("{} is not a unit at {}", self.residue, self.l)))?;
        Ok(PadicInt { l: self.l, prec: self.prec, residue: r })
    }

    /// Exact division by `ℓ^k`; the result is known to `prec − k` digits.
    pub fn div_l_pow(&self, k: u32) -> Result<PadicInt> {
        if k > self.prec {
            return Err(Error::InsufficientPrecision(format!("cannot divide by {}^{k} at precision {}", self.l, self.prec)));
        }
        let d = lpow(self.l, k);
        let (q, r) = self.residue.div_rem(&d);
        if !r.is_zero() {
            return Err(invalid(format!("{} is not divisible by {}^{k}", self.residue, self.l)));
        }
        Ok(PadicInt::new(self.l, self.prec - k, &q))
    }

    pub fn truncate(&self, prec: u32) -> PadicInt {
        PadicInt::new(self.l, prec.min(self.prec), &self.residue)
    }

    /// Representative in `(−ℓ^prec/2, ℓ^prec/2]`.
    pub fn signed(&self) -> BigInt {
        symmetric(&self.residue, &self.modulus())
    }
}

pub(crate) fn symmetric(r: &BigInt, m: &BigInt) -> BigInt {
    let r = r.mod_floor(m);
    if (&r + &r) > *m {
        r - m
    } else {
        r
    }
}

/// ℓ-adic valuation; `Infinite` when the residue vanishes at the working precision.
pub fn padic_val(x: &PadicInt) -> Val {
    x.val()
}

impl fmt::Display for PadicInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + O({}^{})", self.signed(), self.l, self.prec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    #[test]
    fn valuation_examples() {
        assert_eq!(PadicInt::from_i64(2, 16, 8).val(), Val::Finite(3));
        assert_eq!(PadicInt::from_i64(2, 16, 1 << 16).val(), Val::Infinite);
        assert_eq!(PadicInt::from_i64(3, 10, -9).val(), Val::Finite(2));
    }

    #[test]
    fn arithmetic() {
        let a = PadicInt::from_rational(5, 8, &rat(1, 3)).unwrap();
        let three = PadicInt::from_i64(5, 8, 3);
        assert_eq!(a.mul(&three), PadicInt::from_i64(5, 8, 1));
        assert_eq!(three.inv().unwrap(), a);
        assert!(PadicInt::from_rational(5, 8, &rat(1, 5)).is_err());
        let x = PadicInt::from_i64(2, 10, 12).div_l_pow(2).unwrap();
        assert_eq!((x.prec, x.residue.clone()), (8, BigInt::from(3)));
        assert!(PadicInt::from_i64(2, 10, 6).div_l_pow(2).is_err());
        assert_eq!(PadicInt::from_i64(7, 3, -2).signed(), BigInt::from(-2));
        assert!(Val::Finite(100) < Val::Infinite);
    }
}
