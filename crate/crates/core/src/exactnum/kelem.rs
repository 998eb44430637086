use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::{format_rational, Rational};
use crate::error::{Error, Result};

/// An element `a + b√-p` of `K = Q(√-p)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KElem {
    pub p: u64,
    pub a: Rational,
    pub b: Rational,
}

impl KElem {
    pub fn new(p: u64, a: Rational, b: Rational) -> Self {
        KElem { p, a, b }
    }

    pub fn zero(p: u64) -> Self {
        KElem::new(p, Rational::zero(), Rational::zero())
    }

    pub fn one(p: u64) -> Self {
        Self::from_rational(p, Rational::one())
    }

    pub fn from_int(p: u64, n: i64) -> Self {
        Self::from_rational(p, Rational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(p: u64, a: Rational) -> Self {
        KElem::new(p, a, Rational::zero())
    }

    /// The element `√-p`.
    pub fn sqrt_mp(p: u64) -> Self {
        KElem::new(p, Rational::zero(), Rational::one())
    }

    /// Integral-basis generator of `O_K`: `√-p`, or `(1+√-p)/2` when `p ≡ 3 (mod 4)`.
    pub fn omega(p: u64) -> Self {
        if p % 4 == 3 {
            let h = Rational::new(BigInt::one(), BigInt::from(2));
            KElem::new(p, h.clone(), h)
        } else {
            Self::sqrt_mp(p)
        }
    }

    pub fn pm(&self) -> Rational {
        Rational::from_integer(BigInt::from(self.p))
    }

    pub fn conj(&self) -> Self {
        KElem::new(self.p, self.a.clone(), -self.b.clone())
    }

    pub fn norm(&self) -> Rational {
        &self.a * &self.a + self.pm() * &self.b * &self.b
    }

    pub fn trace(&self) -> Rational {
        &self.a + &self.a
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn scale(&self, q: &Rational) -> Self {
        KElem::new(self.p, &self.a * q, &self.b * q)
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::SingularGram);
        }
        let n = self.norm();
        Ok(self.conj().scale(&(Rational::one() / n)))
    }

    pub fn div(&self, other: &KElem) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = KElem::one(self.p);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Membership in `O_K`.
    pub fn in_ok(&self) -> bool {
        if self.p % 4 == 3 {
            let two = Rational::from_integer(BigInt::from(2));
            let a2 = &self.a * &two;
            let b2 = &self.b * &two;
            a2.is_integer() && b2.is_integer() && (&self.a - &self.b).is_integer()
        } else {
            self.a.is_integer() && self.b.is_integer()
        }
    }

    /// Membership in `Z[√-p]`.
    pub fn in_r(&self) -> bool {
        self.a.is_integer() && self.b.is_integer()
    }

    /// Membership in the localization of `O_K` at the rational prime `l`.
    pub fn in_ok_at(&self, l: u64) -> bool {
        if l == 2 && self.p % 4 == 3 {
            let two = Rational::from_integer(BigInt::from(2));
            integral_at(&(&self.a * &two), l)
                && integral_at(&(&self.b * &two), l)
                && integral_at(&(&self.a - &self.b), l)
        } else {
            integral_at(&self.a, l) && integral_at(&self.b, l)
        }
    }

    /// Membership in the localization of `Z[√-p]` at `l`.
    pub fn in_r_at(&self, l: u64) -> bool {
        integral_at(&self.a, l) && integral_at(&self.b, l)
    }
}

/// `q` has no `l` in its denominator.
pub(crate) fn integral_at(q: &Rational, l: u64) -> bool {
    q.denom().mod_floor(&BigInt::from(l)) != BigInt::zero()
}

/// `Nm(x) = a² + p b²`.
pub fn k_norm(x: &KElem) -> Rational {
    x.norm()
}

fn same_field(x: &KElem, y: &KElem) {
    assert_eq!(x.p, y.p, "elements of different fields Q(√-{}) and Q(√-{})", x.p, y.p);
}

impl Add for &KElem {
    type Output = KElem;
    fn add(self, o: &KElem) -> KElem {
        same_field(self, o);
        KElem::new(self.p, &self.a + &o.a, &self.b + &o.b)
    }
}

impl Sub for &KElem {
    type Output = KElem;
    fn sub(self, o: &KElem) -> KElem {
        same_field(self, o);
        KElem::new(self.p, &self.a - &o.a, &self.b - &o.b)
    }
}

impl Mul for &KElem {
    type Output = KElem;
    fn mul(self, o: &KElem) -> KElem {
        same_field(self, o);
        let pm = self.pm();
        KElem::new(
            self.p,
            &self.a * &o.a - pm * &self.b * &o.b,
            &self.a * &o.b + &self.b * &o.a,
        )
    }
}

impl Neg for &KElem {
    type Output = KElem;
    fn neg(self) -> KElem {
        KElem::new(self.p, -self.a.clone(), -self.b.clone())
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for KElem {
            type Output = KElem;
            fn $m(self, o: KElem) -> KElem { (&self).$m(&o) }
        }
        impl $tr<&KElem> for KElem {
            type Output = KElem;
            fn $m(self, o: &KElem) -> KElem { (&self).$m(o) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for KElem {
    type Output = KElem;
    fn neg(self) -> KElem {
        -&self
    }
}

impl fmt::Display for KElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", format_rational(&self.a));
        }
        let b = if self.b.abs().is_one() {
            String::new()
        } else {
            format!("{}·", format_rational(&self.b.abs()))
        };
        let sign = if self.b.is_negative() { "-" } else { "+" };
        if self.a.is_zero() {
            let lead = if self.b.is_negative() { "-" } else { "" };
            write!(f, "{lead}{b}√-{}", self.p)
        } else {
            write!(f, "{} {sign} {b}√-{}", format_rational(&self.a), self.p)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    #[test]
    fn norm_examples() {
        assert_eq!(k_norm(&KElem::one(7)), rat(1, 1));
        assert_eq!(k_norm(&KElem::sqrt_mp(7)), rat(7, 1));
        assert_eq!(k_norm(&KElem::new(7, rat(3, 2), rat(1, 2))), rat(4, 1));
    }

    #[test]
    fn omega_membership() {
        let w = KElem::omega(7);
        assert!(w.in_ok() && !w.in_r());
        assert!(w.in_ok_at(2) && !w.in_r_at(2));
        assert!(KElem::omega(5).in_r());
        assert!(!KElem::new(5, rat(1, 2), rat(1, 2)).in_ok());
    }

    #[test]
    fn inverse_and_display() {
        let x = KElem::new(5, rat(1, 1), rat(2, 1));
        let y = x.inv().unwrap();
        assert_eq!(&x * &y, KElem::one(5));
        assert_eq!(x.to_string(), "1 + 2·√-5");
        assert_eq!((-KElem::sqrt_mp(2)).to_string(), "-√-2");
    }
}
