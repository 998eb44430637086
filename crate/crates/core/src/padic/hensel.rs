use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::int::{lpow, mod_inverse, PadicInt};
use crate::error::{Error, Result};
use crate::exactnum::Rational;
use crate::symbols::{hilbert, Place, Sign};

fn eval(f: &[BigInt], x: &BigInt) -> BigInt {
    f.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

fn derivative(f: &[BigInt]) -> Vec<BigInt> {
    f.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect()
}

/// Root in `Z_ℓ` modulo `ℓ^prec` of a polynomial with integer coefficients
/// (listed from the constant term upwards), lifted from the smallest simple
/// root modulo `ℓ` by Newton iteration.
pub fn hensel_root(f: &[BigInt], l: u64, prec: u32) -> Result<PadicInt> {
    hensel_root_from(f, l, prec, 0)
}

/// As [`hensel_root`], but only residues `r ≥ start` are considered.
pub fn hensel_root_from(f: &[BigInt], l: u64, prec: u32, start: u64) -> Result<PadicInt> {
    let df = derivative(f);
    let bl = BigInt::from(l);
    let r0 = (start..l)
        .map(BigInt::from)
        .find(|r| eval(f, r).mod_floor(&bl).is_zero() && !eval(&df, r).mod_floor(&bl).is_zero())
        .ok_or(Error::NoRoot)?;
    let m = lpow(l, prec);
    let mut x = r0;
    let mut known = 1u32;
    while known < prec {
        let d = mod_inverse(&eval(&df, &x), &m).ok_or(Error::NoRoot)?;
        x = (&x - eval(f, &x) * d).mod_floor(&m);
        known *= 2;
    }
    debug_assert!(eval(f, &x).mod_floor(&m).is_zero());
    Ok(PadicInt::new(l, prec, &x))
}

/// Whether `a` is a norm from `Q_ℓ(√-p)`.
pub fn is_local_norm(a: &Rational, p: u64, l: u64) -> bool {
    hilbert(a, &Rational::from_integer(BigInt::from(-(p as i64))), Place::Prime(l)) == Sign::Plus
}
