use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::hensel::hensel_root;
use super::int::{int_val, lpow, rational_residue, symmetric, PadicInt, Val};
use crate::error::{invalid, Error, Result};
use crate::exactnum::{is_prime, KElem, Rational};
use crate::symbols::{artin, Sign};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    Split,
    Inert,
    Ramified,
}

/// The completion `K_ℓ = K ⊗ Q_ℓ` together with its maximal order, worked
/// with modulo `ℓ^prec`.
///
/// Elements are written `x + y·ω` in the integral basis `{1, ω}` of
/// `O_{K_ℓ}`, where `ω = (1+√-p)/2` if `ℓ = 2` and `p ≡ 3 (mod 4)`, and
/// `ω = √-p` otherwise. `ω` is a root of `X² − tX + m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LocalQuadAlg {
    pub p: u64,
    pub l: u64,
    pub prec: u32,
    pub kind: Kind,
    /// A square root of `−p` in `Z_ℓ` (split case only).
    pub split_root: Option<PadicInt>,
    pub t: u8,
    pub m: BigInt,
    omega_root: Option<PadicInt>,
}

pub type Alg = Arc<LocalQuadAlg>;

/// Builds `K_ℓ` for `K = Q(√-p)` at working precision `prec ≥ 4`.
pub fn make_local_alg(p: u64, l: u64, prec: u32) -> Result<Alg> {
    if prec < 4 {
        return Err(Error::InsufficientPrecision(format!("precision {prec} is below the minimum of 4")));
    }
    if !is_prime(p) || !is_prime(l) {
        return Err(invalid(format!("both p={p} and ℓ={l} must be prime")));
    }
    let kind = match artin(p, l) {
        Sign::Plus => Kind::Split,
        Sign::Minus => Kind::Inert,
        Sign::Zero => Kind::Ramified,
    };
    let (t, m) = if l == 2 && p % 4 == 3 { (1u8, BigInt::from((p + 1) / 4)) } else { (0u8, BigInt::from(p)) };
    let mut alg = LocalQuadAlg { p, l, prec, kind, split_root: None, t, m, omega_root: None };
    if kind == Kind::Split {
        // root of X² − tX + m; at ℓ = 2 pick the odd root so that 2w − 1 ≡ 1 (mod 4)
        let f = vec![alg.m.clone(), BigInt::from(-(t as i64)), BigInt::one()];
        let w = if l == 2 {
            hensel_from(&f, l, prec, 1)?
        } else {
            hensel_root(&f, l, prec)?
        };
        let u = if t == 1 {
            PadicInt::new(l, prec, &(BigInt::from(2) * &w.residue - 1))
        } else {
            w.clone()
        };
        alg.split_root = Some(u);
        alg.omega_root = Some(w);
    }
    Ok(Arc::new(alg))
}

fn hensel_from(f: &[BigInt], l: u64, prec: u32, start: u64) -> Result<PadicInt> {
    super::hensel::hensel_root_from(f, l, prec, start)
}

impl LocalQuadAlg {
    pub fn modulus(&self) -> BigInt {
        lpow(self.l, self.prec)
    }

    /// Ramification index of `K_ℓ / Q_ℓ`.
    pub fn e(&self) -> i64 {
        if self.kind == Kind::Ramified {
            2
        } else {
            1
        }
    }

    /// Whether `ω` itself is a uniformizer (ramified with `ℓ | m`).
    fn omega_is_uniformizer(&self) -> bool {
        self.kind == Kind::Ramified && (&self.m % BigInt::from(self.l)).is_zero()
    }

    pub fn describe(&self) -> String {
        let kind = match self.kind {
            Kind::Split => "split",
            Kind::Inert => "inert",
            Kind::Ramified => "ramified",
        };
        format!("Q_{}(√-{}) [{kind}, precision {}]", self.l, self.p, self.prec)
    }
}

/// An element `x + y·ω` of `O_{K_ℓ}` known modulo `ℓ^prec`.
#[derive(Clone)]
pub struct LocalKElem {
    pub alg: Alg,
    pub x: BigInt,
    pub y: BigInt,
    pub prec: u32,
}

impl PartialEq for LocalKElem {
    fn eq(&self, o: &Self) -> bool {
        let prec = self.prec.min(o.prec);
        let m = lpow(self.alg.l, prec);
        (&self.x - &o.x).mod_floor(&m).is_zero() && (&self.y - &o.y).mod_floor(&m).is_zero()
    }
}

impl fmt::Debug for LocalKElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for LocalKElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = lpow(self.alg.l, self.prec);
        let w = if self.alg.t == 1 { "ω" } else { "√-p" };
        write!(f, "({} + {}·{w} mod {}^{})", symmetric(&self.x, &m), symmetric(&self.y, &m), self.alg.l, self.prec)
    }
}

impl LocalKElem {
    pub fn new(alg: &Alg, x: BigInt, y: BigInt, prec: u32) -> Self {
        let prec = prec.min(alg.prec);
        let m = lpow(alg.l, prec);
        LocalKElem { alg: alg.clone(), x: x.mod_floor(&m), y: y.mod_floor(&m), prec }
    }

    pub fn zero(alg: &Alg) -> Self {
        Self::new(alg, BigInt::zero(), BigInt::zero(), alg.prec)
    }

    pub fn one(alg: &Alg) -> Self {
        Self::from_int(alg, 1)
    }

    pub fn from_int(alg: &Alg, n: i64) -> Self {
        Self::new(alg, BigInt::from(n), BigInt::zero(), alg.prec)
    }

    pub fn from_bigint(alg: &Alg, n: &BigInt) -> Self {
        Self::new(alg, n.clone(), BigInt::zero(), alg.prec)
    }

    pub fn from_padic(alg: &Alg, a: &PadicInt) -> Self {
        Self::new(alg, a.residue.clone(), BigInt::zero(), a.prec)
    }

    /// The basis element `ω`.
    pub fn omega(alg: &Alg) -> Self {
        Self::new(alg, BigInt::zero(), BigInt::one(), alg.prec)
    }

    /// The element `√-p`.
    pub fn sqrt_mp(alg: &Alg) -> Self {
        if alg.t == 1 {
            Self::new(alg, BigInt::from(-1), BigInt::from(2), alg.prec)
        } else {
            Self::omega(alg)
        }
    }

    /// Image of an exact element of `K`; fails if it is not integral at `ℓ`.
    pub fn from_kelem(alg: &Alg, z: &KElem) -> Result<Self> {
        if z.p != alg.p {
            return Err(invalid(format!("element of Q(√-{}) used in Q(√-{})", z.p, alg.p)));
        }
        let (x, y) = if alg.t == 1 {
            (&z.a - &z.b, &z.b * Rational::from_integer(BigInt::from(2)))
        } else {
            (z.a.clone(), z.b.clone())
        };
        let l = alg.l;
        let x = rational_residue(&x, l, alg.prec).map_err(|_| Error::IntegralityViolation(format!("{z} is not integral at {l}")))?;
        let y = rational_residue(&y, l, alg.prec).map_err(|_| Error::IntegralityViolation(format!("{z} is not integral at {l}")))?;
        Ok(Self::new(alg, x, y, alg.prec))
    }

    /// Lift to an exact element `a + b√-p` using symmetric residues.
    pub fn to_kelem(&self) -> KElem {
        let m = lpow(self.alg.l, self.prec);
        let x = Rational::from_integer(symmetric(&self.x, &m));
        let y = Rational::from_integer(symmetric(&self.y, &m));
        if self.alg.t == 1 {
            let h = Rational::new(BigInt::one(), BigInt::from(2));
            KElem::new(self.alg.p, &x + &y * &h, &y * &h)
        } else {
            KElem::new(self.alg.p, x, y)
        }
    }

    pub fn with_prec(&self, prec: u32) -> Self {
        Self::new(&self.alg, self.x.clone(), self.y.clone(), prec.min(self.prec))
    }

    pub fn conj(&self) -> Self {
        let t = BigInt::from(self.alg.t);
        Self::new(&self.alg, &self.x + &t * &self.y, -self.y.clone(), self.prec)
    }

    pub fn norm(&self) -> PadicInt {
        let t = BigInt::from(self.alg.t);
        let n = &self.x * &self.x + &t * &self.x * &self.y + &self.alg.m * &self.y * &self.y;
        PadicInt::new(self.alg.l, self.prec, &n)
    }

    pub fn trace(&self) -> PadicInt {
        let t = BigInt::from(self.alg.t);
        PadicInt::new(self.alg.l, self.prec, &(&self.x + &self.x + t * &self.y))
    }

    /// The `Z_ℓ`-coordinate when the element is σ-fixed.
    pub fn rational_part(&self) -> Option<PadicInt> {
        let m = lpow(self.alg.l, self.prec);
        if self.y.mod_floor(&m).is_zero() {
            Some(PadicInt::new(self.alg.l, self.prec, &self.x))
        } else {
            None
        }
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    /// Valuation in uniformizer units of `O_{K_ℓ}`; in the split case the
    /// minimum over the two components.
    pub fn val(&self) -> Val {
        let l = self.alg.l;
        if self.alg.kind != Kind::Ramified {
            return int_val(&self.x, l, self.prec).min(int_val(&self.y, l, self.prec));
        }
        if self.alg.omega_is_uniformizer() {
            let vx = match int_val(&self.x, l, self.prec) {
                Val::Finite(v) => Val::Finite(2 * v),
                Val::Infinite => Val::Infinite,
            };
            let vy = match int_val(&self.y, l, self.prec) {
                Val::Finite(v) => Val::Finite(2 * v + 1),
                Val::Infinite => Val::Infinite,
            };
            return vx.min(vy);
        }
        self.norm().val()
    }

    pub fn is_unit(&self) -> bool {
        self.norm().is_unit()
    }

    pub fn inv(&self) -> Result<Self> {
        let n = self.norm();
        if !n.is_unit() {
            return Err(invalid(format!("{self} is not a unit")));
        }
        let ni = n.inv()?;
        Ok(self.conj().scale(&ni))
    }

    pub fn scale(&self, a: &PadicInt) -> Self {
        let prec = self.prec.min(a.prec);
        Self::new(&self.alg, &self.x * &a.residue, &self.y * &a.residue, prec)
    }

    pub fn scale_int(&self, n: &BigInt) -> Self {
        Self::new(&self.alg, &self.x * n, &self.y * n, self.prec)
    }

    /// Exact division by `ℓ^k`, losing `k` digits of precision.
    pub fn div_l_pow(&self, k: u32) -> Result<Self> {
        if k == 0 {
            return Ok(self.clone());
        }
        if k > self.prec {
            return Err(Error::InsufficientPrecision(format!("cannot divide by {}^{k} at precision {}", self.alg.l, self.prec)));
        }
        let d = lpow(self.alg.l, k);
        let (qx, rx) = self.x.div_rem(&d);
        let (qy, ry) = self.y.div_rem(&d);
        if !rx.is_zero() || !ry.is_zero() {
            return Err(Error::IntegralityViolation(format!("{self} is not divisible by {}^{k}", self.alg.l)));
        }
        Ok(Self::new(&self.alg, qx, qy, self.prec - k))
    }

    /// Whether `self / ℓ^k` is integral.
    pub fn divisible_by_l_pow(&self, k: u32) -> bool {
        let d = lpow(self.alg.l, k);
        (&self.x % &d).is_zero() && (&self.y % &d).is_zero()
    }

    /// `self / d`, which must be integral; precision drops by `v_ℓ(Nm d)`.
    pub fn div_exact(&self, d: &LocalKElem) -> Result<Self> {
        let n = d.norm();
        let e = n.val().require("divisor norm")?;
        let unit = n.div_l_pow(e as u32)?;
        let num = self * &d.conj();
        let q = num.div_l_pow(e as u32).map_err(|err| match err {
            Error::IntegralityViolation(_) => Error::IntegralityViolation(format!("{self} / {d} is not integral")),
            other => other,
        })?;
        Ok(q.scale(&unit.inv()?))
    }

    /// Membership in the order `Z_ℓ + ℓ^f O_{K_ℓ}` (to the element's precision).
    pub fn in_order(&self, f: u32) -> bool {
        if f == 0 {
            return true;
        }
        let k = f.min(self.prec);
        (&self.y % lpow(self.alg.l, k)).is_zero()
    }

    /// The two components in `Z_ℓ × Z_ℓ` (split case only).
    pub fn split_components(&self) -> Option<(PadicInt, PadicInt)> {
        let w = self.alg.omega_root.as_ref()?;
        let l = self.alg.l;
        let wb = PadicInt::new(l, w.prec, &(BigInt::from(self.alg.t) - &w.residue));
        let x = PadicInt::new(l, self.prec, &self.x);
        let y = PadicInt::new(l, self.prec, &self.y);
        Some((x.add(&y.mul(w)), x.add(&y.mul(&wb))))
    }

    /// Inverse of [`split_components`](Self::split_components).
    pub fn from_split_components(alg: &Alg, c1: &PadicInt, c2: &PadicInt) -> Option<Self> {
        let w = alg.omega_root.as_ref()?;
        let d = PadicInt::new(alg.l, w.prec, &(BigInt::from(2) * &w.residue - BigInt::from(alg.t)));
        let y = c1.sub(c2).mul(&d.inv().ok()?);
        let x = c1.sub(&y.mul(w));
        Some(Self::new(alg, x.residue, y.residue, x.prec.min(y.prec)))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.alg).with_prec(self.prec);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

/// Valuation of a local element (uniformizer units, componentwise minimum when split).
pub fn local_val(x: &LocalKElem) -> Val {
    x.val()
}

fn check(a: &LocalKElem, b: &LocalKElem) {
    debug_assert!(Arc::ptr_eq(&a.alg, &b.alg) || *a.alg == *b.alg, "mixed local algebras");
}

impl Add for &LocalKElem {
    type Output = LocalKElem;
    fn add(self, o: &LocalKElem) -> LocalKElem {
        check(self, o);
        LocalKElem::new(&self.alg, &self.x + &o.x, &self.y + &o.y, self.prec.min(o.prec))
    }
}

impl Sub for &LocalKElem {
    type Output = LocalKElem;
    fn sub(self, o: &LocalKElem) -> LocalKElem {
        check(self, o);
        LocalKElem::new(&self.alg, &self.x - &o.x, &self.y - &o.y, self.prec.min(o.prec))
    }
}

impl Mul for &LocalKElem {
    type Output = LocalKElem;
    fn mul(self, o: &LocalKElem) -> LocalKElem {
        check(self, o);
        let t = BigInt::from(self.alg.t);
        let yy = &self.y * &o.y;
        let x = &self.x * &o.x - &self.alg.m * &yy;
        let y = &self.x * &o.y + &self.y * &o.x + t * yy;
        LocalKElem::new(&self.alg, x, y, self.prec.min(o.prec))
    }
}

impl Neg for &LocalKElem {
    type Output = LocalKElem;
    fn neg(self) -> LocalKElem {
        LocalKElem::new(&self.alg, -self.x.clone(), -self.y.clone(), self.prec)
    }
}

macro_rules! owned_local_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for LocalKElem {
            type Output = LocalKElem;
            fn $m(self, o: LocalKElem) -> LocalKElem { (&self).$m(&o) }
        }
        impl $tr<&LocalKElem> for LocalKElem {
            type Output = LocalKElem;
            fn $m(self, o: &LocalKElem) -> LocalKElem { (&self).$m(o) }
        }
    )*};
}
owned_local_ops!(Add add, Sub sub, Mul mul);

impl Neg for LocalKElem {
    type Output = LocalKElem;
    fn neg(self) -> LocalKElem {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    #[test]
    fn algebra_kinds() {
        let a = make_local_alg(7, 2, 32).unwrap();
        assert_eq!(a.kind, Kind::Split);
        let u = a.split_root.clone().unwrap();
        assert_eq!(&u.residue % 4u32, BigInt::from(1));
        assert_eq!(u.mul(&u), PadicInt::from_i64(2, 32, -7));
        assert_eq!(make_local_alg(3, 2, 32).unwrap().kind, Kind::Inert);
        assert_eq!(make_local_alg(5, 5, 32).unwrap().kind, Kind::Ramified);
        assert!(make_local_alg(5, 5, 3).is_err());
    }

    #[test]
    fn split_valuation_is_componentwise_min() {
        let a = make_local_alg(7, 2, 16).unwrap();
        let z = LocalKElem::new(&a, BigInt::from(2), BigInt::from(1), 16);
        assert_eq!(z.val(), Val::Finite(0));
        let (c1, c2) = z.split_components().unwrap();
        assert_eq!(c1.val().min(c2.val()), Val::Finite(0));
        let prod = c1.mul(&c2);
        assert_eq!(prod, z.norm());
    }

    #[test]
    fn ramified_valuations() {
        let a = make_local_alg(5, 5, 16).unwrap();
        assert_eq!(LocalKElem::sqrt_mp(&a).val(), Val::Finite(1));
        assert_eq!(LocalKElem::from_int(&a, 5).val(), Val::Finite(2));
        let b = make_local_alg(5, 2, 16).unwrap();
        let pi = &LocalKElem::one(&b) + &LocalKElem::sqrt_mp(&b);
        assert_eq!(pi.val(), Val::Finite(1));
        assert_eq!(LocalKElem::from_int(&b, 2).val(), Val::Finite(2));
        let c = make_local_alg(2, 2, 16).unwrap();
        assert_eq!(LocalKElem::sqrt_mp(&c).val(), Val::Finite(1));
    }

    #[test]
    fn conversion_round_trip() {
        let a = make_local_alg(7, 2, 20).unwrap();
        let z = KElem::new(7, rat(3, 2), rat(1, 2));
        let lz = LocalKElem::from_kelem(&a, &z).unwrap();
        assert_eq!(lz.to_kelem(), z);
        assert_eq!(lz.norm(), PadicInt::from_i64(2, 20, 4));
        assert!(LocalKElem::from_kelem(&a, &KElem::new(7, rat(1, 2), rat(0, 1))).is_err());
    }

    #[test]
    fn exact_division() {
        let a = make_local_alg(3, 3, 20).unwrap();
        let pi = LocalKElem::sqrt_mp(&a);
        let x = LocalKElem::from_int(&a, 3);
        let q = x.div_exact(&pi).unwrap();
        assert_eq!(&q * &pi, x.with_prec(q.prec));
        assert!(pi.div_exact(&x).is_err());
    }
}
