use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::exactnum::{is_prime, KElem, Rational};
use crate::padic::{make_local_alg, Alg};

/// Coefficient ring attached to a basis vector of a lattice: the order
/// `R = Z[√-p]` (or `Z₂ + 2O` locally) or the maximal order `O`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum OrderTag {
    R,
    O,
}

impl fmt::Display for OrderTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OrderTag::R => "R",
            OrderTag::O => "O",
        })
    }
}

/// The ring a lattice lives over.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RingCtx {
    GlobalOK { p: u64 },
    GlobalR { p: u64 },
    LocalOK { alg: Alg },
    /// The order `Z₂ + 2O_{K₂}`; for `p ≡ 3 (mod 4)` this is `Z[√-p] ⊗ Z₂`.
    LocalR2 { alg: Alg },
}

/// The three coefficient ideals that occur in module-membership tests.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coef {
    O,
    R,
    Conductor,
}

impl RingCtx {
    pub fn global_ok(p: u64) -> Result<Self> {
        check_prime(p)?;
        Ok(RingCtx::GlobalOK { p })
    }

    pub fn global_r(p: u64) -> Result<Self> {
        check_prime(p)?;
        Ok(RingCtx::GlobalR { p })
    }

    pub fn local_ok(p: u64, l: u64, prec: u32) -> Result<Self> {
        Ok(RingCtx::LocalOK { alg: make_local_alg(p, l, prec)? })
    }

    pub fn local_r2(p: u64, prec: u32) -> Result<Self> {
        Ok(RingCtx::LocalR2 { alg: make_local_alg(p, 2, prec)? })
    }

    pub fn p(&self) -> u64 {
        match self {
            RingCtx::GlobalOK { p } | RingCtx::GlobalR { p } => *p,
            RingCtx::LocalOK { alg } | RingCtx::LocalR2 { alg } => alg.p,
        }
    }

    pub fn prime(&self) -> Option<u64> {
        self.alg().map(|a| a.l)
    }

    pub fn alg(&self) -> Option<&Alg> {
        match self {
            RingCtx::LocalOK { alg } | RingCtx::LocalR2 { alg } => Some(alg),
            _ => None,
        }
    }

    pub fn is_global(&self) -> bool {
        self.alg().is_none()
    }

    /// Whether basis vectors may carry the tag `R`.
    pub fn allows_r_tags(&self) -> bool {
        matches!(self, RingCtx::GlobalR { .. } | RingCtx::LocalR2 { .. })
    }

    /// Whether the `Z[√-p]`-valued dual differs from the `O`-valued one,
    /// i.e. whether the relevant order is strictly smaller than `O`.
    pub fn order_is_proper(&self) -> bool {
        match self {
            RingCtx::GlobalOK { p } | RingCtx::GlobalR { p } => p % 4 == 3,
            RingCtx::LocalOK { alg } => alg.l == 2 && alg.p % 4 == 3,
            RingCtx::LocalR2 { .. } => true,
        }
    }

    pub fn describe(&self) -> String {
        match self {
            RingCtx::GlobalOK { p } => format!("O_K, K = Q(√-{p})"),
            RingCtx::GlobalR { p } => format!("Z[√-{p}]"),
            RingCtx::LocalOK { alg } => format!("O of {}", alg.describe()),
            RingCtx::LocalR2 { alg } => format!("Z_2 + 2O of {}", alg.describe()),
        }
    }

    /// Membership of an exact element in `O`, in the order `R`, or in the
    /// conductor `(R : O)`, globally or after localizing at the context prime.
    pub fn contains(&self, c: Coef, x: &KElem) -> bool {
        let in_o = |z: &KElem| match self.prime() {
            Some(l) => z.in_ok_at(l),
            None => z.in_ok(),
        };
        match c {
            Coef::O => in_o(x),
            Coef::Conductor if !self.order_is_proper() => in_o(x),
            Coef::Conductor => in_o(&x.scale(&Rational::new(BigInt::from(1), BigInt::from(2)))),
            Coef::R if !self.order_is_proper() => in_o(x),
            Coef::R => in_o(x) && omega_coefficient_is_even(x, self.prime()),
        }
    }
}

fn check_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(invalid(format!("p = {p} is not prime")))
    }
}

/// For an element of `O` (after localization at `l`), whether its
/// coefficient on `ω` is even, i.e. whether it lies in `Z + 2O`.
fn omega_coefficient_is_even(x: &KElem, l: Option<u64>) -> bool {
    let y = if x.p % 4 == 3 { &x.b * Rational::from_integer(BigInt::from(2)) } else { x.b.clone() };
    let half = &y / Rational::from_integer(BigInt::from(2));
    match l {
        Some(l) => KElem::from_rational(x.p, half).in_r_at(l),
        None => half.is_integer(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    #[test]
    fn membership() {
        let g = RingCtx::global_r(7).unwrap();
        let omega = KElem::omega(7);
        assert!(g.contains(Coef::O, &omega));
        assert!(!g.contains(Coef::R, &omega));
        assert!(g.contains(Coef::R, &KElem::sqrt_mp(7)));
        assert!(g.contains(Coef::Conductor, &KElem::new(7, rat(1, 1), rat(1, 1))));
        assert!(!g.contains(Coef::Conductor, &KElem::sqrt_mp(7)));

        let loc = RingCtx::local_r2(2, 16).unwrap();
        assert!(loc.contains(Coef::R, &KElem::new(2, rat(1, 3), rat(2, 1))));
        assert!(!loc.contains(Coef::R, &KElem::sqrt_mp(2)));
        assert!(loc.contains(Coef::O, &KElem::new(2, rat(1, 3), rat(1, 5))));
    }

    #[test]
    fn order_properness() {
        assert!(RingCtx::global_ok(3).unwrap().order_is_proper());
        assert!(!RingCtx::global_ok(5).unwrap().order_is_proper());
        assert!(!RingCtx::local_ok(7, 7, 8).unwrap().order_is_proper());
        assert!(RingCtx::local_r2(5, 8).unwrap().order_is_proper());
    }
}
