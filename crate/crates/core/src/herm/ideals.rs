use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use super::lattice::HermLattice;
use super::ring::OrderTag;
use crate::exactnum::{factorize, KElem, Rational};
use crate::symbols::{artin, Sign};

/// Ramification index of `ℓ` in `Q(√-p)`.
pub fn ramification(p: u64, l: u64) -> i64 {
    if artin(p, l) == Sign::Zero {
        2
    } else {
        1
    }
}

fn rational_val(q: &Rational, l: u64) -> i64 {
    let v = |n: &BigInt| {
        let bl = BigInt::from(l);
        let mut n = n.abs();
        let mut k = 0i64;
        while (&n % &bl).is_zero() {
            n /= &bl;
            k += 1;
        }
        k
    };
    v(q.numer()) - v(q.denom())
}

/// Valuation of a nonzero element of `K` at the prime of `O_K` above `ℓ`,
/// in units of that prime (so `v(√-p) = 1` at `ℓ = p`). At split primes the
/// smaller of the two conjugate valuations is returned. `None` for zero.
pub fn k_val(x: &KElem, l: u64) -> Option<i64> {
    if x.is_zero() {
        return None;
    }
    if ramification(x.p, l) == 2 {
        return Some(rational_val(&x.norm(), l));
    }
    let (c0, c1) = if l == 2 && x.p % 4 == 3 {
        (&x.a - &x.b, &x.b * Rational::from_integer(BigInt::from(2)))
    } else {
        (x.a.clone(), x.b.clone())
    };
    [c0, c1].iter().filter(|c| !c.is_zero()).map(|c| rational_val(c, l)).min()
}

/// A σ-stable fractional `O_K`-ideal, recorded by its exponents at the primes
/// where it is nontrivial. Exponents count powers of the prime ideal above
/// `ℓ`, so a ramified prime contributes half-steps relative to `ℓ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IdealVal {
    pub p: u64,
    pub vals: BTreeMap<u64, i64>,
}

impl IdealVal {
    pub fn unit(p: u64) -> Self {
        IdealVal { p, vals: BTreeMap::new() }
    }

    /// The ideal `q·O_K` for a nonzero rational `q`.
    pub fn from_rational(p: u64, q: &Rational) -> Self {
        let mut out = Self::unit(p);
        for l in support(std::slice::from_ref(q)) {
            out.set(l, rational_val(q, l) * ramification(p, l));
        }
        out
    }

    /// The ideal generated by `√-p`.
    pub fn sqrt_mp(p: u64) -> Self {
        let mut out = Self::unit(p);
        out.set(p, 1);
        out
    }

    fn set(&mut self, l: u64, v: i64) {
        if v == 0 {
            self.vals.remove(&l);
        } else {
            self.vals.insert(l, v);
        }
    }

    pub fn val(&self, l: u64) -> i64 {
        self.vals.get(&l).copied().unwrap_or(0)
    }

    pub fn mul(&self, o: &IdealVal) -> IdealVal {
        let mut out = self.clone();
        for (&l, &v) in &o.vals {
            out.set(l, out.val(l) + v);
        }
        out
    }

    /// `self ⊇ other`.
    pub fn contains(&self, other: &IdealVal) -> bool {
        let primes: BTreeSet<u64> = self.vals.keys().chain(other.vals.keys()).copied().collect();
        primes.iter().all(|&l| self.val(l) <= other.val(l))
    }

    /// Restriction to the single prime `ℓ`.
    pub fn at(&self, l: u64) -> IdealVal {
        let mut out = Self::unit(self.p);
        out.set(l, self.val(l));
        out
    }
}

impl fmt::Display for IdealVal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        let mut extra = Vec::new();
        for (&l, &v) in &self.vals {
            let e = ramification(self.p, l);
            let (q, r) = v.div_mod_floor(&e);
            let pw = BigInt::from(l).pow(q.unsigned_abs() as u32);
            if q >= 0 {
                num *= pw;
            } else {
                den *= pw;
            }
            if r == 1 {
                extra.push(if l == self.p { format!("√-{}", self.p) } else { format!("𝔭{l}") });
            }
        }
        let mut parts = Vec::new();
        if !num.is_one() || !den.is_one() || extra.is_empty() {
            if den.is_one() {
                parts.push(num.to_string());
            } else {
                parts.push(format!("{num}/{den}"));
            }
        }
        if parts == ["1"] && !extra.is_empty() {
            parts.clear();
        }
        parts.extend(extra);
        write!(f, "({})", parts.join("·"))
    }
}

impl Serialize for IdealVal {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Primes dividing a numerator or denominator of any of the given rationals.
fn support(qs: &[Rational]) -> BTreeSet<u64> {
    let mut out = BTreeSet::new();
    for q in qs.iter().filter(|q| !q.is_zero()) {
        for n in [q.numer(), q.denom()] {
            if let Ok(f) = factorize(&n.abs()) {
                out.extend(f.into_iter().map(|(l, _)| l));
            }
        }
    }
    out
}

fn rational_gcd(qs: &[Rational]) -> Rational {
    let mut num = BigInt::zero();
    let mut den = BigInt::one();
    for q in qs.iter().filter(|q| !q.is_zero()) {
        num = num.gcd(q.numer());
        den = den.lcm(q.denom());
    }
    Rational::new(num, den)
}

/// Scale `𝔰(L)` and norm `𝔫(L)` of a lattice, as ideals of the maximal order.
///
/// For a local context only the context prime is recorded.
pub fn ideals(l: &HermLattice) -> (IdealVal, IdealVal) {
    let p = l.p();
    let n = l.rank();
    let g = l.gram();

    let mut norm_gens: Vec<Rational> = Vec::new();
    for i in 0..n {
        norm_gens.push(g[i][i].a.clone());
        for j in i + 1..n {
            let both_r = l.tags()[i] == OrderTag::R && l.tags()[j] == OrderTag::R;
            let second = if both_r && l.ctx().order_is_proper() {
                KElem::omega(p).scale(&Rational::from_integer(BigInt::from(2)))
            } else {
                KElem::omega(p)
            };
            let basis = [KElem::one(p), second];
            for c in basis {
                norm_gens.push((&c * &g[i][j]).trace());
            }
        }
    }
    let ng = rational_gcd(&norm_gens);

    let nonzero: Vec<&KElem> = g.iter().flatten().filter(|e| !e.is_zero()).collect();
    let primes = match l.ctx().prime() {
        Some(ell) => BTreeSet::from([ell]),
        None => {
            let norms: Vec<Rational> = nonzero.iter().map(|e| e.norm()).collect();
            let mut s = support(&[rational_gcd(&norms)]);
            for e in &nonzero {
                s.extend(support(&[Rational::from_integer(e.a.denom().clone()), Rational::from_integer(e.b.denom().clone())]));
            }
            s.extend(support(std::slice::from_ref(&ng)));
            s
        }
    };

    let mut scale = IdealVal::unit(p);
    let mut norm = IdealVal::unit(p);
    for &ell in &primes {
        let v = nonzero.iter().filter_map(|e| k_val(e, ell)).min().unwrap_or(0);
        scale.set(ell, v);
        norm.set(ell, rational_val(&ng, ell) * ramification(p, ell));
    }
    (scale, norm)
}

/// Whether `𝔫(L) = 𝔰(L)`.
pub fn is_normal(l: &HermLattice) -> bool {
    let (s, n) = ideals(l);
    s == n
}
