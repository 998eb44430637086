use std::collections::BTreeSet;

use super::classify::{local_case, LocalCase};
use super::labels::{LocalClassLabel, LocalKind};
use crate::exactnum::{int, Rational};
use crate::symbols::{hilbert, Place, Sign};

/// Local classes of rank `n` that exist in the hermitian `K_ℓ`-space with
/// determinant `d` (any representative of its class). The empty set means no
/// such lattice exists.
///
/// Odd rank at a ramified unit prime yields the empty set: self-dual lattices
/// exist there, but the labels only cover even rank.
pub fn local_exists(p: u64, l: u64, n: usize, d: &Rational) -> BTreeSet<LocalClassLabel> {
    let mut out = BTreeSet::new();
    if n == 0 || d == &Rational::from_integer(0.into()) {
        return out;
    }
    let minus_p = int(-(p as i64));
    let class = |q: &Rational| hilbert(q, &minus_p, Place::Prime(l));
    let sign_pow = |k: usize| if k % 2 == 0 { int(1) } else { int(-1) };
    let dc = class(d);
    let mut add = |k: LocalKind| {
        out.insert(LocalClassLabel::new(k, n));
    };
    match local_case(p, l) {
        LocalCase::Unramified => {
            if dc == Sign::Plus {
                add(LocalKind::SelfDualUnramified);
            }
        }
        LocalCase::OddP => {
            if n % 2 == 0 && dc == class(&sign_pow(n / 2)) {
                add(LocalKind::ModularP);
            }
        }
        LocalCase::RamifiedPrime | LocalCase::RamifiedUnit if n % 2 == 1 => {}
        LocalCase::RamifiedPrime => {
            if dc == class(&sign_pow(n / 2 - 1)) {
                add(LocalKind::RpUnique);
            } else {
                add(LocalKind::RpNormH);
                add(LocalKind::RpNorm2);
            }
        }
        LocalCase::RamifiedUnit => {
            if dc == class(&sign_pow(n / 2 - 1)) {
                add(LocalKind::RuNormalPlus);
            } else {
                add(LocalKind::RuNormalMixed);
                add(LocalKind::RuSubnormal);
            }
        }
    }
    out
}
