use std::collections::BTreeSet;

use modlat::exactnum::{int, rat, KElem, KMat};
use modlat::herm::{ideals, is_modular, HermLattice, IdealVal, RingCtx};
use modlat::localclass::{
    classify_local, classify_local_gram, local_exists, standard_gram, LocalClassLabel, LocalKind,
};
use modlat::padic::{lmat_congruence, lmat_from_kmat, make_local_alg, random_unimodular};
use modlat::Error;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn k(p: u64, a: i64, b: i64) -> KElem {
    KElem::new(p, rat(a, 1), rat(b, 1))
}

fn local(p: u64, l: u64, g: KMat) -> HermLattice {
    HermLattice::new(RingCtx::local_ok(p, l, 64).unwrap(), g).unwrap()
}

fn label(kind: LocalKind, n: usize) -> LocalClassLabel {
    LocalClassLabel::new(kind, n)
}

/// `(p, ℓ)` pairs at which each label occurs.
fn fixtures(kind: LocalKind) -> Vec<(u64, u64)> {
    match kind {
        LocalKind::SelfDualUnramified => vec![(7, 2), (3, 2), (5, 3), (13, 3)],
        LocalKind::ModularP => vec![(3, 3), (7, 7), (5, 5), (13, 13)],
        LocalKind::RpUnique | LocalKind::RpNormH | LocalKind::RpNorm2 => vec![(2, 2)],
        _ => vec![(5, 2), (13, 2)],
    }
}

#[test]
fn classification_examples() {
    let h = vec![vec![k(7, 0, 0), k(7, 0, 1)], vec![k(7, 0, -1), k(7, 0, 0)]];
    let hh = modlat::localclass::block_sum(7, &[h.clone(), h]);
    assert_eq!(classify_local(&local(7, 7, hh)).unwrap(), label(LocalKind::ModularP, 4));

    let h0 = vec![vec![k(5, 0, 0), k(5, 1, 0)], vec![k(5, 1, 0), k(5, 0, 0)]];
    assert_eq!(classify_local(&local(5, 2, h0)).unwrap(), label(LocalKind::RuSubnormal, 2));

    let m2 = vec![vec![k(2, -2, 0), k(2, 0, 1)], vec![k(2, 0, -1), k(2, 4, 0)]];
    let m2 = local(2, 2, m2);
    assert_eq!(classify_local(&m2).unwrap(), label(LocalKind::RpUnique, 2));
    assert_eq!(ideals(&m2).1, IdealVal::from_rational(2, &int(2)));

    let id = modlat::exactnum::identity(5, 2);
    assert_eq!(classify_local(&local(5, 2, id)).unwrap(), label(LocalKind::RuNormalPlus, 2));
}

#[test]
fn precondition_failures() {
    let id = modlat::exactnum::identity(7, 2);
    assert!(matches!(classify_local(&local(7, 7, id)), Err(Error::NotModular(_))));
    let two = vec![vec![k(7, 2, 0)]];
    assert!(matches!(classify_local(&local(7, 2, two)), Err(Error::NotSelfDual(_))));
    let half = vec![vec![KElem::new(3, rat(1, 3), rat(0, 1))]];
    assert!(matches!(classify_local(&local(3, 5, vec![vec![k(3, 3, 0)]])), Ok(_)));
    assert!(matches!(classify_local(&local(3, 3, half)), Err(Error::NotModular(_))));
}

#[test]
fn standard_grams_match_definitions() {
    let ctx = RingCtx::local_ok(7, 7, 64).unwrap();
    let g = standard_gram(label(LocalKind::ModularP, 2), &ctx).unwrap();
    assert_eq!(g.gram(), &vec![vec![k(7, 0, 0), k(7, 0, 1)], vec![k(7, 0, -1), k(7, 0, 0)]]);

    let ctx = RingCtx::local_ok(5, 2, 64).unwrap();
    let g = standard_gram(label(LocalKind::RuSubnormal, 2), &ctx).unwrap();
    assert_eq!(g.gram(), &vec![vec![k(5, 0, 0), k(5, 1, 0)], vec![k(5, 1, 0), k(5, 0, 0)]]);

    let ctx = RingCtx::local_ok(2, 2, 64).unwrap();
    let g = standard_gram(label(LocalKind::RpNorm2, 2), &ctx).unwrap();
    assert_eq!(g.gram(), &vec![vec![k(2, -2, 0), k(2, 0, 1)], vec![k(2, 0, -1), k(2, 0, 0)]]);

    assert!(matches!(standard_gram(label(LocalKind::ModularP, 3), &RingCtx::local_ok(7, 7, 64).unwrap()), Err(Error::Inconsistent(_))));
    assert!(matches!(standard_gram(label(LocalKind::RpUnique, 2), &RingCtx::local_ok(7, 7, 64).unwrap()), Err(Error::Inconsistent(_))));
}

#[test]
fn round_trip_and_modular_norms() {
    for kind in LocalKind::ALL {
        for (p, l) in fixtures(kind) {
            for n in 1..=8 {
                if kind.needs_even_rank() && n % 2 == 1 {
                    continue;
                }
                let ctx = RingCtx::local_ok(p, l, 64).unwrap();
                let g = standard_gram(label(kind, n), &ctx).unwrap();
                assert_eq!(classify_local(&g).unwrap(), label(kind, n), "p={p} l={l}");
                if kind == LocalKind::ModularP {
                    assert!(is_modular(&g, 1).unwrap());
                    assert_eq!(ideals(&g).1, IdealVal::from_rational(p, &int(p as i64)));
                }
            }
        }
    }
}

#[test]
fn invariant_under_random_basis_change() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for kind in LocalKind::ALL {
        for (p, l) in fixtures(kind) {
            for n in [2usize, 4] {
                let alg = make_local_alg(p, l, 40).unwrap();
                let ctx = RingCtx::LocalOK { alg: alg.clone() };
                let g = standard_gram(label(kind, n), &ctx).unwrap();
                let lg = lmat_from_kmat(&alg, g.gram()).unwrap();
                for _ in 0..5 {
                    let u = random_unimodular(&alg, n, &mut rng);
                    let moved = lmat_congruence(&u, &lg);
                    assert_eq!(classify_local_gram(&alg, &moved).unwrap(), label(kind, n), "p={p} l={l}");
                }
            }
        }
    }
}

#[test]
fn existence_examples() {
    // inert prime, nontrivial class
    assert!(local_exists(3, 5, 2, &int(5)).is_empty());
    assert!(!local_exists(3, 5, 2, &int(2)).is_empty());
    assert!(local_exists(7, 7, 2, &int(1)).is_empty());
    assert_eq!(
        local_exists(2, 2, 2, &int(-1)),
        BTreeSet::from([label(LocalKind::RpNormH, 2), label(LocalKind::RpNorm2, 2)])
    );
    assert_eq!(
        local_exists(5, 2, 4, &int(1)),
        BTreeSet::from([label(LocalKind::RuNormalMixed, 4), label(LocalKind::RuSubnormal, 4)])
    );
    assert_eq!(local_exists(5, 2, 2, &int(1)), BTreeSet::from([label(LocalKind::RuNormalPlus, 2)]));
    assert_eq!(local_exists(7, 7, 4, &int(1)), BTreeSet::from([label(LocalKind::ModularP, 4)]));
    assert_eq!(local_exists(7, 2, 3, &int(5)).len(), 1);
}

/// Every class that `local_exists` reports has a standard Gram matrix whose
/// determinant lies in the requested class, and classes not reported do not.
#[test]
fn existence_matches_standard_determinants() {
    use modlat::symbols::{hilbert, Place};
    for kind in LocalKind::ALL {
        for (p, l) in fixtures(kind) {
            for n in (2..=8).step_by(2) {
                let ctx = RingCtx::local_ok(p, l, 64).unwrap();
                let g = standard_gram(label(kind, n), &ctx).unwrap();
                let d = g.det();
                assert!(local_exists(p, l, n, &d).contains(&label(kind, n)));
                let minus_p = int(-(p as i64));
                for other in [int(1), int(-1), int(2), int(-2), int(3), int(l as i64)] {
                    let same = hilbert(&other, &minus_p, Place::Prime(l)) == hilbert(&d, &minus_p, Place::Prime(l));
                    assert_eq!(local_exists(p, l, n, &other).contains(&label(kind, n)), same, "{kind} p={p} l={l} n={n}");
                }
            }
        }
    }
}
