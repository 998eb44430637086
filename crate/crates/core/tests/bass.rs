use std::collections::BTreeSet;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use modlat::bass::{
    classify_unimodular_r2, conductor_generator, f2_orbit_count, hyperbolize, is_perfect_ambient, is_perfect_pairing,
    orthogonal_decompose, pseudo_basis_and_type, random_automorphism, random_perfect, standard_r2, unit_norm_residues,
    witt_fixture, OrderChain, PseudoBasis, R2Class,
};
use modlat::padic::{lmat_congruence, make_local_alg, Alg, LMat, LocalKElem};
use modlat::Error;

fn e(alg: &Alg, x: i64, y: i64) -> LocalKElem {
    LocalKElem::new(alg, BigInt::from(x), BigInt::from(y), alg.prec)
}

fn mat(alg: &Alg, rows: &[&[i64]]) -> LMat {
    rows.iter().map(|r| r.iter().map(|&a| e(alg, a, 0)).collect()).collect()
}

/// `(R : R')` computed by brute force modulo `2^k`: the residues `x` with
/// `x·R' ⊆ R`, tested on the additive generators of `R'`.
fn colon_by_enumeration(alg: &Alg, f_small: u32, f_big: u32, k: u32) -> BTreeSet<(i64, i64)> {
    let m = 1i64 << k;
    let gens = [e(alg, 1, 0), e(alg, 0, 1i64 << f_big)];
    let mut out = BTreeSet::new();
    for x in 0..m {
        for y in 0..m {
            let z = LocalKElem::new(alg, x.into(), y.into(), k);
            if gens.iter().all(|g| (&z * &g.with_prec(k)).in_order(f_small)) {
                out.insert((x, y));
            }
        }
    }
    out
}

#[test]
fn conductor_generators_match_enumeration() {
    for p in [3u64, 7, 2, 5] {
        let alg = make_local_alg(p, 2, 16).unwrap();
        let chain = OrderChain::new(alg.clone(), 2, vec![2, 1, 0]).unwrap();
        assert_eq!(conductor_generator(&chain, 0).unwrap(), e(&alg, 1, 0));
        assert_eq!(conductor_generator(&chain, 1).unwrap(), e(&alg, 2, 0));
        assert_eq!(conductor_generator(&chain, 2).unwrap(), e(&alg, 4, 0));
        // Z₂+4O ⊆ Z₂+2O: the colon ideal modulo 8 is exactly 2·(Z₂+2O)
        let colon = colon_by_enumeration(&alg, 2, 1, 3);
        let expected: BTreeSet<(i64, i64)> = (0..8)
            .flat_map(|a| (0..8).map(move |b| (a, b)))
            .filter(|&(a, b)| a % 2 == 0 && b % 4 == 0)
            .collect();
        assert_eq!(colon, expected, "p={p}");
        // Z₂+2O ⊆ O: colon ideal is 2O
        let colon = colon_by_enumeration(&alg, 1, 0, 3);
        let expected: BTreeSet<(i64, i64)> = (0..8)
            .flat_map(|a| (0..8).map(move |b| (a, b)))
            .filter(|&(a, b)| a % 2 == 0 && b % 2 == 0)
            .collect();
        assert_eq!(colon, expected, "p={p}");
    }
}

#[test]
fn types_of_basic_lattices() {
    for p in [3u64, 7, 11, 2] {
        let alg = make_local_alg(p, 2, 32).unwrap();
        let chain = OrderChain::conductor_one(alg.clone());
        let r2sq = PseudoBasis::standard(chain.clone(), vec![0, 0]).unwrap();
        let (_, t) = pseudo_basis_and_type(&chain, &r2sq.z_generators()).unwrap();
        assert_eq!((t.r, t.s), (2, 0));
        let o = PseudoBasis::standard(chain.clone(), vec![1]).unwrap();
        let (_, t) = pseudo_basis_and_type(&chain, &o.z_generators()).unwrap();
        assert_eq!((t.r, t.s, t.quotient_dim), (0, 1, 2));
        let mixed = PseudoBasis::standard(chain.clone(), vec![0, 1]).unwrap();
        let (pb, t) = pseudo_basis_and_type(&chain, &mixed.z_generators()).unwrap();
        assert_eq!((t.r, t.s, t.quotient_dim), (1, 1, 3));
        assert!(pb.same_module(&mixed).unwrap());
        assert_eq!(pb.multiplicities(), vec![1, 1]);
    }
}

/// Random invertible integer matrix applied to a generator list.
fn shuffle_generators(gens: &[Vec<LocalKElem>], rng: &mut ChaCha8Rng) -> Vec<Vec<LocalKElem>> {
    let n = gens.len();
    // unipotent upper times unipotent lower times a permutation keeps the span
    let mut out = gens.to_vec();
    for _ in 0..3 * n {
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        if i == j {
            continue;
        }
        let c: i64 = rng.gen_range(-7..=7);
        let add: Vec<LocalKElem> = out[j].iter().map(|x| x.scale_int(&BigInt::from(c))).collect();
        out[i] = out[i].iter().zip(&add).map(|(a, b)| a + b).collect();
    }
    out.swap(0, n - 1);
    out
}

#[test]
fn type_is_invariant_under_basis_change() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for p in [3u64, 7, 11] {
        let alg = make_local_alg(p, 2, 40).unwrap();
        let chain = OrderChain::conductor_one(alg.clone());
        for idx in [vec![0, 0, 1], vec![1, 1], vec![0, 1, 0, 1], vec![0]] {
            let base = PseudoBasis::standard(chain.clone(), idx.clone()).unwrap();
            let u = random_automorphism(&chain, &idx, &mut rng);
            let moved = base.transformed(&u, idx.clone()).unwrap();
            let want = (idx.iter().filter(|&&i| i == 0).count(), idx.iter().filter(|&&i| i == 1).count());
            for _ in 0..5 {
                let gens = shuffle_generators(&moved.z_generators(), &mut rng);
                let (pb, t) = pseudo_basis_and_type(&chain, &gens).unwrap();
                assert_eq!((t.r, t.s), want);
                assert!(pb.same_module(&base).unwrap());
            }
        }
    }
}

#[test]
fn perfectness_examples() {
    let alg = make_local_alg(3, 2, 32).unwrap();
    let chain = OrderChain::conductor_one(alg.clone());
    let r2sq = PseudoBasis::standard(chain.clone(), vec![0, 0]).unwrap();
    assert!(is_perfect_ambient(&r2sq, &mat(&alg, &[&[1, 0], &[0, 1]])).unwrap());
    let o = PseudoBasis::standard(chain.clone(), vec![1]).unwrap();
    assert!(!is_perfect_pairing(&o, &mat(&alg, &[&[1]])).unwrap());
    assert!(!is_perfect_ambient(&r2sq, &mat(&alg, &[&[2, 0], &[0, 1]])).unwrap());

    let w = witt_fixture(32).unwrap();
    assert!(is_perfect_ambient(&w.first, &w.ambient).unwrap());
    assert!(is_perfect_ambient(&w.second, &w.ambient).unwrap());
}

#[test]
fn decomposition_examples() {
    let w = witt_fixture(32).unwrap();
    let (a, b) = w.decompositions().unwrap();
    let alg = w.ambient[0][0].alg.clone();
    assert_eq!(a.len(), 2);
    assert_eq!((a[0].order_index, a[0].gram.clone()), (0, mat(&alg, &[&[1]])));
    assert_eq!((a[1].order_index, a[1].gram.clone()), (1, mat(&alg, &[&[2]])));
    assert_eq!(b[0].gram, mat(&alg, &[&[3]]));
    assert_eq!(b[1].gram, mat(&alg, &[&[6]]));
    assert!(w.first.same_module(&w.second).unwrap());

    let alg = make_local_alg(7, 2, 32).unwrap();
    let chain = OrderChain::conductor_one(alg.clone());
    let r2sq = PseudoBasis::standard(chain, vec![0, 0]).unwrap();
    let (pb, blocks) = orthogonal_decompose(&r2sq, &mat(&alg, &[&[1, 1], &[1, 2]])).unwrap();
    assert_eq!(blocks[0].gram, mat(&alg, &[&[1, 0], &[0, 1]]));
    assert_eq!(blocks[0].pieces, vec![1, 1]);
    assert_eq!(pb.generators[1], vec![e(&alg, -1, 0), e(&alg, 1, 0)]);

    let not_perfect = orthogonal_decompose(&pb, &mat(&alg, &[&[2, 0], &[0, 2]]));
    assert!(matches!(not_perfect, Err(Error::NotPerfect(_))));
}

#[test]
fn witt_failure_norms() {
    let alg = make_local_alg(2, 2, 16).unwrap();
    let norms = unit_norm_residues(&alg, 1, 6).unwrap();
    assert!(norms.iter().all(|n| n % 8 == 1));
    assert!(!norms.contains(&3));
    // over the maximal order 3 is a unit norm: 1 + 2·1² = 3
    assert!(unit_norm_residues(&alg, 0, 6).unwrap().contains(&3));
}

#[test]
fn hyperbolize_examples() {
    let alg = make_local_alg(3, 2, 48).unwrap();
    let h = mat(&alg, &[&[0, 1], &[1, 0]]);
    let u = hyperbolize(&h).unwrap();
    assert_eq!(lmat_congruence(&u, &h), h);
    let g = mat(&alg, &[&[2, 1], &[1, 2]]);
    let u = hyperbolize(&g).unwrap();
    assert_eq!(lmat_congruence(&u, &g), h);
    assert!(u.iter().flatten().all(|x| x.in_order(1)));
    assert!(matches!(hyperbolize(&mat(&alg, &[&[1, 1], &[1, 2]])), Err(Error::NotEvenDiagonal(_))));

    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for p in [3u64, 7, 11, 19] {
        let alg = make_local_alg(p, 2, 40).unwrap();
        let chain = OrderChain::conductor_one(alg.clone());
        let (_, std) = standard_r2(&alg, 0, 1, 0).unwrap();
        for _ in 0..10 {
            let u0 = random_automorphism(&chain, &[0, 0], &mut rng);
            let g = lmat_congruence(&u0, &std);
            let u = hyperbolize(&g).unwrap();
            assert_eq!(lmat_congruence(&u, &g), std, "p={p}");
        }
    }
}

#[test]
fn classification_examples_and_invariance() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for p in [3u64, 7, 11] {
        let alg = make_local_alg(p, 2, 40).unwrap();
        let chain = OrderChain::conductor_one(alg.clone());
        let r2sq = PseudoBasis::standard(chain.clone(), vec![0, 0]).unwrap();
        assert_eq!(classify_unimodular_r2(&r2sq, &mat(&alg, &[&[1, 0], &[0, 1]])).unwrap(), R2Class::new(2, 0, true).unwrap());
        assert_eq!(classify_unimodular_r2(&r2sq, &mat(&alg, &[&[0, 1], &[1, 0]])).unwrap(), R2Class::new(2, 0, false).unwrap());
        let o = PseudoBasis::standard(chain.clone(), vec![1]).unwrap();
        assert_eq!(classify_unimodular_r2(&o, &mat(&alg, &[&[2]])).unwrap(), R2Class::new(0, 1, false).unwrap());

        for n in 1..=4 {
            for c in R2Class::all_of_rank(n) {
                let (pb, h) = modlat::bass::standard_of_class(&alg, c).unwrap();
                for _ in 0..30 {
                    let u = random_automorphism(&chain, &pb.order_index, &mut rng);
                    let moved = pb.transformed(&u, pb.order_index.clone()).unwrap();
                    assert_eq!(classify_unimodular_r2(&moved, &h).unwrap(), c, "p={p} {c}");
                }
            }
        }
    }
}

#[test]
fn label_count_matches_f2_forms() {
    let alg = make_local_alg(7, 2, 32).unwrap();
    for n in 1..=4usize {
        let mut labels = BTreeSet::new();
        for a in 0..=n {
            for b in 0..=(n - a) / 2 {
                let s = n - a - 2 * b;
                let (pb, h) = standard_r2(&alg, a, b, s).unwrap();
                labels.insert(classify_unimodular_r2(&pb, &h).unwrap().to_string());
            }
        }
        assert_eq!(labels.len(), n + 1 + n / 2);
        if n <= 3 {
            assert_eq!(f2_orbit_count(n).unwrap(), labels.len());
        }
    }
}

#[test]
fn random_perfect_forms_decompose() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for p in [3u64, 7, 11] {
        let alg = make_local_alg(p, 2, 64).unwrap();
        let chain = OrderChain::conductor_one(alg.clone());
        for _ in 0..6 {
            let n = rng.gen_range(1..=5);
            let idx: Vec<usize> = (0..n).map(|_| rng.gen_range(0..2)).collect();
            let (pb, h) = random_perfect(&chain, &idx, &mut rng).unwrap();
            assert!(is_perfect_ambient(&pb, &h).unwrap());
            let (out, blocks) = orthogonal_decompose(&pb, &h).unwrap();
            assert!(out.same_module(&pb).unwrap());
            let a = out.gram(&h);
            let mut off = 0;
            for b in &blocks {
                let k = b.generators.len();
                for i in off..off + k {
                    for j in off + k..n {
                        assert!(a[i][j].is_zero() && a[j][i].is_zero());
                    }
                }
                let sub = PseudoBasis::standard(chain.clone(), vec![b.order_index; k]).unwrap();
                assert!(is_perfect_pairing(&sub, &b.gram).unwrap());
                off += k;
            }
        }
    }
}
