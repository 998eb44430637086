use std::collections::BTreeSet;

use num_bigint::BigInt;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use modlat::bass::{classify_unimodular_r2, f2_classify, random_automorphism, standard_of_class, F2BilForm, R2Class};
use modlat::exactnum::{det_class_of, int, Rational};
use modlat::global::{exists_modular, genus_enumerate, glue_lattice, verify_genus, Ring};
use modlat::herm::RingCtx;
use modlat::localclass::{classify_local_gram, local_exists, standard_gram};
use modlat::padic::{lmat_congruence, lmat_from_kmat, make_local_alg, random_unimodular};
use modlat::symbols::{hilbert, hilbert_product, relevant_places, Place, Sign};

fn nonzero_rational() -> impl Strategy<Value = Rational> {
    (-2000i64..2000, 1i64..500)
        .prop_filter("nonzero", |(a, _)| *a != 0)
        .prop_map(|(a, b)| Rational::new(BigInt::from(a), BigInt::from(b)))
}

fn positive_rational() -> impl Strategy<Value = Rational> {
    (1i64..3000, 1i64..300).prop_map(|(a, b)| Rational::new(BigInt::from(a), BigInt::from(b)))
}

const SMALL_PRIMES: [u64; 9] = [2, 3, 5, 7, 11, 13, 17, 19, 23];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn hilbert_product_is_one(a in nonzero_rational(), b in nonzero_rational()) {
        prop_assert_eq!(hilbert_product(&a, &b).unwrap(), Sign::Plus);
    }

    #[test]
    fn hilbert_symbol_is_symmetric_and_bilinear(a in nonzero_rational(), b in nonzero_rational(), c in nonzero_rational()) {
        let mut places: BTreeSet<Place> = relevant_places(&a, &b).unwrap().into_iter().collect();
        places.extend(relevant_places(&a, &c).unwrap());
        places.insert(Place::Prime(2));
        for v in places {
            prop_assert_eq!(hilbert(&a, &b, v), hilbert(&b, &a, v));
            prop_assert_eq!(hilbert(&a, &(&b * &c), v), hilbert(&a, &b, v).times(hilbert(&a, &c, v)));
            prop_assert_eq!(hilbert(&a, &(-&a), v), Sign::Plus);
        }
    }

    #[test]
    fn det_class_is_a_homomorphism(p in prop::sample::select(SMALL_PRIMES.to_vec()), x in positive_rational(), y in positive_rational(), u in -30i64..30, v in -30i64..30) {
        let cx = det_class_of(&x, p).unwrap();
        let cy = det_class_of(&y, p).unwrap();
        prop_assert_eq!(det_class_of(&(&x * &y), p).unwrap(), cx.mul(&cy));
        prop_assert!(cx.mul(&cx).is_trivial());
        // norms u² + p·v² are trivial
        let norm = int(u * u) + int(p as i64 * v * v);
        if norm != int(0) {
            prop_assert!(det_class_of(&norm, p).unwrap().is_trivial());
        }
    }

    #[test]
    fn f2_class_is_a_congruence_invariant(n in 1usize..=5, bits in any::<u64>(), ubits in any::<u64>()) {
        let mut m = vec![vec![0u8; n]; n];
        let mut k = 0;
        for i in 0..n {
            for j in i..n {
                let b = ((bits >> k) & 1) as u8;
                m[i][j] = b;
                m[j][i] = b;
                k += 1;
            }
        }
        // an invertible change of basis: unipotent upper triangular times a permutation
        let mut u = vec![vec![0u8; n]; n];
        for i in 0..n {
            u[i][i] = 1;
            for j in i + 1..n {
                u[i][j] = ((ubits >> (i * n + j)) & 1) as u8;
            }
        }
        u.rotate_left((ubits % n as u64) as usize);
        let mut moved = vec![vec![0u8; n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = 0;
                for a in 0..n {
                    for b in 0..n {
                        acc ^= u[i][a] & m[a][b] & u[j][b];
                    }
                }
                moved[i][j] = acc;
            }
        }
        let c0 = f2_classify(&F2BilForm::new(m).unwrap());
        let c1 = f2_classify(&F2BilForm::new(moved).unwrap());
        prop_assert_eq!(c0, c1);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn r2_class_survives_module_automorphisms(p in prop::sample::select(vec![3u64, 7, 11, 19]), n in 1usize..=4, pick in any::<prop::sample::Index>(), seed in any::<u64>()) {
        let classes = R2Class::all_of_rank(n);
        let c = classes[pick.index(classes.len())];
        let alg = make_local_alg(p, 2, 32).unwrap();
        let (pb, h) = standard_of_class(&alg, c).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let idx = pb.order_index.clone();
        let u = random_automorphism(&pb.chain, &idx, &mut rng);
        let moved = pb.transformed(&u, idx).unwrap();
        prop_assert_eq!(classify_unimodular_r2(&moved, &h).unwrap(), c);
    }

    #[test]
    fn local_class_survives_congruence(p in prop::sample::select(vec![3u64, 5, 7, 13]), l in prop::sample::select(vec![2u64, 3, 5, 7, 13]), n in 1usize..=4, dexp in 0u32..3, seed in any::<u64>()) {
        let alg = make_local_alg(p, l, 48).unwrap();
        let ctx = RingCtx::LocalOK { alg: alg.clone() };
        let base = if l == p { Rational::from_integer(BigInt::from(p).pow(n as u32 / 2)) } else { int(1) };
        let d = &base * Rational::from_integer(BigInt::from(3u32).pow(dexp));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for label in local_exists(p, l, n, &d) {
            let Ok(g) = standard_gram(label, &ctx) else { continue };
            let lg = lmat_from_kmat(&alg, g.gram()).unwrap();
            let moved = lmat_congruence(&random_unimodular(&alg, n, &mut rng), &lg);
            prop_assert_eq!(classify_local_gram(&alg, &moved).unwrap(), label);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn enumeration_agrees_with_existence(p in prop::sample::select(vec![2u64, 3, 5, 7, 11, 13, 19, 23, 29, 31, 43, 47]), half in 1usize..=4, r_ring in any::<bool>()) {
        let n = 2 * half;
        let ring = if r_ring && p % 4 == 3 { Ring::R } else { Ring::OK };
        let list = genus_enumerate(p, n, ring);
        for det in [int(1), int(2)] {
            let Ok(d) = det_class_of(&det, p) else { continue };
            let any = list.iter().any(|s| s.det == d);
            prop_assert_eq!(exists_modular(p, n, ring, &d).unwrap(), any);
        }
        for s in &list {
            prop_assert_eq!(s.n, n);
            prop_assert_eq!(s.p, p);
        }
    }

    #[test]
    fn representatives_are_modular_of_the_right_genus(p in prop::sample::select(vec![2u64, 3, 5, 7, 11, 13, 17, 19, 23]), half in 1usize..=3, r_ring in any::<bool>(), pick in any::<prop::sample::Index>()) {
        let n = 2 * half;
        let ring = if r_ring && p % 4 == 3 { Ring::R } else { Ring::OK };
        let list = genus_enumerate(p, n, ring);
        prop_assume!(!list.is_empty());
        let s = &list[pick.index(list.len())];
        let l = glue_lattice(p, s).unwrap();
        let check = verify_genus(&l, s);
        prop_assert!(check.passed(), "{}: {:?}", s, check.failure);
        // the other genera of the same shape reject it
        for other in list.iter().filter(|o| *o != s) {
            prop_assert!(!verify_genus(&l, other).passed());
        }
    }
}
