use modlat::exactnum::{identity, int, DetClass};
use modlat::global::{
    det_two, exists_modular, genus_enumerate, glue_lattice, search_block, sigma_report, verify_genus, At2, BlockKind, Ring,
    VerifyFailure,
};
use modlat::herm::{ideals, is_modular, HermLattice, RingCtx};
use modlat::localclass::LocalKind;
use modlat::Error;

#[test]
fn representatives_verify_for_small_primes() {
    for p in [2u64, 3, 5, 7, 11, 13] {
        for n in [2usize, 4] {
            for ring in [Ring::OK, Ring::R] {
                for sym in genus_enumerate(p, n, ring) {
                    let l = glue_lattice(p, &sym).unwrap_or_else(|e| panic!("{sym}: {e}"));
                    let check = verify_genus(&l, &sym);
                    assert!(check.passed(), "{sym}: {:?}", check.failure);
                    assert_eq!(ideals(&l).1, sym.norm);
                }
            }
        }
    }
}

#[test]
fn spec_examples_for_representatives() {
    let sym = &genus_enumerate(5, 2, Ring::OK)[0];
    let l = glue_lattice(5, sym).unwrap();
    assert!(is_modular(&l, 1).unwrap());
    assert_eq!(ideals(&l).1.to_string(), "(5)");

    let sym = &genus_enumerate(3, 4, Ring::OK)[0];
    let l = glue_lattice(3, sym).unwrap();
    assert!(modlat::herm::global_det_class(&l).unwrap().is_trivial());
    assert_eq!(sym.at_p.kind, LocalKind::ModularP);

    let mut fake = genus_enumerate(3, 4, Ring::OK)[0].clone();
    fake.n = 2;
    fake.at_p.rank = 2;
    assert!(matches!(glue_lattice(3, &fake), Err(Error::NoSuchGenus(_))));
}

#[test]
fn verification_rejects_wrong_data() {
    let sym = genus_enumerate(5, 2, Ring::OK)[0].clone();
    let id = HermLattice::new(RingCtx::global_ok(5).unwrap(), identity(5, 2)).unwrap();
    assert_eq!(verify_genus(&id, &sym).failure, Some(VerifyFailure::NotModular));

    let l = glue_lattice(5, &sym).unwrap();
    let mut wrong = sym.clone();
    wrong.det = modlat::exactnum::det_class_of(&int(3), 5).unwrap();
    assert!(matches!(verify_genus(&l, &wrong).failure, Some(VerifyFailure::WrongDetClass { .. })));

    let syms = genus_enumerate(7, 4, Ring::R);
    let l = glue_lattice(7, &syms[0]).unwrap();
    assert!(matches!(verify_genus(&l, &syms[1]).failure, Some(VerifyFailure::WrongClassAt2 { .. })));
}

#[test]
fn counts_match_the_closed_formulas() {
    for p in modlat::exactnum::primes_up_to(50) {
        for n in (2..=8).step_by(2) {
            let ok = genus_enumerate(p, n, Ring::OK).len();
            let expected_ok = if p % 4 == 3 && n % 4 != 0 {
                0
            } else if p % 4 != 3 && n % 4 == 0 {
                2
            } else {
                1
            };
            assert_eq!(ok, expected_ok, "p={p} n={n}");
            let r = genus_enumerate(p, n, Ring::R).len();
            let expected_r = match (p % 8, n % 4) {
                (7, 0) => 3 * n / 2 + 1,
                (3, 0) => n + 1,
                (3, 2) => n / 2,
                _ => 0,
            };
            assert_eq!(r, expected_r, "p={p} n={n}");
            if p % 4 == 3 {
                let s = sigma_report(p, n).unwrap();
                assert_eq!(s.sigma1_count + s.sigma2_count.unwrap(), r);
                for det in [DetClass::identity(p), det_two(p)] {
                    let listed = genus_enumerate(p, n, Ring::R).iter().any(|g| g.det == det);
                    assert_eq!(exists_modular(p, n, Ring::R, &det).unwrap(), listed);
                }
            }
        }
    }
}

#[test]
fn sigma_dictionary() {
    let cases: [(u64, usize, usize, Option<usize>); 7] =
        [(7, 2, 0, Some(0)), (7, 4, 1, Some(6)), (3, 4, 1, Some(4)), (11, 6, 0, Some(3)), (13, 4, 2, None), (5, 2, 1, None), (2, 4, 2, None)];
    for (p, n, s1, s2) in cases {
        let r = sigma_report(p, n).unwrap();
        assert_eq!((r.sigma1_count, r.sigma2_count), (s1, s2), "p={p} n={n}");
        assert_eq!(r.nonempty, r.total > 0);
    }
}

#[test]
fn subnormal_blocks_exist_for_small_primes() {
    for p in [5u64, 13, 17, 29] {
        assert!(search_block(p, BlockKind::EvenUnimodular, 8, 1).is_ok(), "p={p}");
    }
    let sym = genus_enumerate(13, 8, Ring::OK).into_iter().find(|s| matches!(s.at_2, At2::Local(l) if l.kind == LocalKind::RuSubnormal)).unwrap();
    let l = glue_lattice(13, &sym).unwrap();
    assert!(verify_genus(&l, &sym).passed());
}
