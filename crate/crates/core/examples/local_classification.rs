//! Classifying local hermitian forms: the standard representative of every
//! local class is moved by a random unimodular change of basis and then
//! classified again.

use modlat::herm::RingCtx;
use modlat::localclass::{classify_local_gram, local_exists, standard_gram};
use modlat::exactnum::int;
use modlat::padic::{lmat_congruence, lmat_from_kmat, make_local_alg, random_unimodular};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> modlat::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    // (p, ℓ, rank, determinant)
    let cases = [(7u64, 7u64, 4usize, 49i64), (5, 5, 4, 25), (5, 2, 2, 1), (7, 2, 3, 1), (3, 2, 2, 1), (13, 3, 2, 1)];
    for (p, l, n, d) in cases {
        let alg = make_local_alg(p, l, 48)?;
        let ctx = RingCtx::LocalOK { alg: alg.clone() };
        for label in local_exists(p, l, n, &int(d)) {
            let g = standard_gram(label, &ctx)?;
            let h = lmat_from_kmat(&alg, g.gram())?;
            let moved = lmat_congruence(&random_unimodular(&alg, n, &mut rng), &h);
            let found = classify_local_gram(&alg, &moved)?;
            println!("p={p} ℓ={l} n={n} det={d}: {label} -> {found}");
            assert_eq!(found, label);
        }
    }
    Ok(())
}
