//! Lattices over the non-maximal order Z₂ + 2O at the prime 2: orthogonal
//! decomposition of a random perfect form, its type, and the fixture where
//! the two halves of a decomposition are not determined by the lattice.

use modlat::bass::{classify_unimodular_r2, orthogonal_decompose, pseudo_basis_and_type, random_perfect, witt_fixture, OrderChain};
use modlat::padic::make_local_alg;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> modlat::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let alg = make_local_alg(7, 2, 40)?;
    let chain = OrderChain::conductor_one(alg);
    for idx in [vec![0, 0, 1], vec![0, 1, 1, 1], vec![0, 0, 0, 0]] {
        let (pb, h) = random_perfect(&chain, &idx, &mut rng)?;
        let (split, blocks) = orthogonal_decompose(&pb, &h)?;
        let (_, t) = pseudo_basis_and_type(&chain, &split.z_generators())?;
        let class = classify_unimodular_r2(&pb, &h)?;
        let shape: Vec<String> = blocks.iter().map(|b| format!("{}×R{}", b.gram.len(), b.order_index)).collect();
        println!("order indices {idx:?}: blocks [{}], type ({}, {}), class {class}", shape.join(", "), t.r, t.s);
    }

    let w = witt_fixture(32)?;
    let (a, b) = w.decompositions()?;
    let diag = |bs: &[modlat::bass::IsotypicBlock]| -> Vec<String> { bs.iter().map(|b| b.gram[0][0].to_kelem().a.to_string()).collect() };
    println!("two pseudo-bases of one lattice: free part norms {:?} and {:?}", diag(&a), diag(&b));
    Ok(())
}
