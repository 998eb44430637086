//! Seeded generators of random perfect forms and module automorphisms.

use rand::Rng;

use super::chain::OrderChain;
use super::pseudo::PseudoBasis;
use crate::error::Result;
use crate::padic::{lmat_det, lpow, random_local, LMat, LocalKElem};

/// A random element of `ℓ^k R_i`.
fn random_in(chain: &OrderChain, i: usize, k: u32, rng: &mut impl Rng) -> LocalKElem {
    let alg = &chain.alg;
    let x = random_local(alg, rng);
    let y = &x.y * lpow(alg.l, chain.level(i));
    LocalKElem::new(alg, x.x, y, alg.prec).scale_int(&lpow(alg.l, k))
}

/// A random automorphism of `⊕ R_{idx[k]}`: row `k` lists the coefficients
/// of the new `k`-th generator. Entry `(k, j)` lies in `R_{idx[j]}` when
/// `idx[k] ≤ idx[j]` and in `(R_{idx[j]} : R_{idx[k]})` otherwise.
pub fn random_automorphism(chain: &OrderChain, idx: &[usize], rng: &mut impl Rng) -> LMat {
    let n = idx.len();
    loop {
        let u: LMat = (0..n)
            .map(|k| {
                (0..n)
                    .map(|j| {
                        let (ik, ij) = (idx[k], idx[j]);
                        if ik <= ij {
                            random_in(chain, ij, 0, rng)
                        } else {
                            random_in(chain, ik, chain.level(ij) - chain.level(ik), rng)
                        }
                    })
                    .collect()
            })
            .collect();
        if lmat_det(&u).is_ok_and(|d| d.is_unit()) {
            return u;
        }
    }
}

fn random_hermitian_unimodular(chain: &OrderChain, i: usize, n: usize, rng: &mut impl Rng) -> LMat {
    let alg = &chain.alg;
    loop {
        let mut m = vec![vec![LocalKElem::zero(alg); n]; n];
        for a in 0..n {
            let d = random_local(alg, rng);
            m[a][a] = LocalKElem::new(alg, d.x, 0.into(), alg.prec);
            for b in a + 1..n {
                let x = random_in(chain, i, 0, rng);
                m[b][a] = x.conj();
                m[a][b] = x;
            }
        }
        if lmat_det(&m).is_ok_and(|d| d.is_unit()) {
            return m;
        }
    }
}

/// A random perfect hermitian form on `⊕ R_{idx[k]} e_k` (standard
/// generators), built block by block: diagonal blocks `α_i·G_i` with `G_i`
/// hermitian and invertible over `R_i`, off-diagonal entries in `α_t R_t`.
/// The result is then moved by a random module automorphism.
pub fn random_perfect(chain: &OrderChain, idx: &[usize], rng: &mut impl Rng) -> Result<(PseudoBasis, LMat)> {
    let n = idx.len();
    let alg = &chain.alg;
    let mut sorted = idx.to_vec();
    sorted.sort_unstable();
    let mut h = vec![vec![LocalKElem::zero(alg); n]; n];
    let mut start = 0;
    while start < n {
        let i = sorted[start];
        let end = (start..n).find(|&k| sorted[k] != i).unwrap_or(n);
        let g = random_hermitian_unimodular(chain, i, end - start, rng);
        let alpha = lpow(alg.l, chain.alpha_exp(i));
        for a in start..end {
            for b in start..end {
                h[a][b] = g[a - start][b - start].scale_int(&alpha);
            }
        }
        start = end;
    }
    for a in 0..n {
        for b in a + 1..n {
            let t = sorted[a].max(sorted[b]);
            if sorted[a] != sorted[b] {
                let x = random_in(chain, t, chain.alpha_exp(t), rng);
                h[b][a] = x.conj();
                h[a][b] = x;
            }
        }
    }
    let base = PseudoBasis::standard(chain.clone(), sorted.clone())?;
    let u = random_automorphism(chain, &sorted, rng);
    let pb = base.transformed(&u, sorted)?;
    Ok((pb, h))
}
