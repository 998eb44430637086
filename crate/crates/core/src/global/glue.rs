use super::block::{search_block, BlockKind};
use super::lagrange::lagrangian_step;
use super::symbol::{genus_enumerate, At2, GenusSymbol, Ring};
use crate::error::{Error, Result};
use crate::exactnum::{identity, KElem, KMat};
use crate::herm::{HermLattice, OrderTag, RingCtx};
use crate::localclass::{block_sum, LocalKind};

/// Bounds for the rank-4 block searches: diagonal multiplier and
/// off-diagonal coefficient size.
const BLOCK_DIAG_BOUND: i128 = 8;
const BLOCK_COEF_BOUND: i128 = 1;

fn k(p: u64, a: i64, b: i64) -> KElem {
    KElem::new(p, crate::exactnum::rat(a, 1), crate::exactnum::rat(b, 1))
}

fn repeat_block(p: u64, block: &KMat, copies: usize) -> KMat {
    block_sum(p, &vec![block.clone(); copies])
}

/// The start lattice `𝓛₁^a ⊥ 𝓗^b ⊥ (2)^s` over `Z[√-p]`: lines `(1)`,
/// planes `[[2, √-p], [−√-p, (p+1)/2]]` (even, determinant 1) and
/// `O`-lines `(2)`. It is self-dual at every odd prime.
fn r_start(p: u64, a: usize, b: usize, s: usize) -> Result<HermLattice> {
    let half = ((p + 1) / 2) as i64;
    let plane = vec![vec![k(p, 2, 0), k(p, 0, 1)], vec![k(p, 0, -1), k(p, half, 0)]];
    let mut blocks: Vec<KMat> = Vec::new();
    blocks.extend(std::iter::repeat_n(vec![vec![k(p, 1, 0)]], a));
    blocks.extend(std::iter::repeat_n(plane, b));
    blocks.extend(std::iter::repeat_n(vec![vec![k(p, 2, 0)]], s));
    let mut tags = vec![OrderTag::R; a + 2 * b];
    tags.extend(std::iter::repeat_n(OrderTag::O, s));
    HermLattice::with_tags(RingCtx::global_r(p)?, block_sum(p, &blocks), tags)
}

/// A positive definite `√-p`-modular lattice in the given genus.
///
/// Over `O_K` the start lattice is `I_n`, or for the genus of norm `2p·O_K`
/// a sum of even unimodular rank-4 blocks (`p ≡ 1 mod 4`); the
/// Lagrangian step at `p` then makes it `√-p`-modular. For `p = 2` and norm
/// `4O` the rank-4 block is already `√-2`-modular. Over `Z[√-p]` the start
/// lattice realizes the class at 2 directly and is untouched by the step at `p`.
pub fn glue_lattice(p: u64, symbol: &GenusSymbol) -> Result<HermLattice> {
    if symbol.p != p {
        return Err(Error::NoSuchGenus(format!("symbol belongs to p = {}, not {p}", symbol.p)));
    }
    if !genus_enumerate(p, symbol.n, symbol.ring).contains(symbol) {
        return Err(Error::NoSuchGenus(symbol.to_string()));
    }
    let n = symbol.n;
    match (symbol.ring, symbol.at_2) {
        (Ring::R, At2::R2(c)) => {
            let (a, b, s) = c.components();
            lagrangian_step(&r_start(p, a, b, s)?)
        }
        (Ring::OK, At2::Local(l)) => {
            let ctx = RingCtx::global_ok(p)?;
            match l.kind {
                LocalKind::RpNormH => {
                    let block = search_block(p, BlockKind::ModularSubnormal, BLOCK_DIAG_BOUND, BLOCK_COEF_BOUND)?;
                    HermLattice::new(ctx, repeat_block(p, &block, n / 4))
                }
                LocalKind::RuSubnormal => {
                    let block = search_block(p, BlockKind::EvenUnimodular, BLOCK_DIAG_BOUND, BLOCK_COEF_BOUND)?;
                    lagrangian_step(&HermLattice::new(ctx, repeat_block(p, &block, n / 4))?)
                }
                _ => lagrangian_step(&HermLattice::new(ctx, identity(p, n))?),
            }
        }
        _ => Err(Error::NoSuchGenus(format!("local data at 2 does not match the ring in {symbol}"))),
    }
}
