use super::classify::{local_case, LocalCase};
use super::labels::{LocalClassLabel, LocalKind};
use crate::error::{Error, Result};
use crate::exactnum::{rat, KElem, KMat};
use crate::herm::{HermLattice, RingCtx};

fn k(p: u64, a: i64, b: i64) -> KElem {
    KElem::new(p, rat(a, 1), rat(b, 1))
}

/// Block-diagonal sum of square blocks.
pub fn block_sum(p: u64, blocks: &[KMat]) -> KMat {
    let n: usize = blocks.iter().map(Vec::len).sum();
    let mut out = vec![vec![KElem::zero(p); n]; n];
    let mut off = 0;
    for b in blocks {
        for (i, row) in b.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                out[off + i][off + j] = e.clone();
            }
        }
        off += b.len();
    }
    out
}

/// `H_p(1)`: the `√-p`-modular hyperbolic plane.
pub fn hyperbolic_p(p: u64) -> KMat {
    vec![vec![k(p, 0, 0), k(p, 0, 1)], vec![k(p, 0, -1), k(p, 0, 0)]]
}

/// `H_2(0)`: the self-dual hyperbolic plane.
pub fn hyperbolic_0(p: u64) -> KMat {
    vec![vec![k(p, 0, 0), k(p, 1, 0)], vec![k(p, 1, 0), k(p, 0, 0)]]
}

pub fn line(p: u64, a: i64) -> KMat {
    vec![vec![k(p, a, 0)]]
}

/// Canonical Gram matrix of a local class.
pub fn standard_gram(label: LocalClassLabel, ctx: &RingCtx) -> Result<HermLattice> {
    let n = label.rank;
    let kind = label.kind;
    let RingCtx::LocalOK { alg } = ctx else {
        return Err(Error::Inconsistent("standard Gram matrices live over a local maximal order".into()));
    };
    let p = alg.p;
    let case = local_case(p, alg.l);
    let fits = match kind {
        LocalKind::SelfDualUnramified => case == LocalCase::Unramified,
        LocalKind::ModularP => case == LocalCase::OddP,
        _ if kind.is_rp() => case == LocalCase::RamifiedPrime,
        _ => case == LocalCase::RamifiedUnit,
    };
    if !fits {
        return Err(Error::Inconsistent(format!("{kind} does not occur over {}", alg.describe())));
    }
    if n == 0 || (kind.needs_even_rank() && n % 2 == 1) {
        return Err(Error::Inconsistent(format!("{kind} needs a positive even rank, got {n}")));
    }
    let m = n / 2;
    let mut blocks: Vec<KMat> = Vec::new();
    match kind {
        LocalKind::SelfDualUnramified => blocks.extend((0..n).map(|_| line(p, 1))),
        LocalKind::ModularP | LocalKind::RpNormH => blocks.extend((0..m).map(|_| hyperbolic_p(p))),
        LocalKind::RpUnique | LocalKind::RpNorm2 => {
            let corner = if kind == LocalKind::RpUnique { 4 } else { 0 };
            blocks.push(vec![vec![k(p, -2, 0), k(p, 0, 1)], vec![k(p, 0, -1), k(p, corner, 0)]]);
            blocks.extend((1..m).map(|_| hyperbolic_p(p)));
        }
        LocalKind::RuNormalPlus | LocalKind::RuNormalMixed => {
            blocks.push(line(p, 1));
            blocks.push(line(p, if kind == LocalKind::RuNormalPlus { 1 } else { -1 }));
            blocks.extend((1..m).map(|_| hyperbolic_0(p)));
        }
        LocalKind::RuSubnormal => blocks.extend((0..m).map(|_| hyperbolic_0(p))),
    }
    HermLattice::new(ctx.clone(), block_sum(p, &blocks))
}
