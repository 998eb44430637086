use std::fmt;

use super::symbol::{At2, GenusSymbol, Ring};
use crate::bass::{classify_unimodular_r2, OrderChain, PseudoBasis};
use crate::error::{Error, Result};
use crate::exactnum::factorize;
use crate::herm::{global_det_class, ideals, is_modular, is_positive_definite, HermLattice, OrderTag, RingCtx};
use crate::localclass::{classify_local, LocalClassLabel, LocalKind};
use crate::padic::{lmat_from_kmat, make_local_alg};

/// Working precision for the local classifications done during verification.
pub const VERIFY_PRECISION: u32 = 64;

/// Why a lattice is not in the claimed genus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VerifyFailure {
    Shape(String),
    NotPositiveDefinite,
    WrongDetClass { found: String },
    NotModular,
    WrongClassAtP { found: String },
    WrongClassAt2 { found: String },
    NotSelfDualAt(u64),
    WrongNorm { found: String },
    Failed(Error),
}

impl VerifyFailure {
    /// Short machine-readable reason code.
    pub fn code(&self) -> &'static str {
        match self {
            VerifyFailure::Shape(_) => "Shape",
            VerifyFailure::NotPositiveDefinite => "NotPositiveDefinite",
            VerifyFailure::WrongDetClass { .. } => "WrongDetClass",
            VerifyFailure::NotModular => "NotModular",
            VerifyFailure::WrongClassAtP { .. } => "WrongClassAtP",
            VerifyFailure::WrongClassAt2 { .. } => "WrongClassAt2",
            VerifyFailure::NotSelfDualAt(_) => "NotSelfDual",
            VerifyFailure::WrongNorm { .. } => "WrongNorm",
            VerifyFailure::Failed(e) => e.code(),
        }
    }
}

impl fmt::Display for VerifyFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VerifyFailure::Shape(m) => write!(f, "shape mismatch: {m}"),
            VerifyFailure::NotPositiveDefinite => f.write_str("not positive definite"),
            VerifyFailure::WrongDetClass { found } => write!(f, "determinant class is {found}"),
            VerifyFailure::NotModular => f.write_str("√-p·L^dual differs from L"),
            VerifyFailure::WrongClassAtP { found } => write!(f, "local class at p is {found}"),
            VerifyFailure::WrongClassAt2 { found } => write!(f, "local class at 2 is {found}"),
            VerifyFailure::NotSelfDualAt(l) => write!(f, "not self-dual at {l}"),
            VerifyFailure::WrongNorm { found } => write!(f, "norm ideal is {found}"),
            VerifyFailure::Failed(e) => write!(f, "{e}"),
        }
    }
}

/// Outcome of [`verify_genus`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenusCheck {
    pub failure: Option<VerifyFailure>,
}

impl GenusCheck {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

fn local_o_lattice(l: &HermLattice, prime: u64) -> Result<HermLattice> {
    let ctx = RingCtx::local_ok(l.p(), prime, VERIFY_PRECISION)?;
    HermLattice::new(ctx, l.gram().clone())
}

fn class_at(l: &HermLattice, prime: u64) -> Result<LocalClassLabel> {
    classify_local(&local_o_lattice(l, prime)?)
}

fn r2_class_at_2(l: &HermLattice) -> Result<At2> {
    let alg = make_local_alg(l.p(), 2, VERIFY_PRECISION)?;
    let h = lmat_from_kmat(&alg, l.gram())?;
    let idx = l.tags().iter().map(|&t| usize::from(t == OrderTag::O)).collect();
    let pb = PseudoBasis::standard(OrderChain::conductor_one(alg), idx)?;
    Ok(At2::R2(classify_unimodular_r2(&pb, &h)?))
}

fn check(l: &HermLattice, symbol: &GenusSymbol) -> std::result::Result<(), VerifyFailure> {
    let fail = VerifyFailure::Failed;
    let p = symbol.p;
    let ring_ok = matches!((l.ctx(), symbol.ring), (RingCtx::GlobalOK { .. }, Ring::OK) | (RingCtx::GlobalR { .. }, Ring::R));
    if l.p() != p || l.rank() != symbol.n || !ring_ok {
        return Err(VerifyFailure::Shape(format!("lattice over {} of rank {}", l.ctx().describe(), l.rank())));
    }
    if !is_positive_definite(l).map_err(fail)? {
        return Err(VerifyFailure::NotPositiveDefinite);
    }
    let det = global_det_class(l).map_err(fail)?;
    if det != symbol.det {
        return Err(VerifyFailure::WrongDetClass { found: det.to_string() });
    }
    if !is_modular(l, 1).map_err(fail)? {
        return Err(VerifyFailure::NotModular);
    }
    let at_p = class_at(l, p).map_err(|e| VerifyFailure::WrongClassAtP { found: e.code().into() })?;
    if at_p != symbol.at_p {
        return Err(VerifyFailure::WrongClassAtP { found: at_p.kind.to_string() });
    }
    if p != 2 {
        let found = match symbol.ring {
            Ring::OK => class_at(l, 2).map(At2::Local),
            Ring::R => r2_class_at_2(l),
        }
        .map_err(|e| VerifyFailure::WrongClassAt2 { found: e.code().into() })?;
        if found != symbol.at_2 {
            return Err(VerifyFailure::WrongClassAt2 { found: found.to_string() });
        }
    }
    let d = l.det();
    let mut primes: Vec<u64> = Vec::new();
    for part in [d.numer(), d.denom()] {
        primes.extend(factorize(part).map_err(fail)?.into_iter().map(|(q, _)| q));
    }
    for q in primes.into_iter().filter(|&q| q != 2 && q != p) {
        match class_at(l, q) {
            Ok(c) if c.kind == LocalKind::SelfDualUnramified => {}
            _ => return Err(VerifyFailure::NotSelfDualAt(q)),
        }
    }
    let (_, norm) = ideals(l);
    if norm != symbol.norm {
        return Err(VerifyFailure::WrongNorm { found: norm.to_string() });
    }
    Ok(())
}

/// Whether `l` lies in the genus described by `symbol`; on failure the
/// first violated condition is reported.
pub fn verify_genus(l: &HermLattice, symbol: &GenusSymbol) -> GenusCheck {
    GenusCheck { failure: check(l, symbol).err() }
}
