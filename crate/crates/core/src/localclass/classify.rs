use super::labels::{LocalClassLabel, LocalKind};
use super::reduce::jordan_blocks;
use crate::error::{invalid, Error, Result};
use crate::herm::{HermLattice, OrderTag, RingCtx};
use crate::padic::{lmat_det, lmat_from_kmat, lmat_is_hermitian, Alg, Kind, LMat, LocalKElem, PadicInt, Val};

/// Which local problem a prime poses for `K = Q(√-p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LocalCase {
    Unramified,
    /// `ℓ = p` odd.
    OddP,
    /// `p = ℓ = 2`: ramified by the square root of a prime.
    RamifiedPrime,
    /// `p ≡ 1 (mod 4)`, `ℓ = 2`: ramified by the square root of a unit.
    RamifiedUnit,
}

pub fn local_case(p: u64, l: u64) -> LocalCase {
    if l == p && p == 2 {
        LocalCase::RamifiedPrime
    } else if l == p {
        LocalCase::OddP
    } else if l == 2 && p % 4 == 1 {
        LocalCase::RamifiedUnit
    } else {
        LocalCase::Unramified
    }
}

impl LocalCase {
    /// Whether the lattices of interest are `√-p`-modular (rather than self-dual).
    pub fn is_modular_case(self) -> bool {
        matches!(self, LocalCase::OddP | LocalCase::RamifiedPrime)
    }
}

/// Norm ideal of a local Gram matrix, as a valuation in uniformizer units.
pub fn local_norm_val(g: &LMat) -> Result<i64> {
    let alg = &g[0][0].alg;
    let omega = LocalKElem::omega(alg);
    let mut best = Val::Infinite;
    for i in 0..g.len() {
        let d = g[i][i].rational_part().ok_or_else(|| Error::NonHermitian(format!("diagonal entry {} is not σ-fixed", g[i][i])))?;
        best = best.min(d.val());
        for j in i + 1..g.len() {
            best = best.min(g[i][j].trace().val());
            best = best.min((&omega * &g[i][j]).trace().val());
        }
    }
    Ok(best.require("norm of the lattice")? * alg.e())
}

/// The determinant as `ℓ^v · u` with `u` a unit of `Z_ℓ`.
pub fn det_unit_part(g: &LMat) -> Result<(i64, PadicInt)> {
    let d = lmat_det(g)?;
    let r = d.rational_part().ok_or_else(|| Error::NonHermitian("determinant is not σ-fixed".into()))?;
    let v = r.val().require("determinant")?;
    Ok((v, r.div_l_pow(v as u32)?))
}

fn residue_mod(u: &PadicInt, m: u32) -> Result<u32> {
    if u.prec < 3 {
        return Err(Error::InsufficientPrecision("determinant known to fewer than 3 dyadic digits".into()));
    }
    Ok((&u.residue % m).try_into().expect("small residue"))
}

/// `(−1)^k` as a boolean sign (`true` for `+1`).
fn parity_sign(k: usize) -> bool {
    k % 2 == 0
}

/// Classifies a hermitian Gram matrix over `O_{K_ℓ}` known to the working
/// precision of `alg`.
pub fn classify_local_gram(alg: &Alg, g: &LMat) -> Result<LocalClassLabel> {
    let n = g.len();
    if n == 0 {
        return Err(invalid("empty Gram matrix"));
    }
    if !lmat_is_hermitian(g) {
        return Err(Error::NonHermitian("Gram matrix differs from its conjugate transpose".into()));
    }
    let case = local_case(alg.p, alg.l);
    let det = lmat_det(g)?;
    // at split primes `val` is a componentwise minimum, so units are detected through the norm
    let det_val = if alg.kind == Kind::Split { det.norm().val() } else { det.val() };
    let det_val = det_val.require("determinant")?;
    if case.is_modular_case() {
        let integral_above = g.iter().flatten().all(|e| e.val() >= Val::Finite(1));
        if !integral_above || det_val != n as i64 {
            return Err(Error::NotModular(format!("scale or determinant valuation ({det_val}) does not match rank {n}")));
        }
        if n % 2 == 1 {
            return Err(Error::NotModular("√-p-modular lattices have even rank".into()));
        }
    } else if det_val != 0 {
        return Err(Error::NotSelfDual(format!("determinant has valuation {det_val}")));
    }

    let kind = match case {
        LocalCase::Unramified => LocalKind::SelfDualUnramified,
        LocalCase::OddP => LocalKind::ModularP,
        LocalCase::RamifiedPrime => {
            if local_norm_val(g)? >= 4 {
                LocalKind::RpNormH
            } else {
                let (_, u) = det_unit_part(g)?;
                let sign_l = matches!(residue_mod(&u, 8)?, 1 | 3);
                if sign_l == parity_sign(n / 2 - 1) {
                    LocalKind::RpUnique
                } else {
                    LocalKind::RpNorm2
                }
            }
        }
        LocalCase::RamifiedUnit => {
            if n % 2 == 1 {
                return Err(Error::Inconsistent("odd-rank self-dual lattices at a ramified unit prime carry no label".into()));
            }
            let blocks = jordan_blocks(g)?;
            let normal = blocks.iter().any(|b| b.is_line() && b.has_unit_diagonal());
            debug_assert_eq!(normal, local_norm_val(g)? == 0);
            if !normal {
                LocalKind::RuSubnormal
            } else {
                let (_, u) = det_unit_part(g)?;
                let sign_l = residue_mod(&u, 4)? == 1;
                if sign_l == parity_sign(n / 2 - 1) {
                    LocalKind::RuNormalPlus
                } else {
                    LocalKind::RuNormalMixed
                }
            }
        }
    };
    Ok(LocalClassLabel::new(kind, n))
}

/// Classifies a lattice over `O_{K_ℓ}`: self-dual at unramified primes and at
/// 2 when `p ≡ 1 (mod 4)`, `√-p`-modular at `ℓ = p`.
pub fn classify_local(l: &HermLattice) -> Result<LocalClassLabel> {
    let RingCtx::LocalOK { alg } = l.ctx() else {
        return Err(invalid("local classification needs a local maximal-order context"));
    };
    if l.tags().iter().any(|&t| t != OrderTag::O) {
        return Err(invalid("local classification is for O-lattices"));
    }
    let g = lmat_from_kmat(alg, l.gram()).map_err(|e| match e {
        Error::IntegralityViolation(m) if local_case(alg.p, alg.l).is_modular_case() => Error::NotModular(m),
        Error::IntegralityViolation(m) => Error::NotSelfDual(m),
        other => other,
    })?;
    classify_local_gram(alg, &g)
}
