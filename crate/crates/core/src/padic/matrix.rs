use num_bigint::BigInt;
use rand::Rng;

use super::alg::{Alg, Kind, LocalKElem};
use super::int::{lpow, PadicInt, Val};
use crate::error::{Error, Result};
use crate::exactnum::KMat;

pub type LMat = Vec<Vec<LocalKElem>>;

pub fn lmat_from_kmat(alg: &Alg, m: &KMat) -> Result<LMat> {
    m.iter().map(|r| r.iter().map(|e| LocalKElem::from_kelem(alg, e)).collect()).collect()
}

pub fn lmat_to_kmat(m: &LMat) -> KMat {
    m.iter().map(|r| r.iter().map(LocalKElem::to_kelem).collect()).collect()
}

pub fn lmat_identity(alg: &Alg, n: usize) -> LMat {
    (0..n)
        .map(|i| (0..n).map(|j| LocalKElem::from_int(alg, (i == j) as i64)).collect())
        .collect()
}

pub fn lmat_mul(x: &LMat, y: &LMat) -> LMat {
    let cols = y.first().map_or(0, |r| r.len());
    x.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    let mut acc = LocalKElem::zero(&row[0].alg);
                    for (k, a) in row.iter().enumerate() {
                        acc = acc + a * &y[k][j];
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

pub fn lmat_conj_transpose(m: &LMat) -> LMat {
    if m.is_empty() {
        return Vec::new();
    }
    (0..m[0].len()).map(|j| m.iter().map(|r| r[j].conj()).collect()).collect()
}

/// `U · G · U^†`, the Gram matrix of the basis whose rows are given by `U`.
pub fn lmat_congruence(u: &LMat, g: &LMat) -> LMat {
    lmat_mul(&lmat_mul(u, g), &lmat_conj_transpose(u))
}

pub fn lmat_is_hermitian(m: &LMat) -> bool {
    let n = m.len();
    (0..n).all(|i| (0..n).all(|j| m[i][j] == m[j][i].conj()))
}

/// Lowest precision among the entries.
pub fn lmat_prec(m: &LMat) -> u32 {
    m.iter().flatten().map(|e| e.prec).min().unwrap_or(u32::MAX)
}

/// Determinant of a matrix over `Z_ℓ` by elimination with minimal-valuation pivots.
pub fn zmat_det(m: &[Vec<PadicInt>]) -> Result<PadicInt> {
    let n = m.len();
    if n == 0 {
        return Err(Error::SingularGram);
    }
    let (l, prec) = (m[0][0].l, m[0][0].prec);
    let mut a = m.to_vec();
    let mut det = PadicInt::from_i64(l, prec, 1);
    for c in 0..n {
        let (piv, v) = (c..n).map(|r| (r, a[r][c].val())).min_by_key(|&(_, v)| v).unwrap();
        let v = v.require("pivot")? as u32;
        if piv != c {
            a.swap(piv, c);
            det = det.neg();
        }
        det = det.mul(&a[c][c]);
        let unit_inv = a[c][c].div_l_pow(v)?.inv()?;
        for r in c + 1..n {
            if a[r][c].is_zero() {
                continue;
            }
            let f = a[r][c].div_l_pow(v)?.mul(&unit_inv);
            for k in c..n {
                let t = f.mul(&a[c][k]);
                a[r][k] = a[r][k].sub(&t);
            }
        }
    }
    Ok(det)
}

/// Determinant over `O_{K_ℓ}`. Split algebras are handled componentwise,
/// the local fields by elimination with minimal-valuation pivots.
pub fn lmat_det(m: &LMat) -> Result<LocalKElem> {
    let n = m.len();
    if n == 0 {
        return Err(Error::SingularGram);
    }
    let alg = m[0][0].alg.clone();
    if alg.kind == Kind::Split {
        let comps: Vec<Vec<(PadicInt, PadicInt)>> =
            m.iter().map(|r| r.iter().map(|e| e.split_components().expect("split algebra")).collect()).collect();
        let first: Vec<Vec<PadicInt>> = comps.iter().map(|r| r.iter().map(|c| c.0.clone()).collect()).collect();
        let second: Vec<Vec<PadicInt>> = comps.iter().map(|r| r.iter().map(|c| c.1.clone()).collect()).collect();
        let zero = |e: Error| match e {
            Error::InsufficientPrecision(_) => None,
            other => Some(other),
        };
        let d1 = zmat_det(&first).or_else(|e| zero(e).map_or(Ok(PadicInt::from_i64(alg.l, alg.prec, 0)), Err))?;
        let d2 = zmat_det(&second).or_else(|e| zero(e).map_or(Ok(PadicInt::from_i64(alg.l, alg.prec, 0)), Err))?;
        if d1.is_zero() && d2.is_zero() {
            return Err(Error::InsufficientPrecision("matrix is singular at the working precision".into()));
        }
        return Ok(LocalKElem::from_split_components(&alg, &d1, &d2).expect("split algebra"));
    }
    let mut a = m.clone();
    let mut det = LocalKElem::one(&alg);
    for c in 0..n {
        let (piv, v) = (c..n).map(|r| (r, a[r][c].val())).min_by_key(|&(_, v)| v).unwrap();
        if v == Val::Infinite {
            return Err(Error::InsufficientPrecision("matrix is singular at the working precision".into()));
        }
        if piv != c {
            a.swap(piv, c);
            det = -det;
        }
        det = &det * &a[c][c];
        for r in c + 1..n {
            if a[r][c].is_zero() {
                continue;
            }
            let f = a[r][c].div_exact(&a[c][c])?;
            for k in c..n {
                let t = &f * &a[c][k];
                a[r][k] = &a[r][k] - &t;
            }
        }
    }
    Ok(det)
}

/// A uniformly random element of `O_{K_ℓ}` modulo `ℓ^prec`.
pub fn random_local<R: Rng>(alg: &Alg, rng: &mut R) -> LocalKElem {
    let m = lpow(alg.l, alg.prec);
    let bits = m.bits() + 16;
    let mut draw = || {
        let mut v = BigInt::from(0);
        for _ in 0..bits.div_ceil(32) {
            v = (v << 32) + BigInt::from(rng.gen::<u32>());
        }
        v
    };
    let (x, y) = (draw(), draw());
    LocalKElem::new(alg, x, y, alg.prec)
}

/// A random matrix in `GL_n(O_{K_ℓ})` by rejection sampling on the determinant.
pub fn random_unimodular<R: Rng>(alg: &Alg, n: usize, rng: &mut R) -> LMat {
    loop {
        let u: LMat = (0..n).map(|_| (0..n).map(|_| random_local(alg, rng)).collect()).collect();
        if let Ok(d) = lmat_det(&u) {
            if d.is_unit() {
                return u;
            }
        }
    }
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::make_local_alg;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn determinant_is_multiplicative() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for (p, l) in [(7u64, 2u64), (3, 2), (5, 2), (5, 5), (2, 2), (3, 7)] {
            let alg = make_local_alg(p, l, 24).unwrap();
            let a = random_unimodular(&alg, 3, &mut rng);
            let b: LMat = (0..3).map(|_| (0..3).map(|_| random_local(&alg, &mut rng)).collect()).collect();
            let ab = lmat_mul(&a, &b);
            if let (Ok(da), Ok(db), Ok(dab)) = (lmat_det(&a), lmat_det(&b), lmat_det(&ab)) {
                let prod = &da * &db;
                let prec = prod.prec.min(dab.prec);
                assert_eq!(prod.with_prec(prec), dab.with_prec(prec), "p={p} l={l}");
            }
        }
    }
}
