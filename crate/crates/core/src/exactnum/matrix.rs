use num_traits::Zero;

use super::kelem::KElem;
use super::rational::Rational;
use crate::error::{Error, Result};

/// Dense square or rectangular matrix over `K`, stored row-major.
pub type KMat = Vec<Vec<KElem>>;

pub fn identity(p: u64, n: usize) -> KMat {
    scalar_matrix(p, n, &KElem::one(p))
}

pub fn scalar_matrix(p: u64, n: usize, c: &KElem) -> KMat {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { c.clone() } else { KElem::zero(p) }).collect())
        .collect()
}

pub fn conj_transpose(m: &KMat) -> KMat {
    if m.is_empty() {
        return Vec::new();
    }
    (0..m[0].len()).map(|j| m.iter().map(|row| row[j].conj()).collect()).collect()
}

pub fn kmat_mul(x: &KMat, y: &KMat) -> KMat {
    let p = x.first().and_then(|r| r.first()).map_or(2, |e| e.p);
    let inner = y.len();
    let cols = y.first().map_or(0, |r| r.len());
    x.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    let mut acc = KElem::zero(p);
                    for k in 0..inner {
                        if !row[k].is_zero() && !y[k][j].is_zero() {
                            acc = acc + &row[k] * &y[k][j];
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

pub fn is_hermitian(m: &KMat) -> bool {
    let n = m.len();
    m.iter().all(|r| r.len() == n)
        && (0..n).all(|i| (0..n).all(|j| m[i][j] == m[j][i].conj()))
}

/// Determinant by Gaussian elimination over the field `K`.
pub fn kmat_det(m: &KMat) -> KElem {
    let n = m.len();
    let p = m.first().and_then(|r| r.first()).map_or(2, |e| e.p);
    let mut a = m.clone();
    let mut det = KElem::one(p);
    for c in 0..n {
        let Some(piv) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return KElem::zero(p);
        };
        if piv != c {
            a.swap(piv, c);
            det = -det;
        }
        det = &det * &a[c][c];
        let inv = a[c][c].inv().expect("nonzero pivot");
        for r in c + 1..n {
            if a[r][c].is_zero() {
                continue;
            }
            let f = &a[r][c] * &inv;
            for k in c..n {
                let t = &f * &a[c][k];
                a[r][k] = &a[r][k] - &t;
            }
        }
    }
    det
}

pub fn kmat_inverse(m: &KMat) -> Result<KMat> {
    let n = m.len();
    let p = m.first().and_then(|r| r.first()).map_or(2, |e| e.p);
    let mut a = m.clone();
    let mut inv = identity(p, n);
    for c in 0..n {
        let piv = (c..n).find(|&r| !a[r][c].is_zero()).ok_or(Error::SingularGram)?;
        a.swap(piv, c);
        inv.swap(piv, c);
        let s = a[c][c].inv()?;
        for k in 0..n {
            a[c][k] = &a[c][k] * &s;
            inv[c][k] = &inv[c][k] * &s;
        }
        for r in 0..n {
            if r == c || a[r][c].is_zero() {
                continue;
            }
            let f = a[r][c].clone();
            for k in 0..n {
                let t = &f * &a[c][k];
                a[r][k] = &a[r][k] - &t;
                let t = &f * &inv[c][k];
                inv[r][k] = &inv[r][k] - &t;
            }
        }
    }
    Ok(inv)
}

/// Leading principal minors `d_1, …, d_n` of a hermitian matrix; each must be
/// σ-fixed, otherwise the input was not hermitian.
pub fn leading_minors(m: &KMat) -> Result<Vec<Rational>> {
    let n = m.len();
    let mut out = Vec::with_capacity(n);
    for k in 1..=n {
        let sub: KMat = m[..k].iter().map(|r| r[..k].to_vec()).collect();
        let d = kmat_det(&sub);
        if !d.b.is_zero() {
            return Err(Error::NonHermitian(format!("leading minor {k} is {d}")));
        }
        out.push(d.a);
    }
    Ok(out)
}
