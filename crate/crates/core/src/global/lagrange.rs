//! The step from a lattice that is self-dual at `p` to a `√-p`-modular
//! sublattice: the preimage of a Lagrangian subspace of `L/√-p·L`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::error::{invalid, Error, Result};
use crate::exactnum::{KElem, KMat, Rational};
use crate::herm::{HermLattice, OrderTag};

fn inv_mod(a: u64, p: u64) -> u64 {
    let e = BigInt::from(a).extended_gcd(&BigInt::from(p));
    e.x.mod_floor(&BigInt::from(p)).to_u64().expect("reduced mod p")
}

/// Residue of a `p`-integral rational in `F_p`.
pub fn residue_mod(q: &Rational, p: u64) -> Result<u64> {
    let pb = BigInt::from(p);
    let den = q.denom().mod_floor(&pb);
    if den.is_zero() {
        return Err(invalid(format!("{q} is not integral at {p}")));
    }
    let num = q.numer().mod_floor(&pb).to_u64().expect("reduced");
    Ok(num * inv_mod(den.to_u64().expect("reduced"), p) % p)
}

/// The symmetric form on `L/√-p·L` over `F_p = O/√-p·O` induced by the Gram matrix.
pub fn form_mod_pi(g: &KMat, p: u64) -> Result<Vec<Vec<u64>>> {
    g.iter().map(|row| row.iter().map(|e| residue_mod(&e.a, p)).collect()).collect()
}

fn bil(b: &[Vec<u64>], x: &[u64], y: &[u64], p: u64) -> u64 {
    let mut acc = 0u64;
    for (i, xi) in x.iter().enumerate().filter(|(_, v)| **v != 0) {
        for (j, yj) in y.iter().enumerate().filter(|(_, v)| **v != 0) {
            acc = (acc + xi * b[i][j] % p * yj) % p;
        }
    }
    acc
}

fn combine(coeffs: &[u64], basis: &[Vec<u64>], p: u64) -> Vec<u64> {
    let n = basis[0].len();
    let mut v = vec![0u64; n];
    for (c, b) in coeffs.iter().zip(basis) {
        for (vi, bi) in v.iter_mut().zip(b) {
            *vi = (*vi + c * bi) % p;
        }
    }
    v
}

/// Reduced row echelon form; returns the nonzero rows and their pivot columns.
pub fn rref(rows: &[Vec<u64>], p: u64) -> (Vec<Vec<u64>>, Vec<usize>) {
    let mut m: Vec<Vec<u64>> = rows.to_vec();
    let n = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(i) = (r..m.len()).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, i);
        let inv = inv_mod(m[r][c], p);
        for x in m[r].iter_mut() {
            *x = *x * inv % p;
        }
        let pr = m[r].clone();
        for (k, row) in m.iter_mut().enumerate() {
            if k != r && row[c] != 0 {
                let f = row[c];
                for (x, y) in row.iter_mut().zip(&pr) {
                    *x = (*x + (p - f) * y) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

/// Lexicographically first nonzero isotropic coefficient vector on the
/// first `k` basis vectors, or `None`.
fn isotropic(b: &[Vec<u64>], basis: &[Vec<u64>], k: usize, p: u64) -> Option<Vec<u64>> {
    let total = p.checked_pow(k as u32).filter(|&t| t <= 1 << 22)?;
    (1..total).find_map(|mut code| {
        let mut c = vec![0u64; basis.len()];
        for slot in c.iter_mut().take(k).rev() {
            *slot = code % p;
            code /= p;
        }
        let v = combine(&c, basis, p);
        (v.iter().any(|&x| x != 0) && bil(b, &v, &v, p) == 0).then_some(v)
    })
}

/// A Lagrangian subspace `W = W^⊥` of a nondegenerate symmetric form on
/// `F_p^n`, found by splitting off hyperbolic planes. Isotropic vectors are
/// searched in lexicographic order, first among three basis vectors of the
/// remaining space and then among all of them.
pub fn lagrangian(b: &[Vec<u64>], p: u64) -> Result<Vec<Vec<u64>>> {
    let n = b.len();
    let mut basis: Vec<Vec<u64>> = (0..n).map(|i| (0..n).map(|j| u64::from(i == j)).collect()).collect();
    let mut w = Vec::new();
    while !basis.is_empty() {
        let m = basis.len();
        let v = isotropic(b, &basis, m.min(3), p)
            .or_else(|| if m > 3 { isotropic(b, &basis, m, p) } else { None })
            .ok_or_else(|| Error::ConstructionFailed(format!("no isotropic vector in a {m}-dimensional space over F_{p}")))?;
        let (i, c) = basis
            .iter()
            .enumerate()
            .map(|(i, bi)| (i, bil(b, &v, bi, p)))
            .find(|(_, c)| *c != 0)
            .ok_or_else(|| invalid("form is degenerate modulo √-p"))?;
        let inv = inv_mod(c, p);
        let u: Vec<u64> = basis[i].iter().map(|x| x * inv % p).collect();
        let uu = bil(b, &u, &u, p);
        let projected: Vec<Vec<u64>> = basis
            .iter()
            .map(|x| {
                let y = bil(b, x, &v, p);
                let xc = (bil(b, x, &u, p) + p - y * uu % p) % p;
                x.iter().zip(&v).zip(&u).map(|((xi, vi), ui)| (xi + (p - xc) * vi % p + (p - y) * ui % p) % p).collect()
            })
            .collect();
        let (next, _) = rref(&projected, p);
        if next.len() + 2 != m {
            return Err(invalid("form is degenerate modulo √-p"));
        }
        basis = next;
        w.push(v);
    }
    Ok(w)
}

/// The preimage in `L` of a Lagrangian subspace of `L/√-p·L`.
///
/// `L` must be self-dual at `p`; the result is `√-p`-modular at `p` and
/// agrees with `L` at every other prime. Basis vector `k` of the result
/// keeps the order tag of basis vector `k` of `L`: rows at pivot columns lift
/// the Lagrangian basis (with even lifts wherever an `O`-row meets an
/// `R`-column, so the coefficients stay in the conductor), and the other
/// rows are `√-p·e_k`.
pub fn lagrangian_step(l: &HermLattice) -> Result<HermLattice> {
    let p = l.p();
    let n = l.rank();
    let b = form_mod_pi(l.gram(), p)?;
    let (w, pivots) = rref(&lagrangian(&b, p)?, p);
    let tags = l.tags().to_vec();
    let mut rows: KMat = Vec::with_capacity(n);
    for c in 0..n {
        if let Some(k) = pivots.iter().position(|&q| q == c) {
            let row = (0..n)
                .map(|j| {
                    let x = w[k][j];
                    let lift = if x != 0 && tags[c] == OrderTag::O && tags[j] == OrderTag::R && p != 2 {
                        2 * (x * inv_mod(2, p) % p)
                    } else {
                        x
                    };
                    KElem::from_int(p, lift as i64)
                })
                .collect();
            rows.push(row);
        } else {
            rows.push((0..n).map(|j| if j == c { KElem::sqrt_mp(p) } else { KElem::zero(p) }).collect());
        }
    }
    let moved = l.transform(&rows, tags.clone())?;
    HermLattice::with_tags(l.ctx().clone(), moved.gram().clone(), tags)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{identity, rat};
    use crate::herm::{is_modular, RingCtx};

    #[test]
    fn lagrangians_are_self_orthogonal() {
        for (p, n) in [(5u64, 2usize), (3, 4), (7, 4), (2, 2), (2, 4), (13, 6)] {
            let b: Vec<Vec<u64>> = (0..n).map(|i| (0..n).map(|j| u64::from(i == j)).collect()).collect();
            let w = lagrangian(&b, p).unwrap();
            assert_eq!(w.len(), n / 2);
            for x in &w {
                for y in &w {
                    assert_eq!(bil(&b, x, y, p), 0);
                }
            }
            assert_eq!(rref(&w, p).0.len(), n / 2);
        }
        let b = vec![vec![1, 0], vec![0, 1]];
        assert!(lagrangian(&b, 3).is_err());
    }

    #[test]
    fn step_produces_modular_lattices() {
        for (p, n) in [(5u64, 2usize), (3, 4), (13, 2), (2, 2), (2, 4)] {
            let l0 = HermLattice::new(RingCtx::global_ok(p).unwrap(), identity(p, n)).unwrap();
            let l = lagrangian_step(&l0).unwrap();
            assert!(is_modular(&l, 1).unwrap(), "p={p} n={n}");
            assert_eq!(l.det(), Rational::from_integer(BigInt::from(p).pow(n as u32 / 2)));
        }
        assert_eq!(residue_mod(&rat(1, 2), 7).unwrap(), 4);
    }
}
