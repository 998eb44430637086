//! Linear algebra over `Z_ℓ` (at bounded precision) and over `F_ℓ`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::padic::{lpow, LocalKElem, PadicInt, Val};

/// Coordinates of a vector of `E^n` as a vector of `Z_ℓ^{2n}` in the basis `{1, ω}`.
pub fn flatten(v: &[LocalKElem]) -> Vec<BigInt> {
    v.iter().flat_map(|e| [e.x.clone(), e.y.clone()]).collect()
}

fn val(x: &BigInt, l: u64, prec: u32) -> Val {
    PadicInt::new(l, prec, x).val()
}

fn inv_mod(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.mod_floor(m).extended_gcd(m);
    debug_assert!(e.gcd == BigInt::from(1));
    e.x.mod_floor(m)
}

/// A full-rank `Z_ℓ`-lattice in `Z_ℓ^d`, stored as an upper-triangular basis
/// whose `k`-th row has its pivot in column `k`.
#[derive(Clone, Debug)]
pub struct ZLattice {
    pub l: u64,
    pub prec: u32,
    pub basis: Vec<Vec<BigInt>>,
}

impl ZLattice {
    /// Echelon basis of the span of `gens` (all known modulo `ℓ^prec`).
    pub fn from_generators(l: u64, prec: u32, gens: &[Vec<BigInt>]) -> Result<Self> {
        let d = gens.first().map_or(0, Vec::len);
        let mut prec = prec;
        let mut m = lpow(l, prec);
        let mut rows: Vec<Vec<BigInt>> = gens.iter().map(|g| g.iter().map(|x| x.mod_floor(&m)).collect()).collect();
        let mut basis = Vec::with_capacity(d);
        for c in 0..d {
            let pivot = (0..rows.len())
                .filter_map(|i| val(&rows[i][c], l, prec).finite().map(|v| (v, i)))
                .min();
            let Some((v, pi)) = pivot else {
                return Err(Error::InsufficientPrecision(format!(
                    "generators do not span a full lattice at precision {prec} (column {c})"
                )));
            };
            let prow = rows.swap_remove(pi);
            let unit = &prow[c] / lpow(l, v as u32);
            let new_prec = prec - v as u32;
            let mm = lpow(l, new_prec);
            let uinv = inv_mod(&unit, &mm);
            for row in rows.iter_mut() {
                if row[c].is_zero() {
                    continue;
                }
                let q = ((&row[c] / lpow(l, v as u32)) * &uinv).mod_floor(&mm);
                for (a, b) in row.iter_mut().zip(&prow) {
                    *a = (&*a - &q * b).mod_floor(&mm);
                }
            }
            prec = new_prec;
            m = mm;
            for row in rows.iter_mut() {
                for a in row.iter_mut() {
                    *a = a.mod_floor(&m);
                }
            }
            basis.push(prow);
        }
        for row in basis.iter_mut() {
            for a in row.iter_mut() {
                *a = a.mod_floor(&m);
            }
        }
        Ok(ZLattice { l, prec, basis })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// `log_ℓ` of the index of the lattice in `Z_ℓ^d`.
    pub fn log_index(&self) -> i64 {
        (0..self.dim())
            .map(|k| val(&self.basis[k][k], self.l, self.prec).finite().expect("pivot is nonzero"))
            .sum()
    }

    /// Coordinates of `v` in the echelon basis, or `None` when `v` is not in the lattice.
    /// The coordinates are returned together with the precision they are known to.
    pub fn coords(&self, v: &[BigInt]) -> Result<Option<(Vec<BigInt>, u32)>> {
        let l = self.l;
        let mut prec = self.prec;
        let mut m = lpow(l, prec);
        let mut rest: Vec<BigInt> = v.iter().map(|x| x.mod_floor(&m)).collect();
        let mut out = Vec::with_capacity(self.dim());
        for k in 0..self.dim() {
            let pv = val(&self.basis[k][k], l, self.prec).finite().expect("pivot is nonzero") as u32;
            let e = &rest[k];
            if !e.is_zero() && val(e, l, prec) < Val::Finite(pv as i64) {
                return Ok(None);
            }
            if pv > prec {
                return Err(Error::InsufficientPrecision("coordinate solve ran out of digits".into()));
            }
            let new_prec = prec - pv;
            let mm = lpow(l, new_prec);
            let unit = &self.basis[k][k] / lpow(l, pv);
            let q = ((e / lpow(l, pv)) * inv_mod(&unit, &mm)).mod_floor(&mm);
            for (a, b) in rest.iter_mut().zip(&self.basis[k]) {
                *a = (&*a - &q * b).mod_floor(&mm);
            }
            prec = new_prec;
            m = mm;
            for a in rest.iter_mut() {
                *a = a.mod_floor(&m);
            }
            out.push(q);
        }
        debug_assert!(rest.iter().all(Zero::is_zero));
        Ok(Some((out, prec)))
    }

    pub fn contains(&self, v: &[BigInt]) -> Result<bool> {
        Ok(self.coords(v)?.is_some())
    }

    pub fn contains_lattice(&self, other: &ZLattice) -> Result<bool> {
        for b in &other.basis {
            if !self.contains(b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Row reduction over `F_ℓ`.
///
/// Returns a basis of the row space together with, for each basis vector, the
/// coefficients expressing it in terms of the input rows.
pub fn fl_row_basis(rows: &[Vec<u64>], l: u64) -> (Vec<Vec<u64>>, Vec<Vec<u64>>) {
    let n = rows.len();
    let d = rows.first().map_or(0, Vec::len);
    let mut work: Vec<(Vec<u64>, Vec<u64>)> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| (r.clone(), (0..n).map(|j| (i == j) as u64).collect()))
        .collect();
    let mut basis = Vec::new();
    let mut combos = Vec::new();
    for c in 0..d {
        let Some(pi) = work.iter().position(|(r, _)| r[c] % l != 0) else { continue };
        let (pr, pc) = work.swap_remove(pi);
        let inv = fl_inv(pr[c], l);
        let pr: Vec<u64> = pr.iter().map(|x| x * inv % l).collect();
        let pc: Vec<u64> = pc.iter().map(|x| x * inv % l).collect();
        for (r, co) in work.iter_mut() {
            let f = r[c] % l;
            if f != 0 {
                for (a, b) in r.iter_mut().zip(&pr) {
                    *a = (*a + (l - f) * b) % l;
                }
                for (a, b) in co.iter_mut().zip(&pc) {
                    *a = (*a + (l - f) * b) % l;
                }
            }
        }
        basis.push(pr);
        combos.push(pc);
    }
    (basis, combos)
}

pub fn fl_inv(a: u64, l: u64) -> u64 {
    let a = BigInt::from(a % l);
    inv_mod(&a, &BigInt::from(l)).to_u64().expect("small")
}

pub fn fl_rank(rows: &[Vec<u64>], l: u64) -> usize {
    fl_row_basis(rows, l).0.len()
}

/// Basis of `{c : Σ c_i rows_i = 0}`.
pub fn fl_left_kernel(rows: &[Vec<u64>], l: u64) -> Vec<Vec<u64>> {
    let n = rows.len();
    let d = rows.first().map_or(0, Vec::len);
    // reduce the augmented rows [row | e_i]; rows that vanish on the left give kernel vectors
    let aug: Vec<Vec<u64>> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| r.iter().copied().chain((0..n).map(|j| (i == j) as u64)).collect())
        .collect();
    let mut work = aug;
    let mut pivot_row = 0;
    for c in 0..d {
        let Some(pi) = (pivot_row..n).find(|&i| work[i][c] % l != 0) else { continue };
        work.swap(pivot_row, pi);
        let inv = fl_inv(work[pivot_row][c], l);
        for a in work[pivot_row].iter_mut() {
            *a = *a * inv % l;
        }
        let pr = work[pivot_row].clone();
        for (i, r) in work.iter_mut().enumerate() {
            if i != pivot_row && r[c] % l != 0 {
                let f = r[c] % l;
                for (a, b) in r.iter_mut().zip(&pr) {
                    *a = (*a + (l - f) * b) % l;
                }
            }
        }
        pivot_row += 1;
    }
    work[pivot_row..].iter().map(|r| r[d..].to_vec()).collect()
}

/// Row vector times matrix over `F_ℓ`.
pub fn fl_vec_mat(v: &[u64], m: &[Vec<u64>], l: u64) -> Vec<u64> {
    let d = m.first().map_or(0, Vec::len);
    (0..d).map(|j| v.iter().zip(m).map(|(a, r)| a * r[j] % l).sum::<u64>() % l).collect()
}

pub fn fl_combine(coeffs: &[u64], rows: &[Vec<u64>], l: u64) -> Vec<u64> {
    fl_vec_mat(coeffs, rows, l)
}

/// Residue of a `Z_ℓ` coordinate modulo `ℓ`.
pub fn residue(x: &BigInt, l: u64) -> u64 {
    x.mod_floor(&BigInt::from(l)).to_u64().expect("small")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: &[i64]) -> Vec<BigInt> {
        x.iter().map(|&a| BigInt::from(a)).collect()
    }

    #[test]
    fn lattice_index_and_membership() {
        let lat = ZLattice::from_generators(2, 20, &[v(&[2, 0]), v(&[1, 2]), v(&[0, 4])]).unwrap();
        assert_eq!(lat.log_index(), 2);
        assert!(lat.contains(&v(&[3, 2])).unwrap());
        assert!(!lat.contains(&v(&[1, 0])).unwrap());
        assert!(ZLattice::from_generators(3, 10, &[v(&[1, 1]), v(&[2, 2])]).is_err());
    }

    #[test]
    fn kernels_over_f2() {
        let rows = vec![vec![1, 0, 1], vec![0, 1, 1], vec![1, 1, 0]];
        assert_eq!(fl_rank(&rows, 2), 2);
        let k = fl_left_kernel(&rows, 2);
        assert_eq!(k.len(), 1);
        assert!(fl_vec_mat(&k[0], &rows, 2).iter().all(|&x| x == 0));
    }
}
