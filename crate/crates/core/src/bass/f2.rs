use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// A symmetric bilinear form on `F₂^n`, given by its Gram matrix.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct F2BilForm {
    pub n: usize,
    pub matrix: Vec<Vec<u8>>,
}

impl F2BilForm {
    pub fn new(matrix: Vec<Vec<u8>>) -> Result<Self> {
        let n = matrix.len();
        if matrix.iter().any(|r| r.len() != n || r.iter().any(|&x| x > 1)) {
            return Err(invalid("expected a square 0/1 matrix"));
        }
        if (0..n).any(|i| (0..n).any(|j| matrix[i][j] != matrix[j][i])) {
            return Err(invalid("bilinear form is not symmetric"));
        }
        Ok(F2BilForm { n, matrix })
    }

    pub fn zero(n: usize) -> Self {
        F2BilForm { n, matrix: vec![vec![0; n]; n] }
    }
}

/// Isometry invariants of a symmetric form over `F₂`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct F2Class {
    pub rank: usize,
    /// All `b(x, x)` vanish (the induced form on the nondegenerate quotient is alternating).
    pub alternating: bool,
    /// Canonical representative: `(1)^a ⊥ H^b ⊥ 0^{n−rank}` with `a ∈ {0,1,2}`.
    pub canonical: F2BilForm,
}

fn rank_f2(m: &[Vec<u8>]) -> usize {
    let mut rows: Vec<Vec<u8>> = m.to_vec();
    let n = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..n {
        let Some(p) = (rank..rows.len()).find(|&i| rows[i][c] == 1) else { continue };
        rows.swap(rank, p);
        let pr = rows[rank].clone();
        for (i, r) in rows.iter_mut().enumerate() {
            if i != rank && r[c] == 1 {
                for (a, b) in r.iter_mut().zip(&pr) {
                    *a ^= b;
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn f2_classify(b: &F2BilForm) -> F2Class {
    let rank = rank_f2(&b.matrix);
    let alternating = (0..b.n).all(|i| b.matrix[i][i] == 0);
    let lines = if alternating {
        0
    } else if rank % 2 == 1 {
        1
    } else {
        2
    };
    let mut canonical = F2BilForm::zero(b.n);
    for i in 0..lines {
        canonical.matrix[i][i] = 1;
    }
    let mut k = lines;
    while k + 2 <= rank {
        canonical.matrix[k][k + 1] = 1;
        canonical.matrix[k + 1][k] = 1;
        k += 2;
    }
    F2Class { rank, alternating, canonical }
}

fn all_invertible(n: usize) -> Vec<Vec<Vec<u8>>> {
    let total = 1u32 << (n * n);
    (0..total)
        .map(|bits| (0..n).map(|i| (0..n).map(|j| ((bits >> (i * n + j)) & 1) as u8).collect()).collect())
        .filter(|m: &Vec<Vec<u8>>| rank_f2(m) == n)
        .collect()
}

fn congruence(u: &[Vec<u8>], g: &[Vec<u8>]) -> Vec<Vec<u8>> {
    let n = g.len();
    let mut out = vec![vec![0u8; n]; n];
    for i in 0..n {
        for j in 0..n {
            let mut acc = 0u8;
            for k in 0..n {
                for l in 0..n {
                    acc ^= u[i][k] & g[k][l] & u[j][l];
                }
            }
            out[i][j] = acc;
        }
    }
    out
}

/// All symmetric matrices over `F₂` of size `n`.
pub fn all_symmetric(n: usize) -> Vec<F2BilForm> {
    let cells: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    (0..1u32 << cells.len())
        .map(|bits| {
            let mut m = vec![vec![0u8; n]; n];
            for (k, &(i, j)) in cells.iter().enumerate() {
                let v = ((bits >> k) & 1) as u8;
                m[i][j] = v;
                m[j][i] = v;
            }
            F2BilForm { n, matrix: m }
        })
        .collect()
}

/// Number of congruence classes of symmetric forms on `F₂^n`, counted by
/// brute force: every symmetric matrix is mapped to the lexicographically
/// least member of its `GL_n(F₂)`-orbit.
pub fn f2_orbit_count(n: usize) -> Result<usize> {
    if n > 3 {
        return Err(invalid("the brute-force orbit count is limited to n ≤ 3"));
    }
    let group = all_invertible(n);
    let reps: BTreeSet<Vec<Vec<u8>>> = all_symmetric(n)
        .iter()
        .map(|b| group.iter().map(|u| congruence(u, &b.matrix)).min().expect("nonempty group"))
        .collect();
    Ok(reps.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_examples() {
        assert_eq!(f2_classify(&F2BilForm::zero(2)).rank, 0);
        let h = F2BilForm::new(vec![vec![0, 1], vec![1, 0]]).unwrap();
        let c = f2_classify(&h);
        assert_eq!((c.rank, c.alternating), (2, true));
        assert_eq!(c.canonical, h);
        assert_eq!(f2_orbit_count(2).unwrap(), 4);
        assert_eq!(all_invertible(2).len(), 6);
        assert_eq!(all_invertible(3).len(), 168);
    }

    #[test]
    fn invariants_separate_orbits() {
        for n in 1..=3 {
            let classes: BTreeSet<F2Class> = all_symmetric(n).iter().map(f2_classify).collect();
            assert_eq!(classes.len(), f2_orbit_count(n).unwrap());
            for c in &classes {
                assert_eq!(f2_classify(&c.canonical), *c);
            }
        }
    }
}
