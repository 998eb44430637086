//! Small exhaustive searches for rank-4 blocks that the diagonal starting
//! lattices cannot provide: an even unimodular `Z[√-p]`-lattice for
//! `p ≡ 1 (mod 4)`, and a `√-2`-modular lattice of norm `4O` for `p = 2`.

use crate::error::{Error, Result};
use crate::exactnum::{rat, KElem, KMat};

/// `a + b√-p` with machine integers.
type Zq = (i128, i128);

fn mul(p: i128, x: Zq, y: Zq) -> Zq {
    (x.0 * y.0 - p * x.1 * y.1, x.0 * y.1 + x.1 * y.0)
}

fn conj(x: Zq) -> Zq {
    (x.0, -x.1)
}

fn add(x: Zq, y: Zq) -> Zq {
    (x.0 + y.0, x.1 + y.1)
}

fn sub(x: Zq, y: Zq) -> Zq {
    (x.0 - y.0, x.1 - y.1)
}

fn det2(p: i128, a: Zq, b: Zq, c: Zq, d: Zq) -> Zq {
    sub(mul(p, a, d), mul(p, b, c))
}

/// Adjugate and determinant of a 3×3 matrix.
fn adj3(p: i128, m: &[[Zq; 3]; 3]) -> ([[Zq; 3]; 3], Zq) {
    let mut adj = [[(0, 0); 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let r: Vec<usize> = (0..3).filter(|&k| k != j).collect();
            let c: Vec<usize> = (0..3).filter(|&k| k != i).collect();
            let minor = det2(p, m[r[0]][c[0]], m[r[0]][c[1]], m[r[1]][c[0]], m[r[1]][c[1]]);
            adj[i][j] = if (i + j) % 2 == 0 { minor } else { (-minor.0, -minor.1) };
        }
    }
    let mut det = (0, 0);
    for (k, row) in adj.iter().enumerate() {
        det = add(det, mul(p, m[0][k], row[0]));
    }
    (adj, det)
}

/// What the search looks for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BlockKind {
    /// Even diagonal, off-diagonal entries in `Z[√-p]`, determinant 1.
    EvenUnimodular,
    /// Diagonal in `2p·Z`, off-diagonal entries in `√-p·Z[√-p]`, determinant `p²`.
    ModularSubnormal,
}

/// Searches diagonals up to `2·max_diag` (times `p` for the modular kind) and
/// off-diagonal coefficients of absolute value at most `coef`. The last
/// diagonal entry is solved for rather than enumerated.
pub fn search_block(p: u64, kind: BlockKind, max_diag: i128, coef: i128) -> Result<KMat> {
    let pi = p as i128;
    let (step, target, off_scale): (i128, i128, Zq) = match kind {
        BlockKind::EvenUnimodular => (2, 1, (1, 0)),
        BlockKind::ModularSubnormal => (2 * pi, pi * pi, (0, 1)),
    };
    let offs: Vec<Zq> = (-coef..=coef).flat_map(|a| (-coef..=coef).map(move |b| (a, b))).map(|u| mul(pi, off_scale, u)).collect();
    let norm = |x: Zq| x.0 * x.0 + pi * x.1 * x.1;
    for top in 1..=max_diag {
        for d0 in 1..=top {
            for d1 in d0..=top {
                for d2 in d1..=top {
                    let ds = [d0 * step, d1 * step, d2 * step];
                    if d2 != top {
                        continue;
                    }
                    for &b01 in &offs {
                        if ds[0] * ds[1] - norm(b01) <= 0 {
                            continue;
                        }
                        for &b02 in &offs {
                            for &b12 in &offs {
                                let a = [
                                    [(ds[0], 0), b01, b02],
                                    [conj(b01), (ds[1], 0), b12],
                                    [conj(b02), conj(b12), (ds[2], 0)],
                                ];
                                let (adj, det) = adj3(pi, &a);
                                if det.0 <= 0 {
                                    continue;
                                }
                                for &c0 in &offs {
                                    for &c1 in &offs {
                                        for &c2 in &offs {
                                            let c = [c0, c1, c2];
                                            let mut q = (0, 0);
                                            for i in 0..3 {
                                                for j in 0..3 {
                                                    q = add(q, mul(pi, mul(pi, conj(c[i]), adj[i][j]), c[j]));
                                                }
                                            }
                                            let num = target + q.0;
                                            if num % det.0 != 0 {
                                                continue;
                                            }
                                            let d3 = num / det.0;
                                            if d3 <= 0 || d3 % step != 0 {
                                                continue;
                                            }
                                            let mut m = [[(0i128, 0i128); 4]; 4];
                                            for i in 0..3 {
                                                for j in 0..3 {
                                                    m[i][j] = a[i][j];
                                                }
                                                m[i][3] = c[i];
                                                m[3][i] = conj(c[i]);
                                            }
                                            m[3][3] = (d3, 0);
                                            return Ok(to_kmat(p, &m));
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Err(Error::ConstructionFailed(format!("no {kind:?} block over Z[√-{p}] within the search bounds")))
}

fn to_kmat(p: u64, m: &[[Zq; 4]; 4]) -> KMat {
    m.iter()
        .map(|row| row.iter().map(|&(a, b)| KElem::new(p, rat(a as i64, 1), rat(b as i64, 1))).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{kmat_det, leading_minors, Rational};

    #[test]
    fn blocks_have_the_requested_shape() {
        let e = search_block(5, BlockKind::EvenUnimodular, 4, 1).unwrap();
        assert_eq!(kmat_det(&e).a, Rational::from_integer(1.into()));
        assert!(leading_minors(&e).unwrap().iter().all(|m| m > &Rational::from_integer(0.into())));
        assert!((0..4).all(|i| e[i][i].a.numer() % 2 == 0.into()));

        let m = search_block(2, BlockKind::ModularSubnormal, 4, 1).unwrap();
        assert_eq!(kmat_det(&m).a, Rational::from_integer(4.into()));
        assert!((0..4).all(|i| m[i][i].a.numer() % 4 == 0.into()));
    }
}
