use crate::error::{invalid, Error, Result};
use crate::padic::{lmat_congruence, lmat_identity, Kind, LMat, LocalKElem, Val};

/// One orthogonal summand produced by [`jordan_blocks`].
#[derive(Clone, Debug)]
pub struct Block {
    /// Gram matrix of the summand (1×1 or 2×2).
    pub gram: LMat,
    /// Scale valuation in uniformizer units.
    pub scale: i64,
}

impl Block {
    pub fn is_line(&self) -> bool {
        self.gram.len() == 1
    }

    /// A line whose diagonal entry generates its scale.
    pub fn has_unit_diagonal(&self) -> bool {
        self.gram.iter().enumerate().any(|(i, r)| r[i].val() == Val::Finite(self.scale))
    }
}

fn min_val_entry(g: &LMat) -> Result<(usize, usize, i64)> {
    let n = g.len();
    let mut best: Option<(usize, usize, i64)> = None;
    for i in 0..n {
        for j in 0..n {
            if let Val::Finite(v) = g[i][j].val() {
                if best.is_none_or(|(_, _, b)| v < b) {
                    best = Some((i, j, v));
                }
            }
        }
    }
    best.ok_or_else(|| Error::InsufficientPrecision("Gram matrix vanishes at the working precision".into()))
}

/// Splits a hermitian Gram matrix over a local field (inert or ramified)
/// into modular lines and planes by valuation pivoting.
///
/// At each step the entry of least valuation is located (lowest row first).
/// If a diagonal entry attains it, that vector spans a line; otherwise the
/// off-diagonal pair spans a plane. The rest of the basis is then projected
/// orthogonally off the chosen summand.
pub fn jordan_blocks(g: &LMat) -> Result<Vec<Block>> {
    let Some(first) = g.first().and_then(|r| r.first()) else {
        return Ok(Vec::new());
    };
    let alg = first.alg.clone();
    if alg.kind == Kind::Split {
        return Err(invalid("Jordan splitting is only implemented over local fields"));
    }
    let mut g = g.clone();
    let mut blocks = Vec::new();
    while !g.is_empty() {
        let n = g.len();
        let (i0, j0, v) = min_val_entry(&g)?;
        let diag = (0..n).find(|&i| g[i][i].val() == Val::Finite(v));
        let chosen: Vec<usize> = match diag {
            Some(i) => vec![i],
            None => {
                let (a, b) = (i0.min(j0), i0.max(j0));
                vec![a, b]
            }
        };
        // move the chosen vectors to the front
        let mut order = chosen.clone();
        order.extend((0..n).filter(|k| !chosen.contains(k)));
        let perm: LMat = order
            .iter()
            .map(|&src| (0..n).map(|j| LocalKElem::from_int(&alg, (j == src) as i64)).collect())
            .collect();
        g = lmat_congruence(&perm, &g);
        let k = chosen.len();
        let mut u = lmat_identity(&alg, n);
        for r in k..n {
            let coeffs = if k == 1 {
                vec![g[r][0].div_exact(&g[0][0])?]
            } else {
                let (a, beta, betab, b) = (&g[0][0], &g[0][1], &g[1][0], &g[1][1]);
                let det = a * b - beta * betab;
                let c0 = &g[r][0] * b - &g[r][1] * betab;
                let c1 = &g[r][1] * a - &g[r][0] * beta;
                vec![c0.div_exact(&det)?, c1.div_exact(&det)?]
            };
            for (c, coef) in coeffs.into_iter().enumerate() {
                u[r][c] = -coef;
            }
        }
        g = lmat_congruence(&u, &g);
        blocks.push(Block { gram: g[..k].iter().map(|r| r[..k].to_vec()).collect(), scale: v });
        g = g[k..].iter().map(|r| r[k..].to_vec()).collect();
    }
    Ok(blocks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{rat, KElem, KMat};
    use crate::padic::{lmat_from_kmat, make_local_alg};

    fn k(p: u64, a: i64, b: i64) -> KElem {
        KElem::new(p, rat(a, 1), rat(b, 1))
    }

    #[test]
    fn splits_lines_and_planes() {
        let alg = make_local_alg(5, 2, 32).unwrap();
        let g: KMat = vec![
            vec![k(5, 0, 0), k(5, 1, 0), k(5, 0, 0)],
            vec![k(5, 1, 0), k(5, 2, 0), k(5, 1, 0)],
            vec![k(5, 0, 0), k(5, 1, 0), k(5, 3, 0)],
        ];
        let blocks = jordan_blocks(&lmat_from_kmat(&alg, &g).unwrap()).unwrap();
        assert_eq!(blocks.len(), 3);
        assert!(blocks.iter().all(|b| b.is_line() && b.has_unit_diagonal()));
        assert!(blocks.iter().all(|b| b.scale == 0));
    }

    #[test]
    fn hyperbolic_planes_stay_planes() {
        let alg = make_local_alg(7, 7, 16).unwrap();
        let h: KMat = vec![vec![k(7, 0, 0), k(7, 0, 1)], vec![k(7, 0, -1), k(7, 0, 0)]];
        let blocks = jordan_blocks(&lmat_from_kmat(&alg, &h).unwrap()).unwrap();
        assert_eq!(blocks.len(), 1);
        assert_eq!(blocks[0].scale, 1);
        assert!(!blocks[0].is_line());
    }
}
