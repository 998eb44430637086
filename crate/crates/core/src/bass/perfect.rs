use super::pseudo::PseudoBasis;
use crate::error::{invalid, Error, Result};
use crate::padic::{lmat_conj_transpose, lmat_det, lmat_mul, LMat, LocalKElem};

/// The matrix `B = [α_i^{-1} A_ij]` of the map `M → Hom_R(M, R)` with
/// respect to a pseudo-basis and its dual pseudo-basis.
///
/// Returns `Ok(None)` if some entry of `A` is not even in `α_t O_E`
/// (`t` the larger order index of the pair), so the pairing cannot land in
/// `R`; returns `IntegralityViolation` if an entry lies in `α_t O_E` but not
/// in `α_t R_t`.
pub fn dual_matrix(pb: &PseudoBasis, a: &LMat) -> Result<Option<LMat>> {
    let n = pb.rank();
    if a.len() != n || a.iter().any(|r| r.len() != n) {
        return Err(invalid("Gram matrix size does not match the pseudo-basis"));
    }
    let chain = &pb.chain;
    let mut b = a.clone();
    for k in 0..n {
        for l in 0..n {
            let (i, j) = (pb.order_index[k], pb.order_index[l]);
            let t = i.max(j);
            let x = &a[k][l];
            if !chain.in_alpha_maximal(t, x) {
                return Ok(None);
            }
            if !chain.in_conductor(t, x) {
                return Err(Error::IntegralityViolation(format!(
                    "⟨e_{k}, e_{l}⟩ = {x} is not in α·R for the order with index {t}"
                )));
            }
            b[k][l] = chain.divide_by_alpha(i, x)?;
        }
    }
    Ok(Some(b))
}

/// Whether the form with Gram matrix `a` (relative to the generators of `pb`)
/// is a perfect pairing of `R`-lattices.
pub fn is_perfect_pairing(pb: &PseudoBasis, a: &LMat) -> Result<bool> {
    let Some(b) = dual_matrix(pb, a)? else { return Ok(false) };
    Ok(lmat_det(&b).map(|d| d.is_unit()).unwrap_or(false))
}

/// Same test, for the ambient form `h` restricted to the lattice of `pb`.
pub fn is_perfect_ambient(pb: &PseudoBasis, h: &LMat) -> Result<bool> {
    is_perfect_pairing(pb, &pb.gram(h))
}

/// One isotypic summand of an orthogonal decomposition.
#[derive(Clone, Debug)]
pub struct IsotypicBlock {
    pub order_index: usize,
    pub generators: Vec<Vec<LocalKElem>>,
    /// Gram matrix of the restricted (R-valued) form; block diagonal with
    /// the sizes listed in `pieces`.
    pub gram: LMat,
    /// Sizes (1 or 2, occasionally larger) of the orthogonal lines and planes
    /// making up the summand.
    pub pieces: Vec<usize>,
}

/// Inverse of a matrix over `O_E` with unit determinant, by Gauss–Jordan
/// elimination with a unit pivot search (lowest row first).
pub fn lmat_inverse_unimodular(m: &LMat) -> Result<LMat> {
    let n = m.len();
    let alg = m[0][0].alg.clone();
    let mut a: Vec<Vec<LocalKElem>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| LocalKElem::from_int(&alg, (i == j) as i64)));
            row
        })
        .collect();
    for c in 0..n {
        let pr = (c..n)
            .find(|&i| a[i][c].is_unit())
            .ok_or_else(|| Error::NotPerfect("no unit pivot: the block is not invertible".into()))?;
        a.swap(c, pr);
        let inv = a[c][c].inv()?;
        a[c] = a[c].iter().map(|e| e * &inv).collect();
        let pivot = a[c].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != c && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x = &*x - &(&f * y);
                }
            }
        }
    }
    Ok(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

fn gram_of(gens: &[Vec<LocalKElem>], h: &LMat) -> LMat {
    lmat_mul(&lmat_mul(&gens.to_vec(), h), &lmat_conj_transpose(&gens.to_vec()))
}

/// Positions (relative to `start`) of the next piece inside a group whose
/// scaled Gram matrix is `b`: a unit diagonal entry, else an invertible
/// plane, else the whole group.
fn next_piece(b: &LMat) -> Vec<usize> {
    let n = b.len();
    if let Some(k) = (0..n).find(|&k| b[k][k].is_unit()) {
        return vec![k];
    }
    for k in 0..n {
        for l in k + 1..n {
            let plane = vec![vec![b[k][k].clone(), b[k][l].clone()], vec![b[l][k].clone(), b[l][l].clone()]];
            if lmat_det(&plane).is_ok_and(|d| d.is_unit()) {
                return vec![k, l];
            }
        }
    }
    (0..n).collect()
}

/// Splits a unimodular lattice into pairwise orthogonal isotypic components
/// `M = M_1 ⊕ … ⊕ M_m` with `⟨M_i, M_j⟩ = 0` for `i < j`.
///
/// Pieces are split off from the smallest order upwards: inside the current
/// component a line with unit norm (or else an invertible plane) is chosen,
/// every later generator is replaced by its projection to the right
/// orthogonal complement of that piece, and the procedure continues. The
/// projection coefficients lie in the right orders because the scaled piece
/// is invertible over its order. For a hermitian form the result is an
/// orthogonal sum in the usual sense.
pub fn orthogonal_decompose(pb: &PseudoBasis, h: &LMat) -> Result<(PseudoBasis, Vec<IsotypicBlock>)> {
    if !is_perfect_ambient(pb, h).map_err(|e| match e {
        Error::IntegralityViolation(m) => Error::NotPerfect(m),
        other => other,
    })? {
        return Err(Error::NotPerfect("the pairing on the lattice is not perfect".into()));
    }
    let chain = &pb.chain;
    let mut order: Vec<usize> = (0..pb.rank()).collect();
    order.sort_by_key(|&k| pb.order_index[k]);
    let mut gens: Vec<Vec<LocalKElem>> = order.iter().map(|&k| pb.generators[k].clone()).collect();
    let idx: Vec<usize> = order.iter().map(|&k| pb.order_index[k]).collect();
    let n = gens.len();

    let mut blocks: Vec<IsotypicBlock> = Vec::new();
    let mut start = 0;
    while start < n {
        let i = idx[start];
        let group_end = (start..n).find(|&k| idx[k] != i).unwrap_or(n);
        let a = gram_of(&gens, h);
        let scaled: LMat = (start..group_end)
            .map(|k| (start..group_end).map(|l| chain.divide_by_alpha(i, &a[k][l])).collect::<Result<_>>())
            .collect::<Result<_>>()?;
        let chosen = next_piece(&scaled);
        // move the chosen generators to the front of the group
        let mut rest: Vec<usize> = (start..group_end).filter(|k| !chosen.contains(&(k - start))).collect();
        let mut reordered: Vec<usize> = chosen.iter().map(|&c| start + c).collect();
        reordered.append(&mut rest);
        let moved: Vec<Vec<LocalKElem>> = reordered.iter().map(|&k| gens[k].clone()).collect();
        gens.splice(start..group_end, moved);
        let end = start + chosen.len();

        let a = gram_of(&gens, h);
        let b11: LMat = (start..end)
            .map(|k| (start..end).map(|l| chain.divide_by_alpha(i, &a[k][l])).collect::<Result<_>>())
            .collect::<Result<_>>()?;
        let b11_inv = lmat_inverse_unimodular(&b11)?;
        // e_j ← e_j − Σ_m c_jm e_m, where conj(c_j) = A11^{-1} A_{1j} = B11^{-1} α^{-1} A_{1j}
        for j in end..n {
            let col: Vec<LocalKElem> = (start..end).map(|k| chain.divide_by_alpha(i, &a[k][j])).collect::<Result<_>>()?;
            let sol: Vec<LocalKElem> = b11_inv
                .iter()
                .map(|row| row.iter().zip(&col).fold(LocalKElem::zero(&chain.alg), |acc, (x, y)| acc + x * y))
                .collect();
            let mut v = gens[j].clone();
            for (m, c) in sol.iter().enumerate() {
                let c = c.conj();
                for (x, y) in v.iter_mut().zip(&gens[start + m]) {
                    *x = &*x - &(&c * y);
                }
            }
            gens[j] = v;
        }
        let piece: Vec<Vec<LocalKElem>> = gens[start..end].to_vec();
        match blocks.last_mut() {
            Some(b) if b.order_index == i => {
                b.generators.extend(piece);
                b.pieces.push(end - start);
            }
            _ => blocks.push(IsotypicBlock { order_index: i, generators: piece, gram: Vec::new(), pieces: vec![end - start] }),
        }
        start = end;
    }
    for b in blocks.iter_mut() {
        b.gram = gram_of(&b.generators, h);
    }
    let out = PseudoBasis::new(chain.clone(), gens, idx)?;
    Ok((out, blocks))
}
