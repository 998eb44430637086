use num_bigint::BigInt;

use crate::error::{invalid, Error, Result};
use crate::padic::{hensel_root, lmat_congruence, lmat_det, LMat, LocalKElem};

fn even_half(x: &LocalKElem, what: &str) -> Result<BigInt> {
    let r = x
        .rational_part()
        .ok_or_else(|| Error::NonHermitian(format!("{what} = {x} is not in Z_2")))?;
    if !r.residue.bit(0) {
        Ok(r.residue >> 1)
    } else {
        Err(Error::NotEvenDiagonal(format!("{what} = {x} is odd")))
    }
}

/// Basis change `U` (rows are the new basis vectors) with
/// `U G U^† = [[0,1],[1,0]]` for a unimodular free rank-2 hermitian lattice
/// over `R₂ = Z₂[√-p]`, `p ≡ 3 (mod 4)`, all of whose norms are even.
///
/// After scaling `e₂` so that `⟨e₁,e₂⟩ = 1`, the vector
/// `u = x(1+√-p)e₁ + e₂` is isotropic exactly when
/// `a(1+p)x² + x + b = 0` with `⟨e₁,e₁⟩ = 2a`, `⟨e₂,e₂⟩ = 2b`; this
/// polynomial is linear modulo 2, so Hensel lifting gives the root.
pub fn hyperbolize(g: &LMat) -> Result<LMat> {
    if g.len() != 2 || g.iter().any(|r| r.len() != 2) {
        return Err(invalid("hyperbolize expects a 2×2 Gram matrix"));
    }
    let alg = g[0][0].alg.clone();
    if alg.l != 2 || alg.t != 1 {
        return Err(invalid("hyperbolize works over Z₂[√-p] with p ≡ 3 (mod 4)"));
    }
    if g.iter().flatten().any(|e| !e.in_order(1)) {
        return Err(Error::IntegralityViolation("Gram entries must lie in R₂".into()));
    }
    let _ = even_half(&g[0][0], "⟨e₁,e₁⟩")?;
    let _ = even_half(&g[1][1], "⟨e₂,e₂⟩")?;
    if !lmat_det(g)?.is_unit() {
        return Err(Error::NotPerfect("the plane is not unimodular".into()));
    }
    let zero = LocalKElem::zero(&alg);
    let one = LocalKElem::one(&alg);
    // ⟨e₁, c·e₂⟩ = c̄·g₁₂ = 1
    let c2 = g[0][1].inv()?.conj();
    let s: LMat = vec![vec![one.clone(), zero.clone()], vec![zero.clone(), c2]];
    let g1 = lmat_congruence(&s, g);
    debug_assert_eq!(g1[0][1], one);
    let a = even_half(&g1[0][0], "⟨e₁,e₁⟩")?;
    let b = even_half(&g1[1][1], "⟨e₂,e₂⟩")?;
    let p1 = BigInt::from(alg.p + 1);
    let f = vec![b, BigInt::from(1), a * p1];
    let x = hensel_root(&f, 2, alg.prec)?;
    let xe = LocalKElem::from_padic(&alg, &x);
    let one_plus = &one + &LocalKElem::sqrt_mp(&alg);
    let u = vec![&xe * &one_plus, one.clone()];
    // partner w = c·e₁ with ⟨u, w⟩ = 1, then remove its norm along u
    let ue1 = &(&(&xe * &one_plus) * &g1[0][0]) + &g1[1][0];
    let cw = ue1.inv()?.conj();
    let w = vec![cw, zero.clone()];
    let gw = lmat_congruence(&vec![w.clone()], &g1)[0][0].clone();
    let half = LocalKElem::from_bigint(&alg, &even_half(&gw, "⟨w,w⟩")?);
    let v: Vec<LocalKElem> = w.iter().zip(&u).map(|(wi, ui)| wi - &(&half * ui)).collect();
    let u_rows: LMat = vec![u, v];
    let total = crate::padic::lmat_mul(&u_rows, &s);
    let check = lmat_congruence(&total, g);
    let h = [[&zero, &one], [&one, &zero]];
    for i in 0..2 {
        for j in 0..2 {
            if check[i][j] != *h[i][j] {
                return Err(Error::InsufficientPrecision(format!("hyperbolic basis check failed at ({i},{j})")));
            }
        }
    }
    Ok(total)
}
