use std::fmt;

use serde::{Deserialize, Serialize};

use super::chain::OrderChain;
use super::perfect::orthogonal_decompose;
use super::pseudo::PseudoBasis;
use crate::error::{invalid, Error, Result};
use crate::padic::{lmat_is_hermitian, Alg, LMat, LocalKElem};

/// Isometry class of a unimodular hermitian `R₂`-lattice: type `(r, s)` and
/// whether some vector has odd norm.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct R2Class {
    pub r: usize,
    pub s: usize,
    pub odd_diag: bool,
}

impl R2Class {
    /// Checks `r odd ⇒ odd_diag` and `r = 0 ⇒ !odd_diag`.
    pub fn new(r: usize, s: usize, odd_diag: bool) -> Result<Self> {
        if r % 2 == 1 && !odd_diag {
            return Err(Error::Inconsistent(format!("free rank {r} is odd, so some norm is odd")));
        }
        if r == 0 && odd_diag {
            return Err(Error::Inconsistent("a lattice over O_K has only even norms".into()));
        }
        if r + s == 0 {
            return Err(invalid("rank must be positive"));
        }
        Ok(R2Class { r, s, odd_diag })
    }

    pub fn rank(&self) -> usize {
        self.r + self.s
    }

    /// Multiplicities `(a, b, s)` of `𝓛₁^a ⊥ 𝓗^b ⊥ 𝓛₀^s`.
    pub fn components(&self) -> (usize, usize, usize) {
        let a = if self.r % 2 == 1 {
            1
        } else if self.odd_diag {
            2
        } else {
            0
        };
        (a, (self.r - a) / 2, self.s)
    }

    /// Every class of total rank `n`, ordered by `s` and then with `odd_diag = false` first.
    pub fn all_of_rank(n: usize) -> Vec<R2Class> {
        let mut out = Vec::new();
        for s in 0..=n {
            let r = n - s;
            for odd in [false, true] {
                if let Ok(c) = R2Class::new(r, s, odd) {
                    out.push(c);
                }
            }
        }
        out
    }
}

impl fmt::Display for R2Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b, s) = self.components();
        let mut parts = Vec::new();
        for (name, k) in [("𝓛₁", a), ("𝓗", b), ("𝓛₀", s)] {
            match k {
                0 => {}
                1 => parts.push(name.to_string()),
                _ => parts.push(format!("{name}^{k}")),
            }
        }
        write!(f, "{}", parts.join("⊥"))
    }
}

fn k(alg: &Alg, a: i64) -> LocalKElem {
    LocalKElem::from_int(alg, a)
}

/// The standard form `𝓛₁^a ⊥ 𝓗^b ⊥ 𝓛₀^s` on `R₂^{a+2b} ⊕ O^s`: lines `(1)`,
/// planes `[[0,1],[1,0]]` and `O`-lines `(2)`.
pub fn standard_r2(alg: &Alg, a: usize, b: usize, s: usize) -> Result<(PseudoBasis, LMat)> {
    let n = a + 2 * b + s;
    let mut h = vec![vec![k(alg, 0); n]; n];
    for i in 0..a {
        h[i][i] = k(alg, 1);
    }
    for j in 0..b {
        let o = a + 2 * j;
        h[o][o + 1] = k(alg, 1);
        h[o + 1][o] = k(alg, 1);
    }
    for i in a + 2 * b..n {
        h[i][i] = k(alg, 2);
    }
    let idx = (0..n).map(|i| usize::from(i >= a + 2 * b)).collect();
    let pb = PseudoBasis::standard(OrderChain::conductor_one(alg.clone()), idx)?;
    Ok((pb, h))
}

/// Standard representative of a class.
pub fn standard_of_class(alg: &Alg, c: R2Class) -> Result<(PseudoBasis, LMat)> {
    let (a, b, s) = c.components();
    standard_r2(alg, a, b, s)
}

/// Classifies a unimodular hermitian lattice over `R₂ = Z₂ + 2O_{K₂}`.
///
/// The lattice is split as `N₁ ⊥ N₂` with `N₁` free over `R₂` and `N₂` over
/// `O`; `odd_diag` is read from the diagonal of `N₁` (norms on `N₂` are even,
/// and `⟨x+y,x+y⟩ ≡ ⟨x,x⟩ + ⟨y,y⟩ mod 2`).
pub fn classify_unimodular_r2(pb: &PseudoBasis, h: &LMat) -> Result<R2Class> {
    let alg = &pb.chain.alg;
    if alg.l != 2 || pb.chain.base != 1 || pb.chain.levels != [1, 0] {
        return Err(invalid("R₂-classification needs the chain Z₂ + 2O ⊊ O"));
    }
    if !lmat_is_hermitian(h) {
        return Err(Error::NonHermitian("ambient form is not hermitian".into()));
    }
    let (_, blocks) = orthogonal_decompose(pb, h)?;
    let mut r = 0;
    let mut s = 0;
    let mut odd = false;
    for b in &blocks {
        if b.order_index == 0 {
            r += b.gram.len();
            for (i, row) in b.gram.iter().enumerate() {
                let d = row[i].rational_part().ok_or_else(|| Error::NonHermitian("diagonal entry is not rational".into()))?;
                odd |= d.residue.bit(0);
            }
        } else {
            s += b.gram.len();
        }
    }
    R2Class::new(r, s, odd)
}
