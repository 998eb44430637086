use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::chain::OrderChain;
use super::perfect::{orthogonal_decompose, IsotypicBlock};
use super::pseudo::PseudoBasis;
use crate::error::{invalid, Result};
use crate::padic::{lpow, make_local_alg, Alg, LMat, LocalKElem};

/// Residues modulo `ℓ^k` of the norms of the units of `Z_ℓ + ℓ^f O_E`,
/// by enumerating all units modulo `ℓ^k`.
pub fn unit_norm_residues(alg: &Alg, f: u32, k: u32) -> Result<BTreeSet<u64>> {
    if k > alg.prec || k > 12 {
        return Err(invalid("modulus too large for enumeration"));
    }
    let m = lpow(alg.l, k).to_u64().expect("small modulus");
    let step = lpow(alg.l, f).to_u64().expect("small");
    let mut out = BTreeSet::new();
    for x in 0..m {
        for y in (0..m).step_by(step as usize) {
            let u = LocalKElem::new(alg, BigInt::from(x), BigInt::from(y), k);
            if u.is_unit() {
                let n = u.norm().residue % BigInt::from(m);
                out.insert(n.to_u64().expect("small"));
            }
        }
    }
    Ok(out)
}

/// The lattice `R e₁ ⊕ O_E e₂` over `E = Q₂(√-2)`, `R = Z₂ + 2O_E`, with
/// `⟨e₁,e₁⟩ = 1`, `⟨e₁,e₂⟩ = 0`, `⟨e₂,e₂⟩ = 2`, in its two pseudo-bases
/// `{e₁, e₂}` and `{e₁+e₂, −2e₁+e₂}`.
pub struct WittFixture {
    pub ambient: LMat,
    pub first: PseudoBasis,
    pub second: PseudoBasis,
}

pub fn witt_fixture(prec: u32) -> Result<WittFixture> {
    let alg = make_local_alg(2, 2, prec)?;
    let chain = OrderChain::conductor_one(alg.clone());
    let k = |a: i64| LocalKElem::from_int(&alg, a);
    let ambient = vec![vec![k(1), k(0)], vec![k(0), k(2)]];
    let first = PseudoBasis::standard(chain.clone(), vec![0, 1])?;
    let second = PseudoBasis::new(chain, vec![vec![k(1), k(1)], vec![k(-2), k(1)]], vec![0, 1])?;
    Ok(WittFixture { ambient, first, second })
}

impl WittFixture {
    /// Orthogonal decompositions from both pseudo-bases.
    pub fn decompositions(&self) -> Result<(Vec<IsotypicBlock>, Vec<IsotypicBlock>)> {
        let (_, a) = orthogonal_decompose(&self.first, &self.ambient)?;
        let (_, b) = orthogonal_decompose(&self.second, &self.ambient)?;
        Ok((a, b))
    }
}
