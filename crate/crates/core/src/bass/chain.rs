use crate::error::{invalid, Result};
use crate::padic::{lpow, Alg, LocalKElem};

/// A chain of orders `R = Z_ℓ + ℓ^{f₀}O_E ⊆ R₁ ⊊ … ⊊ R_m` inside the
/// quadratic étale algebra `E = K_ℓ`, each of conductor-power shape
/// `R_i = Z_ℓ + ℓ^{f_i}O_E`.
///
/// Indices are 0-based: `levels[0]` is the conductor exponent of `R₁`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderChain {
    pub alg: Alg,
    /// Conductor exponent `f₀` of the base order `R`.
    pub base: u32,
    /// Strictly decreasing conductor exponents `f₁ > f₂ > … > f_m ≥ 0`, with `f₁ ≤ f₀`.
    pub levels: Vec<u32>,
}

impl OrderChain {
    pub fn new(alg: Alg, base: u32, levels: Vec<u32>) -> Result<Self> {
        if levels.is_empty() {
            return Err(invalid("an order chain needs at least one order"));
        }
        if levels[0] > base {
            return Err(invalid(format!("first order Z+ℓ^{}O does not contain the base order Z+ℓ^{base}O", levels[0])));
        }
        if levels.windows(2).any(|w| w[0] <= w[1]) {
            return Err(invalid("conductor exponents must be strictly decreasing"));
        }
        if base >= alg.prec {
            return Err(invalid("conductor exponent exceeds the working precision"));
        }
        Ok(OrderChain { alg, base, levels })
    }

    /// `R = Z_ℓ + ℓO_E ⊊ O_E`: the chain relevant for `R₂ = Z₂ + 2O_{K₂}`.
    pub fn conductor_one(alg: Alg) -> Self {
        OrderChain { alg, base: 1, levels: vec![1, 0] }
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    /// Conductor exponent of `R_i`.
    pub fn level(&self, i: usize) -> u32 {
        self.levels[i]
    }

    /// Exponent `f₀ − f_i` of the conductor generator `α_i = ℓ^{f₀−f_i}`.
    pub fn alpha_exp(&self, i: usize) -> u32 {
        self.base - self.levels[i]
    }

    /// Membership in `R_i`.
    pub fn in_order(&self, i: usize, x: &LocalKElem) -> bool {
        x.in_order(self.levels[i])
    }

    /// Membership in the relative conductor `(R : R_i) = α_i R_i`.
    pub fn in_conductor(&self, i: usize, x: &LocalKElem) -> bool {
        let k = self.alpha_exp(i);
        x.divisible_by_l_pow(k) && x.div_l_pow(k).is_ok_and(|q| q.in_order(self.levels[i]))
    }

    /// Membership in `α_i O_E`.
    pub fn in_alpha_maximal(&self, i: usize, x: &LocalKElem) -> bool {
        x.divisible_by_l_pow(self.alpha_exp(i))
    }

    /// `x / α_i`, which must be divisible.
    pub fn divide_by_alpha(&self, i: usize, x: &LocalKElem) -> Result<LocalKElem> {
        x.div_l_pow(self.alpha_exp(i))
    }

    /// Additive generators `1, ℓ^{f_i}ω` of `R_i` over `Z_ℓ`.
    pub fn order_generators(&self, i: usize) -> [LocalKElem; 2] {
        let one = LocalKElem::one(&self.alg);
        let w = LocalKElem::omega(&self.alg).scale_int(&lpow(self.alg.l, self.levels[i]));
        [one, w]
    }
}

/// A σ-fixed generator `α_i` of the relative conductor `(R : R_i)`.
///
/// For conductor-power orders `(R : R_i) = ℓ^{f₀−f_i}R_i`. The result is
/// checked against the definition: `α_i R_i ⊆ R`, while `ℓ^{-1}α_i R_i ⊄ R`
/// whenever `α_i ≠ 1`.
pub fn conductor_generator(chain: &OrderChain, i: usize) -> Result<LocalKElem> {
    if i >= chain.len() {
        return Err(invalid(format!("order index {i} out of range for a chain of length {}", chain.len())));
    }
    let k = chain.alpha_exp(i);
    let alpha = LocalKElem::from_bigint(&chain.alg, &lpow(chain.alg.l, k));
    let gens = chain.order_generators(i);
    debug_assert!(gens.iter().all(|g| (&alpha * g).in_order(chain.base)));
    if k > 0 {
        let smaller = LocalKElem::from_bigint(&chain.alg, &lpow(chain.alg.l, k - 1));
        debug_assert!(!gens.iter().all(|g| (&smaller * g).in_order(chain.base)));
    }
    Ok(alpha)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::make_local_alg;

    #[test]
    fn generators_of_small_chains() {
        let alg = make_local_alg(3, 2, 16).unwrap();
        let chain = OrderChain::conductor_one(alg.clone());
        assert_eq!(conductor_generator(&chain, 1).unwrap(), LocalKElem::from_int(&alg, 2));
        assert_eq!(conductor_generator(&chain, 0).unwrap(), LocalKElem::one(&alg));
        assert!(conductor_generator(&chain, 2).is_err());
        assert!(OrderChain::new(alg.clone(), 1, vec![2, 0]).is_err());
        assert!(OrderChain::new(alg, 2, vec![1, 1]).is_err());
    }
}
