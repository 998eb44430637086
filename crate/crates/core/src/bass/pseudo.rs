use num_bigint::BigInt;

use super::chain::OrderChain;
use super::zmod::{fl_combine, fl_left_kernel, fl_rank, fl_row_basis, flatten, residue, ZLattice};
use crate::error::{invalid, Error, Result};
use crate::padic::{lmat_congruence, LMat, LocalKElem};

/// Generators `e_k` of a lattice `M = ⊕ R_{i(k)} e_k` over the orders of a chain.
#[derive(Clone, Debug)]
pub struct PseudoBasis {
    pub chain: OrderChain,
    /// Rows in ambient coordinates of `E^n`.
    pub generators: Vec<Vec<LocalKElem>>,
    /// Index into `chain.levels` of the order acting freely on each generator.
    pub order_index: Vec<usize>,
}

impl PseudoBasis {
    pub fn new(chain: OrderChain, generators: Vec<Vec<LocalKElem>>, order_index: Vec<usize>) -> Result<Self> {
        if generators.len() != order_index.len() {
            return Err(invalid("one order index per generator is required"));
        }
        let n = generators.len();
        if generators.iter().any(|g| g.len() != n) {
            return Err(invalid("a pseudo-basis has as many generators as the ambient dimension"));
        }
        if order_index.iter().any(|&i| i >= chain.len()) {
            return Err(invalid("order index out of range"));
        }
        Ok(PseudoBasis { chain, generators, order_index })
    }

    /// The standard pseudo-basis `e_1, …, e_n` with the given order indices.
    pub fn standard(chain: OrderChain, order_index: Vec<usize>) -> Result<Self> {
        let n = order_index.len();
        let alg = chain.alg.clone();
        let gens = (0..n).map(|i| (0..n).map(|j| LocalKElem::from_int(&alg, (i == j) as i64)).collect()).collect();
        Self::new(chain, gens, order_index)
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    /// Multiplicities `(r_1, …, r_m)`; zero entries mark orders of the chain
    /// that do not occur.
    pub fn multiplicities(&self) -> Vec<usize> {
        let mut out = vec![0; self.chain.len()];
        for &i in &self.order_index {
            out[i] += 1;
        }
        out
    }

    /// A `Z_ℓ`-spanning set of the module: `e_k` and `ℓ^{f_i}ω·e_k`.
    pub fn z_generators(&self) -> Vec<Vec<LocalKElem>> {
        let mut out = Vec::with_capacity(2 * self.rank());
        for (g, &i) in self.generators.iter().zip(&self.order_index) {
            let w = &self.chain.order_generators(i)[1];
            out.push(g.clone());
            out.push(g.iter().map(|e| w * e).collect());
        }
        out
    }

    /// Gram matrix `A = P H P^†` of the generators for the ambient form `H`.
    pub fn gram(&self, ambient: &LMat) -> LMat {
        lmat_congruence(&self.generators, ambient)
    }

    /// Whether both pseudo-bases span the same `Z_ℓ`-module.
    pub fn same_module(&self, other: &PseudoBasis) -> Result<bool> {
        let a = z_lattice(&self.z_generators())?;
        let b = z_lattice(&other.z_generators())?;
        Ok(a.contains_lattice(&b)? && b.contains_lattice(&a)?)
    }

    /// Pseudo-basis with generators re-expressed by the rows of `u`
    /// (each new generator a combination of the old ones).
    pub fn transformed(&self, u: &LMat, order_index: Vec<usize>) -> Result<Self> {
        let gens = crate::padic::lmat_mul(u, &self.generators);
        Self::new(self.chain.clone(), gens, order_index)
    }
}

pub(crate) fn z_lattice(gens: &[Vec<LocalKElem>]) -> Result<ZLattice> {
    let first = gens.first().and_then(|g| g.first()).ok_or_else(|| invalid("empty generator set"))?;
    let alg = first.alg.clone();
    let prec = gens.iter().flatten().map(|e| e.prec).min().unwrap_or(alg.prec);
    let flat: Vec<Vec<BigInt>> = gens.iter().map(|g| flatten(g)).collect();
    ZLattice::from_generators(alg.l, prec, &flat)
}

/// Type data of a lattice over `R = Z_ℓ + ℓO_E`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LatticeType {
    /// Rank of the free `R`-part.
    pub r: usize,
    /// Rank of the `O_E`-part.
    pub s: usize,
    /// `dim_{F_ℓ} N/ℓÑ`.
    pub quotient_dim: usize,
}

/// Finds a pseudo-basis `N = ⊕ R e_k ⊕ ⊕ O_E e'_j` of the lattice spanned
/// over `Z_ℓ` by `gens`, where `R = Z_ℓ + ℓO_E`, and reports its type.
///
/// With `Ñ = O_E·N` one has `ℓÑ ⊆ N ⊆ Ñ`, `r + s = rank` and
/// `r + 2s = dim N/ℓÑ`. The `O_E`-part is read off from the largest
/// `O_E`-stable subspace `U` of `W = N/ℓÑ`; the free part lifts any
/// complement of `U` in `W`.
pub fn pseudo_basis_and_type(chain: &OrderChain, gens: &[Vec<LocalKElem>]) -> Result<(PseudoBasis, LatticeType)> {
    if chain.base != 1 || chain.levels != [1, 0] {
        return Err(invalid("type computation is implemented for the chain Z_ℓ + ℓO_E ⊊ O_E"));
    }
    let alg = chain.alg.clone();
    let l = alg.l;
    let n = gens.first().map_or(0, Vec::len);
    if n == 0 || gens.iter().any(|g| g.len() != n) {
        return Err(invalid("generators must be nonempty vectors of a common length"));
    }
    let omega = LocalKElem::omega(&alg);
    let lw = chain.order_generators(0)[1].clone();
    let times = |c: &LocalKElem, g: &[LocalKElem]| -> Vec<LocalKElem> { g.iter().map(|e| c * e).collect() };

    let n_lat = z_lattice(gens)?;
    for g in gens {
        if !n_lat.contains(&flatten(&times(&lw, g)))? {
            return Err(invalid("the generators do not span an R-module"));
        }
    }
    let mut tilde_gens = gens.to_vec();
    tilde_gens.extend(gens.iter().map(|g| times(&omega, g)));
    let tilde = z_lattice(&tilde_gens)?;
    let log_idx = n_lat.log_index() - tilde.log_index();
    if log_idx < 0 || log_idx as usize > n {
        return Err(Error::InsufficientPrecision(format!("index [Ñ:N] = ℓ^{log_idx} is out of range")));
    }

    // coordinates modulo ℓ in the echelon basis of Ñ
    let reduce = |v: &[LocalKElem]| -> Result<Vec<u64>> {
        let (c, prec) = tilde.coords(&flatten(v))?.ok_or_else(|| invalid("vector outside O_E·N"))?;
        if prec == 0 {
            return Err(Error::InsufficientPrecision("coordinates in O_E·N are unknown modulo ℓ".into()));
        }
        Ok(c.iter().map(|x| residue(x, l)).collect())
    };
    let images: Vec<Vec<u64>> = gens.iter().map(|g| reduce(g)).collect::<Result<_>>()?;
    let omega_mat: Vec<Vec<u64>> = tilde
        .basis
        .iter()
        .map(|b| {
            let v: Vec<LocalKElem> = b
                .chunks(2)
                .map(|xy| LocalKElem::new(&alg, xy[0].clone(), xy[1].clone(), tilde.prec))
                .collect();
            reduce(&times(&omega, &v))
        })
        .collect::<Result<_>>()?;

    let (w_basis, w_combos) = fl_row_basis(&images, l);
    let dim_w = w_basis.len();
    if dim_w != 2 * n - log_idx as usize {
        return Err(Error::InsufficientPrecision(format!(
            "dim N/ℓÑ = {dim_w} disagrees with the index ℓ^{log_idx} of N in Ñ"
        )));
    }
    let s = n - log_idx as usize;
    let r = log_idx as usize;

    // U = {w ∈ W : wω ∈ W}: kernel of c ↦ (Σ c_i w_i)Ω modulo W
    let annihilator = {
        // vectors a with a·w = 0 for every w ∈ W, as rows; membership of v in W ⇔ all a·v = 0
        let cols: Vec<Vec<u64>> = (0..2 * n).map(|j| w_basis.iter().map(|w| w[j]).collect()).collect();
        fl_left_kernel(&cols, l)
    };
    let u_coeffs: Vec<Vec<u64>> = if annihilator.is_empty() {
        (0..dim_w).map(|i| (0..dim_w).map(|j| (i == j) as u64).collect()).collect()
    } else {
        let rows: Vec<Vec<u64>> = w_basis
            .iter()
            .map(|w| {
                let wo = super::zmod::fl_vec_mat(w, &omega_mat, l);
                annihilator.iter().map(|a| a.iter().zip(&wo).map(|(x, y)| x * y % l).sum::<u64>() % l).collect()
            })
            .collect();
        fl_left_kernel(&rows, l)
    };
    let u_basis: Vec<Vec<u64>> = u_coeffs.iter().map(|c| fl_combine(c, &w_basis, l)).collect();
    if u_basis.len() != 2 * s {
        return Err(Error::InsufficientPrecision(format!(
            "largest O_E-submodule of N/ℓÑ has dimension {} instead of {}",
            u_basis.len(),
            2 * s
        )));
    }

    // O_E-free generators of U
    let mut span: Vec<Vec<u64>> = Vec::new();
    let mut o_choice: Vec<Vec<u64>> = Vec::new(); // coefficients over w_basis
    while o_choice.len() < s {
        let mut candidates: Vec<Vec<u64>> = u_coeffs.clone();
        for i in 0..u_coeffs.len() {
            for j in i + 1..u_coeffs.len() {
                candidates.push(u_coeffs[i].iter().zip(&u_coeffs[j]).map(|(a, b)| (a + b) % l).collect());
            }
        }
        let found = candidates.into_iter().find(|c| {
            let v = fl_combine(c, &w_basis, l);
            let vo = super::zmod::fl_vec_mat(&v, &omega_mat, l);
            let mut t = span.clone();
            t.push(v);
            t.push(vo);
            fl_rank(&t, l) == span.len() + 2
        });
        let c = found.ok_or_else(|| Error::InsufficientPrecision("no O_E-free generator found in U".into()))?;
        let v = fl_combine(&c, &w_basis, l);
        span.push(super::zmod::fl_vec_mat(&v, &omega_mat, l));
        span.push(v);
        o_choice.push(c);
    }
    // complement of U inside W
    let mut r_choice: Vec<Vec<u64>> = Vec::new();
    let mut acc = u_basis.clone();
    for i in 0..dim_w {
        if r_choice.len() == r {
            break;
        }
        let mut t = acc.clone();
        t.push(w_basis[i].clone());
        if fl_rank(&t, l) > acc.len() {
            acc = t;
            r_choice.push((0..dim_w).map(|j| (i == j) as u64).collect());
        }
    }
    debug_assert_eq!(r_choice.len(), r);

    // lift: coefficients over w_basis → coefficients over the original generators
    let lift = |c: &[u64]| -> Vec<LocalKElem> {
        let over_gens = fl_combine(c, &w_combos, l);
        let mut out = vec![LocalKElem::zero(&alg); n];
        for (k, &a) in over_gens.iter().enumerate() {
            if a != 0 {
                for (o, e) in out.iter_mut().zip(&gens[k]) {
                    *o = &*o + &e.scale_int(&BigInt::from(a));
                }
            }
        }
        out
    };
    let mut generators = Vec::with_capacity(n);
    let mut order_index = Vec::with_capacity(n);
    for c in &r_choice {
        generators.push(lift(c));
        order_index.push(0);
    }
    for c in &o_choice {
        generators.push(lift(c));
        order_index.push(1);
    }
    let pb = PseudoBasis::new(chain.clone(), generators, order_index)?;
    let spanned = z_lattice(&pb.z_generators())?;
    if !(spanned.contains_lattice(&n_lat)? && n_lat.contains_lattice(&spanned)?) {
        return Err(Error::InsufficientPrecision("lifted pseudo-basis does not span the lattice".into()));
    }
    Ok((pb, LatticeType { r, s, quotient_dim: dim_w }))
}
