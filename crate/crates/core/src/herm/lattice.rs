use num_traits::{Signed, Zero};

use super::ring::{Coef, OrderTag, RingCtx};
use crate::error::{invalid, Error, Result};
use crate::exactnum::{
    conj_transpose, det_class_of, identity, is_hermitian, kmat_det, kmat_inverse, kmat_mul, leading_minors,
    DetClass, KElem, KMat, Rational,
};

/// Which dual: the `O`-valued one (`star`) or the `Z[√-p]`-valued one (`vee`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DualKind {
    Star,
    Vee,
}

/// A hermitian lattice `L = ⊕ R_i e_i` given by the Gram matrix of its basis.
///
/// The `frame` records the basis vectors as rows in a fixed reference basis of
/// the ambient space; it is what lets duals and rescalings be compared as
/// sets of vectors. The Gram matrix is stored exactly over `K`, also for
/// local contexts, where it is read in `K_ℓ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermLattice {
    ctx: RingCtx,
    gram: KMat,
    tags: Vec<OrderTag>,
    frame: KMat,
}

impl HermLattice {
    /// A lattice over `ctx` with all basis vectors tagged `O`.
    pub fn new(ctx: RingCtx, gram: KMat) -> Result<Self> {
        let n = gram.len();
        Self::with_tags(ctx, gram, vec![OrderTag::O; n])
    }

    pub fn with_tags(ctx: RingCtx, gram: KMat, tags: Vec<OrderTag>) -> Result<Self> {
        let n = gram.len();
        let frame = identity(ctx.p(), n);
        Self::with_frame(ctx, gram, tags, frame)
    }

    pub(crate) fn with_frame(ctx: RingCtx, gram: KMat, tags: Vec<OrderTag>, frame: KMat) -> Result<Self> {
        let n = gram.len();
        if n == 0 {
            return Err(invalid("lattice of rank 0"));
        }
        if gram.iter().any(|r| r.len() != n) || tags.len() != n {
            return Err(invalid("Gram matrix must be square with one order tag per row"));
        }
        let p = ctx.p();
        if gram.iter().flatten().any(|e| e.p != p) {
            return Err(invalid(format!("Gram entries must lie in Q(√-{p})")));
        }
        if !is_hermitian(&gram) {
            return Err(Error::NonHermitian("Gram matrix differs from its conjugate transpose".into()));
        }
        if tags.contains(&OrderTag::R) && !ctx.allows_r_tags() {
            return Err(invalid(format!("order tag R is not available over {}", ctx.describe())));
        }
        if kmat_det(&gram).is_zero() {
            return Err(Error::SingularGram);
        }
        if frame.len() != n {
            return Err(invalid("frame must have one row per basis vector"));
        }
        Ok(HermLattice { ctx, gram, tags, frame })
    }

    pub fn ctx(&self) -> &RingCtx {
        &self.ctx
    }

    pub fn p(&self) -> u64 {
        self.ctx.p()
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &KMat {
        &self.gram
    }

    pub fn tags(&self) -> &[OrderTag] {
        &self.tags
    }

    pub fn frame(&self) -> &KMat {
        &self.frame
    }

    /// The same module regarded over another ring context.
    pub fn in_context(&self, ctx: RingCtx) -> Result<Self> {
        Self::with_frame(ctx, self.gram.clone(), self.tags.clone(), self.frame.clone())
    }

    /// The lattice spanned by the rows of `u` (in the current basis), with new tags.
    pub fn transform(&self, u: &KMat, tags: Vec<OrderTag>) -> Result<Self> {
        let gram = kmat_mul(&kmat_mul(u, &self.gram), &conj_transpose(u));
        Self::with_frame(self.ctx.clone(), gram, tags, kmat_mul(u, &self.frame))
    }

    /// `c·L`.
    pub fn scaled(&self, c: &KElem) -> Result<Self> {
        let n = self.rank();
        let u: KMat = (0..n)
            .map(|i| (0..n).map(|j| if i == j { c.clone() } else { KElem::zero(self.p()) }).collect())
            .collect();
        self.transform(&u, self.tags.clone())
    }

    pub fn det(&self) -> Rational {
        kmat_det(&self.gram).a
    }

    /// Whether every vector of `other` lies in `self`.
    pub fn contains_lattice(&self, other: &HermLattice) -> Result<bool> {
        let coords = kmat_mul(&other.frame, &kmat_inverse(&self.frame)?);
        for (i, row) in coords.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                let need = match (other.tags[i], self.tags[j]) {
                    (_, OrderTag::O) => Coef::O,
                    (OrderTag::R, OrderTag::R) => Coef::R,
                    (OrderTag::O, OrderTag::R) => Coef::Conductor,
                };
                if !self.ctx.contains(need, c) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn same_module(&self, other: &HermLattice) -> Result<bool> {
        Ok(self.contains_lattice(other)? && other.contains_lattice(self)?)
    }

    /// Whether all pairings of lattice vectors lie in the context ring
    /// (`O` for `star`, `Z[√-p]` for `vee`).
    pub fn is_integral(&self, kind: DualKind) -> bool {
        let n = self.rank();
        (0..n).all(|i| {
            (0..n).all(|j| {
                let need = match (kind, self.tags[i], self.tags[j]) {
                    (DualKind::Star, _, _) => Coef::O,
                    (DualKind::Vee, OrderTag::R, OrderTag::R) => Coef::R,
                    (DualKind::Vee, _, _) => Coef::Conductor,
                };
                self.ctx.contains(need, &self.gram[i][j])
            })
        })
    }
}

/// The dual lattice: `{x : φ(x, L) ⊆ O}` for `star`, `{x : φ(x, L) ⊆ Z[√-p]}`
/// for `vee`. Its basis is dual to that of `L`, so its Gram matrix is `G⁻¹`;
/// for `vee` the vectors dual to `O`-tagged ones are doubled whenever the
/// order is proper.
pub fn dual_gram(l: &HermLattice, kind: DualKind) -> Result<HermLattice> {
    let ginv = kmat_inverse(&l.gram)?;
    let frame = kmat_mul(&ginv, &l.frame);
    let (tags, scale): (Vec<OrderTag>, Vec<i64>) = match kind {
        DualKind::Star => (vec![OrderTag::O; l.rank()], vec![1; l.rank()]),
        DualKind::Vee => l
            .tags
            .iter()
            .map(|&t| match t {
                OrderTag::O if l.ctx.order_is_proper() => (OrderTag::O, 2),
                t => (t, 1),
            })
            .unzip(),
    };
    let p = l.p();
    let n = l.rank();
    let d: KMat = (0..n)
        .map(|i| (0..n).map(|j| if i == j { KElem::from_int(p, scale[i]) } else { KElem::zero(p) }).collect())
        .collect();
    let gram = kmat_mul(&kmat_mul(&d, &ginv), &d);
    HermLattice::with_frame(l.ctx.clone(), gram, tags, kmat_mul(&d, &frame))
}

/// The dual used by the modularity notion of the context: `vee` over
/// `Z[√-p]`-type rings, `star` over maximal orders.
pub fn natural_dual_kind(ctx: &RingCtx) -> DualKind {
    if ctx.allows_r_tags() {
        DualKind::Vee
    } else {
        DualKind::Star
    }
}

/// Whether `(√-p)^k · L^dual = L`, with the dual appropriate to the context.
pub fn is_modular(l: &HermLattice, k: u32) -> Result<bool> {
    let dual = dual_gram(l, natural_dual_kind(&l.ctx))?;
    let scaled = dual.scaled(&KElem::sqrt_mp(l.p()).pow(k))?;
    scaled.same_module(l)
}

/// All leading principal minors are positive.
pub fn is_positive_definite(l: &HermLattice) -> Result<bool> {
    if !l.ctx.is_global() {
        return Err(invalid("definiteness is a property of global lattices"));
    }
    Ok(leading_minors(&l.gram)?.iter().all(|m| m.is_positive()))
}

/// Class of `det(G)` in `Q₊^× / N(K^×)`.
pub fn global_det_class(l: &HermLattice) -> Result<DetClass> {
    let d = l.det();
    if d.is_zero() || d.is_negative() {
        return Err(invalid("determinant class needs a positive definite lattice"));
    }
    det_class_of(&d, l.p())
}
