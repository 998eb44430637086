//! Bounded-precision ℓ-adic integers, the completions `K_ℓ`, Hensel lifting
//! and local norm tests.
//!
//! Precision is tracked per value: every element remembers how many ℓ-adic
//! digits are trustworthy, exact division by `ℓ^k` consumes `k` of them, and
//! a quantity that cannot be decided from the remaining digits yields
//! [`Error::InsufficientPrecision`](crate::Error::InsufficientPrecision).

mod alg;
mod hensel;
mod int;
mod matrix;

pub use alg::{local_val, make_local_alg, Alg, Kind, LocalKElem, LocalQuadAlg};
pub use hensel::{hensel_root, hensel_root_from, is_local_norm};
pub use int::{lpow, padic_val, PadicInt, Val};
pub use matrix::{
    lmat_congruence, lmat_conj_transpose, lmat_det, lmat_from_kmat, lmat_identity, lmat_is_hermitian,
    lmat_mul, lmat_prec, lmat_to_kmat, random_local, random_unimodular, zmat_det, LMat,
};


/// Default working precision in ℓ-adic digits.
pub const DEFAULT_PRECISION: u32 = 64;
