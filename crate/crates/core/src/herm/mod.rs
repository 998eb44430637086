//! Hermitian lattices over `O_K`, `Z[√-p]` and their completions: duals,
//! scale and norm ideals, modularity and definiteness.

mod ideals;
mod lattice;
mod ring;

pub use ideals::{ideals, is_normal, k_val, ramification, IdealVal};
pub use lattice::{dual_gram, global_det_class, is_modular, is_positive_definite, natural_dual_kind, DualKind, HermLattice};
pub use ring::{Coef, OrderTag, RingCtx};
