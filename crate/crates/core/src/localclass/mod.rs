//! Isometry classes of self-dual and `√-p`-modular lattices over `O_{K_ℓ}`:
//! classification of a given Gram matrix, canonical representatives, and
//! the classes that exist for a prescribed rank and determinant.

mod classify;
mod exists;
mod labels;
mod reduce;
mod standard;

pub use classify::{classify_local, classify_local_gram, det_unit_part, local_case, local_norm_val, LocalCase};
pub use exists::local_exists;
pub use labels::{LocalClassLabel, LocalKind};
pub use reduce::{jordan_blocks, Block};
pub use standard::{block_sum, hyperbolic_0, hyperbolic_p, line, standard_gram};
