//! Lattices over local Bass orders `Z_ℓ + ℓ^f O_E` in `E = K_ℓ`: order
//! chains and conductors, pseudo-bases and types, perfectness, orthogonal
//! decomposition into isotypic components, and the classification of
//! unimodular hermitian lattices over `R₂ = Z₂ + 2O_{K₂}`.

mod chain;
mod f2;
mod hyperbolic;
mod perfect;
mod pseudo;
mod r2class;
mod random;
mod witt;
pub mod zmod;

pub use chain::{conductor_generator, OrderChain};
pub use f2::{all_symmetric, f2_classify, f2_orbit_count, F2BilForm, F2Class};
pub use hyperbolic::hyperbolize;
pub use perfect::{dual_matrix, is_perfect_ambient, is_perfect_pairing, lmat_inverse_unimodular, orthogonal_decompose, IsotypicBlock};
pub use pseudo::{pseudo_basis_and_type, LatticeType, PseudoBasis};
pub use r2class::{classify_unimodular_r2, standard_of_class, standard_r2, R2Class};
pub use random::{random_automorphism, random_perfect};
pub use witt::{unit_norm_residues, witt_fixture, WittFixture};
