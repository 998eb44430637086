//! Global existence, genus enumeration, explicit representatives and their
//! verification for `√-p`-modular lattices over `O_K` and `Z[√-p]`.

mod block;
mod glue;
mod lagrange;
mod symbol;
mod verify;

pub use block::{search_block, BlockKind};
pub use glue::glue_lattice;
pub use lagrange::{form_mod_pi, lagrangian, lagrangian_step, residue_mod, rref};
pub use symbol::{det_two, exists_modular, forced_det, genus_enumerate, sigma_report, At2, GenusSymbol, Ring, SigmaReport};
pub use verify::{verify_genus, GenusCheck, VerifyFailure};
