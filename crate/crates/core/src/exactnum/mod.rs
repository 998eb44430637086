//! Exact arithmetic over `Q` and `K = Q(√-p)`, integer factorization, and the
//! determinant class group `Q₊^× / N(K^×)`.
//!
//! ```
//! use modlat::exactnum::{KElem, k_norm, rat};
//! let x = KElem::new(7, rat(3, 2), rat(1, 2));
//! assert_eq!(k_norm(&x), rat(4, 1));
//! ```

mod detclass;
mod factor;
mod kelem;
mod matrix;
mod rational;

pub use detclass::{det_class_of, gamma_rs_generator, DetClass};
pub use factor::{factorize, factorize_with_bound, is_prime, next_prime, primes_up_to, DEFAULT_FACTOR_BOUND};
pub use kelem::{k_norm, KElem};
pub use matrix::{
    conj_transpose, identity, is_hermitian, kmat_det, kmat_inverse, kmat_mul, leading_minors,
    scalar_matrix, KMat,
};
pub use rational::{format_rational, int, parse_rational, rat, Rational};
