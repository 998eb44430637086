pub mod acceptance;
pub mod bass;
pub mod cli;
pub mod error;
pub mod exactnum;
pub mod global;
pub mod herm;
pub mod localclass;
pub mod padic;
pub mod symbols;

pub use error::{Error, Result};
