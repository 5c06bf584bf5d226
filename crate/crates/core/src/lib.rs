//! Exact hypergeometric character sums over finite fields and point counts
//! on the superelliptic family `y^l = t^e1 (1-t)^e2 (1-zt)^e3`.

pub mod cli;
pub mod curves;
pub mod cyclo;
pub mod error;
pub mod ff;
pub mod hgf;
mod kernel;
pub mod verify;
pub mod zeta;

pub use error::{Error, Result};
