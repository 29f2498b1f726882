//! Exact construction and verification of quantum cluster seeds on double
//! Bruhat cells: Cartan data, quantum tori, seed calculus, the seed families
//! of a double reduced word, and a normal-form engine for presented
//! iterated skew polynomial algebras.

pub mod cgl;
pub mod coxeter;
pub mod dbc;
pub mod error;
pub mod json;
pub mod qtorus;
pub mod rational;
pub mod seed;
pub mod verify;

pub use error::{Error, Result};
