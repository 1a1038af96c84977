//! Constructive Henselian local rings: computable local rings, idempotent
//! calculus in finite algebras, universal decomposition algebras, Hensel
//! lifting of roots, factorizations and idempotents, and Henselization
//! towers of one-step extensions.

pub mod algebra;
pub mod error;
pub mod hensel;
pub mod linalg;
pub mod poly;
pub mod ring;
pub mod tower;
pub mod uda;

pub use error::{Error, Result};
