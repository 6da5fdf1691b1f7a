//! Exact algebra for sieving random walks on surface mapping class groups.
//!
//! The crate provides the homological representation of mapping classes,
//! the Prym representation of the Torelli group attached to a double cover,
//! characteristic-polynomial proxies for pseudo-Anosov elements, finite
//! symplectic group utilities, and a reproducible random-walk engine that
//! estimates how fast the proxy set decays along walks.

pub mod arith;
pub mod finite;
pub mod error;
pub mod linalg;
pub mod poly;
pub mod prym;
pub mod surface;
pub mod walk;

pub use error::{Error, Result};
pub use linalg::{IntMatrix, ModMatrix, SymplecticForm};
pub use poly::{IntPolynomial, ModPolynomial};
