//! Exact computation of Hochschild, cyclic, negative cyclic and periodic
//! cyclic homology of finitely presented commutative F₂-algebras, together
//! with the algebraic approximation models ℓ, ℓ⁺ and ℓ^per and the comparison
//! maps into the homology theories.

pub mod error;
pub mod f2linalg;
pub mod gralg;
pub mod approx;
pub mod cli;
pub mod cyclic;
pub mod derham;
pub mod ell;
pub mod hochschild;

pub use error::{Error, Result};
