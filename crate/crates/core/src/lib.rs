//! Exact computations with the equivariant complex of hook Schur modules over `F_p`.
//!
//! The crate builds the hook Schur modules `S_{(a,1^b)}(V)` as explicit quotients of
//! `Λ^{b+1} V ⊗ S_{a-1} V`, assembles the complex
//! `0 → S_m V → S_{(m-1,1)} V → ⋯ → Λ^m V → 0` for `p | m`, computes its cohomology,
//! and checks the character and Adams-operation identities that follow from it.

pub mod characters;
pub mod cli;
pub mod complexes;
pub mod error;
pub mod ffield;
pub mod ktheory;
pub mod limits;
pub mod multilinear;
pub mod schur;

pub use error::{Error, Result};
pub use ffield::{FpElement, Prime};
