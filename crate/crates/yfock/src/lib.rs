//! Exact computations with Yangian actions on fermionic Fock spaces of
//! affine `gl_N`: matrix Dunkl operators, dDAHA intertwiners, finite wedge
//! windows standing in for Fock space, and skew-diagram combinatorics.

pub mod affine_actions;
pub mod algebraics;
pub mod cli;
pub mod daha;
pub mod diagrams;
pub mod error;
pub mod tensor_space;
pub mod wedge_fock;
pub mod yangian;

pub use error::{Error, Result};
