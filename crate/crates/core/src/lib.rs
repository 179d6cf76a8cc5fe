//! A symbolic kernel for generalized algebraic theories (GATs): a
//! derivation engine over the standard judgment forms, and the tensor
//! product `A (x) B` of two theories computed mechanically from their
//! axioms, with associativity and symmetry apparatus on top.

pub mod corpus;
pub mod kernel;
pub mod tensor;
pub mod structure;
pub mod syntax;

pub use syntax::*;
