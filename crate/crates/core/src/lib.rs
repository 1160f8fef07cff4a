//! Exact computation in the free Boolean algebra and free distributive
//! lattice generated by a finite poset, with a set-theoretic model on
//! final segments used as an independent oracle.
//!
//! Start with [`poset::Poset`], build a [`algebra::FreeAlgebra`] over it and
//! evaluate [`expr::Expr`] terms; [`stone::StoneSpace`] interprets the same
//! terms as sets of final segments. [`verify`] bundles the property suites
//! run by the `pal` binary.

pub mod algebra;
pub mod cli;
pub mod corpus;
pub mod elemset;
pub mod error;
pub mod expr;
pub mod lattice;
pub mod miners;
pub mod morphisms;
pub mod poset;
pub mod stone;
pub mod verify;
pub mod wqo;
