//! Embeddability of finite simplicial complexes.
//!
//! - [`vankampen`] builds the integral Van Kampen obstruction system and
//!   decides whether a k-complex embeds in R^{2k} (k ≠ 2).
//! - [`embed22`] decides embeddability of 2-complexes in the plane.
//! - [`reduction`] compiles 3-CNF formulas into the gadget complexes used
//!   for NP-hardness of embedding 2-complexes in R^4.
//! - [`geometry`] realizes complexes on the moment curve with exact rational
//!   coordinates and checks the intersection-number identities.
//!
//! Arithmetic is exact throughout: arbitrary-precision integers, rationals
//! and GF(2).

pub mod complex;
pub mod embed22;
pub mod format;
pub mod geometry;
pub mod homology;
pub mod linalg;
pub mod reduction;
pub mod vankampen;

pub use complex::{ComplexError, Graph, Simplex, SimplicialComplex, Vertex};
