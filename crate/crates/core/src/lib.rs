//! Exact computations in the interpolation tensor category built from
//! finite-dimensional vector spaces over F_q.
//!
//! The layers build on each other: [`arith`] supplies Q and Q(t), [`gfq`] the
//! finite-field linear algebra, [`lattice`] the subspace lattices and their
//! Möbius data, [`category`] the morphism calculus, [`semisimple`] the trace
//! form diagnostics and [`specialization`] the functor to permutation
//! representations of GL(r, F_q). [`cli`] and [`cache`] form the command-line
//! front end.

pub mod arith;
pub mod cache;
pub mod category;
pub mod cli;
pub mod error;
pub mod gfq;
pub mod lattice;
pub mod selftest;
pub mod semisimple;
pub mod specialization;

pub use error::{Error, Result};
