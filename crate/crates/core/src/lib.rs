//! Mediated digraphs and the mediation number.
//!
//! A digraph is *mediated* if every pair of distinct vertices lies together in
//! the closed in-neighborhood of some vertex. The *n*th mediation number μ(n)
//! is the minimum over all mediated digraphs on n vertices of the maximum
//! in-degree. This crate provides:
//!
//! - the digraph representation and the mediated-property decision procedure
//!   ([`digraph`]),
//! - the equivalent formulation through symmetric 2-covering block families
//!   with a system of distinct representatives ([`family`]),
//! - finite fields GF(p^e) and projective planes PG(2, q) as witnesses
//!   ([`galois`]),
//! - upper-bound constructions: plane extensions and cyclic difference-cover
//!   developments, plus a minimal difference-cover search ([`construct`]),
//! - the lower bound f(n), aggregated upper bounds, and nonexistence
//!   predicates for plane orders ([`bounds`]),
//! - an exact branch-and-bound solver for μ(n) at small n ([`solver`]).

pub mod bitset;
pub mod bounds;
pub mod construct;
pub mod digraph;
pub mod family;
pub mod galois;
pub mod solver;

mod error;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
