//! Denominators of algebraic numbers.
//!
//! For an algebraic number `gamma` this crate computes the invariants
//! `c`, `d`, `e` of its minimal polynomial, the sets `X(K, gamma)` and
//! `Y(K, gamma)` of primes of a number field `K`, the ring
//! `O_K[gamma] ∩ K` with its class group, and the finite generating set `S`.

pub mod arith;
pub mod classgroup;
pub mod denominators;
pub mod error;
pub mod field;
pub mod genset;
pub mod linalg;
pub mod poly;
pub mod tuple;
pub mod verify;

pub use error::{Error, Result};
