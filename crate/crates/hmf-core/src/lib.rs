//! Hilbert cusp forms of parallel weight 2 over totally real fields of strict
//! class number one, computed as Hecke modules through Brandt matrices of
//! definite quaternion orders.

#![allow(clippy::needless_range_loop)]

pub mod arith;
pub mod classes;
pub mod diag;
pub mod heckelin;
pub mod lattice;
pub mod numfield;
pub mod orders;
pub mod p1hecke;
pub mod quatalg;
pub mod space;
