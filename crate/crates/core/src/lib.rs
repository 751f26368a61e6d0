//! Exact verification engine for twisted tensor products, push-forward
//! Hopf–Galois extensions and their bialgebroids.
//!
//! Everything is exact: scalars live in ℚ, a cyclotomic field or ℚ(μ), and
//! algebras are finitely presented with deglex rewriting. Checks produce
//! [`report::Report`]s rather than panicking, so failures carry witnesses.

#![cfg_attr(not(test), no_std)]
extern crate alloc;

pub mod cocycle;
pub mod coeff;
pub mod comodule;
pub mod error;
pub mod esbialg;
pub mod hopf;
pub mod ncalg;
pub mod projmod;
pub mod pushfwd;
pub mod report;
pub mod suites;
pub mod twist;

pub use error::{Error, Result};
