//! Exact symbol calculus for two-dimensional local fields F_q((u))((t)):
//! valuations and symbols, lattices and measure indices, the central extension
//! of GL_n and its cocycle, reciprocity checks and Satake bookkeeping.

pub mod algebra;
pub mod centext;
pub mod cli;
pub mod error;
pub mod expr;
pub mod lattice;
pub mod recip;
pub mod report;
pub mod sample;
pub mod satake;
pub mod suites;
pub mod tlf;

pub use error::{Error, Result};
