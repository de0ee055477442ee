//! L-space surgery calculator for 2-component L-space links.
//!
//! The pipeline runs from Alexander data to the H-function ([`hfun`]),
//! derives the stabilization thresholds and link type ([`invariants`]),
//! builds truncated surgery complexes and tests the L-space condition
//! directly ([`complex`]), and cross-checks against a rule engine
//! ([`oracle`]). [`cable`] transforms links under cabling and [`catalog`]
//! holds the built-in examples.

pub mod cable;
pub mod catalog;
pub mod complex;
pub mod error;
mod gf2;
pub mod hfun;
pub mod invariants;
pub mod oracle;
pub mod poly;

pub use error::{Error, Result};
pub use poly::{HalfInt, LaurentPoly1, LaurentPoly2};
