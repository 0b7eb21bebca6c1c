//! Kauffman bracket and Jones polynomial of virtual link diagrams, the ribbon
//! graphs of checkerboard colorable diagrams, and their (signed)
//! Bollobás-Riordan and Tutte polynomials.
//!
//! Everything is exact: polynomials have big-integer coefficients and
//! exponents on the quarter-integer lattice.
//!
//! ```
//! use vkbr::{fixtures, verify};
//!
//! let d = fixtures::example_knot();
//! let rep = verify::verify_main(&d).unwrap();
//! assert!(rep.equal);
//! assert_eq!(rep.left.to_string(), "A^3 + 3*A^2*B*d + A*B^2*d^2 + 2*A*B^2 + B^3*d");
//! ```

pub mod build;
pub mod diagram;
pub mod fixtures;
pub mod laurent;
pub mod random;
pub mod ribbon;
pub mod verify;

pub use build::{build_ribbon, build_signed, find_switch_set, CrossingEdgeMap, SwitchSet};
pub use diagram::{Diagram, Splitting, State, StateStats};
pub use laurent::{Exponent, LaurentPoly, Vars};
pub use ribbon::{RibbonGraph, Sign, SpanningSubgraph, SubgraphStats};

use thiserror::Error;

/// Default cap on crossings (state sums) and edges (subset sums).
pub const DEFAULT_MAX_SIZE: usize = 24;

/// Environment variable overriding [`DEFAULT_MAX_SIZE`].
pub const MAX_SIZE_ENV: &str = "VKBR_MAX_CROSSINGS";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{size} {what} exceeds the limit of {max} (set {MAX_SIZE_ENV} to raise it)")]
pub struct SizeError {
    pub what: &'static str,
    pub size: usize,
    pub max: usize,
}

/// The enumeration cap: `VKBR_MAX_CROSSINGS` if set and valid, else 24.
/// Never above 63, the width of a state bitmask.
pub fn size_limit() -> usize {
    std::env::var(MAX_SIZE_ENV)
        .ok()
        .and_then(|s| s.trim().parse::<usize>().ok())
        .unwrap_or(DEFAULT_MAX_SIZE)
        .min(63)
}

pub(crate) fn check_size(what: &'static str, size: usize) -> Result<(), SizeError> {
    let max = size_limit();
    if size > max {
        Err(SizeError { what, size, max })
    } else {
        Ok(())
    }
}
