//! Exact counting, constructions, and minimization of monochromatic
//! k-term arithmetic progressions in 2-colorings of `Z_n` and `[n]`.
//!
//! The crate provides:
//!
//! - colorings of cyclic groups and intervals with their count-preserving
//!   symmetries and canonical forms ([`coloring`]);
//! - exact progression counting: monochromatic counts, per-difference
//!   splits, red-count histograms, pair intersections, and pattern counts
//!   ([`apcount`]);
//! - the wrap-class decomposition of the cyclic parameter space, counts of
//!   offset ("generalized") progressions in a block, and the exact density
//!   bounds they induce for periodic colorings ([`periodic`]);
//! - lattice-point counting in rational polygons ([`lattice`]);
//! - the built-in block colorings and the star-template product
//!   construction with its exact count recursion ([`constructions`]);
//! - verified counting identities and closed forms ([`bounds`]);
//! - symmetry-reduced exhaustive minimization and pattern-avoidance
//!   search ([`search`]);
//! - seeded self-check suites used by the command-line `verify` command
//!   ([`suites`]).
//!
//! All counts are exact integers and all densities exact fractions.

mod bits;

pub mod apcount;
pub mod bounds;
pub mod coloring;
pub mod constructions;
pub mod error;
pub mod lattice;
pub mod periodic;
pub mod ratio;
pub mod search;
pub mod suites;

pub use apcount::{ApFilter, ApParam, ColorClass, ColorProfile, PairMode, PatternSet};
pub use coloring::{Coloring, Group, SymmetryGroup};
pub use error::Error;
pub use ratio::Ratio;
