//! Minimum-length equal-area partitions of unit-side regular polygons.
//!
//! The crate is split by concern:
//!
//! - [`geometry`]: regular polygons, arcs, polylines, loop areas and circle fitting.
//! - [`closed_form`]: closed-form infima, lower bounds and conjectured values.
//! - [`constructions`]: explicit split systems realizing the known upper bounds, plus a validator.
//! - [`optimizer`]: an augmented-Lagrangian minimizer over discretized split topologies.
//! - [`hexpack`]: the hexagonal-lattice embedding used for the asymptotic upper bound.
//! - [`verify`]: the end-to-end verification checks used by the CLI.
//!
//! All public types are immutable values and every operation is a pure function,
//! so everything here is safe to call from multiple threads.

pub mod closed_form;
pub mod constructions;
pub mod error;
pub mod geometry;
pub mod hexpack;
pub mod optimizer;
pub mod parallel;
pub mod verify;

pub use error::{Error, Result};
pub use geometry::{Point2, RegularPolygon};
