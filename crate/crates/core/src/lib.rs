//! Exact computations with 1-dimensional tropical fans and their Boolean
//! function semirings.
//!
//! * [`maxplus`]: the semiring `Z^A_pos ∪ {-∞}` and its unit group.
//! * [`tropoly`]: Boolean Laurent polynomials as functions on `R^n`.
//! * [`fan`]: fans, balancing and weighted evaluation maps.
//! * [`lattice`]: Hermite normal form and integer lattice membership.
//! * [`homsearch`]: enumeration of all semiring homomorphisms between
//!   Laurent-generated subsemirings, and of all morphisms between fans.
//! * [`witness`]: polynomial pairs separating a point from a union of rays.

pub mod cli;
pub mod cone;
pub mod error;
pub mod fan;
pub mod homsearch;
pub mod json;
pub mod lattice;
pub mod maxplus;
pub mod simplex;
pub mod tropoly;
pub mod witness;

pub use error::{Error, Result};
pub use fan::{Fan1D, GenMatrix, Ray};
pub use lattice::{IntMatrix, Lattice};
pub use maxplus::{ExtInt, TropVector, UnitVector};
pub use tropoly::{parse_poly, TropPoly, TropPolyFn};
