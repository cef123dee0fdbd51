//! Exact computer algebra for Drinfeld twists, gauge transformations, and
//! twisted automorphisms on truncated enveloping algebras U(g)[h]/(h^{N+1}).
//!
//! Everything is computed over the rationals with no floating point anywhere,
//! so all checks are exact identities rather than approximations.

pub mod cochain;
pub mod crossedprod;
pub mod error;
pub mod geom;
pub mod twist;
pub mod linalg;
pub mod lie;
pub mod rmatrix;
pub mod sampling;
pub mod selftest;
pub mod serial;
pub mod scalars;
pub mod uea;

pub use error::{Error, Result};
pub use linalg::{Matrix, Subspace, Vector};
pub use lie::LieAlgebra;
pub use scalars::{HSeries, Rational};
pub use uea::{Ctx, Elem, Mono};
