//! Exact computations around unexpected hypersurfaces.
//!
//! The crate builds point configurations over exact fields, decides whether a
//! configuration admits an unexpected hypersurface, solves for the
//! bihomogeneous form `F_Z(a; x)` of the whole family, splits it into the two
//! companion maps and measures the images of those maps.
//!
//! All randomized steps take explicit seeds. Results that depend on a random
//! specialization are recomputed over several seeds and primes by
//! [`generic`]; any disagreement is an error.

pub mod companion;
pub mod config;
pub mod error;
pub mod field;
pub mod generic;
pub mod ideal;
pub mod linalg;
pub mod poly;
pub mod unexpected;

pub use error::{Error, Result};
pub use field::{make_field, Field, FieldHandle, FieldSpec};
