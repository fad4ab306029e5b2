//! Linear algebra over symmetrized, bi-valued and phase extensions of the
//! max-plus semiring.

pub mod assignment;
pub mod error;
pub mod extension;
pub mod geometry;
pub mod linalg;
pub mod matrix;
pub mod scalar;
pub mod semiring;
pub mod solvers;
pub mod transport;

pub use error::{Error, Result};
pub use extension::{Base, Ext, PhaseExt, SMax, T2};
pub use matrix::Matrix;
pub use scalar::{MaxPlus, Rational};
pub use semiring::{Semiring, Symmetric};
