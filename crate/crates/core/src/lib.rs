//! Exact arithmetic on the Mukai lattice of an elliptic K3 surface with
//! section, and the cohomological action of the relative Fourier-Mukai
//! transform.

pub mod error;
pub mod exact;
pub mod fm;
pub mod io;
pub mod lattice;
pub mod mirror;
pub mod report;
pub mod sheaf;

pub use error::{Error, ErrorKind, Result};
pub use exact::{ComplexRational, Matrix, Rational};
pub use lattice::{BaseClass, BuildOptions, FiberConfig, GradedClass, K3Model, Side};
