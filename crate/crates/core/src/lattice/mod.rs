//! Cohomology of an elliptic K3 surface with section: fibre data, the H^2
//! lattice, cup product, Mukai pairing, the involution `*` and the modified
//! base-valued pairing.

mod class;
mod config;
mod model;

pub use class::{BaseClass, ComplexClass, GradedClass};
pub use config::{FiberConfig, FiberGroup, FiberKind};
pub use model::{default_transcendental, render_terms, BuildOptions, K3Model, Side};

#[cfg(test)]
#[allow(unused_imports)]
pub(crate) use model::tests::{i3_model, i3_transcendental};
