//! Finite transformation semigroups, stochastic matrices, holonomy
//! decompositions and semigroup representations over prime fields.

pub mod automata;
pub mod decomposition;
pub mod error;
pub mod green;
pub mod group;
pub mod rees;
pub mod representation;
pub mod schutz;
pub mod semigroup;
pub mod stochastic;
pub mod transformation;

pub use error::{Error, Result};
pub use group::GroupTable;
pub use semigroup::FiniteSemigroup;
pub use transformation::Transformation;
