//! Representations over prime fields: group modules, induction to
//! semigroups and enumeration of simple modules.

pub mod field;
pub mod group_reps;
pub mod holonomy_reps;
pub mod linalg;
pub mod module;
pub mod munn;
pub mod poly;

pub use field::PrimeField;
pub use group_reps::{group_irreducibles, GroupRepresentation};
pub use holonomy_reps::{holonomy_principal_indecomposables, PrincipalIndecomposable};
pub use module::Module;
pub use munn::{apex_of, enumerate_irreducibles, induce, maximal_submodule, regular_module_factors, Irreducible};
