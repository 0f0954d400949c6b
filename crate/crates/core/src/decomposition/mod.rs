//! Wreath products, coverings, holonomy decomposition and its Zeiger
//! reduction.

pub mod covering;
pub mod export;
pub mod holonomy;
pub mod primes;
pub mod wreath;
pub mod xs;
pub mod zeiger;

pub use covering::{lift_covering, verify_covering, Covering, CoveringFailure, LiftedDistribution};
pub use holonomy::{holonomy_decompose, CascadeShape, HolonomyDecomposition, Level, LevelReport};
pub use primes::{prime_factors, PrimeFactors};
pub use wreath::{wreath, wreath_pair};
pub use xs::XsPoset;
pub use zeiger::{depth_and_classes, zeiger_reduce, ClassReport, ReducedHolonomy};
