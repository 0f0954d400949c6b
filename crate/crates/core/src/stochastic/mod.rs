//! Exact-rational stochastic matrices, distributions over finite
//! semigroups, canonical cone forms and idempotent block structure.

pub mod doob;
pub mod forms;
pub mod io;
pub mod lp;
pub mod matrix;
pub mod rational;

pub use doob::{block_idempotent, doob_analyze, idempotent_j_invariant, DoobAnalysis};
pub use forms::{
    green_test, reduced_column_form, reduced_echelon_form, reduced_row_form, ConeCanonicalForm, GreenVerdict,
    Relation, Side, Witness,
};
pub use matrix::{convolve, matrix_of, Distribution, StochasticMatrix};
pub use rational::{format_rational, parse_rational, Rational};
