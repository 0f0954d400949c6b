use std::path::Path;

use semiprob::automata::{transition_semigroup_bounded, ProbabilisticInstance, TransitionSemigroup};
use semiprob::stochastic::io::{matrices_from_json, parse_matrices};
use semiprob::stochastic::StochasticMatrix;
use semiprob::Error;

use crate::report::CliError;

pub fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

pub fn automaton(path: &Path) -> Result<ProbabilisticInstance, CliError> {
    Ok(ProbabilisticInstance::from_json(&read(path)?)?)
}

pub fn semigroup(path: &Path, bound: usize) -> Result<(ProbabilisticInstance, TransitionSemigroup), CliError> {
    let inst = automaton(path)?;
    let ts = transition_semigroup_bounded(&inst.automaton, bound)?;
    Ok((inst, ts))
}

/// Matrix list in the text format, or as JSON when the file starts with `[`.
pub fn matrices(path: &Path) -> Result<Vec<StochasticMatrix>, CliError> {
    let text = read(path)?;
    let ms = if text.trim_start().starts_with('[') {
        let v: serde_json::Value =
            serde_json::from_str(&text).map_err(|e| Error::Parse(format!("invalid JSON: {e}")))?;
        matrices_from_json(&v)?
    } else {
        parse_matrices(&text)?
    };
    if ms.is_empty() {
        return Err(Error::NoGenerators.into());
    }
    Ok(ms)
}
