use std::process::ExitCode;

use semiprob::Error;
use serde_json::Value;

use crate::Format;

/// A rendered command result. `failed` marks a verification that ran to
/// completion and found a counterexample.
pub struct Report {
    pub json: Value,
    pub text: String,
    pub dot: Option<String>,
    pub failed: bool,
}

impl Report {
    pub fn new(json: Value, text: String) -> Self {
        Self { json, text, dot: None, failed: false }
    }

    pub fn render(&self, format: Format) -> Result<String, CliError> {
        match format {
            Format::Text => Ok(self.text.clone()),
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).expect("reports serialize");
                s.push('\n');
                Ok(s)
            }
            Format::Dot => self.dot.clone().ok_or_else(|| CliError::Usage("no DOT rendering for this command".into())),
        }
    }

    pub fn exit_code(&self) -> u8 {
        if self.failed {
            1
        } else {
            0
        }
    }
}

#[derive(Debug)]
pub enum CliError {
    Lib(Error),
    Io(String),
    Usage(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Io(_) | CliError::Usage(_) => 2,
            CliError::Lib(e) => match e {
                Error::Parse(_)
                | Error::NotStochastic(_)
                | Error::NotDistribution(_)
                | Error::Shape(_)
                | Error::ImageOutOfRange { .. }
                | Error::DegreeMismatch { .. }
                | Error::EmptyAlphabet
                | Error::ZeroDegree
                | Error::NoGenerators => 2,
                Error::CharacteristicClash { .. } => 4,
                Error::Covering(_) | Error::Invariant(_) => 1,
                _ => 3,
            },
        }
    }

    pub fn exit(&self) -> ExitCode {
        let msg = match self {
            CliError::Lib(e) => e.to_string(),
            CliError::Io(m) | CliError::Usage(m) => m.clone(),
        };
        eprintln!("error: {msg}");
        ExitCode::from(self.code())
    }
}

/// `[a b c]` for a list of displayable items.
pub fn list<T: std::fmt::Display>(items: &[T]) -> String {
    let parts: Vec<String> = items.iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(" "))
}
