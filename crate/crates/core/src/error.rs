use thiserror::Error;

use crate::computad::Violation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("label `{0}` is outside the domain of the label map")]
    UnmappedLabel(String),

    #[error("morphisms are not composable: codomain `{cod}` differs from domain `{dom}`")]
    NonComposable { cod: String, dom: String },

    #[error("search budget exceeded: {needed} candidate maps against a budget of {budget}")]
    SearchBudgetExceeded { needed: u128, budget: u64 },

    #[error("oracle budget exceeded: {needed} permutations against a budget of {budget}")]
    OracleBudgetExceeded { needed: u128, budget: u64 },

    #[error("parallel pair is incompatible: {0}")]
    IncompatibleParallelPair(String),

    #[error("cone condition violated: {0}")]
    ConeConditionViolated(String),

    #[error("invalid computad `{name}`: {}", join(violations))]
    InvalidComputad {
        name: String,
        violations: Vec<Violation>,
    },

    #[error("invalid morphism `{name}`: {}", join(violations))]
    InvalidMorphism {
        name: String,
        violations: Vec<Violation>,
    },

    #[error("line {line}: expected {expected}, found `{found}`")]
    Parse {
        line: usize,
        expected: String,
        found: String,
    },

    #[error("objects do not match: {0}")]
    Mismatch(String),

    #[error("unknown object `{0}`")]
    UnknownObject(String),

    #[error("step {step}: {message}")]
    Step { step: u8, message: String },

    /// A construction produced something its own invariants rule out.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

fn join(violations: &[Violation]) -> String {
    violations
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

impl Error {
    pub(crate) fn parse(
        line: usize,
        expected: impl Into<String>,
        found: impl Into<String>,
    ) -> Self {
        Error::Parse {
            line,
            expected: expected.into(),
            found: found.into(),
        }
    }
}
