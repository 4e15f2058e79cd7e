use std::path::PathBuf;

use prefagent_core::Error as CoreError;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{}: {source}", path.display())]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },
    #[error("{context}: {source}")]
    Engine {
        context: String,
        #[source]
        source: CoreError,
    },
    #[error("{context}: unsupported schema version {found}")]
    Schema { context: String, found: u32 },
    #[error("{context}: {message}")]
    Format { context: String, message: String },
    #[error("script line {line}: {message}")]
    Script { line: usize, message: String },
    #[error("step {step} (`{op}`): {source}")]
    Step {
        step: usize,
        op: String,
        #[source]
        source: CoreError,
    },
    #[error("{0}")]
    Usage(String),
}

impl Error {
    /// Stable machine-readable tag for the failure.
    pub fn reason(&self) -> &'static str {
        match self {
            Error::Io { .. } => "io-error",
            Error::Json { .. } => "malformed-json",
            Error::Schema { .. } => "unsupported-schema",
            Error::Format { .. } => "invalid-input",
            Error::Script { .. } => "script-error",
            Error::Usage(_) => "usage",
            Error::Engine { source, .. } | Error::Step { source, .. } => core_reason(source),
        }
    }

    /// The plan symbol the failure is about, if any.
    pub fn plan(&self) -> Option<&str> {
        match self {
            Error::Engine { source, .. } | Error::Step { source, .. } => match source {
                CoreError::NotPConsistent { plan, .. } | CoreError::UnknownPlan(plan) => Some(plan),
                CoreError::PostNotLiteralConjunction { plan, .. } | CoreError::ContradictoryPost { plan, .. } => {
                    Some(plan)
                }
                _ => None,
            },
            _ => None,
        }
    }
}

fn core_reason(e: &CoreError) -> &'static str {
    match e {
        CoreError::Parse(_) => "parse-error",
        CoreError::InconsistentKnowledge => "inconsistent-knowledge",
        CoreError::NotPConsistent { .. } => "not-p-consistent",
        CoreError::EmptyModel => "empty-model",
        CoreError::NonInjectiveValuation(..) => "non-injective-valuation",
        CoreError::UnknownPlan(_) => "unknown-plan",
        CoreError::UnknownAtom(_) => "unknown-atom",
        CoreError::NotPropositional(_) => "not-propositional",
        _ => "invalid-input",
    }
}

/// Attaches a context string to engine errors.
pub trait Context<T> {
    fn context(self, context: impl Into<String>) -> Result<T, Error>;
}

impl<T> Context<T> for Result<T, CoreError> {
    fn context(self, context: impl Into<String>) -> Result<T, Error> {
        self.map_err(|source| Error::Engine {
            context: context.into(),
            source,
        })
    }
}
