use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An element, pair or atom that does not belong to the structure it was used with.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("empty interval: lower bound is not below upper bound")]
    EmptyInterval,

    /// An operator left the sublattice it was supposed to preserve, or failed
    /// to be increasing along a Kleene iteration.
    #[error("monotonicity violation: {0}")]
    MonotonicityViolation(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("inconsistent pair: lower bound is not below upper bound")]
    Inconsistent,

    #[error("invalid approximator: {0}")]
    InvalidApproximator(String),

    /// A configured enumeration cap was exceeded.
    #[error("resource cap exceeded: {resource} needs {needed}, cap is {cap}{}", context_suffix(.context))]
    Resource {
        resource: &'static str,
        cap: u128,
        needed: u128,
        context: Option<String>,
    },

    #[error("syntax error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("internal invariant broken: {0}")]
    Internal(String),
}

fn context_suffix(context: &Option<String>) -> String {
    match context {
        Some(c) => format!(" ({c})"),
        None => String::new(),
    }
}

impl Error {
    pub(crate) fn resource(resource: &'static str, cap: u128, needed: u128) -> Self {
        Error::Resource {
            resource,
            cap,
            needed,
            context: None,
        }
    }

    /// Attaches a context note to a resource error; other variants pass through.
    pub fn with_context(self, note: impl Into<String>) -> Self {
        match self {
            Error::Resource {
                resource,
                cap,
                needed,
                context: None,
            } => Error::Resource {
                resource,
                cap,
                needed,
                context: Some(note.into()),
            },
            other => other,
        }
    }

    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } => 2,
            Error::Resource { .. } => 3,
            _ => 1,
        }
    }
}
