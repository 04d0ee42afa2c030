use alloc::string::String;

/// Errors raised by constructions, reductions and oracles.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("work budget exceeded: {what} needs {needed} elementary checks, budget is {budget}")]
    BudgetExceeded {
        what: &'static str,
        needed: u128,
        budget: u64,
    },

    #[error("size budget exceeded: {what} has {size} elements, budget is {budget}")]
    SizeExceeded {
        what: &'static str,
        size: String,
        budget: u64,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("no partition")]
    NoPartition,

    #[error("malformed element id {id:?}: {reason}")]
    MalformedId { id: String, reason: &'static str },

    #[error("out of range: {0}")]
    OutOfRange(String),

    #[error("element {id:?} is not covered by any set")]
    Uncoverable { id: String },

    #[error("element {id} is not covered by the chosen sets")]
    NotCovered { id: String },

    #[error("internal error: {0}")]
    Internal(String),

    #[error("{stage}: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: alloc::boxed::Box<Error>,
    },
}

impl Error {
    pub(crate) fn in_stage(self, stage: &'static str) -> Self {
        Error::Stage {
            stage,
            source: alloc::boxed::Box::new(self),
        }
    }

    /// True when the failure is a work or size budget refusal, possibly
    /// wrapped in pipeline stages.
    pub fn is_budget(&self) -> bool {
        match self {
            Error::BudgetExceeded { .. } | Error::SizeExceeded { .. } => true,
            Error::Stage { source, .. } => source.is_budget(),
            _ => false,
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;
