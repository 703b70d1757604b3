use thiserror::Error;

/// Errors raised across the toolkit.
///
/// Domain outcomes such as [`Error::NoFeasiblePartition`] are ordinary
/// results for some solvers; callers that need to distinguish them from
/// malformed input should use [`Error::is_domain`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid game: {0}")]
    InvalidGame(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid rational literal `{0}`")]
    InvalidRational(String),

    #[error("partition is not individually rational (agent {agent} has negative utility)")]
    NotIndividuallyRational { agent: usize },

    #[error("welfare values refer to different agent counts ({left} vs {right})")]
    MismatchedAgentCount { left: usize, right: usize },

    #[error("operation requires an {expected} game, got {found}")]
    UnsupportedGameClass {
        expected: &'static str,
        found: String,
    },

    #[error("operation requires a symmetric game")]
    NotSymmetric,

    #[error("no individually rational partition satisfies the bounds")]
    NoFeasiblePartition,

    #[error("instance with {size} agents exceeds the ceiling of {ceiling}")]
    InstanceTooLarge { size: usize, ceiling: usize },

    #[error("edge weight on {{{0}, {1}}} is not strictly positive")]
    NonPositiveWeight(usize, usize),

    #[error("invalid deviation: {0}")]
    InvalidDeviation(String),

    #[error("invalid bound: {0}")]
    InvalidBound(String),

    #[error("vertex count {0} is not divisible by 3")]
    BadVertexCount(usize),

    #[error("negative utility in two-sided instance: {0}")]
    NegativeUtility(String),

    #[error("bad reduction values: {0}")]
    BadValues(String),

    #[error("step limit of {0} exceeded")]
    StepLimitExceeded(usize),

    #[error("invariant violated: {0}")]
    InvariantViolation(String),
}

impl Error {
    /// True for errors that describe a property of a well-formed instance
    /// rather than a malformed input.
    pub fn is_domain(&self) -> bool {
        matches!(
            self,
            Error::NotIndividuallyRational { .. }
                | Error::MismatchedAgentCount { .. }
                | Error::UnsupportedGameClass { .. }
                | Error::NotSymmetric
                | Error::NoFeasiblePartition
                | Error::InstanceTooLarge { .. }
                | Error::NonPositiveWeight(..)
                | Error::InvalidDeviation(_)
                | Error::InvalidBound(_)
                | Error::BadVertexCount(_)
                | Error::NegativeUtility(_)
                | Error::BadValues(_)
                | Error::StepLimitExceeded(_)
                | Error::InvariantViolation(_)
        )
    }

    /// Stable machine-readable code used in structured error output.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidGame(_) => "invalid_game",
            Error::InvalidPartition(_) => "invalid_partition",
            Error::InvalidGraph(_) => "invalid_graph",
            Error::InvalidRational(_) => "invalid_rational",
            Error::NotIndividuallyRational { .. } => "not_individually_rational",
            Error::MismatchedAgentCount { .. } => "mismatched_agent_count",
            Error::UnsupportedGameClass { .. } => "unsupported_game_class",
            Error::NotSymmetric => "not_symmetric",
            Error::NoFeasiblePartition => "no_feasible_partition",
            Error::InstanceTooLarge { .. } => "instance_too_large",
            Error::NonPositiveWeight(..) => "non_positive_weight",
            Error::InvalidDeviation(_) => "invalid_deviation",
            Error::InvalidBound(_) => "invalid_bound",
            Error::BadVertexCount(_) => "bad_vertex_count",
            Error::NegativeUtility(_) => "negative_utility",
            Error::BadValues(_) => "bad_values",
            Error::StepLimitExceeded(_) => "step_limit_exceeded",
            Error::InvariantViolation(_) => "invariant_violation",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
