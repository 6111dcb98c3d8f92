use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The parameters lie outside the domain of the requested operation
    /// (for example `n < 2r` for the symmetric action).
    #[error("domain error: {0}")]
    Domain(String),

    #[error("vertex {vertex} out of range 1..={count}")]
    VertexOutOfRange { vertex: u32, count: u32 },

    #[error("hypergraph is not irrepeating")]
    NotIrrepeating,

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    /// A hard size limit of an exhaustive routine was exceeded.
    #[error("guard exceeded: {0}")]
    GuardExceeded(String),

    #[error("retry budget exhausted after {0} attempts")]
    RetryBudgetExhausted(u32),

    /// A member set has a size that does not belong to the action's domain
    /// (`index` is 0-based; the message counts from 1).
    #[error("set #{} has size {size}, expected {expected}", .index + 1)]
    SizeMode {
        index: usize,
        size: usize,
        expected: String,
    },

    #[error("family is not a base: {0}")]
    NotABase(String),

    /// Every padding of the at-most family was tried and none is a base.
    #[error("no padding-only uniform lift exists")]
    LiftExhausted,

    #[error("uniform lift search exceeded its budget of {0} nodes")]
    LiftBudgetExceeded(u64),

    /// An internal invariant failed; always a bug, never a valid runtime state.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}
