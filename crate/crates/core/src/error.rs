use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed rule {rule}: {reason}")]
    MalformedRule { rule: String, reason: String },
    #[error("inconsistent presentation: {0}")]
    InconsistentPresentation(String),
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("prime mismatch: {0} vs {1}")]
    PrimeMismatch(u32, u32),
    #[error("group of order {order} exceeds bound {bound}")]
    BoundExceeded { order: usize, bound: usize },
    #[error("group is not abelian")]
    NotAbelian,
    #[error("permutation action is not faithful (kernel of order {kernel_order})")]
    NotFaithful { kernel_order: usize },
    #[error("unknown catalog name: {0}")]
    UnknownName(String),
    #[error("bad prime {prime} for {name}")]
    BadPrime { name: String, prime: u32 },
    #[error("relation audit failed for {name}: {relation}")]
    AuditFailed { name: String, relation: String },
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Process exit code for the command-line surface.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::BoundExceeded { .. } => 3,
            Error::NotFaithful { .. } => 1,
            _ => 2,
        }
    }
}
