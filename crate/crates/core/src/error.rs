use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Two streams of different kinds were compared.
    #[error("kind mismatch: {0} vs {1}")]
    KindMismatch(&'static str, &'static str),

    /// A bounded search ran out of horizon.
    #[error("{what} not found within horizon {horizon}")]
    NotFound { what: String, horizon: u64 },

    /// A verification step failed. Reaching this means an implementation
    /// defect, since every recorded quantity is recomputed exactly.
    #[error("verification failed: {0}")]
    Verification(String),

    /// Rounded square roots left nothing inside the requested cylinder.
    #[error("precision exhausted at {bits} bits (achieved width {achieved_width})")]
    Precision { bits: u32, achieved_width: String },

    /// Transport dropped every entry of a certificate.
    #[error("transport by {shift} leaves no certificate entries")]
    EmptyCertificate { shift: u64 },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
