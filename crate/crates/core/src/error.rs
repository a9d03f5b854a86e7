use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected length {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid input: {0}")]
    Input(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    /// Some generator of the cone pairs non-positively with the level form.
    #[error("slice unbounded: ray {ray} has degree {degree} against the level form")]
    SliceUnbounded { ray: String, degree: String },

    #[error(
        "possibly infinite exceptional set: cone not strictly inside the positive cone \
         (slice minimum {slice_min})"
    )]
    PossiblyInfinite { slice_min: String },

    #[error("destabilizer search inapplicable: deg Γ < C²/4 required (deg Γ = {e}, C² = {c2})")]
    Inapplicable { e: String, c2: String },

    /// A result failed one of its own postconditions.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn unsupported(msg: impl Into<String>) -> Self {
        Error::Unsupported(msg.into())
    }

    /// True for errors caused by the caller's data rather than by this crate.
    pub fn is_input_error(&self) -> bool {
        !matches!(self, Error::Internal(_))
    }
}
