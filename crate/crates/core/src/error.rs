use thiserror::Error;

use crate::ambient::AmbientKind;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ambient order must be at least 1")]
    ZeroOrder,

    #[error("ambient order {order} exceeds the supported capacity {max}")]
    OrderTooLarge { order: u64, max: u64 },

    #[error("element {element} does not belong to {ambient}")]
    ElementOutOfRange { element: u64, ambient: String },

    #[error("operation `{op}` is not defined on {kind:?} ambients")]
    UnsupportedAmbient { op: &'static str, kind: AmbientKind },

    #[error("ambients differ: {left} vs {right}")]
    AmbientMismatch { left: String, right: String },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("order {order} exceeds the {method} cap of {cap}")]
    CapExceeded {
        method: &'static str,
        order: u64,
        cap: u64,
    },

    #[error("unknown bound `{0}`")]
    UnknownBound(String),

    #[error("solver produced a witness that fails re-verification: {0}")]
    WitnessRejected(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}
