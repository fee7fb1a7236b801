use alloc::string::String;
use core::fmt;

use serde::{Deserialize, Serialize};

/// Which axis of an iterated 2D quadrature failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Axis {
    Inner,
    Outer,
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Axis::Inner => f.write_str("inner"),
            Axis::Outer => f.write_str("outer"),
        }
    }
}

/// Reason a parameter tuple does not define a distribution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Rejection {
    /// A parameter was NaN or infinite.
    NonFinite,
    /// `a` outside `(0, 1]`.
    AOutOfRange,
    /// `z = 0`.
    ZZero,
    /// `z` outside `[-1, 1]`, or `z = 1` where only `[-1, 1)` is admissible.
    ZOutOfRange,
    /// `z = 1` continuation regime with `a < 1/2`.
    ANotHalf,
    /// `sigma = 1` with `z = 1`.
    PoleSigmaOne,
    /// A `sigma` is nonpositive.
    SigmaNonPositive,
    /// The `sigma` values fall outside every admissible region for these `z`.
    SigmaOutOfRegion,
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Rejection::NonFinite => "NonFinite",
            Rejection::AOutOfRange => "AOutOfRange",
            Rejection::ZZero => "ZZero",
            Rejection::ZOutOfRange => "ZOutOfRange",
            Rejection::ANotHalf => "ANotHalf",
            Rejection::PoleSigmaOne => "PoleSigmaOne",
            Rejection::SigmaNonPositive => "SigmaNonPositive",
            Rejection::SigmaOutOfRegion => "SigmaOutOfRegion",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("pole: {0}")]
    Pole(String),
    #[error("outside the supported region: {0}")]
    Region(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("non-finite value: {0}")]
    NonFinite(String),
    #[error("no convergence{}: {nodes} nodes used, error estimate {err_estimate:e}", axis.map(|a| alloc::format!(" on {a} axis")).unwrap_or_default())]
    NonConvergence {
        axis: Option<Axis>,
        nodes: usize,
        err_estimate: f64,
    },
    #[error("invalid distribution: {0}")]
    InvalidDistribution(Rejection),
}

impl Error {
    pub(crate) fn region(msg: impl Into<String>) -> Self {
        Error::Region(msg.into())
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// Attach an axis tag to a quadrature failure.
    pub(crate) fn on_axis(self, tag: Axis) -> Self {
        match self {
            Error::NonConvergence {
                axis: None,
                nodes,
                err_estimate,
            } => Error::NonConvergence {
                axis: Some(tag),
                nodes,
                err_estimate,
            },
            other => other,
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;
