use thiserror::Error;

/// Errors produced by the engine.
///
/// Messages name the map or conversion that failed so that callers (and the
/// CLI) can report the equation context without a backtrace.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("symbol entry {value} at position {index} must be > 1 (angle pi/f undefined)")]
    InvalidSymbol { index: usize, value: f64 },

    #[error("component {value} at position {index} lies outside (0, 1]; the f-symbol would not be real")]
    NonRealSymbol { index: usize, value: f64 },

    #[error("degenerate symbol in {context}: factor {factor} vanishes")]
    DegenerateSymbol {
        context: &'static str,
        factor: &'static str,
    },

    #[error("singular transform {map}: factor {factor} vanishes{}", step_suffix(.step))]
    SingularTransform {
        map: String,
        factor: &'static str,
        step: Option<usize>,
    },

    #[error("honeycomb is infinite (4 - (m-2)(i-2) = {denominator} <= 0)")]
    InfiniteHoneycomb { denominator: f64 },

    #[error("no real solution: {0}")]
    NoRealSolution(String),

    #[error("signature {0} admits no real frame")]
    UnsupportedSignature(String),

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("no finite q up to {max_q}: X^q is never proportional to the identity")]
    NoFiniteQ { max_q: u32 },

    #[error("X^{q} = {lambda} * Id with even q and negative scalar has no real q-th root")]
    EvenQNegativeLambda { q: u32, lambda: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("io error: {0}")]
    Io(String),
}

fn step_suffix(step: &Option<usize>) -> String {
    match step {
        Some(s) => format!(" at step {s}"),
        None => String::new(),
    }
}

impl Error {
    /// Attach the word step index to a singular-transform error.
    pub fn at_step(self, index: usize) -> Self {
        match self {
            Error::SingularTransform { map, factor, .. } => Error::SingularTransform {
                map,
                factor,
                step: Some(index),
            },
            other => other,
        }
    }

    pub fn is_singular(&self) -> bool {
        matches!(self, Error::SingularTransform { .. })
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

/// Guarded division used by every rational map.
#[inline]
pub(crate) fn div(num: f64, den: f64, map: &str, factor: &'static str) -> Result<f64> {
    if den == 0.0 || !den.is_finite() {
        return Err(Error::SingularTransform {
            map: map.to_string(),
            factor,
            step: None,
        });
    }
    Ok(num / den)
}
