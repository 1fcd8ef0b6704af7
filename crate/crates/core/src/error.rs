use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The target function does not change sign over the bracket.
    #[error("no sign change on [{lo}, {hi}]: f(lo)={f_lo}, f(hi)={f_hi}")]
    Bracket {
        lo: f64,
        hi: f64,
        f_lo: f64,
        f_hi: f64,
    },

    /// The target function returned a non-finite value during a search.
    #[error("non-finite function value at x={x}")]
    Evaluation { x: f64 },

    /// Quadrature hit its panel cap before meeting the tolerance.
    #[error(
        "quadrature did not converge: estimate {estimate} with error {abs_error_estimate} after {subdivisions} panels"
    )]
    Accuracy {
        estimate: f64,
        abs_error_estimate: f64,
        subdivisions: usize,
    },

    /// A lookup-table prior was queried outside its tabulated range.
    #[error("sigma={sigma} outside table range [{lo}, {hi}]")]
    Range { sigma: f64, lo: f64, hi: f64 },

    #[error("unsupported scheme: {0}")]
    UnsupportedScheme(String),

    /// Two routes that must agree did not.
    #[error("internal consistency error: {0}")]
    Consistency(String),

    /// The requested Type I error cannot be reached under the scheme.
    #[error(
        "no sigma achieves alpha={alpha}: achievable Type I error range is [{achievable_lo:.6}, {achievable_hi:.6}]"
    )]
    NoSolution {
        alpha: f64,
        achievable_lo: f64,
        achievable_hi: f64,
    },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
