use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter `{field}` = {value}: {reason}")]
    InvalidParameter {
        field: &'static str,
        value: f64,
        reason: &'static str,
    },

    /// B = 0 has no pseudo-yield surface; the pure power-law limit is not modeled.
    #[error("degenerate fluid: Bingham number must be positive to locate a yield surface")]
    DegenerateFluid,

    #[error("{what} = {value} is outside the admissible domain {domain}")]
    Domain {
        what: &'static str,
        value: f64,
        domain: &'static str,
    },

    #[error("{what} is singular at r = {r}")]
    Singular { what: &'static str, r: f64 },

    /// First-order quantities diverge near the axis; the small-r series must be used there.
    #[error("r = {r} is inside the near-axis cutoff r_min = {r_min}; use the small-r series")]
    NearAxis { r: f64, r_min: f64 },

    #[error("root not bracketed on [{lo}, {hi}]: f(lo) = {f_lo}, f(hi) = {f_hi}")]
    NoBracket {
        lo: f64,
        hi: f64,
        f_lo: f64,
        f_hi: f64,
    },

    #[error("root finder did not converge after {iterations} iterations (best iterate {best})")]
    RootNotConverged { best: f64, iterations: usize },

    #[error(
        "quadrature on [{a}, {b}] did not converge: estimate {estimate} with error {error} \
         after {subdivisions} subdivisions"
    )]
    QuadratureNotConverged {
        a: f64,
        b: f64,
        estimate: f64,
        error: f64,
        subdivisions: usize,
    },

    #[error("non-finite value {value} while evaluating {what}")]
    NonFinite { what: &'static str, value: f64 },

    #[error("solver failed at B = {bingham}, n = {index}, r = {r:?}: {source}")]
    AtPoint {
        bingham: f64,
        index: f64,
        r: Option<f64>,
        #[source]
        source: Box<Error>,
    },

    #[error("unknown figure id `{0}` (expected fig2, fig3, fig4a, fig4b, fig5 or fig6)")]
    UnknownFigure(String),

    #[error("unsupported output format: {0}")]
    UnsupportedFormat(&'static str),

    #[error("invalid sweep: {0}")]
    InvalidSweep(&'static str),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("json error on {path}: {source}")]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },
}

impl Error {
    /// Parameter-level errors, as opposed to numerical failures.
    pub fn is_parameter_error(&self) -> bool {
        match self {
            Error::InvalidParameter { .. }
            | Error::DegenerateFluid
            | Error::Domain { .. }
            | Error::UnknownFigure(_)
            | Error::UnsupportedFormat(_)
            | Error::InvalidSweep(_) => true,
            Error::AtPoint { source, .. } => source.is_parameter_error(),
            _ => false,
        }
    }

    pub(crate) fn at(self, bingham: f64, index: f64, r: Option<f64>) -> Error {
        match self {
            e @ Error::AtPoint { .. } => e,
            e => Error::AtPoint {
                bingham,
                index,
                r,
                source: Box::new(e),
            },
        }
    }
}
