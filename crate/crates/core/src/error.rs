use thiserror::Error;

use crate::exact::Rational;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("matrix is singular")]
    Singular,

    #[error("matrix is not unimodular (det = {0})")]
    NotUnimodular(String),

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("duplicate abscissa {0} in interpolation data")]
    DuplicateAbscissa(Rational),

    #[error("the zero polynomial has no isolated roots")]
    ZeroPolynomial,

    #[error("cannot parse {what} from {input:?}")]
    Parse { what: &'static str, input: String },

    #[error("invalid fan: {}", .0.join("; "))]
    InvalidFan(Vec<String>),

    #[error("polyhedron is unbounded")]
    Unbounded,

    #[error("polyhedron is degenerate: {0}")]
    Degenerate(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("interval ({lo}, {hi}) is not a chamber: {reason}")]
    ChamberViolation {
        lo: String,
        hi: String,
        reason: String,
    },

    #[error("{what} is not a polynomial of degree <= {bound} on the chamber")]
    DegreeBound { what: String, bound: usize },

    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

impl Error {
    /// Geometric failures (unbounded, empty or lower-dimensional polytopes,
    /// chamber problems) as opposed to malformed input.
    pub fn is_geometric(&self) -> bool {
        matches!(
            self,
            Error::Unbounded
                | Error::Degenerate(_)
                | Error::ChamberViolation { .. }
                | Error::DegreeBound { .. }
                | Error::Inconsistent(_)
        )
    }
}
