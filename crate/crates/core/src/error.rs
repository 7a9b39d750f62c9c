use thiserror::Error;

/// Errors raised by the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("gamma function pole at {re}{im:+}i")]
    Pole { re: f64, im: f64 },

    #[error("{what}: series did not converge within {terms} terms")]
    NonConvergence { what: &'static str, terms: usize },

    #[error("hypergeometric connection formula degenerate: c-a-b = {re}{im:+}i is within 1e-8 of an integer")]
    Degenerate { re: f64, im: f64 },

    #[error("3F2(1) series diverges: Re(b1+b2-a1-a2-a3) = {abscissa} <= 0")]
    Divergent { abscissa: f64 },

    #[error("argument out of domain: {0}")]
    Domain(String),

    #[error("lambda = {lambda} is a band endpoint of the continuous spectrum")]
    Endpoint { lambda: f64 },

    #[error("spectral point is in region {found}, expected {expected}")]
    Region { expected: &'static str, found: String },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("matrix recurrence cannot advance at n = {n}: |det A_n| = {det:e}")]
    SingularRecurrence { n: usize, det: f64 },

    #[error("spectral fields live on different grids")]
    GridMismatch,

    #[error("Wilson normalization radicand {0:e} is not positive")]
    InvalidNormalization(f64),

    #[error("discrete eigenvalue lambda_{n} is degenerate: delta = {delta:e}")]
    DegenerateDiscrete { n: usize, delta: f64 },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn pole<T: num_traits::ToPrimitive>(re: T, im: T) -> Error {
    Error::Pole {
        re: re.to_f64().unwrap_or(f64::NAN),
        im: im.to_f64().unwrap_or(f64::NAN),
    }
}
