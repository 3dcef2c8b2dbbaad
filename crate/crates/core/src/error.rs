use thiserror::Error;

/// Errors raised by the spectral solvers, boundary searches and parameter maps.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument is outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Adaptive truncation reached its cap without the value settling.
    #[error(
        "no convergence for {context} at truncation cap {cap}: last iterates {previous} and {last}"
    )]
    Convergence {
        context: String,
        cap: usize,
        previous: f64,
        last: f64,
    },

    /// A threshold crossing was not found inside the search range.
    #[error("no threshold crossing for {context} in [{lo}, {hi}]")]
    NotFound { context: String, lo: f64, hi: f64 },

    /// The sampled gap was not monotone across the final bracket, or both
    /// degeneracy tests fired at once.
    #[error("ambiguous result for {context}; samples {samples:?}")]
    Ambiguity {
        context: String,
        samples: Vec<(f64, f64)>,
    },

    /// Classical motion exactly on the separatrix (E = U).
    #[error("energy lies on the separatrix (E = U); use the sech limit instead")]
    Separatrix,

    /// Parameters that make the requested quantity undefined.
    #[error("degenerate parameters: {0}")]
    Degenerate(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
