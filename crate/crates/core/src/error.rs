use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A Verlinde sum did not round cleanly to a non-negative integer.
    #[error("fusion coefficient N[{a}][{b}][{c}] = {value} is not a non-negative integer (residue {residue:.3e})")]
    NonIntegral {
        a: usize,
        b: usize,
        c: usize,
        value: f64,
        residue: f64,
    },

    /// A singular value fell into the band where the rank decision is not trustworthy.
    #[error("ambiguous rank decision: singular value {value:.3e} lies in [1e-10, 1e-8]")]
    Conditioning { value: f64 },

    /// The diagonal of an invariant matches no A-D-E diagram (or more than one).
    #[error("labeling error: {0}")]
    Labeling(String),

    /// The block factorization search ran out of budget.
    #[error("type I decision undecided after {0} search nodes")]
    Undecided(usize),

    /// Two independent computations of a classification quantity disagree.
    #[error("classification inconsistency: {0}")]
    Classification(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
