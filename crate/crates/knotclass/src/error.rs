use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("diagram does not embed in the sphere (Euler check failed)")]
    NonPlanar,
    #[error("more than one vertex node")]
    MultiVertex,
    #[error("diagram is not a knot (component count != 1 or a vertex is present)")]
    NotAKnot,
    #[error("not a valid transverse circle for this diagram")]
    InvalidCircle,
    #[error("tangle contains a closed component")]
    ClosedComponentInside,
    #[error("tangle is not recognized as rational")]
    NotRational,
    #[error("tangle fraction has an even denominator")]
    EvenDenominator,
    #[error("diagram has no vertex node")]
    NotAGraphDiagram,
    #[error("graph diagram is not reduced")]
    NotReducedInput,
    #[error("diagram does not classify as tunnel number one")]
    NotTunnelOne,
}

pub type Result<T> = std::result::Result<T, Error>;
