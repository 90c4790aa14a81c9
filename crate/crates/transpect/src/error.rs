//! Error type shared by every module of the crate.

use thiserror::Error;

/// Errors produced by geometry validation, grid construction and the
/// spectral operations built on top of them.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The scale function fails to be strictly increasing (hypothesis H1).
    #[error("scale function is not strictly increasing: {0}")]
    NonMonotoneScale(String),

    /// The weight fails to be strictly positive on the domain (hypothesis H2).
    #[error("weight is not strictly positive on the domain: {0}")]
    NonPositiveWeight(String),

    /// The requested geometry has an empty domain.
    #[error("geometry domain is empty")]
    DomainEmpty,

    /// Grid sizes must be powers of two with at least 8 nodes, and the
    /// half-width must be a positive finite number.
    #[error("invalid grid size: {0}")]
    InvalidGridSize(String),

    /// Pulling the transmuted nodes back to physical coordinates left the
    /// representable range (or the geometry domain).
    #[error("grid overflows the geometry domain: {0}")]
    DomainOverflow(String),

    /// Two signals that must share a grid do not.
    #[error("operands live on different grids")]
    GridMismatch,

    /// A sample value is not finite.
    #[error("non-finite sample at index {0}")]
    NonFiniteSample(usize),

    /// Expansion order outside the resolvable range for the grid.
    #[error("mode count {requested} outside the valid range [1, {max}]")]
    TooManyModes { requested: usize, max: usize },

    /// A point lies outside the geometry domain.
    #[error("point {0} lies outside the geometry domain")]
    OutOfDomain(f64),

    /// A spectral symbol evaluated to a non-finite value at a grid frequency.
    #[error("spectral symbol is not finite at xi = {0}")]
    SymbolSingular(f64),

    /// Sobolev embedding requires regularity s > 1/2.
    #[error("embedding requires s > 1/2, got s = {0}")]
    EmbeddingThreshold(f64),

    /// Fractional order of the aging operator must lie strictly in (0, 2).
    #[error("fractional order must lie in (0, 2), got {0}")]
    OrderOutOfRange(f64),

    /// Decay-envelope checks are only meaningful for orders above one.
    #[error("decay envelope check requires alpha > 1, got {0}")]
    OrderTooLowForEnvelope(f64),

    /// Mollifier width too small for the grid to resolve near the centre.
    #[error("mollifier width {eps} unresolved by the grid (needs at least {min})")]
    UnresolvedMollifier { eps: f64, min: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
