//! Weighted spectral calculus on transmuted line geometries.
//!
//! A structural pair (psi, omega) of a strictly increasing smooth scale and a
//! strictly positive smooth weight deforms the real line into an "aging"
//! medium. The transmutation operator
//! `(T f)(y) = omega(psi^-1(y)) f(psi^-1(y))` rectifies weighted signals into
//! ordinary L^2 profiles, and everything in this crate is that one unitary
//! map applied systematically:
//!
//! - [`geometry`]: admissible structural pairs with exact closed-form
//!   inverses, and the pointwise dilution factor 1/(omega^2 psi').
//! - [`grid`]: matched y/t/xi grids and weighted quadrature.
//! - [`transmutation`]: T, its inverse, the intertwined weighted derivative
//!   and the Schwartz-type seminorms.
//! - [`wft`]: the weighted Fourier transform F compose T as a discrete
//!   unitary, plus frequency multipliers.
//! - [`hermite`]: the weighted Hermite orthonormal basis and expansions.
//! - [`distributions`]: mollified weighted Dirac deltas, the bilinear
//!   pairing and sampling-law convergence studies.
//! - [`sobolev`]: spectral Sobolev norms, embedding constants and checks.
//! - [`solver`]: the fractional aging equation (D^alpha + I) u = f solved
//!   spectrally with a certified multiplier bound, Green's functions and
//!   decay-envelope sweeps.
//! - [`io`]: byte-stable CSV/JSON serialization for experiment drivers.
//!
//! Everything is pure and immutable after construction; grids and signals can
//! be shared freely across threads.

pub mod distributions;
pub mod error;
pub mod geometry;
pub mod grid;
pub mod hermite;
pub mod io;
pub mod sobolev;
pub mod solver;
pub mod transmutation;
pub mod wft;

pub use error::{Error, Result};
pub use geometry::{
    jacobian_factor, make_geometry, validate_geometry, GeometryPair, GeometrySpec,
    GeometryValidation, ScaleSpec, WeightSpec,
};
pub use grid::{weighted_inner, weighted_norm, Grid, WeightedSignal};
pub use hermite::{
    expand, hermite_function, reconstruct, weighted_hermite, ExpansionRecord, HermiteExpansion,
};
pub use distributions::{
    delta_convergence_study, min_resolvable_eps, mollified_delta, pair, standard_mollifier,
    DeltaStudyRow,
};
pub use sobolev::{
    check_embedding, embedding_constant, random_hs_sample, sobolev_norm, EmbeddingReport,
};
pub use solver::{
    aging_symbol_eval, apply_aging_operator, check_decay_envelope, envelope_sup, green_function,
    solve_aging, AgingSymbol, EnvelopeReport, EnvelopeRow, SolveReport, SolveSummary,
};
pub use transmutation::{
    euclidean_norm, inverse_transmute, seminorm, transmute, weighted_derivative, EuclideanSignal,
};
pub use wft::{apply_multiplier, iwft, spectral_l2_norm, wft, SpectralDensity};
