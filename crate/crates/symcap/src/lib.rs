//! Exact computation of ECH capacities of four-dimensional toric domains,
//! together with the combinatorial and analytic invariants that control
//! their large-index behavior.
//!
//! The crate is organized around a few cross-checking routes to the same
//! numbers:
//!
//! - [`capacities`] computes the capacity sequence `c_k` of balls, ellipsoids,
//!   polydisks, toric domains and disjoint unions by closed forms, by a
//!   knapsack over the ball weights of a concave domain, by branch-and-bound
//!   over convex/concave lattice paths, and by a ball-complement splitting for
//!   convex domains. All routes agree exactly on overlapping inputs, and the
//!   test suite insists on it.
//! - [`weights`] produces the weight expansion of a concave toric domain by
//!   the recursive inscribed-triangle decomposition.
//! - [`ruelle`] evaluates the Ruelle invariant of a toric domain, both in
//!   closed form and by quadrature of a rotation-density line integral.
//! - [`asymptotics`] studies the error term `e_k = c_k - 2*sqrt(k*vol)` and
//!   its convergence toward `-Ru/2`, and derives embedding obstructions.
//! - [`bounds`] packs a 4-dimensional domain with dyadic cubes through a
//!   membership oracle and turns the packing into certified lower bounds
//!   for `e_k`.
//! - [`ech`] evaluates the ECH index and its action-weighted approximation
//!   on user-supplied generator data.
//!
//! All plane geometry is exact rational arithmetic; floating point appears
//! only in quadrature and in asymptotic diagnostics. See the `examples/`
//! directory for one runnable example per capability, and the `symcap`
//! binary for the command-line surface.

pub mod asymptotics;
pub mod bounds;
pub mod capacities;
pub mod cli;
pub mod ech;
pub mod geom;
pub mod paths;
pub mod rational;
pub mod ruelle;
pub mod weights;

pub use capacities::{ck_ball, ck_polydisk, CapacityResult, Method};
pub use geom::{Domain, Point2, Polyline, ProfileKind, ToricProfile};
pub use paths::{LatticePath, PathKind};
pub use rational::Rational;
pub use weights::WeightExpansion;

use std::fmt;

/// Crate-wide error type.
#[derive(Clone, Debug, PartialEq)]
pub enum Error {
    /// A polyline needs at least two vertices, all consecutive ones distinct.
    InvalidPolyline(&'static str),
    /// A toric profile violated its boundary invariants.
    InvalidProfile(&'static str),
    /// A lattice path violated its staircase/graph invariants.
    InvalidPath(&'static str),
    /// An operation got a profile of the wrong kind.
    KindMismatch { expected: geom::ProfileKind },
    /// The requested method cannot evaluate the given domain.
    MethodMismatch(&'static str),
    /// A matrix that must lie in SL2(Z) does not.
    NotUnimodular,
    /// `split` was called with a value that is not the inscribed size.
    SplitMismatch,
    /// Failed to parse a rational or a domain specification.
    Parse(String),
    /// A tangent line degenerated (zero or nonnegative slope) at a node.
    SlopeDegenerate { t: f64 },
    /// Generator data has inconsistent dimensions or an invalid orbit.
    InvalidGenerator(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidPolyline(msg) => write!(f, "invalid polyline: {msg}"),
            Error::InvalidProfile(msg) => write!(f, "invalid toric profile: {msg}"),
            Error::InvalidPath(msg) => write!(f, "invalid lattice path: {msg}"),
            Error::KindMismatch { expected } => {
                write!(f, "profile kind mismatch: operation requires {expected:?}")
            }
            Error::MethodMismatch(msg) => write!(f, "method/domain mismatch: {msg}"),
            Error::NotUnimodular => write!(f, "matrix is not in SL2(Z)"),
            Error::SplitMismatch => write!(f, "split called with a non-inscribed triangle size"),
            Error::Parse(msg) => write!(f, "parse error: {msg}"),
            Error::SlopeDegenerate { t } => {
                write!(f, "tangent slope degenerate at parameter t = {t}")
            }
            Error::InvalidGenerator(msg) => write!(f, "invalid ECH generator: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
