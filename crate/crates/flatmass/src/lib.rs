//! Spherically symmetric asymptotically hyperbolic geometry with certified
//! flat-distance bounds.
//!
//! A metric in this class is stored canonically as its Hawking-mass profile
//! m_H(r) over the area-radius coordinate, on which the class constraints
//! become simple conditions: m_H nondecreasing (scalar curvature ≥ −m(m−1)),
//! 0 ≤ 2·m_H(r) < sinh^{m−2}r cosh²r strictly inside (no interior minimal
//! hypersurfaces), and either m_H(r_min) = 0 (no boundary) or
//! 2·m_H(r_min) = sinh^{m−2}r_min cosh²r_min (minimal boundary).
//!
//! On top of that representation the crate provides
//!
//! - [`numerics`]: adaptive Simpson quadrature (including the inverse
//!   square-root endpoint singularity at horizons) and bracketed root finding;
//! - [`geometry`]: dimension constants, chart formulas (geodesic, graph and
//!   height coordinates), Hawking-mass algebra and profile construction;
//! - [`embedding`]: the graphical isometric embedding z = F(r) into
//!   ℍ^m × ℝ, arclengths, tubular windows and two-sided slope bounds;
//! - [`validators`]: class-membership certification and the rigidity gap;
//! - [`families`]: hyperbolic space, anti-de Sitter–Schwarzschild metrics,
//!   gravity wells, and mass sweeps;
//! - [`bound`]: the region-by-region filling construction producing an
//!   explicit upper bound for the intrinsic flat distance between tubular
//!   neighborhoods in the metric and in hyperbolic space, together with the
//!   δ(ε, D, A₀, m) budget solver;
//! - [`cli`]: the `flatmass` command-line front end (JSON metric specs,
//!   JSON bound reports, CSV mass sweeps).
//!
//! Every public operation is a pure function of immutable inputs and is safe
//! to call concurrently.

// Guards of the form `!(x > 0.0)` reject NaN along with the out-of-range
// values; `x <= 0.0` would wave NaN through.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
// Operation signatures mirror the geometric data they consume (ε, D, α₀,
// dimension, radii); bundling them into structs would only rename the same
// arguments.
#![allow(clippy::too_many_arguments)]

pub mod bound;
pub mod cli;
pub mod embedding;
pub mod families;
pub mod geometry;
pub mod interp;
pub mod numerics;
pub mod validators;

use thiserror::Error;

/// Errors produced across the crate.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Adaptive refinement hit `max_depth` before meeting the tolerance.
    /// Carries the last (unconverged) estimate.
    #[error("quadrature refinement failed (max depth exceeded); last estimate {last_estimate}")]
    RefinementFailure { last_estimate: f64 },

    /// The u-substituted integrand is still unbounded near the endpoint.
    #[error("non-integrable singularity at left endpoint r = {at}")]
    NonIntegrableSingularity { at: f64 },

    /// Root bracket does not satisfy g(lo) ≤ 0 ≤ g(hi).
    #[error("invalid root bracket: g({lo}) = {g_lo}, g({hi}) = {g_hi}")]
    InvalidBracket {
        lo: f64,
        hi: f64,
        g_lo: f64,
        g_hi: f64,
    },

    /// Manifold dimension below 3.
    #[error("manifold dimension must be at least 3, got {m}")]
    DimensionTooSmall { m: u32 },

    /// Generic domain violation (negative area, negative mass, radius out of
    /// range, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// 2·m_H(r) ≥ sinh^{m−2}r cosh²r: the slope of the graph embedding is
    /// infinite, i.e. the sphere at r is a horizon.
    #[error("horizon: 2 m_H = {two_mh} reaches the envelope {envelope} at r = {r}")]
    Horizon { r: f64, two_mh: f64, envelope: f64 },

    /// A horizon strictly inside the profile domain.
    #[error("horizon in the interior at r = {r}")]
    HorizonInInterior { r: f64 },

    /// f' ≤ 0 at an interior sample: a closed interior minimal hypersurface.
    #[error("minimal-surface violation: f'({s}) = {fprime} at an interior sample")]
    MinimalSurfaceViolation { s: f64, fprime: f64 },

    /// Profile failed class-membership validation.
    #[error("profile is not a class member: {0}")]
    ClassViolation(String),

    /// r_max too small for the requested construction.
    #[error("truncation radius too small: {0}")]
    Truncation(String),

    /// Family constructor parameters produce an invalid profile.
    #[error("construction error: {0}")]
    Construction(String),

    /// 2δ ≥ envelope(r): the slope-cap factor Q(δ, r) is undefined.
    #[error("cap violation: 2δ = {two_delta} ≥ envelope({r}) = {envelope}")]
    CapViolation {
        r: f64,
        two_delta: f64,
        envelope: f64,
    },

    /// Metric spec file failed to parse or is inconsistent.
    #[error("spec error: {0}")]
    Spec(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
