//! Numerical tolerances used across the float backend, each pinned once.
//!
//! The exact backend ignores all of these (rank and equality decisions are
//! literal there). Every float-side threshold in the crate routes through a
//! constant below rather than an inline magic number.

/// Relative singular/pivot cutoff for rank decisions on 6x6 float matrices.
///
/// The twisted endomorphism squares to a multiple of the identity, so its
/// eigen-projections have singular value gaps of order `2 * vol`; a relative
/// cutoff of 1e-9 sits many orders below that for the conditioned samplers
/// used in the suites.
pub const RANK_REL: f64 = 1e-9;

/// Maximum principal angle below which two float subspaces count as equal.
pub const SUBSPACE_EQ: f64 = 1e-8;

/// Step used by forward-difference checks of the eigenspace derivative.
pub const FD_STEP: f64 = 1e-5;

/// Relative deviation allowed between a forward difference at step `h` and
/// the closed-form derivative: `10 * h`.
pub const FD_REL_FACTOR: f64 = 10.0;

/// Least-squares slope threshold certifying first-order convergence of the
/// forward-difference ladder (1.0 minus estimator slack).
pub const FD_ORDER_MIN: f64 = 0.95;

/// Step for central-difference cross-checks of stratum Jacobians.
pub const JAC_FD_STEP: f64 = 1e-5;

/// Relative agreement required between analytic and central-difference
/// stratum Jacobians.
pub const JAC_FD_REL: f64 = 1e-6;

/// Relative singular-value cutoff when ranking stratum Jacobians.
pub const JAC_RANK_REL: f64 = 1e-6;

/// Residual below which a convex-hull certificate counts as exact.
pub const HULL_RESIDUAL: f64 = 1e-9;

/// Most negative weight tolerated in a convex combination.
pub const WEIGHT_FLOOR: f64 = -1e-12;

/// Infinity-norm residual below which a root-finding hit counts as lying on
/// a stratum.
pub const ROOT_RESIDUAL: f64 = 1e-10;

/// Principal-angle tolerance when counting Monte-Carlo stratum hits.
pub const STRATUM_HIT: f64 = 1e-8;

/// Lower bound imposed on the quadratic-invariant coefficient when sampling
/// membership sets in the float backend.
///
/// Membership sets are open; sampling keeps a safety margin away from the
/// boundary so that downstream eigenspace extraction stays well conditioned.
/// The margin scales like the fourth power of the sampled form's size since
/// the invariant is quartic.
pub const MEMBER_MARGIN: f64 = 1e-6;

/// Default epsilon handed to the CLI when none is given.
pub const DEFAULT_EPS: f64 = 1e-9;
