//! Invariants of stable 3-forms on oriented R^6 and the hyperplane
//! genericity / ampleness machinery built on top of them.
//!
//! The crate is organised around six layers:
//!
//! * [`scalar`] / [`linalg`] -- exact-rational and float arithmetic with a
//!   small dense matrix kernel shared by both backends;
//! * [`exterior`] -- sparse alternating forms with wedge, interior product,
//!   pullback, evaluation and top-degree duality;
//! * [`stable`] -- the twisted endomorphism `K_rho`, the quadratic invariant
//!   `Lambda`, volume normalisation, the para-complex eigenspaces `E+/E-`,
//!   type projections and the closed-form eigenspace derivatives;
//! * [`grass`] -- subspaces with canonical representatives, hyperplane
//!   classification and configuration genericity;
//! * [`ample`] -- slicing frames, the nested membership sets over a
//!   hyperplane, convex-hull and path-connectivity certificates, and the
//!   stratum rank certificates;
//! * [`verify`] -- named, seeded verification suites with machine-readable
//!   reports, exposed through the `stableforms` CLI.

pub mod ample;
pub mod cli;
pub mod exterior;
pub mod grass;
pub mod linalg;
pub mod report;
pub mod sample;
pub mod scalar;
pub mod stable;
pub mod tol;
pub mod verify;

pub use exterior::{contract, eval, pullback, top_dual, wedge, AltForm, LinearMap, Vector};
pub use scalar::{Coeff, Rat};
