//! Closed-form solution of the one-dimensional Schrödinger equation for the
//! generalized symmetric Woods-Saxon (GSWS) potential.
//!
//! The crate is organised bottom-up:
//!
//! * [`model`]: potential definitions, unit conventions and the
//!   energy-dependent parameters shared by every solver.
//! * [`specfun`]: complex log-gamma, the Gauss hypergeometric function and
//!   the four connection coefficients `N1..N4`.
//! * `solutions` (internal): the hypergeometric solution basis of the left half-line
//!   and its derivative, used by the wavefunctions and the exact matching.
//! * [`scattering`], [`spectrum`], [`resonance`]: reflection/transmission,
//!   bound states and quasi-bound (Gamow) states.
//! * [`oracle`]: direct numerical integration, independent of `specfun`.
//!
//! Two matching strategies are available at `x = 0` (see [`Matching`]). The
//! default, [`Matching::Asymptotic`], glues the `z -> 1` asymptotic forms of
//! the half-line solutions and is valid for `a·L >> 1`; [`Matching::Exact`]
//! evaluates the full hypergeometric solutions at the junction.

// `!(x > 0.0)` style guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod model;
pub mod oracle;
pub mod resonance;
pub mod roots;
pub mod scattering;
mod solutions;
pub mod specfun;
pub mod spectrum;

pub use error::{Error, Result};
pub use model::{
    derive, derive_with, DerivedParams, Matching, Method, MwsParams, Parity, PotentialParams,
    Regime, ThetaBranch,
};

/// Complex double used throughout the crate.
pub type C64 = num_complex::Complex<f64>;
