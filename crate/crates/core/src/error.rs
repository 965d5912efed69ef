use thiserror::Error;

use crate::C64;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("energy {energy} outside the admissible set of the {regime} regime")]
    Domain { energy: C64, regime: &'static str },

    #[error("log-gamma pole at z = {0}")]
    Pole(C64),

    #[error("hypergeometric series did not converge within {terms} terms (a={a}, b={b}, c={c}, z={z})")]
    NonConvergence {
        a: C64,
        b: C64,
        c: C64,
        z: f64,
        terms: usize,
    },

    #[error("degenerate connection: c-a-b = {0} is an integer")]
    DegenerateConnection(C64),

    #[error("hypergeometric argument z = {0} outside [0, 1)")]
    Argument(f64),

    #[error("no surface barrier: requires W0 > V0 and W0 > 0 (V0={v0}, W0={w0})")]
    NoBarrier { v0: f64, w0: f64 },

    #[error("residual expected to be real but has imaginary part {imag:e} (scale {scale:e})")]
    NotReal { imag: f64, scale: f64 },

    #[error("x = {x} fm outside the evaluation window |x| <= {limit} fm")]
    OutOfRange { x: f64, limit: f64 },

    #[error("integration grid: {0}")]
    Grid(String),

    #[error("ill-conditioned plane-wave decomposition: {0}")]
    IllConditioned(String),

    #[error("root search failed: {0}")]
    RootNotFound(String),
}

pub type Result<T> = std::result::Result<T, Error>;
