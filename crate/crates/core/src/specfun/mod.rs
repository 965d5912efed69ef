//! Complex special functions needed by the closed-form solution.

mod connection;
mod gamma;
mod hypergeometric;

pub use connection::{connection_coefficients, ConnectionCoefficients};
pub use gamma::{gamma, is_pole, log_gamma};
pub use hypergeometric::{
    connection as hyp2f1_connection, gauss_sum, hyp2f1, hyp2f1_derivative_split, hyp2f1_split,
    series as hyp2f1_series, MAX_TERMS, SERIES_TOL, Z_SWITCH,
};

use crate::error::Result;
use crate::C64;

/// Log of `Π Γ(num) / Π Γ(den)`; `None` when a denominator argument sits on
/// a pole (the ratio is then exactly zero).
pub fn log_gamma_ratio(num: &[C64], den: &[C64]) -> Result<Option<C64>> {
    if den.iter().any(|&z| is_pole(z)) {
        return Ok(None);
    }
    let mut acc = C64::new(0.0, 0.0);
    for &z in num {
        acc += log_gamma(z)?;
    }
    for &z in den {
        acc -= log_gamma(z)?;
    }
    Ok(Some(acc))
}

/// `Π Γ(num) / Π Γ(den)` evaluated in the log domain and exponentiated once.
pub fn gamma_ratio(num: &[C64], den: &[C64]) -> Result<C64> {
    Ok(log_gamma_ratio(num, den)?
        .map(|lg| lg.exp())
        .unwrap_or(C64::new(0.0, 0.0)))
}
