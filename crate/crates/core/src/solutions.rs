//! The two hypergeometric solutions on the left half-line `x <= 0`.
//!
//! With `y = a(x+L)`, `z = 1/(1+e^{-y})`:
//!
//! ```text
//! u1 = z^μ (1-z)^ν ₂F₁(a1, b1; c1; z)            ~ e^{+μ y}  as x -> -∞
//! u2 = z^{-μ} (1-z)^ν ₂F₁(1+a1-c1, 1+b1-c1; 2-c1; z) ~ e^{-μ y}
//! ```
//!
//! The right half-line solutions are the mirror images `u(-x)`.

use crate::error::{Error, Result};
use crate::model::{logistic, softplus, DerivedParams, PotentialParams};
use crate::specfun::hyp2f1_split;
use crate::C64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Basis {
    /// Regular at `z = 0` with exponent `+μ`.
    First,
    /// Exponent `-μ`.
    Second,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Value {
    pub value: C64,
    pub derivative: C64,
}

/// Value and x-derivative of a left solution at `x <= 0`.
pub(crate) fn left(params: &PotentialParams, dp: &DerivedParams, basis: Basis, x: f64) -> Result<Value> {
    if x > 0.0 {
        return Err(Error::OutOfRange { x, limit: 0.0 });
    }
    let y = params.a * (x + params.l);
    let z = logistic(y);
    let w = logistic(-y);
    let ln_z = -softplus(-y);
    let ln_w = -softplus(y);

    let (m, fa, fb, fc) = match basis {
        Basis::First => (dp.mu, dp.a1, dp.b1, dp.c1),
        Basis::Second => (
            -dp.mu,
            1.0 + dp.a1 - dp.c1,
            1.0 + dp.b1 - dp.c1,
            2.0 - dp.c1,
        ),
    };
    let pref = (m * ln_z + dp.nu * ln_w).exp();
    let f = hyp2f1_split(fa, fb, fc, z, w)?;
    let df = if z == 0.0 {
        C64::new(0.0, 0.0)
    } else {
        fa * fb / fc * hyp2f1_split(fa + 1.0, fb + 1.0, fc + 1.0, z, w)?
    };
    let value = pref * f;
    let derivative = pref * params.a * ((m * w - dp.nu * z) * f + z * w * df);
    Ok(Value { value, derivative })
}
