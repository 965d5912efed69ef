//! Principal-branch complex log-gamma.
//!
//! The argument is shifted upward with the recurrence
//! `lnΓ(z) = lnΓ(z+n) - Σ ln(z+j)` until `Re(z+n) >= SHIFT_TARGET`, then the
//! Stirling series is summed. Each logarithm in the shift sum is principal,
//! which keeps the result on the principal branch (continuous in the plane
//! cut along the negative real axis).

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::C64;

const SHIFT_TARGET: f64 = 12.0;

/// ½·ln(2π)
const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;

/// B_{2j} / (2j(2j-1)) for j = 1..=10.
const STIRLING: [f64; 10] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
    43_867.0 / 244_188.0,
    -174_611.0 / 125_400.0,
];

pub fn is_pole(z: C64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round()
}

pub fn log_gamma(z: C64) -> Result<C64> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::Pole(z));
    }
    if is_pole(z) {
        return Err(Error::Pole(z));
    }

    let mut w = z;
    let mut shift = C64::new(0.0, 0.0);
    if w.re < SHIFT_TARGET && (w.im.abs() < SHIFT_TARGET || w.re < 0.0) {
        let n = (SHIFT_TARGET - w.re).ceil() as usize;
        for _ in 0..n {
            shift += principal_ln(w);
            w += 1.0;
        }
    }
    Ok(stirling(w) - shift)
}

/// lnΓ(z) for |z| large with Re z > 0 (or |Im z| large).
fn stirling(z: C64) -> C64 {
    let ln_z = z.ln();
    let inv = z.inv();
    let inv2 = inv * inv;
    let mut corr = C64::new(0.0, 0.0);
    let mut pow = inv;
    for c in STIRLING {
        corr += pow * c;
        pow *= inv2;
    }
    (z - 0.5) * ln_z - z + HALF_LN_2PI + corr
}

/// Principal logarithm; on the negative real axis the upper lip (+iπ) is used.
fn principal_ln(z: C64) -> C64 {
    if z.im == 0.0 && z.re < 0.0 {
        C64::new((-z.re).ln(), PI)
    } else {
        z.ln()
    }
}

/// Γ(z) where it is representable.
pub fn gamma(z: C64) -> Result<C64> {
    Ok(log_gamma(z)?.exp())
}
