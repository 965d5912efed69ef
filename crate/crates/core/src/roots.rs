//! Scalar root finders shared by the spectral searches.

use crate::error::{Error, Result};
use crate::C64;

/// Bisection on a bracketing interval; `f(lo)` and `f(hi)` must differ in sign.
pub fn bisect<F>(mut f: F, mut lo: f64, mut hi: f64, xtol: f64) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    let mut f_lo = f(lo)?;
    let f_hi = f(hi)?;
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if f_lo.signum() == f_hi.signum() {
        return Err(Error::RootNotFound(format!("[{lo}, {hi}] does not bracket a root")));
    }
    // 200 halvings exhaust double precision on any finite interval
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= xtol || mid <= lo || mid >= hi {
            return Ok(mid);
        }
        let f_mid = f(mid)?;
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Golden-section search for a local maximum of `f` on `[lo, hi]`.
pub fn golden_max<F>(mut f: F, mut lo: f64, mut hi: f64, xtol: f64) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    let r = 0.5 * (5f64.sqrt() - 1.0);
    let mut x1 = hi - r * (hi - lo);
    let mut x2 = lo + r * (hi - lo);
    let mut f1 = f(x1)?;
    let mut f2 = f(x2)?;
    while hi - lo > xtol {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + r * (hi - lo);
            f2 = f(x2)?;
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - r * (hi - lo);
            f1 = f(x1)?;
        }
    }
    Ok(0.5 * (lo + hi))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MullerRoot {
    pub root: C64,
    pub residual: C64,
    pub iterations: usize,
}

#[derive(Debug, Clone, Copy)]
pub struct MullerOptions {
    /// Required reduction of |f| relative to its value at the seed.
    pub rel_residual: f64,
    /// Absolute step size below which the iteration has settled.
    pub step_tol: f64,
    pub max_iter: usize,
}

impl Default for MullerOptions {
    fn default() -> Self {
        Self {
            rel_residual: 1e-10,
            step_tol: 1e-8,
            max_iter: 200,
        }
    }
}

/// Muller's method from three starting points.
pub fn muller<F>(mut f: F, seeds: [C64; 3], opts: MullerOptions) -> Result<MullerRoot>
where
    F: FnMut(C64) -> Result<C64>,
{
    let [mut x0, mut x1, mut x2] = seeds;
    let mut f0 = f(x0)?;
    let mut f1 = f(x1)?;
    let mut f2 = f(x2)?;
    let scale = f0.norm().max(f1.norm()).max(f2.norm());
    if scale == 0.0 {
        return Ok(MullerRoot {
            root: x2,
            residual: f2,
            iterations: 0,
        });
    }

    for it in 1..=opts.max_iter {
        let h1 = x1 - x0;
        let h2 = x2 - x1;
        let d1 = (f1 - f0) / h1;
        let d2 = (f2 - f1) / h2;
        let a = (d2 - d1) / (h2 + h1);
        let b = a * h2 + d2;
        let disc = (b * b - 4.0 * a * f2).sqrt();
        let den = if (b + disc).norm() >= (b - disc).norm() {
            b + disc
        } else {
            b - disc
        };
        let step = if den.norm() == 0.0 {
            // flat model: fall back to a small secant-sized nudge
            h2 * 0.5
        } else {
            -2.0 * f2 / den
        };
        let x3 = x2 + step;
        let f3 = f(x3)?;
        if !(f3.re.is_finite() && f3.im.is_finite()) {
            return Err(Error::RootNotFound(format!("non-finite residual at {x3}")));
        }
        x0 = x1;
        f0 = f1;
        x1 = x2;
        f1 = f2;
        x2 = x3;
        f2 = f3;
        let small = f2.norm() <= opts.rel_residual * scale;
        if (small && step.norm() <= opts.step_tol) || f2.norm() == 0.0 {
            return Ok(MullerRoot {
                root: x2,
                residual: f2,
                iterations: it,
            });
        }
        if step.norm() == 0.0 {
            break;
        }
    }
    Err(Error::RootNotFound(format!(
        "Muller iteration did not converge from {} after {} steps",
        seeds[2], opts.max_iter
    )))
}
