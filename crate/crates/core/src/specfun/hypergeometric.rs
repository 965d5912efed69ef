//! Gauss hypergeometric function ₂F₁(a, b; c; z) for complex parameters and
//! real `z ∈ [0, 1)`.
//!
//! For `z <= Z_SWITCH` the defining power series is summed directly. Above
//! the switch the `z -> 1 - z` connection formula is used, with both
//! sub-series evaluated at `1 - z <= 1/2`.

use super::{gamma_ratio, log_gamma};
use crate::error::{Error, Result};
use crate::C64;

pub const Z_SWITCH: f64 = 0.5;
pub const SERIES_TOL: f64 = 1e-14;
pub const MAX_TERMS: usize = 100_000;

/// Distance from an integer below which `c - a - b` is treated as degenerate.
const DEGENERATE_TOL: f64 = 1e-9;

pub fn hyp2f1(a: C64, b: C64, c: C64, z: f64) -> Result<C64> {
    hyp2f1_split(a, b, c, z, 1.0 - z)
}

/// ₂F₁ with `1 - z` supplied separately, so callers that know `1 - z`
/// to full relative precision (e.g. from a logistic map) do not lose it.
pub fn hyp2f1_split(a: C64, b: C64, c: C64, z: f64, one_minus_z: f64) -> Result<C64> {
    if !(0.0..1.0).contains(&z) || !(one_minus_z > 0.0) {
        return Err(Error::Argument(z));
    }
    if super::gamma::is_pole(c) {
        return Err(Error::Pole(c));
    }
    if z == 0.0 {
        return Ok(C64::new(1.0, 0.0));
    }
    if z <= Z_SWITCH {
        series(a, b, c, z)
    } else {
        connection(a, b, c, one_minus_z)
    }
}

/// Direct power series, valid (and convergent) for |z| < 1.
pub fn series(a: C64, b: C64, c: C64, z: f64) -> Result<C64> {
    let one = C64::new(1.0, 0.0);
    let mut term = one;
    let mut sum = one;
    for n in 0..MAX_TERMS {
        let nf = n as f64;
        let ratio = (a + nf) * (b + nf) / ((c + nf) * (nf + 1.0)) * z;
        term *= ratio;
        sum += term;
        if term.norm() == 0.0 {
            return Ok(sum);
        }
        // terms are monotonically decreasing once the ratio drops below one
        if term.norm() <= SERIES_TOL * sum.norm() && ratio.norm() < 1.0 {
            return Ok(sum);
        }
    }
    Err(Error::NonConvergence {
        a,
        b,
        c,
        z,
        terms: MAX_TERMS,
    })
}

/// `z -> 1 - z` connection formula (`w = 1 - z`).
pub fn connection(a: C64, b: C64, c: C64, w: f64) -> Result<C64> {
    let s = c - a - b;
    if s.im.abs() < DEGENERATE_TOL && (s.re - s.re.round()).abs() < DEGENERATE_TOL {
        return Err(Error::DegenerateConnection(s));
    }
    let first = gamma_ratio(&[c, s], &[c - a, c - b])?;
    let second = gamma_ratio(&[c, -s], &[a, b])?;

    let mut value = C64::new(0.0, 0.0);
    if first != C64::new(0.0, 0.0) {
        value += first * series(a, b, 1.0 - s, w)?;
    }
    if second != C64::new(0.0, 0.0) {
        let power = (s * w.ln()).exp();
        value += second * power * series(c - a, c - b, s + 1.0, w)?;
    }
    Ok(value)
}

/// d/dz ₂F₁(a, b; c; z) = (ab/c)·₂F₁(a+1, b+1; c+1; z).
pub fn hyp2f1_derivative_split(a: C64, b: C64, c: C64, z: f64, one_minus_z: f64) -> Result<C64> {
    Ok(a * b / c * hyp2f1_split(a + 1.0, b + 1.0, c + 1.0, z, one_minus_z)?)
}

/// Gauss's sum ₂F₁(a, b; c; 1) for Re(c-a-b) > 0, via log-gamma.
pub fn gauss_sum(a: C64, b: C64, c: C64) -> Result<C64> {
    let lg = log_gamma(c)? + log_gamma(c - a - b)? - log_gamma(c - a)? - log_gamma(c - b)?;
    Ok(lg.exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn rel(a: C64, b: C64) -> f64 {
        (a - b).norm() / b.norm().max(1e-300)
    }

    #[test]
    fn value_at_origin_is_one() {
        let v = hyp2f1(c(0.3, 2.0), c(-1.2, 0.7), c(1.5, -3.0), 0.0).unwrap();
        assert_eq!(v, c(1.0, 0.0));
    }

    #[test]
    fn logarithm_closed_form() {
        // ₂F₁(1,1;2;z) = -ln(1-z)/z
        for z in [0.1, 0.3, 0.5, 0.7, 0.95, 0.999] {
            let v = hyp2f1(c(1.0, 0.0), c(1.0, 0.0), c(2.0, 0.0), z);
            let expected = -(1.0f64 - z).ln() / z;
            match v {
                Ok(v) => assert_relative_eq!(v.re, expected, max_relative = 1e-13),
                // c - a - b = 0 is the excluded degenerate case above the switch
                Err(Error::DegenerateConnection(_)) => assert!(z > Z_SWITCH),
                Err(e) => panic!("{e}"),
            }
        }
        let v = hyp2f1(c(1.0, 0.0), c(1.0, 0.0), c(2.0, 0.0), 0.3).unwrap();
        assert_relative_eq!(v.re, 1.188_916_479_795_77, max_relative = 1e-14);
    }

    #[test]
    fn elementary_closed_forms_above_switch() {
        // ₂F₁(a, b; b; z) = (1-z)^{-a}
        let a = c(0.4, 1.3);
        let b = c(2.2, -0.6);
        for z in [0.6, 0.9, 0.99] {
            let v = hyp2f1(a, b, b, z).unwrap();
            let expected = (-a * (1.0f64 - z).ln()).exp();
            assert!(rel(v, expected) < 1e-12, "z={z}: {v} vs {expected}");
        }
        // ₂F₁(1/2, 1/2; 3/2; z²) = arcsin(z)/z
        for x in [0.75f64, 0.9, 0.97] {
            let v = hyp2f1(c(0.5, 0.0), c(0.5, 0.0), c(1.5, 0.0), x * x).unwrap();
            assert_relative_eq!(v.re, x.asin() / x, max_relative = 1e-13);
        }
    }

    // Frozen from a 50-digit evaluation of the defining series at z = 0.9
    // (mpmath.hyp2f1 with mp.dps = 50).
    const FROZEN_0P9: (f64, f64) = (22.914_494_910_292_416, 0.0);

    /// Independent route: the direct series at z = 0.9 summed with Kahan
    /// compensation and no tolerance shortcut.
    fn long_series(a: C64, b: C64, c_: C64, z: f64, terms: usize) -> C64 {
        let mut term = c(1.0, 0.0);
        let mut sum = term;
        let mut comp = c(0.0, 0.0);
        for n in 0..terms {
            let nf = n as f64;
            term *= (a + nf) * (b + nf) / ((c_ + nf) * (nf + 1.0)) * z;
            let y = term - comp;
            let t = sum + y;
            comp = (t - sum) - y;
            sum = t;
        }
        sum
    }

    #[test]
    fn connection_matches_direct_series_at_0p9() {
        let (a, b, cc) = (c(0.5, 2.0), c(0.5, -2.0), c(1.4, 0.0));
        let v = hyp2f1(a, b, cc, 0.9).unwrap();
        let direct = long_series(a, b, cc, 0.9, 2000);
        assert!(rel(v, direct) < 1e-12, "{v} vs {direct}");
        assert!(v.im.abs() < 1e-12);
        assert_relative_eq!(v.re, FROZEN_0P9.0, max_relative = 1e-12);
    }

    #[test]
    fn gauss_sum_limit() {
        let (a, b, cc) = (c(0.2, 0.5), c(-0.3, 0.1), c(2.5, -0.4));
        let at_one = gauss_sum(a, b, cc).unwrap();
        let near = hyp2f1(a, b, cc, 1.0 - 1e-12).unwrap();
        assert!(rel(near, at_one) < 1e-9);
    }

    #[test]
    fn errors() {
        assert!(matches!(hyp2f1(c(1.0, 0.0), c(1.0, 0.0), c(-2.0, 0.0), 0.3), Err(Error::Pole(_))));
        assert!(matches!(hyp2f1(c(1.0, 0.0), c(1.0, 0.0), c(2.0, 0.0), 1.0), Err(Error::Argument(_))));
        assert!(matches!(hyp2f1(c(1.0, 0.0), c(1.0, 0.0), c(2.0, 0.0), -0.1), Err(Error::Argument(_))));
        assert!(matches!(
            hyp2f1(c(1.0, 0.0), c(1.0, 0.0), c(3.0, 0.0), 0.8),
            Err(Error::DegenerateConnection(_))
        ));
    }

    #[test]
    fn terminating_series() {
        // a = -2: 1 - 2bz/c + b(b+1)z²/(c(c+1))
        let (b, cc, z) = (c(0.5, 1.0), c(1.5, 0.0), 0.4);
        let v = hyp2f1(c(-2.0, 0.0), b, cc, z).unwrap();
        let expected = 1.0 - 2.0 * b * z / cc + b * (b + 1.0) * z * z / (cc * (cc + 1.0));
        assert!(rel(v, expected) < 1e-15);
    }

    #[test]
    fn derivative_matches_finite_difference() {
        let (a, b, cc) = (c(0.5, 1.7), c(0.5, 3.1), c(1.0, 2.0));
        for z in [0.2f64, 0.49, 0.8, 0.99] {
            let h = 1e-6 * (1.0 - z).min(z);
            let fd = (hyp2f1(a, b, cc, z + h).unwrap() - hyp2f1(a, b, cc, z - h).unwrap()) / (2.0 * h);
            let d = hyp2f1_derivative_split(a, b, cc, z, 1.0 - z).unwrap();
            assert!(rel(d, fd) < 1e-6, "z={z}: {d} vs {fd}");
        }
    }

    fn gsws_like() -> impl Strategy<Value = (C64, C64, C64)> {
        // parameters of the form produced by `derive` in the scattering regime
        (0.05f64..6.0, 0.5f64..6.0, 1.0f64..4.0).prop_map(|(k, kappa, sigma)| {
            let mu = c(0.0, k);
            let nu = c(0.0, kappa);
            let theta = c(0.5, sigma);
            (mu + theta + nu, 1.0 + mu - theta + nu, 1.0 + 2.0 * mu)
        })
    }

    proptest! {
        #[test]
        fn series_and_connection_agree_near_switch(
            (a, b, cc) in gsws_like(),
            z in 0.45f64..0.55,
        ) {
            let s = series(a, b, cc, z).unwrap();
            let t = connection(a, b, cc, 1.0 - z).unwrap();
            prop_assert!(rel(t, s) < 1e-10, "{} vs {}", t, s);
        }

        #[test]
        fn symmetric_in_a_and_b(
            ar in -2.0f64..2.0, ai in -3.0f64..3.0,
            br in -2.0f64..2.0, bi in -3.0f64..3.0,
            cr in 0.3f64..3.0, ci in -3.0f64..3.0,
            z in 0.0f64..0.98,
        ) {
            let (a, b, cc) = (c(ar, ai), c(br, bi), c(cr, ci));
            let s = cc - a - b;
            prop_assume!((s - s.re.round()).norm() > 1e-3);
            let ab = hyp2f1(a, b, cc, z).unwrap();
            let ba = hyp2f1(b, a, cc, z).unwrap();
            prop_assert!((ab - ba).norm() <= 1e-12 * (1.0 + ab.norm()));
        }
    }
}
