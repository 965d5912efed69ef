//! Reflection and transmission for real positive energies.
//!
//! A wave `e^{ik(x+L)}` is incident from the left. On each half-line the
//! solution is a combination of the two hypergeometric solutions; the
//! amplitudes `D2` (reflected) and `D4` (transmitted) follow from the
//! junction conditions at `x = 0`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{derive_with, DerivedParams, Matching, Method, PotentialParams, Regime};
use crate::roots::bisect;
use crate::solutions::{left, Basis};
use crate::specfun::{connection_coefficients, ConnectionCoefficients};
use crate::C64;

/// Lowest energy used by scans and sweeps; `E = 0` itself is degenerate.
pub const E_FLOOR: f64 = 1e-3;
/// Minimum transmission for a residual root to count as a resonance.
pub const RESONANCE_T_MIN: f64 = 1.0 - 1e-4;
/// Number of scan intervals across the search window.
pub const RESONANCE_SCAN_POINTS: usize = 2000;
/// Bisection tolerance for resonance energies (MeV).
pub const RESONANCE_XTOL: f64 = 1e-10;
/// Largest imaginary residue tolerated in quantities that must be real.
pub const REALNESS_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AmplitudeRatios {
    pub d2_over_d1: C64,
    pub d4_over_d1: C64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScatteringResult {
    pub energy: f64,
    pub r: f64,
    pub t: f64,
    pub unitarity_defect: f64,
}

impl ScatteringResult {
    pub fn new(energy: f64, r: f64, t: f64) -> Self {
        Self {
            energy,
            r,
            t,
            unitarity_defect: (r + t - 1.0).abs(),
        }
    }
}

/// Side from which the wave comes in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Incidence {
    Left,
    Right,
}

fn scattering_params(params: &PotentialParams, energy: f64, method: Method) -> Result<DerivedParams> {
    derive_with(params, C64::new(energy, 0.0), Regime::Scattering, method.branch)
}

/// N1..N4 rescaled by a common factor so that the largest of |N3|, |N4| is one.
/// Every amplitude below is homogeneous of degree zero in the N's.
fn scaled(n: &ConnectionCoefficients) -> [C64; 4] {
    let s = n.log_n3.re.max(n.log_n4.re);
    [n.log_n1, n.log_n2, n.log_n3, n.log_n4].map(|l| (l - s).exp())
}

/// `D2/D1` and `D4/D1` for a wave incident from the left.
pub fn amplitude_ratios(params: &PotentialParams, energy: f64) -> Result<AmplitudeRatios> {
    amplitude_ratios_with(params, energy, Method::default())
}

pub fn amplitude_ratios_with(params: &PotentialParams, energy: f64, method: Method) -> Result<AmplitudeRatios> {
    let dp = scattering_params(params, energy, method)?;
    match method.matching {
        Matching::Asymptotic => asymptotic_ratios(params, &dp),
        Matching::Exact => {
            let (rho, sigma) = exact_quotients(params, &dp)?;
            Ok(AmplitudeRatios {
                d2_over_d1: -(rho + sigma) / 2.0,
                d4_over_d1: (rho - sigma) / 2.0,
            })
        }
    }
}

fn asymptotic_ratios(params: &PotentialParams, dp: &DerivedParams) -> Result<AmplitudeRatios> {
    let n = connection_coefficients(dp)?;
    let [n1, n2, n3, n4] = scaled(&n);
    let p2 = (C64::i() * dp.kappa * (2.0 * params.l)).exp();
    let pm2 = (-C64::i() * dp.kappa * (2.0 * params.l)).exp();
    let den = n4 / n3 * p2 - n3 / n4 * pm2;
    Ok(AmplitudeRatios {
        d2_over_d1: (n1 / n4 * pm2 - n2 / n3 * p2) / den,
        d4_over_d1: (n1 / n3 - n2 / n4) / den,
    })
}

/// `u1/u2` and `u1'/u2'` at the junction.
fn exact_quotients(params: &PotentialParams, dp: &DerivedParams) -> Result<(C64, C64)> {
    let u1 = left(params, dp, Basis::First, 0.0)?;
    let u2 = left(params, dp, Basis::Second, 0.0)?;
    Ok((u1.value / u2.value, u1.derivative / u2.derivative))
}

/// R and T as squared moduli of the amplitude ratios.
pub fn reflection_transmission(params: &PotentialParams, energy: f64) -> Result<ScatteringResult> {
    reflection_transmission_with(params, energy, Method::default())
}

pub fn reflection_transmission_with(params: &PotentialParams, energy: f64, method: Method) -> Result<ScatteringResult> {
    let d = amplitude_ratios_with(params, energy, method)?;
    Ok(ScatteringResult::new(energy, d.d2_over_d1.norm_sqr(), d.d4_over_d1.norm_sqr()))
}

/// R and T from the closed expressions in the ratios `N1N3/(N2N4)` and
/// `N1N4/(N2N3)`. Returns `None` when those ratios are too far from unit
/// size to be formed without overflow.
pub fn closed_form_rt(params: &PotentialParams, energy: f64) -> Result<Option<(f64, f64)>> {
    let dp = scattering_params(params, energy, Method::default())?;
    let n = connection_coefficients(&dp)?;
    let ln_x = n.log_n1 + n.log_n4 - n.log_n2 - n.log_n3;
    let ln_y = n.log_n1 + n.log_n3 - n.log_n2 - n.log_n4;
    if ln_x.re.abs() > 200.0 || ln_y.re.abs() > 200.0 {
        return Ok(None);
    }
    let x = ln_x.exp();
    let phase = (-C64::i() * dp.kappa * (4.0 * params.l)).exp();
    let y = ln_y.exp() * phase;
    let bracket = y + 1.0 / y;
    let den = x + 1.0 / x - bracket;
    let r = (2.0 - bracket) / den;
    let t = (x + 1.0 / x - 2.0) / den;
    Ok(Some((r.re, t.re)))
}

/// R and T for a wave incident from either side, from the general two-sided
/// junction system rather than the closed left-incidence ratios.
pub fn reflection_transmission_from(
    params: &PotentialParams,
    energy: f64,
    method: Method,
    incidence: Incidence,
) -> Result<ScatteringResult> {
    let dp = scattering_params(params, energy, method)?;
    let (reflected, transmitted) = match method.matching {
        Matching::Asymptotic => {
            let n = connection_coefficients(&dp)?;
            let [n1, n2, n3, n4] = scaled(&n);
            let p = (C64::i() * dp.kappa * params.l).exp();
            let pm = (-C64::i() * dp.kappa * params.l).exp();
            // Unknowns (D2, D4):
            //   D2·N3·p̄ - D4·N4·p = (D3·N2·p  - D1·N1·p̄)
            //   D2·N4·p - D4·N3·p̄ = (D3·N1·p̄ - D1·N2·p)
            let (d1, d3) = match incidence {
                Incidence::Left => (1.0, 0.0),
                Incidence::Right => (0.0, 1.0),
            };
            let r1 = n2 * p * d3 - n1 * pm * d1;
            let r2 = n1 * pm * d3 - n2 * p * d1;
            let (m11, m12, m21, m22) = (n3 * pm, -n4 * p, n4 * p, -n3 * pm);
            let det = m11 * m22 - m12 * m21;
            let d2 = (r1 * m22 - m12 * r2) / det;
            let d4 = (m11 * r2 - r1 * m21) / det;
            match incidence {
                Incidence::Left => (d2, d4),
                Incidence::Right => (d4, d2),
            }
        }
        Matching::Exact => {
            // From the right the incident wave is u1(-x), the reflected
            // D4·u2(-x) and the transmitted D2·u2(x); the junction equations
            // for (D4, D2) are those of (D2, D4) from the left.
            let (rho, sigma) = exact_quotients(params, &dp)?;
            (-(rho + sigma) / 2.0, (rho - sigma) / 2.0)
        }
    };
    Ok(ScatteringResult::new(energy, reflected.norm_sqr(), transmitted.norm_sqr()))
}

/// Real function of E whose zeros include every transmission resonance.
///
/// Asymptotic matching: `sin(4κL) + (i/2)·[(N1N3)² - (N2N4)²]/(N1N2N3N4)`,
/// whose zeros also include points with `T < 1`. Exact matching:
/// `Re(u1·conj(u1')) / |u1·u1'|` at the junction, which vanishes exactly
/// where `D2 = 0`.
pub fn resonance_residual(params: &PotentialParams, energy: f64) -> Result<f64> {
    resonance_residual_with(params, energy, Method::default())
}

pub fn resonance_residual_with(params: &PotentialParams, energy: f64, method: Method) -> Result<f64> {
    let dp = scattering_params(params, energy, method)?;
    let value = match method.matching {
        Matching::Asymptotic => {
            let n = connection_coefficients(&dp)?;
            let z = (n.log_n1 + n.log_n3 - n.log_n2 - n.log_n4).exp();
            let s = (dp.kappa * (4.0 * params.l)).sin();
            s + C64::i() / 2.0 * (z - 1.0 / z)
        }
        Matching::Exact => {
            let u1 = left(params, &dp, Basis::First, 0.0)?;
            let u2 = left(params, &dp, Basis::Second, 0.0)?;
            let w = u1.value * u2.derivative + u1.derivative * u2.value;
            w / (2.0 * u1.value.norm() * u1.derivative.norm())
        }
    };
    if value.im.abs() > REALNESS_TOL * (1.0 + value.re.abs()) {
        return Err(Error::NotReal {
            imag: value.im,
            scale: value.re.abs(),
        });
    }
    Ok(value.re)
}

/// Transmission resonances in `[e_min, e_max]`, ascending.
pub fn find_resonances(params: &PotentialParams, e_min: f64, e_max: f64) -> Result<Vec<f64>> {
    find_resonances_with(params, e_min, e_max, Method::default())
}

pub fn find_resonances_with(params: &PotentialParams, e_min: f64, e_max: f64, method: Method) -> Result<Vec<f64>> {
    if !(e_min >= 0.0 && e_max > e_min) {
        return Err(Error::InvalidParams(format!("bad resonance window ({e_min}, {e_max})")));
    }
    let lo = e_min.max(E_FLOOR);
    if lo >= e_max {
        return Ok(Vec::new());
    }
    let residual = |e: f64| resonance_residual_with(params, e, method);
    let grid = linspace(lo, e_max, RESONANCE_SCAN_POINTS + 1);
    let values = grid.iter().map(|&e| residual(e)).collect::<Result<Vec<_>>>()?;

    let mut brackets = Vec::new();
    for i in 0..grid.len() - 1 {
        let (f0, f1) = (values[i], values[i + 1]);
        if f0 == 0.0 || f0.signum() != f1.signum() {
            brackets.push((grid[i], grid[i + 1]));
            continue;
        }
        // a dip towards zero without a crossing may hide a close root pair
        let dip = i > 0 && f0.abs() < values[i - 1].abs() && f0.abs() <= f1.abs();
        if dip {
            let sub = linspace(grid[i - 1], grid[i + 1], 21);
            let sv = sub.iter().map(|&e| residual(e)).collect::<Result<Vec<_>>>()?;
            for j in 0..sub.len() - 1 {
                if sv[j].signum() != sv[j + 1].signum() {
                    brackets.push((sub[j], sub[j + 1]));
                }
            }
        }
    }

    let mut found: Vec<f64> = Vec::new();
    for (a, b) in brackets {
        let root = bisect(residual, a, b, RESONANCE_XTOL)?;
        let t = reflection_transmission_with(params, root, method)?.t;
        if t >= RESONANCE_T_MIN && found.last().is_none_or(|&l| root - l > 1e-6) {
            found.push(root);
        }
    }
    Ok(found)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SweepAxis {
    #[serde(rename = "energy")]
    Energy,
    #[serde(rename = "v0")]
    V0,
    #[serde(rename = "w0")]
    W0,
    #[serde(rename = "a")]
    A,
    #[serde(rename = "L")]
    L,
}

impl SweepAxis {
    pub fn name(self) -> &'static str {
        match self {
            SweepAxis::Energy => "energy",
            SweepAxis::V0 => "v0",
            SweepAxis::W0 => "w0",
            SweepAxis::A => "a",
            SweepAxis::L => "L",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub value: f64,
    pub energy: f64,
    pub r: f64,
    pub t: f64,
    pub unitarity_defect: f64,
    /// Barrier height; only filled for the depth axes, and only where a barrier exists.
    pub hb: Option<f64>,
    /// Set when this point could not be evaluated; R and T are then NaN.
    pub error: Option<String>,
}

pub fn sweep(
    params: &PotentialParams,
    axis: SweepAxis,
    range: (f64, f64),
    steps: usize,
    fixed_energy: Option<f64>,
) -> Result<Vec<SweepRow>> {
    sweep_with(params, axis, range, steps, fixed_energy, Method::default())
}

pub fn sweep_with(
    params: &PotentialParams,
    axis: SweepAxis,
    range: (f64, f64),
    steps: usize,
    fixed_energy: Option<f64>,
    method: Method,
) -> Result<Vec<SweepRow>> {
    if steps < 2 {
        return Err(Error::InvalidParams(format!("sweep needs at least 2 steps, got {steps}")));
    }
    let (mut lo, hi) = range;
    if !(lo.is_finite() && hi.is_finite() && hi > lo) {
        return Err(Error::InvalidParams(format!("bad sweep range ({lo}, {hi})")));
    }
    if axis == SweepAxis::Energy {
        lo = lo.max(E_FLOOR);
    } else if fixed_energy.is_none() {
        return Err(Error::InvalidParams(format!("a {} sweep needs a fixed energy", axis.name())));
    }
    let values = linspace(lo, hi, steps);
    let rows = values
        .par_iter()
        .map(|&v| sweep_point(params, axis, v, fixed_energy, method))
        .collect();
    Ok(rows)
}

fn sweep_point(params: &PotentialParams, axis: SweepAxis, v: f64, fixed: Option<f64>, method: Method) -> SweepRow {
    let mut p = *params;
    let mut energy = fixed.unwrap_or(v);
    match axis {
        SweepAxis::Energy => energy = v,
        SweepAxis::V0 => p.v0 = v,
        SweepAxis::W0 => p.w0 = v,
        SweepAxis::A => p.a = v,
        SweepAxis::L => p.l = v,
    }
    let hb = match axis {
        SweepAxis::V0 | SweepAxis::W0 => p.barrier_height().ok(),
        _ => None,
    };
    let result = p
        .validate()
        .and_then(|_| reflection_transmission_with(&p, energy, method));
    match result {
        Ok(s) => SweepRow {
            value: v,
            energy,
            r: s.r,
            t: s.t,
            unitarity_defect: s.unitarity_defect,
            hb,
            error: None,
        },
        Err(e) => {
            log::warn!("sweep point {}={v} failed: {e}", axis.name());
            SweepRow {
                value: v,
                energy,
                r: f64::NAN,
                t: f64::NAN,
                unitarity_defect: f64::NAN,
                hb,
                error: Some(e.to_string()),
            }
        }
    }
}

pub(crate) fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let step = (hi - lo) / (n - 1) as f64;
    (0..n)
        .map(|i| if i == n - 1 { hi } else { lo + step * i as f64 })
        .collect()
}
