//! Quasi-bound (Gamow) states: complex energies `E = E_r - i·E_i` at which
//! only outgoing waves survive on both sides.
//!
//! The outgoing left solution is `u2`. With asymptotic matching even states
//! satisfy `N3·e^{-iκL} - N4·e^{iκL} = 0` and odd states
//! `N3·e^{-iκL} + N4·e^{iκL} = 0`; exact matching imposes `u2'(0) = 0` and
//! `u2(0) = 0`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{
    derive_unchecked, derive_with, DerivedParams, Matching, Method, Parity, PotentialParams, Regime, WaveSample,
};
use crate::roots::{muller, MullerOptions};
use crate::scattering::{find_resonances_with, linspace};
use crate::solutions::{left, Basis};
use crate::specfun::connection_coefficients;
use crate::spectrum::{junction_jump, JunctionJump};
use crate::C64;

/// Wavefunctions are evaluated only for `|x| <= L + TAIL_CUTOFF/a`.
pub const TAIL_CUTOFF: f64 = 15.0;
/// Imaginary offset (MeV) of the seed placed below each transmission resonance.
pub const SEED_OFFSET: f64 = 0.1;
/// Roots closer than this (MeV) are merged.
pub const DEDUP_TOL: f64 = 1e-4;
/// Largest distance (MeV) between a root and the resonance it is linked to.
pub const LINK_TOL: f64 = 0.5;
/// Points of the real-axis scan for `|residual|` minima.
pub const REAL_SCAN_POINTS: usize = 400;
pub const DEFAULT_SAMPLES: usize = 401;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuasiBoundState {
    /// 1-based position in order of increasing `e_r` within its parity.
    pub index: usize,
    pub parity: Parity,
    pub e_r: f64,
    /// Half width; the energy is `e_r - i·e_i`.
    pub e_i: f64,
    /// `e_r` is at or above the barrier top (or there is no barrier).
    pub over_barrier: bool,
    pub linked_resonance: Option<f64>,
    /// Unnormalized samples over `|x| <= L + 15/a`.
    pub samples: Vec<WaveSample>,
    #[serde(skip)]
    pub method: Method,
}

impl QuasiBoundState {
    pub fn energy(&self) -> C64 {
        C64::new(self.e_r, -self.e_i)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FailedSeed {
    pub seed: C64,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuasiBoundSearch {
    pub states: Vec<QuasiBoundState>,
    pub failed: Vec<FailedSeed>,
}

/// Complex matching function; zero at quasi-bound energies.
pub fn quasibound_residual(params: &PotentialParams, energy: C64, parity: Parity) -> Result<C64> {
    quasibound_residual_with(params, energy, parity, Method::default())
}

pub fn quasibound_residual_with(params: &PotentialParams, energy: C64, parity: Parity, method: Method) -> Result<C64> {
    let dp = derive_with(params, energy, Regime::QuasiBound, method.branch)?;
    residual_at(params, &dp, parity, method)
}

fn residual_at(params: &PotentialParams, dp: &DerivedParams, parity: Parity, method: Method) -> Result<C64> {
    match method.matching {
        Matching::Asymptotic => {
            let n = connection_coefficients(dp)?;
            let a = n.n3 * (-C64::i() * dp.kappa * params.l).exp();
            let b = n.n4 * (C64::i() * dp.kappa * params.l).exp();
            Ok(match parity {
                Parity::Even => a - b,
                Parity::Odd => a + b,
            })
        }
        Matching::Exact => {
            let u = left(params, dp, Basis::Second, 0.0)?;
            Ok(match parity {
                Parity::Even => u.derivative / params.a,
                Parity::Odd => u.value,
            })
        }
    }
}

pub fn find_quasibound(params: &PotentialParams, parity: Parity, window: (f64, f64)) -> Result<QuasiBoundSearch> {
    find_quasibound_with(params, parity, window, Method::default())
}

pub fn find_quasibound_with(
    params: &PotentialParams,
    parity: Parity,
    window: (f64, f64),
    method: Method,
) -> Result<QuasiBoundSearch> {
    let (lo, hi) = window;
    if !(lo >= 0.0 && hi > lo) {
        return Err(Error::InvalidParams(format!("bad quasi-bound window ({lo}, {hi})")));
    }
    let resonances = find_resonances_with(params, lo, hi, method)?;
    let mut seeds: Vec<C64> = resonances.iter().map(|&e| C64::new(e, -SEED_OFFSET)).collect();
    seeds.extend(real_axis_minima(params, parity, window, method)?);

    let residual = |e: C64| -> Result<C64> {
        if !(e.re > 0.0) {
            return Err(Error::Domain {
                energy: e,
                regime: "quasibound",
            });
        }
        let dp = derive_unchecked(params, e, Regime::QuasiBound, method.branch);
        residual_at(params, &dp, parity, method)
    };

    let mut roots: Vec<C64> = Vec::new();
    let mut failed = Vec::new();
    for seed in seeds {
        let d = 0.05;
        let start = [seed + C64::new(d, 0.0), seed - C64::new(0.0, d), seed];
        match muller(residual, start, MullerOptions::default()) {
            Ok(r) => {
                let e = r.root;
                let physical = e.im < 0.0 && -e.im < e.re && e.re >= lo && e.re <= hi;
                if physical && roots.iter().all(|x| (x - e).norm() > DEDUP_TOL) {
                    roots.push(e);
                }
            }
            Err(err) => failed.push(FailedSeed {
                seed,
                reason: err.to_string(),
            }),
        }
    }
    roots.sort_by(|a, b| a.re.total_cmp(&b.re));

    let hb = params.barrier_height().ok();
    let mut states = Vec::with_capacity(roots.len());
    for (i, e) in roots.into_iter().enumerate() {
        let linked_resonance = resonances
            .iter()
            .copied()
            .filter(|r| (r - e.re).abs() <= LINK_TOL)
            .min_by(|a, b| (a - e.re).abs().total_cmp(&(b - e.re).abs()));
        let mut state = QuasiBoundState {
            index: i + 1,
            parity,
            e_r: e.re,
            e_i: -e.im,
            over_barrier: hb.is_none_or(|h| e.re >= h),
            linked_resonance,
            samples: Vec::new(),
            method,
        };
        let extent = params.l + TAIL_CUTOFF / params.a;
        state.samples = sample_quasibound(params, &state, &linspace(-extent, extent, DEFAULT_SAMPLES))?;
        states.push(state);
    }
    Ok(QuasiBoundSearch { states, failed })
}

/// Seeds below local minima of `|residual|` along the real axis.
fn real_axis_minima(params: &PotentialParams, parity: Parity, window: (f64, f64), method: Method) -> Result<Vec<C64>> {
    let lo = window.0.max(crate::scattering::E_FLOOR);
    let grid = linspace(lo, window.1, REAL_SCAN_POINTS);
    let mags = grid
        .iter()
        .map(|&e| Ok(quasibound_residual_with(params, C64::new(e, 0.0), parity, method)?.norm()))
        .collect::<Result<Vec<f64>>>()?;
    Ok((1..grid.len() - 1)
        .filter(|&i| mags[i] < mags[i - 1] && mags[i] <= mags[i + 1])
        .map(|i| C64::new(grid[i], -1.0))
        .collect())
}

fn state_params(params: &PotentialParams, state: &QuasiBoundState) -> Result<DerivedParams> {
    derive_with(params, state.energy(), Regime::QuasiBound, state.method.branch)
}

fn phase(params: &PotentialParams, dp: &DerivedParams) -> Result<C64> {
    let u = left(params, dp, Basis::Second, -params.l)?.value;
    Ok(u.conj() / u.norm())
}

fn one_sided(params: &PotentialParams, state: &QuasiBoundState, x: f64, right: bool) -> Result<(C64, C64)> {
    let limit = params.l + TAIL_CUTOFF / params.a;
    if x.abs() > limit {
        return Err(Error::OutOfRange { x, limit });
    }
    let dp = state_params(params, state)?;
    let ph = phase(params, &dp)?;
    if right {
        let s = state.parity.sign();
        let u = left(params, &dp, Basis::Second, -x)?;
        Ok((ph * s * u.value, -ph * s * u.derivative))
    } else {
        let u = left(params, &dp, Basis::Second, x)?;
        Ok((ph * u.value, ph * u.derivative))
    }
}

pub fn quasibound_wavefunction(params: &PotentialParams, state: &QuasiBoundState, x: f64) -> Result<C64> {
    Ok(one_sided(params, state, x, x > 0.0)?.0)
}

pub fn quasibound_wavefunction_with_derivative(
    params: &PotentialParams,
    state: &QuasiBoundState,
    x: f64,
) -> Result<(C64, C64)> {
    one_sided(params, state, x, x > 0.0)
}

/// `Im(φ'/φ)`: positive where the wave runs to the right.
pub fn local_wavenumber(params: &PotentialParams, state: &QuasiBoundState, x: f64) -> Result<f64> {
    let (v, d) = quasibound_wavefunction_with_derivative(params, state, x)?;
    Ok((d / v).im)
}

pub fn sample_quasibound(params: &PotentialParams, state: &QuasiBoundState, xs: &[f64]) -> Result<Vec<WaveSample>> {
    xs.iter()
        .map(|&x| {
            let v = quasibound_wavefunction(params, state, x)?;
            Ok(WaveSample { x, re: v.re, im: v.im })
        })
        .collect()
}

pub fn quasibound_junction_jump(params: &PotentialParams, state: &QuasiBoundState) -> Result<JunctionJump> {
    let l = one_sided(params, state, 0.0, false)?;
    let r = one_sided(params, state, 0.0, true)?;
    let dp = state_params(params, state)?;
    Ok(junction_jump(l, r, dp.kappa.norm()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn near(states: &[QuasiBoundState], e: C64, tol_r: f64, tol_i: f64) -> Option<&QuasiBoundState> {
        states
            .iter()
            .find(|s| (s.e_r - e.re).abs() <= tol_r && (s.e_i + e.im).abs() <= tol_i)
    }

    #[test]
    fn reference_odd_root() {
        let p = PotentialParams::reference();
        let found = find_quasibound(&p, Parity::Odd, (1.0, 60.0)).unwrap();
        let s = near(&found.states, C64::new(15.431, -0.532349), 1e-2, 1e-2).expect("odd root near 15.43");
        assert!(!s.over_barrier);
        assert!(s.linked_resonance.is_some());
    }

    #[test]
    fn deep_barrier_roots() {
        let p = PotentialParams::reference().with_w0(450.0);
        let even = find_quasibound(&p, Parity::Even, (1.0, 60.0)).unwrap();
        assert!(near(&even.states, C64::new(20.0801, -0.00137933), 1e-2, 1e-4).is_some());
        let odd = find_quasibound(&p, Parity::Odd, (1.0, 60.0)).unwrap();
        assert!(near(&odd.states, C64::new(40.9262, -0.0648113), 1e-2, 1e-3).is_some());
    }

    #[test]
    fn growing_branch_rejected() {
        let p = PotentialParams::reference();
        assert!(quasibound_residual(&p, C64::new(15.4, 0.5), Parity::Odd).is_err());
    }

    #[test]
    fn tail_cutoff_enforced() {
        let p = PotentialParams::reference();
        let found = find_quasibound(&p, Parity::Odd, (1.0, 30.0)).unwrap();
        let s = &found.states[0];
        assert!(quasibound_wavefunction(&p, s, 21.0).is_ok());
        assert!(quasibound_wavefunction(&p, s, 21.5).is_err());
    }
}
