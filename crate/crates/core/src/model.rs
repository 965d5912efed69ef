//! Potential definitions, unit conventions and energy-dependent parameters.
//!
//! Energies are in MeV, lengths in fm. The particle enters only through the
//! combination `2m/ħ² = 2·mc²/(ħc)²` (MeV⁻¹·fm⁻²).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::C64;

pub const DEFAULT_MC2: f64 = 940.0;
pub const DEFAULT_HBARC: f64 = 197.329;

/// Below this value of `a·L` the asymptotic matching is flagged as unreliable.
pub const AL_WARN_THRESHOLD: f64 = 5.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PotentialParams {
    pub v0: f64,
    pub w0: f64,
    pub a: f64,
    #[serde(rename = "L")]
    pub l: f64,
    pub mc2: f64,
    pub hbarc: f64,
}

impl PotentialParams {
    /// Parameters with the default particle constants (mc² = 940 MeV,
    /// ħc = 197.329 MeV·fm).
    pub fn new(v0: f64, w0: f64, a: f64, l: f64) -> Result<Self> {
        Self::with_constants(v0, w0, a, l, DEFAULT_MC2, DEFAULT_HBARC)
    }

    pub fn with_constants(v0: f64, w0: f64, a: f64, l: f64, mc2: f64, hbarc: f64) -> Result<Self> {
        let p = Self {
            v0,
            w0,
            a,
            l,
            mc2,
            hbarc,
        };
        p.validate()?;
        if p.a * p.l < AL_WARN_THRESHOLD {
            log::warn!(
                "a·L = {} < {}: asymptotic matching at x = 0 loses accuracy",
                p.a * p.l,
                AL_WARN_THRESHOLD
            );
        }
        Ok(p)
    }

    /// V0 = 100 MeV, W0 = 250 MeV, a = 1 fm⁻¹, L = 6 fm.
    pub fn reference() -> Self {
        Self::new(100.0, 250.0, 1.0, 6.0).expect("reference parameters are valid")
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [self.v0, self.w0, self.a, self.l, self.mc2, self.hbarc]
            .iter()
            .all(|v| v.is_finite());
        if !finite {
            return Err(Error::InvalidParams("non-finite parameter".into()));
        }
        for (name, v) in [("a", self.a), ("L", self.l), ("mc2", self.mc2), ("hbarc", self.hbarc)] {
            if v <= 0.0 {
                return Err(Error::InvalidParams(format!("{name} must be positive, got {v}")));
            }
        }
        Ok(())
    }

    /// 2m/ħ² in MeV⁻¹·fm⁻².
    pub fn two_m_over_hbar2(&self) -> f64 {
        2.0 * self.mc2 / (self.hbarc * self.hbarc)
    }

    /// Energy scale ħ²/(2m) in MeV·fm².
    pub fn hbar2_over_two_m(&self) -> f64 {
        1.0 / self.two_m_over_hbar2()
    }

    pub fn with_w0(mut self, w0: f64) -> Self {
        self.w0 = w0;
        self
    }

    pub fn potential(&self, x: f64) -> f64 {
        potential_gsws(self, x)
    }

    pub fn barrier_height(&self) -> Result<f64> {
        barrier_height(self)
    }
}

/// GSWS potential. Symmetric by construction: only `|x|` enters.
pub fn potential_gsws(params: &PotentialParams, x: f64) -> f64 {
    let y = params.a * (x.abs() - params.l);
    // 1/(1+e^y) and e^y/(1+e^y), each computed without cancellation
    let inner = logistic(-y);
    let outer = logistic(y);
    -params.v0 * inner + params.w0 * inner * outer
}

/// Plain Woods-Saxon well (the `W0 = 0` member of the family).
pub fn potential_ws(params: &PotentialParams, x: f64) -> f64 {
    potential_gsws(&params.with_w0(0.0), x)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MwsParams {
    pub v0: f64,
    pub a: f64,
    #[serde(rename = "L")]
    pub l: f64,
    pub p: u32,
    pub q: u32,
}

impl MwsParams {
    pub fn new(v0: f64, a: f64, l: f64, p: u32, q: u32) -> Result<Self> {
        if p < 1 || q < 1 {
            return Err(Error::InvalidParams(format!("MWS p, q must be >= 1, got p={p}, q={q}")));
        }
        if !(a > 0.0 && l > 0.0) || !v0.is_finite() {
            return Err(Error::InvalidParams("MWS requires a > 0, L > 0".into()));
        }
        Ok(Self { v0, a, l, p, q })
    }
}

/// Modified Woods-Saxon potential `-V0 / (p + q·e^{a(|x|-L)})`.
pub fn potential_mws(params: &MwsParams, x: f64) -> f64 {
    let y = params.a * (x.abs() - params.l);
    let e = y.exp();
    if e.is_infinite() {
        return 0.0;
    }
    -params.v0 / (params.p as f64 + params.q as f64 * e)
}

/// Height of the surface barrier, `(V0 - W0)² / (4·W0)`.
pub fn barrier_height(params: &PotentialParams) -> Result<f64> {
    let (v0, w0) = (params.v0, params.w0);
    if w0 <= 0.0 || w0 < v0 {
        return Err(Error::NoBarrier { v0, w0 });
    }
    Ok((v0 - w0).powi(2) / (4.0 * w0))
}

pub(crate) fn logistic(y: f64) -> f64 {
    if y >= 0.0 {
        1.0 / (1.0 + (-y).exp())
    } else {
        let e = y.exp();
        e / (1.0 + e)
    }
}

/// ln(1 + e^y) without overflow or cancellation.
pub(crate) fn softplus(y: f64) -> f64 {
    if y > 0.0 {
        y + (-y).exp().ln_1p()
    } else {
        y.exp().ln_1p()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    Scattering,
    Bound,
    QuasiBound,
}

impl Regime {
    fn name(self) -> &'static str {
        match self {
            Regime::Scattering => "scattering",
            Regime::Bound => "bound",
            Regime::QuasiBound => "quasibound",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn sign(self) -> f64 {
        match self {
            Parity::Even => 1.0,
            Parity::Odd => -1.0,
        }
    }
}

impl std::fmt::Display for Parity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

/// Root of the indicial equation `θ(1-θ) = γ²` used in `a1`, `b1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum ThetaBranch {
    /// θ = 1/2 + √(1/4 - γ²)
    #[default]
    Plus,
    /// θ = 1/2 - √(1/4 - γ²)
    Minus,
    /// Negative control: a θ that violates the indicial equation.
    #[doc(hidden)]
    Corrupted,
}

/// How the left and right half-line solutions are joined at `x = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Matching {
    /// Leading `z -> 1` asymptotics: the junction sees plane waves `e^{±iκx}`
    /// and all information is carried by `N1..N4`. Exact for decoupled
    /// surface steps; the error for the full potential is `O(e^{-aL})`.
    #[default]
    Asymptotic,
    /// Full hypergeometric solutions evaluated at the junction.
    Exact,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Method {
    pub matching: Matching,
    pub branch: ThetaBranch,
}

impl Method {
    pub fn exact() -> Self {
        Self {
            matching: Matching::Exact,
            ..Self::default()
        }
    }

    pub fn with_branch(mut self, branch: ThetaBranch) -> Self {
        self.branch = branch;
        self
    }
}

/// One point of a sampled wavefunction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WaveSample {
    pub x: f64,
    pub re: f64,
    pub im: f64,
}

/// Energy-dependent quantities of the hypergeometric reduction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedParams {
    pub energy: C64,
    pub regime: Regime,
    /// Outer wavenumber, fm⁻¹ (for the bound regime the decay constant).
    pub k: C64,
    /// Inner wavenumber √(2m(E+V0))/ħ, fm⁻¹.
    pub kappa: C64,
    pub mu: C64,
    pub nu: C64,
    pub theta: C64,
    pub a1: C64,
    pub b1: C64,
    pub c1: C64,
    pub eps2: C64,
    pub beta2: f64,
    pub gamma2: f64,
}

pub fn derive(params: &PotentialParams, energy: C64, regime: Regime) -> Result<DerivedParams> {
    derive_with(params, energy, regime, ThetaBranch::Plus)
}

pub fn derive_with(
    params: &PotentialParams,
    energy: C64,
    regime: Regime,
    branch: ThetaBranch,
) -> Result<DerivedParams> {
    let domain = || Error::Domain {
        energy,
        regime: regime.name(),
    };
    if !(energy.re.is_finite() && energy.im.is_finite()) {
        return Err(domain());
    }
    match regime {
        Regime::Scattering => {
            if energy.im != 0.0 || energy.re <= 0.0 {
                return Err(domain());
            }
        }
        Regime::Bound => {
            if energy.im != 0.0 || energy.re >= 0.0 || energy.re < -params.v0 {
                return Err(domain());
            }
        }
        Regime::QuasiBound => {
            if energy.re <= 0.0 || energy.im > 0.0 {
                return Err(domain());
            }
        }
    }
    Ok(derive_unchecked(params, energy, regime, branch))
}

/// Same as [`derive_with`] without the domain check; used by complex root
/// iterations whose intermediate iterates may leave the physical sheet.
pub(crate) fn derive_unchecked(
    params: &PotentialParams,
    energy: C64,
    regime: Regime,
    branch: ThetaBranch,
) -> DerivedParams {
    let f = params.two_m_over_hbar2();
    let a = params.a;
    let a2 = a * a;
    let i = C64::i();

    let (k, mu) = match regime {
        Regime::Bound => {
            let k = C64::new(f * -energy.re, 0.0).sqrt();
            (k, k / a)
        }
        Regime::Scattering | Regime::QuasiBound => {
            let mut k = (energy * f).sqrt();
            if k.re < 0.0 {
                k = -k;
            }
            (k, i * k / a)
        }
    };
    let mut kappa = ((energy + params.v0) * f).sqrt();
    if kappa.re < 0.0 {
        kappa = -kappa;
    }
    let nu = i * kappa / a;

    let gamma2 = f * params.w0 / a2;
    let beta2 = f * (params.v0 - params.w0) / a2;
    let eps2 = -energy * f / a2;

    let root = C64::new(0.25 - gamma2, 0.0).sqrt();
    let theta = match branch {
        ThetaBranch::Plus => 0.5 + root,
        ThetaBranch::Minus => 0.5 - root,
        ThetaBranch::Corrupted => 0.5 + root + 0.05,
    };

    let a1 = mu + theta + nu;
    let b1 = 1.0 + mu - theta + nu;
    let c1 = 1.0 + 2.0 * mu;

    DerivedParams {
        energy,
        regime,
        k,
        kappa,
        mu,
        nu,
        theta,
        a1,
        b1,
        c1,
        eps2,
        beta2,
        gamma2,
    }
}
