use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

#[derive(Parser, Debug)]
#[command(
    name = "gsws",
    version,
    about = "Scattering, bound and quasi-bound states of the generalized symmetric Woods-Saxon potential"
)]
pub struct Cli {
    #[command(flatten)]
    pub common: CommonArgs,
    #[command(subcommand)]
    pub command: Command,
}

/// Flags shared by every subcommand. Unset values fall back to the config
/// file, then to the built-in defaults.
#[derive(Args, Debug, Clone, Default)]
pub struct CommonArgs {
    /// Well depth V0 (MeV).
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub v0: Option<f64>,
    /// Surface term W0 (MeV).
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub w0: Option<f64>,
    /// Diffuseness parameter a (fm⁻¹).
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub a: Option<f64>,
    /// Half-width L (fm).
    #[arg(long = "L", global = true, allow_negative_numbers = true)]
    pub l: Option<f64>,
    /// Rest energy mc² (MeV).
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub mass: Option<f64>,
    /// ħc (MeV·fm).
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub hbarc: Option<f64>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Output file; standard output when omitted.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// TOML file with any of: v0, w0, a, L, mass, hbarc, format, matching.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Junction treatment at x = 0.
    #[arg(long, global = true, value_enum)]
    pub matching: Option<MatchingArg>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MatchingArg {
    #[default]
    Asymptotic,
    Exact,
}

impl From<MatchingArg> for gsws::Matching {
    fn from(m: MatchingArg) -> Self {
        match m {
            MatchingArg::Asymptotic => gsws::Matching::Asymptotic,
            MatchingArg::Exact => gsws::Matching::Exact,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ParityArg {
    Even,
    Odd,
    #[default]
    Both,
}

impl ParityArg {
    pub fn parities(self) -> Vec<gsws::Parity> {
        match self {
            ParityArg::Even => vec![gsws::Parity::Even],
            ParityArg::Odd => vec![gsws::Parity::Odd],
            ParityArg::Both => vec![gsws::Parity::Even, gsws::Parity::Odd],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
pub enum AxisArg {
    #[value(name = "energy")]
    #[serde(rename = "energy")]
    Energy,
    #[value(name = "v0")]
    #[serde(rename = "v0")]
    V0,
    #[value(name = "w0")]
    #[serde(rename = "w0")]
    W0,
    #[value(name = "a")]
    #[serde(rename = "a")]
    A,
    #[value(name = "L")]
    #[serde(rename = "L")]
    L,
}

impl From<AxisArg> for gsws::scattering::SweepAxis {
    fn from(a: AxisArg) -> Self {
        use gsws::scattering::SweepAxis;
        match a {
            AxisArg::Energy => SweepAxis::Energy,
            AxisArg::V0 => SweepAxis::V0,
            AxisArg::W0 => SweepAxis::W0,
            AxisArg::A => SweepAxis::A,
            AxisArg::L => SweepAxis::L,
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Tabulate V(x) together with the Woods-Saxon and modified Woods-Saxon shapes.
    Potential(PotentialArgs),
    /// R and T along one parameter axis.
    Scatter(ScatterArgs),
    /// Bound-state spectrum.
    Bound(BoundArgs),
    /// Quasi-bound (complex-energy) states.
    Quasibound(QuasiboundArgs),
    /// Transmission resonances in an energy window.
    Resonances(ResonancesArgs),
    /// Analytic-versus-oracle checks; exit status 3 if any fails.
    Verify(VerifyArgs),
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct PotentialArgs {
    #[arg(long, default_value_t = -15.0, allow_negative_numbers = true)]
    pub x_min: f64,
    #[arg(long, default_value_t = 15.0, allow_negative_numbers = true)]
    pub x_max: f64,
    #[arg(long, default_value_t = 601)]
    pub samples: usize,
    /// Add a modified Woods-Saxon column `-V0/(p + q·e^{a(|x|-L)})`, given as P,Q. Repeatable.
    #[arg(long = "mws", value_name = "P,Q", value_parser = parse_pq)]
    pub mws: Vec<(u32, u32)>,
}

fn parse_pq(s: &str) -> Result<(u32, u32), String> {
    let (p, q) = s.split_once(',').ok_or_else(|| format!("expected P,Q, got {s:?}"))?;
    let p = p.trim().parse().map_err(|e| format!("bad P in {s:?}: {e}"))?;
    let q = q.trim().parse().map_err(|e| format!("bad Q in {s:?}: {e}"))?;
    Ok((p, q))
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct ScatterArgs {
    #[arg(long, value_enum, default_value = "energy")]
    pub axis: AxisArg,
    /// Start of the axis range (default 0.1 MeV on the energy axis).
    #[arg(long, allow_negative_numbers = true)]
    pub min: Option<f64>,
    /// End of the axis range (default 80 MeV on the energy axis).
    #[arg(long, allow_negative_numbers = true)]
    pub max: Option<f64>,
    #[arg(long, default_value_t = 500)]
    pub steps: usize,
    /// Fixed incident energy (MeV) for the non-energy axes.
    #[arg(long)]
    pub energy: Option<f64>,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct BoundArgs {
    #[arg(long, value_enum, default_value = "both")]
    pub parity: ParityArg,
    /// Also emit the sampled wavefunctions.
    #[arg(long)]
    pub dump_wavefunctions: bool,
    #[arg(long, default_value_t = 401)]
    pub x_samples: usize,
    /// Scale dumped wavefunctions to unit L² norm.
    #[arg(long)]
    pub normalize: bool,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct QuasiboundArgs {
    #[arg(long, value_enum, default_value = "both")]
    pub parity: ParityArg,
    #[arg(long)]
    pub dump_wavefunctions: bool,
    #[arg(long, default_value_t = 401)]
    pub x_samples: usize,
    /// Window for the real part (MeV).
    #[arg(long, default_value_t = 0.0)]
    pub e_min: f64,
    #[arg(long, default_value_t = 60.0)]
    pub e_max: f64,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct ResonancesArgs {
    #[arg(long, default_value_t = 0.0)]
    pub e_min: f64,
    #[arg(long, default_value_t = 60.0)]
    pub e_max: f64,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct VerifyArgs {
    /// Compare against a θ that violates the indicial equation (negative control).
    #[arg(long, hide = true)]
    #[serde(skip)]
    pub debug_corrupt_theta: bool,
}
