use super::log_gamma_ratio;
use crate::error::Result;
use crate::model::DerivedParams;
use crate::C64;

/// Γ-ratios linking the `z = 0` and `z = 1` hypergeometric solutions.
///
/// The same four numbers serve both half-lines (the right-hand `M_i` equal
/// the left-hand `N_i`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConnectionCoefficients {
    pub n1: C64,
    pub n2: C64,
    pub n3: C64,
    pub n4: C64,
    pub log_n1: C64,
    pub log_n2: C64,
    pub log_n3: C64,
    pub log_n4: C64,
}

impl ConnectionCoefficients {
    pub fn as_array(&self) -> [C64; 4] {
        [self.n1, self.n2, self.n3, self.n4]
    }
}

pub fn connection_coefficients(dp: &DerivedParams) -> Result<ConnectionCoefficients> {
    let (a1, b1, c1) = (dp.a1, dp.b1, dp.c1);
    let s = c1 - a1 - b1;
    let one = C64::new(1.0, 0.0);
    let two = C64::new(2.0, 0.0);

    let log_n1 = ratio(&[c1, s], &[c1 - a1, c1 - b1])?;
    let log_n2 = ratio(&[c1, -s], &[a1, b1])?;
    let log_n3 = ratio(&[two - c1, s], &[one - a1, one - b1])?;
    let log_n4 = ratio(&[two - c1, -s], &[one + a1 - c1, one + b1 - c1])?;

    Ok(ConnectionCoefficients {
        n1: log_n1.exp(),
        n2: log_n2.exp(),
        n3: log_n3.exp(),
        n4: log_n4.exp(),
        log_n1,
        log_n2,
        log_n3,
        log_n4,
    })
}

/// A vanishing ratio is represented by a log of -∞.
fn ratio(num: &[C64], den: &[C64]) -> Result<C64> {
    Ok(log_gamma_ratio(num, den)?.unwrap_or(C64::new(f64::NEG_INFINITY, 0.0)))
}
