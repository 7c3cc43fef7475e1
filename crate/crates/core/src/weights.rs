//! Fusion weight vectors and the analytic weighting schemes.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::real::Real;
use crate::scenario::Scenario;
use crate::statistics::FusionStatistics;

/// Nonnegative fusion coefficients with unit Euclidean norm.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct WeightVector<T>(Vec<T>);

impl<T: Real> WeightVector<T> {
    pub fn as_slice(&self) -> &[T] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_inner(self) -> Vec<T> {
        self.0
    }

    pub fn norm(&self) -> T {
        norm2(&self.0)
    }
}

impl<T> std::ops::Index<usize> for WeightVector<T> {
    type Output = T;
    fn index(&self, i: usize) -> &T {
        &self.0[i]
    }
}

fn norm2<T: Real>(v: &[T]) -> T {
    // Scale by the largest entry so tiny or huge inputs neither underflow nor overflow.
    let scale = v.iter().fold(T::zero(), |m, &x| m.max(x.abs()));
    if scale == T::zero() || !scale.is_finite() {
        return scale;
    }
    let ss: T = v.iter().map(|&x| (x / scale) * (x / scale)).sum();
    scale * ss.sqrt()
}

/// Divides `w` by its 2-norm.
///
/// Fails with [`Error::ZeroWeights`] when no entry is positive, and with
/// [`Error::InvalidWeight`] on negative or non-finite entries.
pub fn normalize<T: Real>(w: &[T]) -> Result<WeightVector<T>> {
    if let Some(index) = w.iter().position(|&x| !(x >= T::zero() && x.is_finite())) {
        return Err(Error::InvalidWeight { index });
    }
    let n = norm2(w);
    if n == T::zero() {
        return Err(Error::ZeroWeights);
    }
    Ok(WeightVector(w.iter().map(|&x| x / n).collect()))
}

/// Equal gain combining: every weight is `√(1/M)`.
pub fn weights_egc<T: Real>(m: usize) -> Result<WeightVector<T>> {
    if m == 0 {
        return Err(Error::InvalidScenario("EGC needs at least one user".into()));
    }
    let w = (T::one() / T::from_usize(m).expect("user count representable")).sqrt();
    Ok(WeightVector(vec![w; m]))
}

/// Maximal ratio combining for a scenario: `ω_i = √(SNR_i / Σ SNR)`.
pub fn weights_mrc<T: Real>(s: &Scenario<T>) -> Result<WeightVector<T>> {
    weights_mrc_from_snr(&s.snrs())
}

/// Maximal ratio combining from explicit per-SU SNRs (linear).
pub fn weights_mrc_from_snr<T: Real>(snr: &[T]) -> Result<WeightVector<T>> {
    if snr.is_empty() {
        return Err(Error::InvalidScenario("MRC needs at least one user".into()));
    }
    if let Some(index) = snr.iter().position(|&x| !(x >= T::zero() && x.is_finite())) {
        return Err(Error::InvalidWeight { index });
    }
    let total: T = snr.iter().copied().sum();
    if total <= T::zero() {
        return Err(Error::NoSignal);
    }
    Ok(WeightVector(
        snr.iter().map(|&x| (x / total).sqrt()).collect(),
    ))
}

fn inverse_variance_direction<T: Real>(
    st: &FusionStatistics<T>,
    var: &[T],
) -> Result<WeightVector<T>> {
    if !st.has_signal() {
        return Err(Error::NoSignal);
    }
    let raw: Vec<T> = st.theta().iter().zip(var).map(|(&t, &v)| t / v).collect();
    normalize(&raw)
}

/// Normal deflection coefficient weights: `ω ∝ Σ_H0⁻¹ θ`.
pub fn weights_ndc<T: Real>(st: &FusionStatistics<T>) -> Result<WeightVector<T>> {
    inverse_variance_direction(st, st.var0())
}

/// Modified deflection coefficient weights: `ω ∝ Σ_H1⁻¹ θ`.
pub fn weights_mdc<T: Real>(st: &FusionStatistics<T>) -> Result<WeightVector<T>> {
    inverse_variance_direction(st, st.var1())
}

/// Fusion scheme label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Scheme {
    #[serde(rename = "EGC")]
    Egc,
    #[serde(rename = "MRC")]
    Mrc,
    #[serde(rename = "NDC")]
    Ndc,
    #[serde(rename = "MDC")]
    Mdc,
    #[serde(rename = "BGA")]
    Bga,
    #[serde(rename = "OR_RULE")]
    OrRule,
}

impl Scheme {
    pub const ALL: [Scheme; 6] = [
        Scheme::Bga,
        Scheme::Ndc,
        Scheme::Mdc,
        Scheme::Mrc,
        Scheme::Egc,
        Scheme::OrRule,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Scheme::Egc => "EGC",
            Scheme::Mrc => "MRC",
            Scheme::Ndc => "NDC",
            Scheme::Mdc => "MDC",
            Scheme::Bga => "BGA",
            Scheme::OrRule => "OR_RULE",
        }
    }

    /// Whether the scheme fuses soft statistics with a weight vector.
    pub fn is_soft(self) -> bool {
        !matches!(self, Scheme::OrRule)
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Scheme {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_uppercase().replace('-', "_").as_str() {
            "EGC" => Ok(Scheme::Egc),
            "MRC" => Ok(Scheme::Mrc),
            "NDC" => Ok(Scheme::Ndc),
            "MDC" => Ok(Scheme::Mdc),
            "BGA" => Ok(Scheme::Bga),
            "OR" | "OR_RULE" => Ok(Scheme::OrRule),
            other => Err(format!("unknown scheme `{other}`")),
        }
    }
}

/// Outcome of one scheme on one set of statistics.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SchemeResult<T> {
    pub scheme: Scheme,
    /// Absent for hard-decision fusion.
    pub weights: Option<WeightVector<T>>,
    pub pd: T,
    pub pf: T,
}
