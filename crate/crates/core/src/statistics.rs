//! Gaussian (CLT) model of the per-SU energy statistics at the fusion centre.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::real::Real;
use crate::scenario::Scenario;

/// Means, signal shifts and (diagonal) covariances of the energy vector `Z`
/// under both hypotheses.
///
/// The reporting noises are spatially uncorrelated, so `Σ_H0` and `Σ_H1` are
/// diagonal and stored as `var0`/`var1`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FusionStatistics<T> {
    mu0: Vec<T>,
    mu1: Vec<T>,
    theta: Vec<T>,
    var0: Vec<T>,
    var1: Vec<T>,
}

impl<T: Real> FusionStatistics<T> {
    /// Assembles statistics from their parts; `mu1` is derived as `mu0 + theta`.
    pub fn new(mu0: Vec<T>, theta: Vec<T>, var0: Vec<T>, var1: Vec<T>) -> Result<Self> {
        let m = mu0.len();
        if m == 0 {
            return Err(Error::InvalidStatistics("no users".into()));
        }
        for v in [&theta, &var0, &var1] {
            if v.len() != m {
                return Err(Error::LengthMismatch {
                    expected: m,
                    found: v.len(),
                });
            }
        }
        for i in 0..m {
            let ok = mu0[i].is_finite()
                && theta[i] >= T::zero()
                && theta[i].is_finite()
                && var0[i] > T::zero()
                && var1[i] >= var0[i]
                && var1[i].is_finite();
            if !ok {
                return Err(Error::InvalidStatistics(format!(
                    "entry {i}: need theta >= 0, var0 > 0, var1 >= var0 (theta={}, var0={}, var1={})",
                    theta[i], var0[i], var1[i]
                )));
            }
        }
        let mu1 = mu0.iter().zip(&theta).map(|(&a, &b)| a + b).collect();
        Ok(Self {
            mu0,
            mu1,
            theta,
            var0,
            var1,
        })
    }

    /// Statistics of an energy detector over `samples` samples whose H0 mean
    /// is `mu0` and whose H1 mean is `mu0 + theta` (variances `2μ²/K`).
    pub fn from_means(samples: usize, mu0: Vec<T>, theta: Vec<T>) -> Result<Self> {
        let k = T::from_usize(samples).unwrap_or_else(T::nan);
        let two = T::lit(2.0);
        let var0 = mu0.iter().map(|&m| two * m * m / k).collect();
        let var1 = mu0
            .iter()
            .zip(&theta)
            .map(|(&m, &t)| two * (m + t) * (m + t) / k)
            .collect();
        Self::new(mu0, theta, var0, var1)
    }

    pub fn len(&self) -> usize {
        self.mu0.len()
    }
    pub fn is_empty(&self) -> bool {
        self.mu0.is_empty()
    }
    pub fn mu0(&self) -> &[T] {
        &self.mu0
    }
    pub fn mu1(&self) -> &[T] {
        &self.mu1
    }
    pub fn theta(&self) -> &[T] {
        &self.theta
    }
    pub fn var0(&self) -> &[T] {
        &self.var0
    }
    pub fn var1(&self) -> &[T] {
        &self.var1
    }

    /// Per-SU SNR `θ_i / μ0,i` (same definition as [`Scenario::snr`]).
    pub fn snrs(&self) -> Vec<T> {
        self.theta
            .iter()
            .zip(&self.mu0)
            .map(|(&t, &m)| t / m)
            .collect()
    }

    pub fn has_signal(&self) -> bool {
        self.theta.iter().any(|&t| t > T::zero())
    }
}

/// Analytic statistics of a scenario:
/// `μ0 = K σ0²`, `var0 = 2K σ0⁴`, `θ = K P g² h² σ_S²`, `μ1 = μ0 + θ`,
/// `var1 = 2K σ1⁴`.
pub fn statistics<T: Real>(s: &Scenario<T>) -> FusionStatistics<T> {
    let m = s.users();
    let k = T::from_usize(s.samples()).expect("sample count representable");
    let two = T::lit(2.0);
    let mut mu0 = Vec::with_capacity(m);
    let mut mu1 = Vec::with_capacity(m);
    let mut theta = Vec::with_capacity(m);
    let mut var0 = Vec::with_capacity(m);
    let mut var1 = Vec::with_capacity(m);
    for i in 0..m {
        let s0 = s.noise_variance(i);
        let sig = s.signal_variance(i);
        let s1 = sig + s0;
        let m0 = k * s0;
        let t = k * sig;
        mu0.push(m0);
        theta.push(t);
        mu1.push(m0 + t);
        var0.push(two * k * s0 * s0);
        var1.push(two * k * s1 * s1);
    }
    FusionStatistics {
        mu0,
        mu1,
        theta,
        var0,
        var1,
    }
}
