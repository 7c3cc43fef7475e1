//! Physical sensing scenario: PU-SU sensing links, SU-FC reporting links and
//! the energy detector sample count.

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::real::Real;
use crate::seeding::rng_from_seed;

/// Converts a power level in dBm to linear watts.
pub fn dbm_to_watts(dbm: f64) -> f64 {
    10f64.powf((dbm - 30.0) / 10.0)
}

pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

pub fn linear_to_db(x: f64) -> f64 {
    10.0 * x.log10()
}

/// Recipe for drawing random scenarios. All values are linear units except
/// where the field name says otherwise; conversion happens here, not in the
/// model.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScenarioSpec {
    /// Number of cooperating secondary users `M`.
    pub users: usize,
    /// Explicit sample count `K`; when absent `K = 2·Ts·B`.
    pub samples: Option<usize>,
    pub sensing_time_s: f64,
    pub bandwidth_hz: f64,
    /// Inclusive range `[lo, hi]` for the per-SU SNR at the fusion centre.
    pub snr_db: [f64; 2],
    pub relay_power_dbm: f64,
    /// PU signal variance `σ_S²`.
    pub signal_power: f64,
    /// Range for the sensing-noise variances `σ_Wi²`.
    pub sensing_noise: [f64; 2],
    /// Range for the reporting-noise variances `δ_i²`.
    pub reporting_noise: [f64; 2],
}

impl Default for ScenarioSpec {
    fn default() -> Self {
        Self {
            users: 18,
            samples: None,
            sensing_time_s: 25e-6,
            bandwidth_hz: 6e6,
            snr_db: [-15.0, -10.0],
            relay_power_dbm: 12.0,
            signal_power: 1.0,
            sensing_noise: [0.9, 1.1],
            reporting_noise: [0.9, 1.1],
        }
    }
}

impl ScenarioSpec {
    pub fn with_users(mut self, users: usize) -> Self {
        self.users = users;
        self
    }

    pub fn with_snr_db(mut self, lo: f64, hi: f64) -> Self {
        self.snr_db = [lo, hi];
        self
    }

    /// Energy detector sample count `K`.
    pub fn sample_count(&self) -> Result<usize> {
        if let Some(k) = self.samples {
            if k == 0 {
                return Err(Error::InvalidScenario("sample count K must be >= 1".into()));
            }
            return Ok(k);
        }
        let k = 2.0 * self.sensing_time_s * self.bandwidth_hz;
        if !k.is_finite() || k.round() < 1.0 {
            return Err(Error::InvalidScenario(format!(
                "2·Ts·B = {k} does not give at least one sample"
            )));
        }
        Ok(k.round() as usize)
    }

    pub fn relay_power_watts(&self) -> f64 {
        dbm_to_watts(self.relay_power_dbm)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidScenario(msg));
        if self.users == 0 {
            return bad("number of users M must be >= 1".into());
        }
        self.sample_count()?;
        let [lo, hi] = self.snr_db;
        if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
            return bad(format!(
                "SNR range [{lo}, {hi}] dB is not an ordered finite interval"
            ));
        }
        if !(self.relay_power_dbm.is_finite()) {
            return bad("relay power must be finite".into());
        }
        if !(self.signal_power > 0.0 && self.signal_power.is_finite()) {
            return bad(format!(
                "signal power must be positive, got {}",
                self.signal_power
            ));
        }
        for (name, [a, b]) in [
            ("sensing noise", self.sensing_noise),
            ("reporting noise", self.reporting_noise),
        ] {
            if !(a > 0.0 && a <= b && b.is_finite()) {
                return bad(format!(
                    "{name} range [{a}, {b}] must be positive and ordered"
                ));
            }
        }
        Ok(())
    }
}

/// One realization of the physical world. Channels are quasi-static: the
/// gains below hold for the whole sensing interval.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Scenario<T> {
    samples: usize,
    signal_power: T,
    g: Vec<T>,
    h: Vec<T>,
    sensing_noise: Vec<T>,
    reporting_noise: Vec<T>,
    relay_power: Vec<T>,
}

impl<T: Real> Scenario<T> {
    /// Builds a scenario from explicit per-SU parameters.
    ///
    /// `sensing_noise` holds `σ_Wi²`, `reporting_noise` holds `δ_i²` and
    /// `relay_power` holds `P_Ri` in watts.
    pub fn new(
        samples: usize,
        signal_power: T,
        g: Vec<T>,
        h: Vec<T>,
        sensing_noise: Vec<T>,
        reporting_noise: Vec<T>,
        relay_power: Vec<T>,
    ) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidScenario(msg));
        let m = g.len();
        if m == 0 {
            return bad("number of users M must be >= 1".into());
        }
        if samples == 0 {
            return bad("sample count K must be >= 1".into());
        }
        for (name, v) in [
            ("h", &h),
            ("sensing_noise", &sensing_noise),
            ("reporting_noise", &reporting_noise),
            ("relay_power", &relay_power),
        ] {
            if v.len() != m {
                return bad(format!("{name} has {} entries, expected {m}", v.len()));
            }
        }
        if !(signal_power > T::zero() && signal_power.is_finite()) {
            return bad(format!("signal power must be positive, got {signal_power}"));
        }
        if let Some(i) = g.iter().chain(&h).position(|x| !x.is_finite()) {
            return bad(format!("gain {i} is not finite"));
        }
        for (name, v) in [
            ("sensing_noise", &sensing_noise),
            ("reporting_noise", &reporting_noise),
            ("relay_power", &relay_power),
        ] {
            if let Some(i) = v.iter().position(|&x| !(x > T::zero() && x.is_finite())) {
                return bad(format!("{name}[{i}] = {} must be strictly positive", v[i]));
            }
        }
        Ok(Self {
            samples,
            signal_power,
            g,
            h,
            sensing_noise,
            reporting_noise,
            relay_power,
        })
    }

    pub fn users(&self) -> usize {
        self.g.len()
    }
    pub fn samples(&self) -> usize {
        self.samples
    }
    pub fn signal_power(&self) -> T {
        self.signal_power
    }
    pub fn sensing_gain(&self) -> &[T] {
        &self.g
    }
    pub fn reporting_gain(&self) -> &[T] {
        &self.h
    }
    pub fn sensing_noise(&self) -> &[T] {
        &self.sensing_noise
    }
    pub fn reporting_noise(&self) -> &[T] {
        &self.reporting_noise
    }
    pub fn relay_power(&self) -> &[T] {
        &self.relay_power
    }

    /// Per-sample noise variance `σ0,i²` of SU `i`'s signal at the FC.
    pub fn noise_variance(&self, i: usize) -> T {
        self.relay_power[i] * self.h[i] * self.h[i] * self.sensing_noise[i]
            + self.reporting_noise[i]
    }

    /// Per-sample PU signal variance of SU `i` at the FC.
    pub fn signal_variance(&self, i: usize) -> T {
        self.relay_power[i] * self.g[i] * self.g[i] * self.h[i] * self.h[i] * self.signal_power
    }

    /// SNR of SU `i` at the fusion centre: `θ_i / μ0,i`.
    ///
    /// This is the single definition of SNR used throughout the crate (MRC
    /// weights, scenario generation, reporting).
    pub fn snr(&self, i: usize) -> T {
        self.signal_variance(i) / self.noise_variance(i)
    }

    pub fn snrs(&self) -> Vec<T> {
        (0..self.users()).map(|i| self.snr(i)).collect()
    }
}

/// Draws a scenario from `spec`.
///
/// Gains start as magnitudes of unit Gaussians. The reporting gain `h_i` is
/// kept as drawn; the sensing gain is mapped through the half-normal CDF to a
/// target SNR uniform in dB over `spec.snr_db`, and `g_i` is then solved so
/// that the SU's SNR at the FC hits that target exactly.
pub fn generate_scenario<T: Real>(spec: &ScenarioSpec, seed: u64) -> Result<Scenario<T>> {
    spec.validate()?;
    let k = spec.sample_count()?;
    let p = spec.relay_power_watts();
    let sigma_s = spec.signal_power;
    let [snr_lo, snr_hi] = spec.snr_db;
    let mut rng = rng_from_seed(seed);

    let uniform = |rng: &mut crate::seeding::SimRng, [a, b]: [f64; 2]| -> f64 {
        let u: f64 = rng.random();
        a + (b - a) * u
    };

    let m = spec.users;
    let mut g = Vec::with_capacity(m);
    let mut h = Vec::with_capacity(m);
    let mut sw = Vec::with_capacity(m);
    let mut dl = Vec::with_capacity(m);
    for _ in 0..m {
        let h_i = loop {
            let x: f64 = rng.sample::<f64, _>(StandardNormal).abs();
            if x > 0.0 {
                break x;
            }
        };
        let g_raw: f64 = rng.sample::<f64, _>(StandardNormal).abs();
        let sw_i = uniform(&mut rng, spec.sensing_noise);
        let dl_i = uniform(&mut rng, spec.reporting_noise);

        // Half-normal CDF of |g| lies in [0, 1).
        let rank = libm::erf(g_raw * std::f64::consts::FRAC_1_SQRT_2);
        let snr = db_to_linear(snr_lo + (snr_hi - snr_lo) * rank);
        let noise = p * h_i * h_i * sw_i + dl_i;
        let g_i = (snr * noise / (p * h_i * h_i * sigma_s)).sqrt();

        g.push(T::lit(g_i));
        h.push(T::lit(h_i));
        sw.push(T::lit(sw_i));
        dl.push(T::lit(dl_i));
    }
    Scenario::new(k, T::lit(sigma_s), g, h, sw, dl, vec![T::lit(p); m])
}
