//! Global false-alarm and detection probabilities of the linear fused
//! statistic `ωᵀZ`, plus the OR-rule hard-decision baseline.

use crate::error::{Error, Result};
use crate::normal::{q_tail, q_tail_inverse};
use crate::real::Real;
use crate::statistics::FusionStatistics;
use crate::weights::WeightVector;

fn check_probability<T: Real>(name: &'static str, p: T) -> Result<()> {
    if p > T::zero() && p < T::one() {
        Ok(())
    } else {
        Err(Error::ProbabilityOutOfRange {
            name,
            value: p.as_f64(),
        })
    }
}

fn check_len<T: Real>(w: &[T], st: &FusionStatistics<T>) -> Result<()> {
    if w.len() != st.len() {
        return Err(Error::LengthMismatch {
            expected: st.len(),
            found: w.len(),
        });
    }
    Ok(())
}

#[inline]
fn dot<T: Real>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).map(|(&x, &y)| x * y).sum()
}

/// `ωᵀ diag(var) ω`.
#[inline]
fn quad<T: Real>(w: &[T], var: &[T]) -> T {
    w.iter().zip(var).map(|(&x, &v)| x * x * v).sum()
}

/// Moments of the fused statistic for one weight vector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FusedMoments<T> {
    pub mean0: T,
    pub mean1: T,
    pub shift: T,
    pub std0: T,
    pub std1: T,
}

impl<T: Real> FusedMoments<T> {
    /// Accepts any nonnegative weights; the result scales linearly with `w`.
    pub fn of(w: &[T], st: &FusionStatistics<T>) -> Self {
        Self {
            mean0: dot(w, st.mu0()),
            mean1: dot(w, st.mu1()),
            shift: dot(w, st.theta()),
            std0: quad(w, st.var0()).sqrt(),
            std1: quad(w, st.var1()).sqrt(),
        }
    }

    /// `Pd` at the threshold whose false-alarm rate has normal quantile `q_pf`.
    #[inline]
    pub fn pd_at_quantile(&self, q_pf: T) -> T {
        q_tail((q_pf * self.std0 - self.shift) / self.std1)
    }
}

/// Global `Pd` for a target global `Pf`:
/// `Q((Q⁻¹(Pf)·√(ωᵀΣ0ω) − ωᵀθ) / √(ωᵀΣ1ω))`.
pub fn pd_given_pf<T: Real>(
    w: &WeightVector<T>,
    st: &FusionStatistics<T>,
    pf_target: T,
) -> Result<T> {
    pd_given_pf_raw(w.as_slice(), st, pf_target)
}

/// [`pd_given_pf`] for unnormalized nonnegative weights. The expression is
/// homogeneous of degree zero in `ω`, so no normalization is needed.
pub fn pd_given_pf_raw<T: Real>(w: &[T], st: &FusionStatistics<T>, pf_target: T) -> Result<T> {
    check_probability("pf_target", pf_target)?;
    check_len(w, st)?;
    Ok(FusedMoments::of(w, st).pd_at_quantile(q_tail_inverse(pf_target)?))
}

/// Global `Pf` for a target global `Pd`:
/// `Q((Q⁻¹(Pd)·√(ωᵀΣ1ω) + ωᵀθ) / √(ωᵀΣ0ω))`.
pub fn pf_given_pd<T: Real>(
    w: &WeightVector<T>,
    st: &FusionStatistics<T>,
    pd_target: T,
) -> Result<T> {
    check_probability("pd_target", pd_target)?;
    check_len(w.as_slice(), st)?;
    let m = FusedMoments::of(w.as_slice(), st);
    Ok(q_tail(
        (q_tail_inverse(pd_target)? * m.std1 + m.shift) / m.std0,
    ))
}

/// `(Pf, Pd)` of the test `ωᵀZ > β`.
pub fn detection_pair<T: Real>(
    w: &WeightVector<T>,
    st: &FusionStatistics<T>,
    beta: T,
) -> Result<(T, T)> {
    check_len(w.as_slice(), st)?;
    let m = FusedMoments::of(w.as_slice(), st);
    Ok((
        q_tail((beta - m.mean0) / m.std0),
        q_tail((beta - m.mean1) / m.std1),
    ))
}

/// Threshold `β` at which the fused test has false-alarm rate `pf_target`.
pub fn threshold_for_pf<T: Real>(
    w: &WeightVector<T>,
    st: &FusionStatistics<T>,
    pf_target: T,
) -> Result<T> {
    check_probability("pf_target", pf_target)?;
    check_len(w.as_slice(), st)?;
    let m = FusedMoments::of(w.as_slice(), st);
    Ok(q_tail_inverse(pf_target)? * m.std0 + m.mean0)
}

/// Deflection coefficient `(ωᵀθ)² / (ωᵀ diag(var) ω)`.
pub fn deflection<T: Real>(w: &[T], theta: &[T], var: &[T]) -> T {
    let num = dot(w, theta);
    num * num / quad(w, var)
}

/// OR-rule hard-decision fusion meeting a global false-alarm target.
///
/// Every SU runs its own energy test at the same local false-alarm rate
/// `α = 1 − (1 − Pf)^(1/M)`, so the global rate `1 − (1 − α)^M` equals the
/// target. Local detection probabilities come from the single-SU form of the
/// Gaussian model and combine as `1 − Π(1 − Pd_i)`. Returns `(Pf, Pd)`.
pub fn or_rule_hdf<T: Real>(st: &FusionStatistics<T>, pf_target: T) -> Result<(T, T)> {
    check_probability("pf_target", pf_target)?;
    let m = T::from_usize(st.len()).expect("user count representable");
    // 1 - (1-pf)^(1/M) without cancellation for small pf.
    let alpha = -((-pf_target).ln_1p() / m).exp_m1();
    let q_alpha = q_tail_inverse(alpha)?;
    let mut log_miss = T::zero();
    let mut log_quiet = T::zero();
    for i in 0..st.len() {
        let pd_i = q_tail((q_alpha * st.var0()[i].sqrt() - st.theta()[i]) / st.var1()[i].sqrt());
        log_miss = log_miss + (-pd_i).ln_1p();
        log_quiet = log_quiet + (-alpha).ln_1p();
    }
    Ok((-log_quiet.exp_m1(), -log_miss.exp_m1()))
}
