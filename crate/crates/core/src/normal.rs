//! Standard normal upper tail `Q(x)` and its inverse.

use crate::error::{Error, Result};
use crate::real::Real;

/// Bracket searched by [`q_tail_inverse`]; `Q(±40)` is 0/1 to double precision.
const BRACKET: f64 = 40.0;
const ABS_TOL: f64 = 1e-12;

/// Upper-tail probability of the standard normal, `Q(x) = P(N(0,1) > x)`.
///
/// Computed as `erfc(x / √2) / 2`, which keeps full relative accuracy deep
/// into the upper tail. Infinite arguments map to 0 and 1.
pub fn q_tail<T: Real>(x: T) -> T {
    let half = T::lit(0.5);
    half * (x * T::FRAC_1_SQRT_2()).erfc()
}

/// Inverse of [`q_tail`]: the `x` with `Q(x) = p`.
///
/// Bisection on the monotone tail until the bracket is narrower than 1e-12
/// (or the scalar type can no longer split it).
pub fn q_tail_inverse<T: Real>(p: T) -> Result<T> {
    if !(p > T::zero() && p < T::one()) {
        return Err(Error::ProbabilityOutOfRange {
            name: "p",
            value: p.as_f64(),
        });
    }
    let two = T::lit(2.0);
    let tol = T::lit(ABS_TOL);
    // Q is decreasing: Q(lo) >= p >= Q(hi).
    let mut lo = -T::lit(BRACKET);
    let mut hi = T::lit(BRACKET);
    loop {
        let mid = (lo + hi) / two;
        if hi - lo <= tol || mid <= lo || mid >= hi {
            return Ok(mid);
        }
        if q_tail(mid) > p {
            lo = mid;
        } else {
            hi = mid;
        }
    }
}
