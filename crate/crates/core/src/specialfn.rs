//! Bessel functions of the first kind, integer order, self-contained.
//!
//! Two regimes: the ascending power series for small arguments, and Miller's
//! downward recurrence normalized with the even-order identity
//! `J_0(x) + 2 Σ_{k≥1} J_{2k}(x) = 1` for large arguments. Negative orders
//! and arguments reduce through the exact parity identities
//! `J_{−n}(x) = (−1)ⁿ J_n(x)` and `J_n(−x) = (−1)ⁿ J_n(x)`.

use crate::error::{Error, Result};
use crate::float::{cast, Float};

/// Largest supported |x|.
pub const MAX_ARGUMENT: f64 = 1e4;
/// Largest supported |n|.
pub const MAX_ORDER: i64 = 10_000;

/// Crossover from the power series to Miller's recurrence.
const SERIES_LIMIT: f64 = 12.0;

/// One Bessel evaluation with its inputs, as reported by the self-check
/// tooling.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesselResult<T = f64> {
    pub order: i64,
    pub argument: T,
    pub value: T,
}

/// `J_n(x)` for integer `n`, absolute error below 1e−10 over the supported
/// domain `|x| ≤ 1e4`, `|n| ≤ 1e4`.
pub fn bessel_j<T: Float>(order: i64, x: T) -> Result<T> {
    if x.is_nan() || x.abs() > cast(MAX_ARGUMENT) {
        return Err(Error::BesselArgumentOutOfDomain {
            argument: x.to_f64().unwrap_or(f64::NAN),
            limit: MAX_ARGUMENT,
        });
    }
    if order.abs() > MAX_ORDER {
        return Err(Error::BesselOrderOutOfDomain {
            order,
            limit: MAX_ORDER,
        });
    }

    let n = order.unsigned_abs() as usize;
    let ax = x.abs();
    // J_{-n}(x) = (-1)^n J_n(x) and J_n(-x) = (-1)^n J_n(x), both exact.
    let mut negate = false;
    if !n.is_multiple_of(2) {
        if order < 0 {
            negate = !negate;
        }
        if x < T::zero() {
            negate = !negate;
        }
    }

    let value = if ax < cast(SERIES_LIMIT) {
        series(n, ax)
    } else {
        miller(n, ax)
    };
    Ok(if negate { -value } else { value })
}

/// [`bessel_j`] packaged with its inputs.
pub fn bessel_j_eval<T: Float>(order: i64, x: T) -> Result<BesselResult<T>> {
    Ok(BesselResult {
        order,
        argument: x,
        value: bessel_j(order, x)?,
    })
}

/// Ascending series Σ_m (−1)^m (x/2)^{n+2m} / (m! (n+m)!), for 0 ≤ x < 12
/// where cancellation costs at most four digits.
fn series<T: Float>(n: usize, x: T) -> T {
    let half = x * cast::<T>(0.5);
    let quarter_sq = half * half;
    // Leading term (x/2)^n / n!, built incrementally so large n underflows
    // to zero instead of overflowing intermediate factorials.
    let mut term = T::one();
    for k in 1..=n {
        term = term * half / cast::<T>(k as f64);
        if term == T::zero() {
            return T::zero();
        }
    }
    let mut sum = term;
    for m in 1..300 {
        let m_t = cast::<T>(m as f64);
        let nm_t = cast::<T>((n + m) as f64);
        term = -term * quarter_sq / (m_t * nm_t);
        sum += term;
        if term.abs() <= sum.abs() * T::epsilon() {
            break;
        }
    }
    sum
}

/// Miller's downward recurrence with even-order normalization, for x ≥ 12.
///
/// The start order must sit above both the target order and the turning
/// point at `m ≈ x`, so it is seeded from `max(n, ⌈x⌉)` plus the usual
/// `⌈√(40·m)⌉ + 40` safety margin, rounded up to even.
fn miller<T: Float>(n: usize, x: T) -> T {
    let m0 = n.max(x.ceil().to_usize().unwrap_or(0));
    let mut start = m0 + ((40.0 * m0 as f64).sqrt().ceil() as usize) + 40;
    if !start.is_multiple_of(2) {
        start += 1;
    }

    let rescale_limit = T::max_value().sqrt();
    let two = cast::<T>(2.0);
    let x_inv = x.recip();

    let mut above = T::zero(); // J_{m+1} (unnormalized)
    let mut current = T::min_positive_value().sqrt(); // J_m seed
    let mut target = T::zero();
    let mut even_sum = T::zero();

    let mut m = start;
    loop {
        if m == n {
            target = current;
        }
        if m.is_multiple_of(2) {
            even_sum += current;
        }
        if m == 0 {
            break;
        }
        let next = two * cast::<T>(m as f64) * x_inv * current - above;
        above = current;
        current = next;
        m -= 1;

        if current.abs() > rescale_limit {
            current /= rescale_limit;
            above /= rescale_limit;
            even_sum /= rescale_limit;
            target /= rescale_limit;
        }
    }
    // even_sum includes J_0 once: J_0 + 2 Σ_{k≥1} J_2k = 2·even_sum − J_0.
    let normalization = two * even_sum - current;
    target / normalization
}
