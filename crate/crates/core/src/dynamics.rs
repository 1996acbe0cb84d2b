//! Walk propagators: classical probabilities and quantum amplitudes by the
//! spectral route, the Bloch mode sum, and the infinite-lattice Bessel limit.
//!
//! All three quantum routes compute the same transition amplitude
//! `α_jk(t) = ⟨j| e^{−iγAt} |k⟩`; the transition probability is its squared
//! modulus. The classical propagator replaces the unitary phase with the
//! decaying exponential `e^{−tγλ}`. Hamiltonians are real symmetric, so the
//! probabilities are symmetric in `j ↔ k`, and on periodic lattices they
//! depend on the node pair only through `(j − k) mod N`.
//!
//! Rates other than γ = 1 enter every formula through the substitution
//! `t → γt`, which is exactly the covariance `π(γ, t) = π(1, γt)`.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::float::{cast, from_usize, Float};
use crate::lattice::{Boundary, LatticeSpec};
use crate::specialfn::bessel_j;
use crate::spectral::SpectralDecomposition;

/// Slack accepted when clamping a squared modulus into [0, 1]; anything
/// further out signals an upstream propagator bug.
pub const PROBABILITY_SLACK: f64 = 1e-9;

/// Tighter slack for the classical propagator, which has no cancellation.
const CLASSICAL_SLACK: f64 = 1e-12;

/// Uniform time grid: `n_samples` points from `t_start` to `t_end`
/// inclusive, all nonnegative, in units of 1/γ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeGrid<T = f64> {
    t_start: T,
    t_end: T,
    n_samples: usize,
}

impl<T: Float> TimeGrid<T> {
    pub fn new(t_start: T, t_end: T, n_samples: usize) -> Result<Self> {
        if t_start < T::zero() || t_start.is_nan() {
            return Err(Error::InvalidTimeGrid("t_start must be nonnegative"));
        }
        if t_end <= t_start || t_end.is_nan() {
            return Err(Error::InvalidTimeGrid("t_end must exceed t_start"));
        }
        if n_samples < 2 {
            return Err(Error::InvalidTimeGrid("need at least 2 samples"));
        }
        Ok(Self {
            t_start,
            t_end,
            n_samples,
        })
    }

    #[inline]
    pub fn t_start(&self) -> T {
        self.t_start
    }

    #[inline]
    pub fn t_end(&self) -> T {
        self.t_end
    }

    #[inline]
    pub fn n_samples(&self) -> usize {
        self.n_samples
    }

    #[inline]
    pub fn dt(&self) -> T {
        (self.t_end - self.t_start) / from_usize::<T>(self.n_samples - 1)
    }

    #[inline]
    pub fn time(&self, i: usize) -> T {
        self.t_start + self.dt() * from_usize::<T>(i)
    }

    pub fn times(&self) -> impl Iterator<Item = T> + '_ {
        (0..self.n_samples).map(move |i| self.time(i))
    }
}

fn check_time<T: Float>(t: T) -> Result<()> {
    if t >= T::zero() {
        Ok(())
    } else {
        Err(Error::NegativeTime {
            got: t.to_f64().unwrap_or(f64::NAN),
        })
    }
}

fn check_gamma<T: Float>(gamma: T) -> Result<()> {
    if gamma > T::zero() {
        Ok(())
    } else {
        Err(Error::NonPositiveGamma {
            got: gamma.to_f64().unwrap_or(f64::NAN),
        })
    }
}

fn clamp_unit_interval<T: Float>(value: T, slack: T) -> Result<T> {
    if value < -slack || value > T::one() + slack {
        return Err(Error::ProbabilityOutOfRange {
            value: value.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(value.max(T::zero()).min(T::one()))
}

/// Classical transition probability `p_jk(t) = ⟨j| Q e^{−tγΛ} Qᵀ |k⟩`.
///
/// Clamped to [0, 1]; rounding may push the raw value out by at most 1e−12.
pub fn classical_probability<T: Float>(
    decomp: &SpectralDecomposition<T>,
    gamma: T,
    t: T,
    j: usize,
    k: usize,
) -> Result<T> {
    check_gamma(gamma)?;
    check_time(t)?;
    decomp.check_node(j)?;
    decomp.check_node(k)?;
    let mut sum = T::zero();
    for (n, &lambda) in decomp.eigenvalues().iter().enumerate() {
        sum += decomp.q(j, n) * decomp.q(k, n) * (-t * gamma * lambda).exp();
    }
    clamp_unit_interval(sum, cast(CLASSICAL_SLACK))
}

/// One full column of classical probabilities `p_{·,start}(t)`.
pub fn classical_column<T: Float>(
    decomp: &SpectralDecomposition<T>,
    gamma: T,
    t: T,
    start: usize,
) -> Result<Vec<T>> {
    check_gamma(gamma)?;
    check_time(t)?;
    decomp.check_node(start)?;
    let n = decomp.order();
    let weights: Vec<T> = (0..n)
        .map(|m| decomp.q(start, m) * (-t * gamma * decomp.eigenvalues()[m]).exp())
        .collect();
    (0..n)
        .map(|j| {
            let mut sum = T::zero();
            for (m, &w) in weights.iter().enumerate() {
                sum += decomp.q(j, m) * w;
            }
            clamp_unit_interval(sum, cast(CLASSICAL_SLACK))
        })
        .collect()
}

/// Quantum transition amplitude through the eigendecomposition:
/// `α_jk(t) = Σ_n Q_jn e^{−itγλ_n} Q_kn`.
pub fn quantum_amplitude_spectral<T: Float>(
    decomp: &SpectralDecomposition<T>,
    gamma: T,
    t: T,
    j: usize,
    k: usize,
) -> Result<Complex<T>> {
    check_gamma(gamma)?;
    check_time(t)?;
    decomp.check_node(j)?;
    decomp.check_node(k)?;
    let mut sum = Complex::new(T::zero(), T::zero());
    for (n, &lambda) in decomp.eigenvalues().iter().enumerate() {
        let weight = decomp.q(j, n) * decomp.q(k, n);
        sum += Complex::from_polar(weight, -t * gamma * lambda);
    }
    Ok(sum)
}

/// One full column of spectral amplitudes `α_{·,start}(t)`, O(N²) per call.
pub fn amplitude_column_spectral<T: Float>(
    decomp: &SpectralDecomposition<T>,
    gamma: T,
    t: T,
    start: usize,
) -> Result<Vec<Complex<T>>> {
    check_gamma(gamma)?;
    check_time(t)?;
    decomp.check_node(start)?;
    let n = decomp.order();
    let weights: Vec<Complex<T>> = (0..n)
        .map(|m| Complex::from_polar(decomp.q(start, m), -t * gamma * decomp.eigenvalues()[m]))
        .collect();
    Ok((0..n)
        .map(|j| {
            let mut sum = Complex::new(T::zero(), T::zero());
            for (m, &w) in weights.iter().enumerate() {
                sum += w * decomp.q(j, m);
            }
            sum
        })
        .collect())
}

/// Quantum amplitude by the Bloch mode sum on a periodic lattice:
/// `α_jk(t) = (e^{−i2γt}/N) Σ_{n=1..N} e^{i2γt cos(2πn/N)} e^{−i2πn(k−j)/N}`.
///
/// The phase convention `e^{−i2πn(k−j)/N}` follows the Wannier inversion of
/// the Bloch states; summing over all modes makes the result symmetric in
/// `j ↔ k`, so probabilities are unaffected by the convention.
pub fn quantum_amplitude_bloch<T: Float>(
    spec: &LatticeSpec<T>,
    t: T,
    j: usize,
    k: usize,
) -> Result<Complex<T>> {
    check_time(t)?;
    spec.check_node(j)?;
    spec.check_node(k)?;
    if spec.boundary() != Boundary::Periodic || spec.n_nodes() < 3 {
        return Err(Error::BlochRequiresPeriodic);
    }
    let offset = (k + spec.n_nodes() - j) % spec.n_nodes();
    Ok(bloch_offset_amplitudes(spec, t)?[offset])
}

/// All Bloch amplitudes of a periodic lattice at time `t`, indexed by the
/// node offset `(k − j) mod N`.
pub fn bloch_offset_amplitudes<T: Float>(spec: &LatticeSpec<T>, t: T) -> Result<Vec<Complex<T>>> {
    check_time(t)?;
    if spec.boundary() != Boundary::Periodic || spec.n_nodes() < 3 {
        return Err(Error::BlochRequiresPeriodic);
    }
    let n_nodes = spec.n_nodes();
    let n_t = from_usize::<T>(n_nodes);
    let two_gt = cast::<T>(2.0) * spec.gamma() * t;
    let mut amplitudes = Vec::with_capacity(n_nodes);
    for offset in 0..n_nodes {
        let d = from_usize::<T>(offset);
        let mut sum = Complex::new(T::zero(), T::zero());
        for n in 1..=n_nodes {
            let theta = T::TAU() * from_usize::<T>(n) / n_t;
            sum += Complex::from_polar(T::one(), two_gt * theta.cos() - theta * d);
        }
        let prefactor = Complex::from_polar(n_t.recip(), -two_gt);
        amplitudes.push(prefactor * sum);
    }
    Ok(amplitudes)
}

/// Quantum amplitude on the infinite lattice:
/// `α(t) = i^d e^{−i2γt} J_d(2γt)` for node offset `d`, so the transition
/// probability is exactly `J_d(2γt)²`.
pub fn quantum_amplitude_infinite<T: Float>(gamma: T, t: T, offset: i64) -> Result<Complex<T>> {
    check_gamma(gamma)?;
    check_time(t)?;
    let arg = cast::<T>(2.0) * gamma * t;
    let magnitude = bessel_j(offset, arg)?;
    let i_power = match offset.rem_euclid(4) {
        0 => Complex::new(T::one(), T::zero()),
        1 => Complex::new(T::zero(), T::one()),
        2 => Complex::new(-T::one(), T::zero()),
        _ => Complex::new(T::zero(), -T::one()),
    };
    Ok(i_power * Complex::from_polar(T::one(), -arg) * magnitude)
}

/// Squared modulus of an amplitude, clamped into [0, 1].
///
/// Values beyond `1 + 1e−9` are rejected: a propagator over an orthonormal
/// node basis cannot produce them, so they indicate a bug rather than noise.
pub fn transition_probability<T: Float>(amplitude: Complex<T>) -> Result<T> {
    clamp_unit_interval(amplitude.norm_sqr(), cast(PROBABILITY_SLACK))
}

/// Exact 3-node-circle transition probability (γ = 1, t in units of 1/γ):
/// `5/9 + (16/9)cos³t − (4/3)cos t` on the diagonal, and the complement
/// split evenly over the two off-diagonal offsets.
pub fn pi_closed_form_n3<T: Float>(t: T, j: usize, k: usize) -> Result<T> {
    check_closed_form_nodes(3, j, k)?;
    let c = t.cos();
    let c3 = c * c * c;
    let value = if j == k {
        cast::<T>(5.0 / 9.0) + cast::<T>(16.0 / 9.0) * c3 - cast::<T>(4.0 / 3.0) * c
    } else {
        // Normalization fixes the off-diagonal branch to
        // 2/9 − (8/9)cos³t + (2/3)cos t, the half-complement of the return
        // probability.
        cast::<T>(2.0 / 9.0) - cast::<T>(8.0 / 9.0) * c3 + cast::<T>(2.0 / 3.0) * c
    };
    clamp_unit_interval(value, cast(PROBABILITY_SLACK))
}

/// Exact 4-node-circle transition probability (γ = 1): `cos⁴t` on the
/// diagonal, `sin⁴t` across the circle, `sin²t cos²t` to the neighbours.
pub fn pi_closed_form_n4<T: Float>(t: T, j: usize, k: usize) -> Result<T> {
    check_closed_form_nodes(4, j, k)?;
    let c = t.cos();
    let s = t.sin();
    let value = match (k + 4 - j) % 4 {
        0 => c * c * c * c,
        2 => s * s * s * s,
        _ => s * s * c * c,
    };
    clamp_unit_interval(value, cast(PROBABILITY_SLACK))
}

fn check_closed_form_nodes(n_nodes: usize, j: usize, k: usize) -> Result<()> {
    for node in [j, k] {
        if node >= n_nodes {
            return Err(Error::NodeOutOfRange { node, n_nodes });
        }
    }
    Ok(())
}
