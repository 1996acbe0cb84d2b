//! Observables built on top of the propagators: limiting distributions,
//! revival times, first-revival detection, and spacetime probability carpets.

use crate::dynamics::{
    amplitude_column_spectral, bloch_offset_amplitudes, classical_column, transition_probability,
    TimeGrid,
};
use crate::error::{Error, Result};
use crate::float::{cast, from_usize, Float};
use crate::lattice::{build_adjacency, Boundary, LatticeSpec};
use crate::spectral::{eigendecompose_symmetric, SpectralDecomposition, DEFAULT_TOLERANCE};

/// Long-time average of the quantum transition probability from a fixed
/// start node: one value per target node, summing to 1.
#[derive(Debug, Clone, PartialEq)]
pub struct LimitingDistribution<T = f64> {
    start_node: usize,
    values: Vec<T>,
}

impl<T: Float> LimitingDistribution<T> {
    fn new(start_node: usize, values: Vec<T>) -> Result<Self> {
        let sum: T = values.iter().copied().sum();
        let deviation = (sum - T::one()).abs();
        if deviation > cast(1e-10) {
            return Err(Error::Analysis(format!(
                "limiting distribution sums to 1{:+e}, beyond 1e-10",
                deviation.to_f64().unwrap_or(f64::NAN)
            )));
        }
        Ok(Self { start_node, values })
    }

    #[inline]
    pub fn start_node(&self) -> usize {
        self.start_node
    }

    #[inline]
    pub fn values(&self) -> &[T] {
        &self.values
    }

    /// Nodes attaining the maximum value, with ties resolved at `tol`.
    pub fn maxima(&self, tol: T) -> Vec<usize> {
        let max = self.values.iter().copied().fold(T::neg_infinity(), T::max);
        (0..self.values.len())
            .filter(|&j| self.values[j] >= max - tol)
            .collect()
    }
}

/// Exact limiting distribution via degeneracy grouping:
/// `χ_kj = Σ_{E distinct} (Σ_{n: λ_n≈E} Q_jn Q_kn)²`.
///
/// Cross terms between distinct eigenvalues oscillate and average to zero,
/// so the time average reduces to the eigenspace projectors; no sampling is
/// involved.
pub fn limiting_distribution<T: Float>(
    decomp: &SpectralDecomposition<T>,
    start_node: usize,
    degeneracy_tol: T,
) -> Result<LimitingDistribution<T>> {
    decomp.check_node(start_node)?;
    let n = decomp.order();
    let clusters = decomp.degeneracy_clusters(degeneracy_tol);
    let mut values = vec![T::zero(); n];
    for (j, value) in values.iter_mut().enumerate() {
        let mut total = T::zero();
        for cluster in &clusters {
            let mut projector = T::zero();
            for m in cluster.clone() {
                projector += decomp.q(j, m) * decomp.q(start_node, m);
            }
            total += projector * projector;
        }
        *value = total;
    }
    LimitingDistribution::new(start_node, values)
}

/// Sampled limiting distribution: trapezoidal time average of the spectral
/// transition probabilities over `[0, t_total]`.
///
/// Requires `t_total ≥ 100·N` and at least 10⁴ samples; at those defaults it
/// agrees with [`limiting_distribution`] to within 5e−3.
pub fn limiting_distribution_by_average<T: Float>(
    spec: &LatticeSpec<T>,
    start_node: usize,
    t_total: T,
    n_samples: usize,
) -> Result<LimitingDistribution<T>> {
    spec.check_node(start_node)?;
    let min_t = cast::<T>(100.0) * from_usize::<T>(spec.n_nodes());
    if t_total < min_t || t_total.is_nan() {
        return Err(Error::Analysis(format!(
            "averaging window {} too short; need at least 100 x n_nodes = {}",
            t_total, min_t
        )));
    }
    if n_samples < 10_000 {
        return Err(Error::Analysis(format!(
            "{n_samples} samples too few for the time average; need at least 10000"
        )));
    }
    let adjacency = build_adjacency(spec)?;
    let decomp = eigendecompose_symmetric(&adjacency, cast(DEFAULT_TOLERANCE))?;
    let n = spec.n_nodes();
    let dt = t_total / from_usize::<T>(n_samples - 1);
    let mut accumulated = vec![T::zero(); n];
    for i in 0..n_samples {
        let t = dt * from_usize::<T>(i);
        let column = amplitude_column_spectral(&decomp, spec.gamma(), t, start_node)?;
        let edge = i == 0 || i == n_samples - 1;
        let weight = if edge { cast::<T>(0.5) } else { T::one() };
        for (j, amplitude) in column.iter().enumerate() {
            accumulated[j] += weight * transition_probability(*amplitude)?;
        }
    }
    let norm = from_usize::<T>(n_samples - 1);
    let values: Vec<T> = accumulated.into_iter().map(|v| v / norm).collect();
    LimitingDistribution::new(start_node, values)
}

/// Per-mode revival times of the periodic lattice:
/// `τ_n = rπ / (1 − cos(2πn/N))` for modes `n = 1..N−1`.
///
/// The zero mode `n = N` carries no phase and has no finite revival period,
/// so it is excluded; entry `i` of the result is mode `n = i + 1`.
pub fn revival_times<T: Float>(n_nodes: usize, r: u32) -> Result<Vec<T>> {
    if n_nodes < 3 {
        return Err(Error::TooFewNodes {
            needed: 3,
            got: n_nodes,
        });
    }
    if r == 0 {
        return Err(Error::Analysis(
            "revival multiplier r must be a positive integer".into(),
        ));
    }
    let r_pi = cast::<T>(r as f64) * T::PI();
    let n_t = from_usize::<T>(n_nodes);
    Ok((1..n_nodes)
        .map(|n| {
            let theta = T::TAU() * from_usize::<T>(n) / n_t;
            r_pi / (T::one() - theta.cos())
        })
        .collect())
}

/// Outcome of a first-revival search: the per-mode times, the universal
/// small-mode scale `τ₀ = N²/2π`, and the located return-probability peak.
#[derive(Debug, Clone, PartialEq)]
pub struct RevivalReport<T = f64> {
    pub mode_times: Vec<T>,
    pub tau0: T,
    pub detected_first_revival: T,
    pub detected_peak_probability: T,
}

/// Locates the first revival as the maximum of the return probability
/// `π_00(t)` inside the window, sampling at spacing ≤ 0.05/γ and refining by
/// golden-section search to ±1e−3.
///
/// The window must start no earlier than `N/2`: the wavefront has to come
/// back before any revival can happen. Periodic lattices only; the mode
/// formula has no reflecting-boundary analogue.
pub fn first_revival_search<T: Float>(
    spec: &LatticeSpec<T>,
    window: &TimeGrid<T>,
) -> Result<RevivalReport<T>> {
    if spec.boundary() != Boundary::Periodic {
        return Err(Error::Analysis(
            "revival analysis is defined for periodic lattices".into(),
        ));
    }
    let n = spec.n_nodes();
    let half_n = from_usize::<T>(n) / cast::<T>(2.0);
    if window.t_start() < half_n {
        return Err(Error::Analysis(format!(
            "revival window starts at {}, before the wave can return at N/2 = {}",
            window.t_start(),
            half_n
        )));
    }

    let adjacency = build_adjacency(spec)?;
    let decomp = eigendecompose_symmetric(&adjacency, cast(DEFAULT_TOLERANCE))?;
    // Return probability needs only the squared start-node components.
    let weights: Vec<T> = (0..n).map(|m| decomp.q(0, m) * decomp.q(0, m)).collect();
    let return_probability = |t: T| -> T {
        let mut re = T::zero();
        let mut im = T::zero();
        for (m, &w) in weights.iter().enumerate() {
            let phase = -t * spec.gamma() * decomp.eigenvalues()[m];
            re += w * phase.cos();
            im += w * phase.sin();
        }
        re * re + im * im
    };

    let span = window.t_end() - window.t_start();
    let coarse = span / cast::<T>(0.05);
    let n_samples = window
        .n_samples()
        .max(coarse.ceil().to_usize().unwrap_or(0) + 1)
        .max(2);
    let dt = span / from_usize::<T>(n_samples - 1);
    let mut best_i = 0;
    let mut best_p = T::neg_infinity();
    for i in 0..n_samples {
        let t = window.t_start() + dt * from_usize::<T>(i);
        let p = return_probability(t);
        if p > best_p {
            best_p = p;
            best_i = i;
        }
    }

    // Golden-section refinement inside the bracketing pair of samples.
    let mut a = window.t_start() + dt * from_usize::<T>(best_i.saturating_sub(1));
    let mut b = (window.t_start() + dt * from_usize::<T>(best_i + 1)).min(window.t_end());
    let ratio = cast::<T>(0.618_033_988_749_894_9);
    let mut x1 = b - ratio * (b - a);
    let mut x2 = a + ratio * (b - a);
    let mut f1 = return_probability(x1);
    let mut f2 = return_probability(x2);
    while b - a > cast(1e-3) {
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + ratio * (b - a);
            f2 = return_probability(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - ratio * (b - a);
            f1 = return_probability(x1);
        }
    }
    let detected = (a + b) / cast::<T>(2.0);
    let peak = return_probability(detected);

    Ok(RevivalReport {
        mode_times: revival_times(n, 1)?,
        tau0: from_usize::<T>(n * n) / T::TAU(),
        detected_first_revival: detected,
        detected_peak_probability: peak.max(best_p),
    })
}

/// Propagation route used to fill a quantum carpet.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CarpetMethod {
    /// Eigendecomposition of the adjacency matrix; works for both boundaries.
    Spectral,
    /// Bloch mode sum; periodic lattices only.
    Bloch,
}

/// Transition probabilities from a fixed start node to every node, sampled
/// on a time grid: the data behind the spacetime carpet plots.
///
/// Row `i` is the probability distribution at `times.time(i)`; every row
/// sums to 1 within 1e−9 and every entry lies in [0, 1].
#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilityCarpet<T = f64> {
    spec: LatticeSpec<T>,
    start_node: usize,
    times: TimeGrid<T>,
    values: Vec<T>,
}

impl<T: Float> ProbabilityCarpet<T> {
    fn from_rows(
        spec: LatticeSpec<T>,
        start_node: usize,
        times: TimeGrid<T>,
        values: Vec<T>,
    ) -> Result<Self> {
        let n = spec.n_nodes();
        for (i, row) in values.chunks_exact(n).enumerate() {
            let sum: T = row.iter().copied().sum();
            if (sum - T::one()).abs() > cast(1e-9) {
                return Err(Error::Analysis(format!(
                    "carpet row {i} sums to {sum}, beyond 1e-9 of unity"
                )));
            }
        }
        Ok(Self {
            spec,
            start_node,
            times,
            values,
        })
    }

    #[inline]
    pub fn spec(&self) -> &LatticeSpec<T> {
        &self.spec
    }

    #[inline]
    pub fn start_node(&self) -> usize {
        self.start_node
    }

    #[inline]
    pub fn times(&self) -> &TimeGrid<T> {
        &self.times
    }

    #[inline]
    pub fn n_nodes(&self) -> usize {
        self.spec.n_nodes()
    }

    #[inline]
    pub fn n_samples(&self) -> usize {
        self.times.n_samples()
    }

    /// Probability distribution over nodes at time sample `i`.
    #[inline]
    pub fn row(&self, i: usize) -> &[T] {
        let n = self.n_nodes();
        &self.values[i * n..(i + 1) * n]
    }

    #[inline]
    pub fn get(&self, sample: usize, node: usize) -> T {
        self.values[sample * self.n_nodes() + node]
    }

    /// Largest probability anywhere on the carpet.
    pub fn max_value(&self) -> T {
        self.values.iter().copied().fold(T::zero(), T::max)
    }
}

/// Quantum carpet from a fixed start node, by either propagation route.
/// On periodic lattices the two routes agree to 1e−10 per entry.
pub fn generate_carpet<T: Float>(
    spec: &LatticeSpec<T>,
    start_node: usize,
    times: &TimeGrid<T>,
    method: CarpetMethod,
) -> Result<ProbabilityCarpet<T>> {
    spec.check_node(start_node)?;
    let n = spec.n_nodes();
    let mut values = Vec::with_capacity(times.n_samples() * n);
    match method {
        CarpetMethod::Spectral => {
            let adjacency = build_adjacency(spec)?;
            let decomp = eigendecompose_symmetric(&adjacency, cast(DEFAULT_TOLERANCE))?;
            for t in times.times() {
                let column = amplitude_column_spectral(&decomp, spec.gamma(), t, start_node)?;
                for amplitude in column {
                    values.push(transition_probability(amplitude)?);
                }
            }
        }
        CarpetMethod::Bloch => {
            if spec.boundary() != Boundary::Periodic {
                return Err(Error::BlochRequiresPeriodic);
            }
            for t in times.times() {
                let offsets = bloch_offset_amplitudes(spec, t)?;
                for j in 0..n {
                    let offset = (j + n - start_node) % n;
                    values.push(transition_probability(offsets[offset])?);
                }
            }
        }
    }
    ProbabilityCarpet::from_rows(*spec, start_node, *times, values)
}

/// Classical carpet: the decaying master-equation counterpart of
/// [`generate_carpet`]; rows converge monotonically toward the uniform
/// distribution.
pub fn classical_carpet<T: Float>(
    spec: &LatticeSpec<T>,
    start_node: usize,
    times: &TimeGrid<T>,
) -> Result<ProbabilityCarpet<T>> {
    spec.check_node(start_node)?;
    let adjacency = build_adjacency(spec)?;
    let decomp = eigendecompose_symmetric(&adjacency, cast(DEFAULT_TOLERANCE))?;
    let mut values = Vec::with_capacity(times.n_samples() * spec.n_nodes());
    for t in times.times() {
        values.extend(classical_column(&decomp, spec.gamma(), t, start_node)?);
    }
    ProbabilityCarpet::from_rows(*spec, start_node, *times, values)
}
