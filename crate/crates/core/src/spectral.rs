//! Symmetric eigendecomposition of lattice adjacency matrices.
//!
//! Two independent routes to the spectrum:
//!
//! - [`eigendecompose_symmetric`]: cyclic Jacobi rotations on the dense
//!   matrix, sweeping until the off-diagonal Frobenius norm drops below the
//!   requested tolerance;
//! - [`circulant_spectrum`]: the closed-form eigenvalues
//!   `λ_n = 2 − 2 cos(2πn/N)` of the periodic (circulant) lattice.
//!
//! The decomposition is deterministic: fixed sweep order, eigenvalues sorted
//! ascending, degenerate eigenvectors re-orthonormalized in cluster order,
//! and a fixed sign convention (the largest-magnitude component of each
//! eigenvector is positive; first such component wins on ties).

use crate::error::{Error, Result};
use crate::float::{cast, from_usize, Float};
use crate::lattice::AdjacencyMatrix;
use crate::matrix::SquareMatrix;

/// Default residual tolerance for the Jacobi iteration, leaving headroom for
/// the 1e−10 cross-method checks downstream.
pub const DEFAULT_TOLERANCE: f64 = 1e-12;

/// Default absolute threshold under which two eigenvalues are treated as one
/// degenerate cluster. Lattice eigenvalue gaps at desk scale are ≥ 1e−3 and
/// Jacobi residuals ≤ 1e−12, so the two regimes are well separated.
pub const DEFAULT_DEGENERACY_TOLERANCE: f64 = 1e-8;

const MAX_SWEEPS: usize = 100;
const TOLERANCE_RANGE: (f64, f64) = (1e-14, 1e-6);

/// Eigenvalues and orthonormal eigenvectors of an adjacency matrix.
///
/// Eigenvalues are ascending; column `n` of the eigenvector matrix pairs with
/// eigenvalue `n`. Within `residual_tolerance` the matrix is orthonormal,
/// `A·Q = Q·Λ` holds, all eigenvalues are nonnegative, and the smallest one
/// is zero with the uniform vector in its eigenspace.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition<T = f64> {
    eigenvalues: Vec<T>,
    eigenvectors: SquareMatrix<T>,
    residual_tolerance: T,
}

impl<T: Float> SpectralDecomposition<T> {
    #[inline]
    pub fn order(&self) -> usize {
        self.eigenvalues.len()
    }

    #[inline]
    pub fn eigenvalues(&self) -> &[T] {
        &self.eigenvalues
    }

    /// Component `i` of eigenvector `n`.
    #[inline]
    pub fn q(&self, i: usize, n: usize) -> T {
        self.eigenvectors.get(i, n)
    }

    pub fn eigenvectors(&self) -> &SquareMatrix<T> {
        &self.eigenvectors
    }

    pub fn eigenvector(&self, n: usize) -> Vec<T> {
        self.eigenvectors.column(n)
    }

    #[inline]
    pub fn residual_tolerance(&self) -> T {
        self.residual_tolerance
    }

    /// Groups eigenvalue indices into clusters of near-equal values: a new
    /// cluster starts whenever the gap to the previous eigenvalue exceeds
    /// `tol`. Eigenvalues are ascending, so clusters are contiguous ranges.
    pub fn degeneracy_clusters(&self, tol: T) -> Vec<std::ops::Range<usize>> {
        let mut clusters = Vec::new();
        let n = self.order();
        let mut start = 0;
        for i in 1..n {
            if self.eigenvalues[i] - self.eigenvalues[i - 1] > tol {
                clusters.push(start..i);
                start = i;
            }
        }
        if n > 0 {
            clusters.push(start..n);
        }
        clusters
    }

    pub(crate) fn check_node(&self, node: usize) -> Result<()> {
        if node < self.order() {
            Ok(())
        } else {
            Err(Error::NodeOutOfRange {
                node,
                n_nodes: self.order(),
            })
        }
    }
}

/// Closed-form spectrum of the periodic lattice, mode-indexed: entry `i`
/// holds `λ_n = 2 − 2 cos(2πn/N)` for mode `n = i + 1`, n = 1..N (unsorted).
pub fn circulant_spectrum<T: Float>(n_nodes: usize) -> Result<Vec<T>> {
    if n_nodes < 3 {
        return Err(Error::TooFewNodes {
            needed: 3,
            got: n_nodes,
        });
    }
    let two = cast::<T>(2.0);
    let n_t = from_usize::<T>(n_nodes);
    Ok((1..=n_nodes)
        .map(|n| {
            let theta = T::TAU() * from_usize::<T>(n) / n_t;
            two - two * theta.cos()
        })
        .collect())
}

/// Frobenius norm of the off-diagonal part.
fn off_diagonal_norm<T: Float>(a: &SquareMatrix<T>) -> T {
    let n = a.order();
    let mut sum = T::zero();
    for i in 0..n {
        for j in (i + 1)..n {
            let v = a.get(i, j);
            sum += v * v;
        }
    }
    (sum + sum).sqrt()
}

/// Cyclic Jacobi eigensolver for a symmetric matrix.
///
/// Only the upper triangle of `input` is read. Returns unsorted eigenvalues
/// and the accumulated rotation matrix whose columns are the eigenvectors.
/// Sweeps run in fixed (p, q) order until the off-diagonal Frobenius norm
/// drops below `tol`; exceeding `max_sweeps` is a [`Error::NoConvergence`]
/// carrying the achieved residual.
pub fn jacobi_symmetric<T: Float>(
    input: &SquareMatrix<T>,
    tol: T,
    max_sweeps: usize,
) -> Result<(Vec<T>, SquareMatrix<T>)> {
    let n = input.order();
    let mut a = SquareMatrix::from_fn(n, |i, j| {
        if i <= j {
            input.get(i, j)
        } else {
            input.get(j, i)
        }
    });
    let mut v = SquareMatrix::<T>::identity(n);
    let mut d: Vec<T> = (0..n).map(|i| a.get(i, i)).collect();
    if n <= 1 {
        return Ok((d, v));
    }
    let mut b = d.clone();
    let mut z = vec![T::zero(); n];

    let one = T::one();
    let half = cast::<T>(0.5);
    // Guard against overflow in theta^2 for extreme off-diagonal ratios.
    let theta_cap = T::max_value().sqrt() * half;

    for _ in 0..max_sweeps {
        if off_diagonal_norm(&a) < tol {
            return Ok((d, v));
        }
        for p in 0..n - 1 {
            for q in (p + 1)..n {
                let apq = a.get(p, q);
                if apq == T::zero() {
                    continue;
                }
                let theta = half * (d[q] - d[p]) / apq;
                let t = if theta.abs() > theta_cap {
                    (theta + theta).recip()
                } else {
                    let t = one / (theta.abs() + (one + theta * theta).sqrt());
                    if theta < T::zero() {
                        -t
                    } else {
                        t
                    }
                };
                let c = one / (one + t * t).sqrt();
                let s = t * c;
                let tau = s / (one + c);
                let h = t * apq;
                z[p] -= h;
                z[q] += h;
                d[p] -= h;
                d[q] += h;
                a.set(p, q, T::zero());
                a.set(q, p, T::zero());

                let rot = |g: T, hh: T| (g - s * (hh + g * tau), hh + s * (g - hh * tau));
                for j in 0..p {
                    let (gp, gq) = rot(a.get(j, p), a.get(j, q));
                    a.set(j, p, gp);
                    a.set(p, j, gp);
                    a.set(j, q, gq);
                    a.set(q, j, gq);
                }
                for j in (p + 1)..q {
                    let (gp, gq) = rot(a.get(p, j), a.get(j, q));
                    a.set(p, j, gp);
                    a.set(j, p, gp);
                    a.set(j, q, gq);
                    a.set(q, j, gq);
                }
                for j in (q + 1)..n {
                    let (gp, gq) = rot(a.get(p, j), a.get(q, j));
                    a.set(p, j, gp);
                    a.set(j, p, gp);
                    a.set(q, j, gq);
                    a.set(j, q, gq);
                }
                let vdata = v.data_mut();
                for j in 0..n {
                    let g = vdata[j * n + p];
                    let hh = vdata[j * n + q];
                    vdata[j * n + p] = g - s * (hh + g * tau);
                    vdata[j * n + q] = hh + s * (g - hh * tau);
                }
            }
        }
        for i in 0..n {
            b[i] += z[i];
            d[i] = b[i];
            z[i] = T::zero();
        }
    }
    let achieved = off_diagonal_norm(&a);
    if achieved < tol {
        return Ok((d, v));
    }
    Err(Error::NoConvergence {
        sweeps: max_sweeps,
        achieved: achieved.to_f64().unwrap_or(f64::NAN),
        tolerance: tol.to_f64().unwrap_or(f64::NAN),
    })
}

/// Diagonalizes an adjacency matrix: Jacobi sweeps, eigenvalues sorted
/// ascending, degenerate clusters re-orthonormalized, fixed sign convention,
/// and every type invariant verified against `tol` before returning.
pub fn eigendecompose_symmetric<T: Float>(
    a: &AdjacencyMatrix,
    tol: T,
) -> Result<SpectralDecomposition<T>> {
    let tol_f64 = tol.to_f64().unwrap_or(f64::NAN);
    if !(TOLERANCE_RANGE.0..=TOLERANCE_RANGE.1).contains(&tol_f64) {
        return Err(Error::ToleranceOutOfRange {
            got: tol_f64,
            min: TOLERANCE_RANGE.0,
            max: TOLERANCE_RANGE.1,
        });
    }
    let n = a.order();
    let (raw_values, raw_vectors) = jacobi_symmetric(&a.to_dense::<T>(), tol, MAX_SWEEPS)?;

    // Ascending eigenvalue order, columns permuted alongside.
    let mut perm: Vec<usize> = (0..n).collect();
    perm.sort_by(|&i, &j| raw_values[i].partial_cmp(&raw_values[j]).expect("finite"));
    let eigenvalues: Vec<T> = perm.iter().map(|&i| raw_values[i]).collect();
    let mut q = SquareMatrix::from_fn(n, |i, col| raw_vectors.get(i, perm[col]));

    let mut decomposition = SpectralDecomposition {
        eigenvalues,
        eigenvectors: q.clone(),
        residual_tolerance: tol,
    };

    // Re-orthonormalize within each degeneracy cluster (modified Gram-Schmidt
    // in column order). Jacobi already delivers near-orthogonal columns; this
    // cleans up the arbitrary mixing inside degenerate eigenspaces.
    for cluster in decomposition.degeneracy_clusters(cast(DEFAULT_DEGENERACY_TOLERANCE)) {
        if cluster.len() < 2 {
            continue;
        }
        for col in cluster.clone() {
            for prev in cluster.start..col {
                let mut dot = T::zero();
                for i in 0..n {
                    dot += q.get(i, prev) * q.get(i, col);
                }
                for i in 0..n {
                    let v = q.get(i, col) - dot * q.get(i, prev);
                    q.set(i, col, v);
                }
            }
            let mut norm = T::zero();
            for i in 0..n {
                let v = q.get(i, col);
                norm += v * v;
            }
            let norm = norm.sqrt();
            for i in 0..n {
                q.set(i, col, q.get(i, col) / norm);
            }
        }
    }

    // Sign convention: first component of largest magnitude is positive.
    for col in 0..n {
        let mut best = 0;
        for i in 1..n {
            if q.get(i, col).abs() > q.get(best, col).abs() {
                best = i;
            }
        }
        if q.get(best, col) < T::zero() {
            for i in 0..n {
                q.set(i, col, -q.get(i, col));
            }
        }
    }

    decomposition.eigenvectors = q;
    validate(&decomposition, a)?;
    Ok(decomposition)
}

/// Checks every `SpectralDecomposition` invariant against the source matrix.
fn validate<T: Float>(d: &SpectralDecomposition<T>, a: &AdjacencyMatrix) -> Result<()> {
    let n = d.order();
    let tol = d.residual_tolerance;
    let q = &d.eigenvectors;

    let fail = |check: &'static str, achieved: T| {
        Err(Error::ResidualExceeded {
            check,
            achieved: achieved.to_f64().unwrap_or(f64::NAN),
            tolerance: tol.to_f64().unwrap_or(f64::NAN),
        })
    };

    // QᵀQ = I, max deviation per entry.
    let mut worst = T::zero();
    for i in 0..n {
        for j in i..n {
            let mut dot = T::zero();
            for k in 0..n {
                dot += q.get(k, i) * q.get(k, j);
            }
            let target = if i == j { T::one() } else { T::zero() };
            worst = worst.max((dot - target).abs());
        }
    }
    if worst > tol {
        return fail("eigenvector orthonormality", worst);
    }

    // A·Q = Q·Λ, max deviation per entry.
    let mut worst = T::zero();
    for i in 0..n {
        for col in 0..n {
            let mut av = T::zero();
            for k in 0..n {
                let aik = T::from_i32(a.get(i, k)).expect("i32 converts to any Float");
                av += aik * q.get(k, col);
            }
            worst = worst.max((av - d.eigenvalues[col] * q.get(i, col)).abs());
        }
    }
    if worst > tol {
        return fail("eigenpair", worst);
    }

    // Laplacian positive semidefiniteness.
    if d.eigenvalues[0] < -tol {
        return fail("eigenvalue nonnegativity", -d.eigenvalues[0]);
    }
    if d.eigenvalues[0].abs() > tol {
        return fail("zero mode", d.eigenvalues[0].abs());
    }

    // Uniform vector lies in the λ=0 eigenspace: the squared norm of its
    // projection onto the zero cluster must be 1 (second-order accurate even
    // when individual eigenvectors carry first-order error).
    let zero_cluster = &d.degeneracy_clusters(cast(DEFAULT_DEGENERACY_TOLERANCE))[0];
    let u = from_usize::<T>(n).sqrt().recip();
    let mut projected = T::zero();
    for col in zero_cluster.clone() {
        let mut overlap = T::zero();
        for i in 0..n {
            overlap += q.get(i, col) * u;
        }
        projected += overlap * overlap;
    }
    let deficiency = (T::one() - projected.sqrt()).abs();
    if deficiency > tol {
        return fail("uniform zero-mode overlap", deficiency);
    }

    Ok(())
}
