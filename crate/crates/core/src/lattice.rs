//! 1-D lattices: adjacency matrices, Hamiltonians, and transfer matrices.
//!
//! The adjacency matrix is the discrete Laplacian of the lattice graph: the
//! diagonal holds the node degree, off-diagonal entries are −1 per bond, so
//! every row sums to zero exactly (integer arithmetic). The walk Hamiltonian
//! is `H = γA`; the classical transfer matrix is `T = −H`.

use crate::error::{Error, Result};
use crate::float::Float;
use crate::matrix::SquareMatrix;

/// Boundary condition of the 1-D lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Boundary {
    /// Circle: node N−1 bonds back to node 0.
    Periodic,
    /// Open chain: end nodes have a single bond.
    Reflecting,
}

/// Physical configuration of a walk: lattice size, boundary type, and the
/// per-bond transmission rate γ (units of inverse time).
///
/// Node indices are 0-based throughout the library.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LatticeSpec<T = f64> {
    n_nodes: usize,
    boundary: Boundary,
    gamma: T,
}

impl<T: Float> LatticeSpec<T> {
    /// Validates `n_nodes >= 2` and `gamma > 0`.
    pub fn new(n_nodes: usize, boundary: Boundary, gamma: T) -> Result<Self> {
        if n_nodes < 2 {
            return Err(Error::TooFewNodes {
                needed: 2,
                got: n_nodes,
            });
        }
        if gamma <= T::zero() || gamma.is_nan() {
            return Err(Error::NonPositiveGamma {
                got: gamma.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(Self {
            n_nodes,
            boundary,
            gamma,
        })
    }

    #[inline]
    pub fn n_nodes(&self) -> usize {
        self.n_nodes
    }

    #[inline]
    pub fn boundary(&self) -> Boundary {
        self.boundary
    }

    #[inline]
    pub fn gamma(&self) -> T {
        self.gamma
    }

    pub(crate) fn check_node(&self, node: usize) -> Result<()> {
        if node < self.n_nodes {
            Ok(())
        } else {
            Err(Error::NodeOutOfRange {
                node,
                n_nodes: self.n_nodes,
            })
        }
    }
}

/// Adjacency (connectivity) matrix of a 1-D lattice.
///
/// Entries are small integers: the diagonal equals the node degree (1 or 2),
/// off-diagonals are −1 per bond. Symmetric with exact zero row sums.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdjacencyMatrix {
    order: usize,
    entries: Vec<i32>,
}

impl AdjacencyMatrix {
    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i32 {
        self.entries[i * self.order + j]
    }

    pub fn row(&self, i: usize) -> &[i32] {
        &self.entries[i * self.order..(i + 1) * self.order]
    }

    /// Exact integer row sums; all zero for a valid Laplacian.
    pub fn row_sums(&self) -> Vec<i64> {
        (0..self.order)
            .map(|i| self.row(i).iter().map(|&v| i64::from(v)).sum())
            .collect()
    }

    /// Copy into floating-point storage.
    pub fn to_dense<T: Float>(&self) -> SquareMatrix<T> {
        SquareMatrix::from_fn(self.order, |i, j| {
            T::from_i32(self.get(i, j)).expect("i32 converts to any Float")
        })
    }
}

/// Builds the adjacency matrix for the given lattice.
///
/// Periodic lattices are circulant; reflecting lattices are tridiagonal with
/// corner diagonal entries 1. A 2-node periodic lattice is rejected: both
/// bonds of the circle would join the same node pair.
pub fn build_adjacency<T: Float>(spec: &LatticeSpec<T>) -> Result<AdjacencyMatrix> {
    let n = spec.n_nodes();
    if spec.boundary() == Boundary::Periodic && n == 2 {
        return Err(Error::PeriodicDoubleBond);
    }
    let mut entries = vec![0i32; n * n];
    let mut set = |i: usize, j: usize, v: i32| entries[i * n + j] = v;
    match spec.boundary() {
        Boundary::Periodic => {
            for i in 0..n {
                set(i, i, 2);
                set(i, (i + 1) % n, -1);
                set(i, (i + n - 1) % n, -1);
            }
        }
        Boundary::Reflecting => {
            for i in 0..n {
                let degree = if i == 0 || i == n - 1 { 1 } else { 2 };
                set(i, i, degree);
                if i + 1 < n {
                    set(i, i + 1, -1);
                }
                if i > 0 {
                    set(i, i - 1, -1);
                }
            }
        }
    }
    Ok(AdjacencyMatrix { order: n, entries })
}

/// Walk Hamiltonian `H = γA`. The transfer matrix of the classical walk is
/// its negation.
#[derive(Debug, Clone, PartialEq)]
pub struct Hamiltonian<T = f64> {
    gamma: T,
    entries: SquareMatrix<T>,
}

impl<T: Float> Hamiltonian<T> {
    #[inline]
    pub fn order(&self) -> usize {
        self.entries.order()
    }

    #[inline]
    pub fn gamma(&self) -> T {
        self.gamma
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> T {
        self.entries.get(i, j)
    }

    pub fn entries(&self) -> &SquareMatrix<T> {
        &self.entries
    }

    /// Classical transfer matrix `T = −γA = −H`.
    pub fn transfer(&self) -> SquareMatrix<T> {
        SquareMatrix::from_fn(self.order(), |i, j| -self.get(i, j))
    }
}

/// Builds `H = γA` for the given lattice.
pub fn hamiltonian<T: Float>(spec: &LatticeSpec<T>) -> Result<Hamiltonian<T>> {
    let adjacency = build_adjacency(spec)?;
    let gamma = spec.gamma();
    let entries = SquareMatrix::from_fn(adjacency.order(), |i, j| {
        gamma * T::from_i32(adjacency.get(i, j)).expect("i32 converts to any Float")
    });
    Ok(Hamiltonian { gamma, entries })
}
