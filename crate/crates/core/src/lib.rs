//! Continuous-time quantum walks (CTQWs) and their classical counterparts
//! (CTRWs) on one-dimensional lattices.
//!
//! The building blocks, bottom to top:
//!
//! - [`lattice`]: adjacency matrices (discrete Laplacians), Hamiltonians
//!   `H = γA`, and transfer matrices for periodic and reflecting boundaries;
//! - [`spectral`]: a cyclic Jacobi eigensolver for the dense symmetric
//!   adjacency matrix, plus the closed-form circulant spectrum
//!   `λ_n = 2 − 2cos(2πn/N)`;
//! - [`specialfn`]: Bessel functions of the first kind for integer order;
//! - [`dynamics`]: transition probabilities by three independent routes —
//!   spectral, Bloch mode sum, and the infinite-lattice Bessel propagator —
//!   together with the exact 3- and 4-node closed forms;
//! - [`analysis`]: limiting distributions, revival times, first-revival
//!   detection, and spacetime probability carpets.
//!
//! Everything numerical is generic over the scalar type through [`Float`]
//! (`f32` or `f64`); the aliases below fix the default double precision.
//! Node indices are 0-based in the library; command-line front ends are
//! expected to translate to the 1-based labels used in plots.
//!
//! ```
//! use ctwalk::{Boundary, CarpetMethod, LatticeSpec, TimeGrid};
//!
//! let spec = LatticeSpec::new(21, Boundary::Periodic, 1.0)?;
//! let grid = TimeGrid::new(0.0, 10.0, 401)?;
//! let carpet = ctwalk::generate_carpet(&spec, 0, &grid, CarpetMethod::Bloch)?;
//! assert_eq!(carpet.row(0)[0], 1.0); // walker starts localized
//! # Ok::<(), ctwalk::Error>(())
//! ```

pub mod analysis;
pub mod dynamics;
pub mod error;
mod float;
pub mod lattice;
pub mod matrix;
pub mod specialfn;
pub mod spectral;

pub use analysis::{
    classical_carpet, first_revival_search, generate_carpet, limiting_distribution,
    limiting_distribution_by_average, revival_times, CarpetMethod, LimitingDistribution,
    ProbabilityCarpet, RevivalReport,
};
pub use dynamics::{
    amplitude_column_spectral, bloch_offset_amplitudes, classical_column, classical_probability,
    pi_closed_form_n3, pi_closed_form_n4, quantum_amplitude_bloch, quantum_amplitude_infinite,
    quantum_amplitude_spectral, transition_probability, TimeGrid,
};
pub use error::{Error, Result};
pub use float::Float;
pub use lattice::{
    build_adjacency, hamiltonian, AdjacencyMatrix, Boundary, Hamiltonian, LatticeSpec,
};
pub use matrix::SquareMatrix;
pub use specialfn::{bessel_j, bessel_j_eval, BesselResult};
pub use spectral::{
    circulant_spectrum, eigendecompose_symmetric, jacobi_symmetric, SpectralDecomposition,
    DEFAULT_DEGENERACY_TOLERANCE, DEFAULT_TOLERANCE,
};

/// Complex transition amplitude `α_jk(t)` at the default double precision.
pub type ComplexAmplitude = num_complex::Complex<f64>;
/// Single-precision amplitude.
pub type ComplexAmplitude32 = num_complex::Complex<f32>;

/// Double-precision aliases for the main domain types; this is the precision
/// the CLI and the test suites run at.
pub type LatticeSpec64 = LatticeSpec<f64>;
pub type Hamiltonian64 = Hamiltonian<f64>;
pub type SpectralDecomposition64 = SpectralDecomposition<f64>;
pub type TimeGrid64 = TimeGrid<f64>;
pub type ProbabilityCarpet64 = ProbabilityCarpet<f64>;
pub type LimitingDistribution64 = LimitingDistribution<f64>;
pub type RevivalReport64 = RevivalReport<f64>;
pub type BesselResult64 = BesselResult<f64>;
