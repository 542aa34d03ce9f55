//! Exact diagonalization of coupled Jaynes-Cummings cavities in a fixed
//! excitation sector, with ground-state order parameters, polariton
//! decomposition and parameter sweeps.
//!
//! The numerical core is generic over [`Scalar`] (`f32` or `f64`); the
//! aliases below fix it to `f64`.

pub mod analysis;
pub mod eigen;
pub mod error;
pub mod hamiltonian;
pub mod hilbert;
pub mod observables;
pub mod perturbative;
pub mod polariton;
pub mod scalar;
pub mod sweep;

pub use analysis::{analyze_point, classify, solve_dimer, Mobility, Particle};
pub use eigen::{dense_eigh, ground_state, lanczos_ground, SolverKind, DEFAULT_DENSE_LIMIT};
pub use error::{Error, Result};
pub use hamiltonian::{
    build_atomic_number_operator, build_hamiltonian, build_number_operator,
    build_photon_number_operator,
};
pub use hilbert::{BasisState, DimerState, Sector};
pub use observables::{variances, variances_at};
pub use polariton::{decompose, polariton, product_polariton_vector, Branch, PolaritonLabel};
pub use scalar::{canonicalize_sign, Scalar};

pub type Params = hamiltonian::ModelParams<f64>;
pub type Operator = hamiltonian::SparseOperator<f64>;
pub type Config = eigen::SolverConfig<f64>;
pub type GroundState = eigen::GroundStateResult<f64>;
pub type Spectrum = eigen::SpectrumResult<f64>;
pub type Variances = observables::VarianceReport<f64>;
pub type Decomposition = polariton::PolaritonDecomposition<f64>;
pub type Label = analysis::PhaseLabel<f64>;
pub type Thresholds = analysis::Thresholds<f64>;
pub type Report = analysis::PointReport<f64>;
