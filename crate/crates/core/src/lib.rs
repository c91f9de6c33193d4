//! Quantum steering analysis for the single spin-3/2 qudit.
//!
//! A 4×4 density matrix is read either as a two-qubit state or, through the
//! invertible index map `1↔3/2, 2↔1/2, 3↔-1/2, 4↔-3/2`, as one qudit with no
//! subsystems. Both readings share the same correlation tensor, so the usual
//! two-qubit steering machinery applies to the qudit unchanged.
//!
//! Modules, bottom-up:
//!
//! - [`state`]: density matrices, validation, the Hermitian eigensolver and
//!   the two index conventions.
//! - [`json`]: the on-disk density-matrix format.
//! - [`xstate`]: the X-state reduced form with the Werner and Gisin families.
//! - [`correlation`]: correlation tensors, the correlation function and its
//!   exact maximum over pairs of Bloch vectors.
//! - [`steering`]: the steering inequality, classification, sweeps and
//!   boundary search.
//! - [`coarse`]: coin and qudit coarse-grained outcome correlations.

pub mod coarse;
pub mod correlation;
mod error;
pub mod json;
pub mod linalg;
pub mod state;
pub mod steering;
pub mod xstate;

pub use error::{Error, Result};
pub use num_complex::Complex64;

pub use coarse::{
    coarse_correlation, coarse_covariance, coin_correlation, coin_marginals, coin_raw_moment,
    qudit_coarse, CoarsePair, JointCoinDistribution, OutcomeDistribution,
};
pub use correlation::{
    correlation_tensor, correlation_value, grid_max_oracle, max_correlation, tensor_imaginary_residual,
    xstate_zero_pattern,
    BlochVector, CorrelationTensor, MaxCorrelation,
};
pub use state::{
    hermitian_eigen, hermitian_eigenvalues, validate_density, ComplexScalar, DensityMatrix,
    HermitianEigen, IndexConvention, Tolerance, ValidationReport,
};
pub use steering::{
    boundary_bisection, steering_check, steering_rhs, sweep_gisin, sweep_werner, Classification,
    Family, SteeringFunctional, SteeringReport, SweepRecord,
};
pub use xstate::{
    gisin, gisin_x_max, werner, xstate_entangled, xstate_psd, xstate_to_density, GisinParam,
    WernerParam, XState,
};
