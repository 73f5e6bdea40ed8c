//! Two-qubit Heisenberg XYZ dynamics with x/y Dzyaloshinsky–Moriya coupling
//! and an inhomogeneous x-field, evolved under Milburn intrinsic decoherence,
//! with local quantum Fisher information, local quantum uncertainty and
//! logarithmic negativity as correlation quantifiers.

pub mod error;
pub mod evolution;
pub mod linalg;
pub mod model;
pub mod quantifiers;
pub mod random;

pub use error::{DensityViolation, Error, Result};
pub use evolution::{make_propagator, rk4_oracle, Propagator, TimeGrid};
pub use linalg::{ComplexMatrix2, ComplexMatrix4, SpectralDecomposition};
pub use model::{build_hamiltonian, initial_state, Hamiltonian, ModelParams};
pub use quantifiers::{CorrelationSample, LocalSide};

pub use num_complex::Complex64;
