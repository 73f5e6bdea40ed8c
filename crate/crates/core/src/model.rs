//! Two-qubit Heisenberg XYZ Hamiltonian with x/y Dzyaloshinsky–Moriya terms
//! and an x-directed inhomogeneous field.
//!
//! ```text
//! H = Σ_α J_α σ^α_A σ^α_B + D_x C_x + D_y C_y
//!     + (B_m + b_m) σ^x_A + (B_m − b_m) σ^x_B
//! C_x = σ^y_A σ^z_B − σ^z_A σ^y_B
//! C_y = σ^z_A σ^x_B − σ^x_A σ^z_B
//! ```
//!
//! Units have ħ = 1; energies are dimensionless and `gamma` carries units of
//! time so that `γ ΔV² t` is dimensionless.

use std::ops::Add;

use crate::error::{Error, Result};
use crate::linalg::{eig_hermitian, kron, ComplexMatrix2, ComplexMatrix4, SpectralDecomposition};

/// Scalars defining the Hamiltonian and the intrinsic-decoherence rate.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ModelParams {
    pub j_x: f64,
    pub j_y: f64,
    pub j_z: f64,
    pub d_x: f64,
    pub d_y: f64,
    /// Field uniformity `B_m`, shared by both qubits.
    pub b_uniform: f64,
    /// Field inhomogeneity `b_m`: `+b_m` on qubit A, `−b_m` on qubit B.
    pub b_inhomog: f64,
    pub gamma: f64,
}

impl ModelParams {
    /// Field names in declaration order.
    pub const FIELD_NAMES: [&'static str; 8] = [
        "j_x",
        "j_y",
        "j_z",
        "d_x",
        "d_y",
        "b_uniform",
        "b_inhomog",
        "gamma",
    ];

    pub fn validate(&self) -> Result<()> {
        for name in Self::FIELD_NAMES {
            let value = self.get(name).expect("known field");
            if !value.is_finite() {
                return Err(Error::InvalidParams {
                    name,
                    reason: format!("{value} is not finite"),
                });
            }
        }
        if self.gamma < 0.0 {
            return Err(Error::InvalidParams {
                name: "gamma",
                reason: format!("{} is negative", self.gamma),
            });
        }
        Ok(())
    }

    pub fn get(&self, name: &str) -> Option<f64> {
        Some(match name {
            "j_x" => self.j_x,
            "j_y" => self.j_y,
            "j_z" => self.j_z,
            "d_x" => self.d_x,
            "d_y" => self.d_y,
            "b_uniform" => self.b_uniform,
            "b_inhomog" => self.b_inhomog,
            "gamma" => self.gamma,
            _ => return None,
        })
    }

    /// Mutable access by field name; `None` for unknown names.
    pub fn field_mut(&mut self, name: &str) -> Option<&mut f64> {
        Some(match name {
            "j_x" => &mut self.j_x,
            "j_y" => &mut self.j_y,
            "j_z" => &mut self.j_z,
            "d_x" => &mut self.d_x,
            "d_y" => &mut self.d_y,
            "b_uniform" => &mut self.b_uniform,
            "b_inhomog" => &mut self.b_inhomog,
            "gamma" => &mut self.gamma,
            _ => return None,
        })
    }
}

impl Add for ModelParams {
    type Output = Self;

    fn add(self, o: Self) -> Self {
        Self {
            j_x: self.j_x + o.j_x,
            j_y: self.j_y + o.j_y,
            j_z: self.j_z + o.j_z,
            d_x: self.d_x + o.d_x,
            d_y: self.d_y + o.d_y,
            b_uniform: self.b_uniform + o.b_uniform,
            b_inhomog: self.b_inhomog + o.b_inhomog,
            gamma: self.gamma + o.gamma,
        }
    }
}

/// Hamiltonian matrix together with its spectral decomposition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hamiltonian {
    matrix: ComplexMatrix4,
    spectrum: SpectralDecomposition,
}

impl Hamiltonian {
    /// Diagonalizes an arbitrary Hermitian matrix.
    pub fn from_matrix(matrix: ComplexMatrix4) -> Result<Self> {
        let spectrum = eig_hermitian(&matrix)?;
        Self::from_parts(matrix, spectrum)
    }

    /// Pairs a matrix with a caller-chosen decomposition, e.g. a different
    /// basis inside a degenerate eigenspace.
    pub fn from_parts(matrix: ComplexMatrix4, spectrum: SpectralDecomposition) -> Result<Self> {
        let deviation = matrix.hermiticity_deviation();
        if deviation > 1e-10 {
            return Err(Error::NotHermitian { deviation });
        }
        let residual = spectrum.reconstruct().max_abs_diff(&matrix);
        if residual > 1e-10 {
            return Err(Error::NumericalDefect(format!(
                "spectrum does not reconstruct the Hamiltonian (residual {residual:e})"
            )));
        }
        Ok(Self { matrix, spectrum })
    }

    pub fn matrix(&self) -> &ComplexMatrix4 {
        &self.matrix
    }

    pub fn spectrum(&self) -> &SpectralDecomposition {
        &self.spectrum
    }

    pub fn eigenvalues(&self) -> [f64; 4] {
        self.spectrum.eigenvalues()
    }

    /// Smallest pairwise distance between eigenvalues.
    pub fn min_spectral_gap(&self) -> f64 {
        self.eigenvalues()
            .windows(2)
            .map(|w| w[1] - w[0])
            .fold(f64::INFINITY, f64::min)
    }
}

/// Assembles the Hamiltonian matrix without diagonalizing it.
pub fn hamiltonian_matrix(p: &ModelParams) -> ComplexMatrix4 {
    let id = ComplexMatrix2::identity();
    let x = ComplexMatrix2::sigma_x();
    let y = ComplexMatrix2::sigma_y();
    let z = ComplexMatrix2::sigma_z();

    let c_x = kron(&y, &z) - kron(&z, &y);
    let c_y = kron(&z, &x) - kron(&x, &z);

    p.j_x * kron(&x, &x)
        + p.j_y * kron(&y, &y)
        + p.j_z * kron(&z, &z)
        + p.d_x * c_x
        + p.d_y * c_y
        + (p.b_uniform + p.b_inhomog) * kron(&x, &id)
        + (p.b_uniform - p.b_inhomog) * kron(&id, &x)
}

pub fn build_hamiltonian(p: &ModelParams) -> Result<Hamiltonian> {
    p.validate()?;
    Hamiltonian::from_matrix(hamiltonian_matrix(p))
}

/// Both qubits in the upper state: `|1_A 1_B⟩⟨1_A 1_B|`.
pub fn initial_state() -> ComplexMatrix4 {
    ComplexMatrix4::from_real_diagonal([1.0, 0.0, 0.0, 0.0])
}

/// Exchanges qubits A and B.
pub fn swap() -> ComplexMatrix4 {
    ComplexMatrix4::from_real([
        [1.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 1.0, 0.0],
        [0.0, 1.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
    ])
    .expect("finite")
}
