//! Fixed-size complex linear algebra for two-qubit operators.
//!
//! Every 4×4 matrix is expressed in the product basis
//! `{|1_A 1_B⟩, |1_A 0_B⟩, |0_A 1_B⟩, |0_A 0_B⟩}`, with qubit A as the slow
//! index and `|1⟩` the +1 eigenvector of σ^z. Index `2a + b` addresses
//! `|a_A b_B⟩` where `a = 0` stands for the upper state `|1⟩`.

use std::ops::{Add, Index, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{DensityViolation, Error, Result};

pub const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };
pub const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };
pub const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Tolerance on the Hermitian part of an input to [`eig_hermitian`].
pub const HERMITIAN_TOL: f64 = 1e-9;

/// Eigenvalues in `[-PSD_CLAMP, 0)` are treated as round-off and clamped to zero.
pub const PSD_CLAMP: f64 = 1e-9;

/// Relative eigenvalue size below which [`matrix_sqrt_psd`] treats an
/// eigenvalue as zero.
pub const SQRT_ROUNDOFF_FLOOR: f64 = 64.0 * f64::EPSILON;

const JACOBI_OFF_DIAGONAL_TOL: f64 = 1e-12;
const JACOBI_MAX_SWEEPS: usize = 64;

/// Pauli axis label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PauliAxis {
    X,
    Y,
    Z,
}

impl PauliAxis {
    pub const ALL: [PauliAxis; 3] = [PauliAxis::X, PauliAxis::Y, PauliAxis::Z];

    pub fn matrix(self) -> ComplexMatrix2 {
        match self {
            PauliAxis::X => ComplexMatrix2::sigma_x(),
            PauliAxis::Y => ComplexMatrix2::sigma_y(),
            PauliAxis::Z => ComplexMatrix2::sigma_z(),
        }
    }
}

/// Dense 2×2 complex matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexMatrix2([[Complex64; 2]; 2]);

impl ComplexMatrix2 {
    pub fn new(entries: [[Complex64; 2]; 2]) -> Result<Self> {
        check_finite(&entries)?;
        Ok(Self(entries))
    }

    pub const fn zeros() -> Self {
        Self([[ZERO; 2]; 2])
    }

    pub const fn identity() -> Self {
        Self([[ONE, ZERO], [ZERO, ONE]])
    }

    pub const fn sigma_x() -> Self {
        Self([[ZERO, ONE], [ONE, ZERO]])
    }

    pub const fn sigma_y() -> Self {
        Self([[ZERO, Complex64 { re: 0.0, im: -1.0 }], [I, ZERO]])
    }

    pub const fn sigma_z() -> Self {
        Self([[ONE, ZERO], [ZERO, Complex64 { re: -1.0, im: 0.0 }]])
    }

    pub fn entries(&self) -> &[[Complex64; 2]; 2] {
        &self.0
    }

    pub fn adjoint(&self) -> Self {
        Self(std::array::from_fn(|r| {
            std::array::from_fn(|c| self.0[c][r].conj())
        }))
    }

    pub fn transpose(&self) -> Self {
        Self(std::array::from_fn(|r| {
            std::array::from_fn(|c| self.0[c][r])
        }))
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self(self.0.map(|row| row.map(|z| z * factor)))
    }
}

impl Index<(usize, usize)> for ComplexMatrix2 {
    type Output = Complex64;

    fn index(&self, (r, c): (usize, usize)) -> &Complex64 {
        &self.0[r][c]
    }
}

impl Add for ComplexMatrix2 {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        Self(std::array::from_fn(|r| {
            std::array::from_fn(|c| self.0[r][c] + rhs.0[r][c])
        }))
    }
}

impl Mul for ComplexMatrix2 {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        Self(std::array::from_fn(|r| {
            std::array::from_fn(|c| self.0[r][0] * rhs.0[0][c] + self.0[r][1] * rhs.0[1][c])
        }))
    }
}

/// Dense 4×4 complex matrix in the two-qubit product basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexMatrix4([[Complex64; 4]; 4]);

impl ComplexMatrix4 {
    /// Builds a matrix, rejecting NaN or infinite entries.
    pub fn new(entries: [[Complex64; 4]; 4]) -> Result<Self> {
        check_finite(&entries)?;
        Ok(Self(entries))
    }

    pub fn from_real(entries: [[f64; 4]; 4]) -> Result<Self> {
        Self::new(entries.map(|row| row.map(Complex64::from)))
    }

    pub(crate) fn from_fn(mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        Self(std::array::from_fn(|r| std::array::from_fn(|c| f(r, c))))
    }

    pub const fn zeros() -> Self {
        Self([[ZERO; 4]; 4])
    }

    pub fn identity() -> Self {
        Self::from_real_diagonal([1.0; 4])
    }

    pub fn from_real_diagonal(diag: [f64; 4]) -> Self {
        Self::from_fn(|r, c| if r == c { diag[r].into() } else { ZERO })
    }

    /// Projector `|ψ⟩⟨ψ|` onto the normalized direction of `psi`.
    pub fn projector(psi: [Complex64; 4]) -> Result<Self> {
        let norm = psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if !norm.is_finite() || norm == 0.0 {
            return Err(Error::NumericalDefect(
                "cannot normalize state vector".into(),
            ));
        }
        let v = psi.map(|z| z / norm);
        Ok(Self::from_fn(|r, c| v[r] * v[c].conj()))
    }

    pub fn entries(&self) -> &[[Complex64; 4]; 4] {
        &self.0
    }

    pub fn column(&self, c: usize) -> [Complex64; 4] {
        std::array::from_fn(|r| self.0[r][c])
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(|r, c| self.0[c][r].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(|r, c| self.0[c][r])
    }

    pub fn trace(&self) -> Complex64 {
        (0..4).map(|k| self.0[k][k]).sum()
    }

    pub fn scale(&self, factor: impl Into<Complex64>) -> Self {
        let factor = factor.into();
        Self(self.0.map(|row| row.map(|z| z * factor)))
    }

    /// Largest entry modulus; NaN if any entry is NaN.
    pub fn max_abs(&self) -> f64 {
        self.0.iter().flatten().map(|z| z.norm()).fold(0.0, |m, x| {
            if x.is_nan() || m.is_nan() {
                f64::NAN
            } else {
                m.max(x)
            }
        })
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (*self - *other).max_abs()
    }

    /// `U X U†`.
    pub fn conjugate_by(&self, unitary: &Self) -> Self {
        *unitary * *self * unitary.adjoint()
    }

    pub fn commutator(&self, other: &Self) -> Self {
        *self * *other - *other * *self
    }

    /// Max-abs entry of the anti-Hermitian part `(m − m†)/2`.
    pub fn hermiticity_deviation(&self) -> f64 {
        (*self - self.adjoint()).max_abs() / 2.0
    }

    /// `(m + m†)/2`.
    pub fn hermitian_part(&self) -> Self {
        (*self + self.adjoint()).scale(0.5)
    }

    pub fn is_finite(&self) -> bool {
        self.0
            .iter()
            .flatten()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }
}

impl Index<(usize, usize)> for ComplexMatrix4 {
    type Output = Complex64;

    fn index(&self, (r, c): (usize, usize)) -> &Complex64 {
        &self.0[r][c]
    }
}

impl Add for ComplexMatrix4 {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        Self::from_fn(|r, c| self.0[r][c] + rhs.0[r][c])
    }
}

impl Sub for ComplexMatrix4 {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        Self::from_fn(|r, c| self.0[r][c] - rhs.0[r][c])
    }
}

impl Neg for ComplexMatrix4 {
    type Output = Self;

    fn neg(self) -> Self {
        Self(self.0.map(|row| row.map(|z| -z)))
    }
}

impl Mul for ComplexMatrix4 {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        Self::from_fn(|r, c| (0..4).map(|k| self.0[r][k] * rhs.0[k][c]).sum())
    }
}

impl Mul<ComplexMatrix4> for f64 {
    type Output = ComplexMatrix4;

    fn mul(self, rhs: ComplexMatrix4) -> ComplexMatrix4 {
        rhs.scale(self)
    }
}

impl Mul<ComplexMatrix4> for Complex64 {
    type Output = ComplexMatrix4;

    fn mul(self, rhs: ComplexMatrix4) -> ComplexMatrix4 {
        rhs.scale(self)
    }
}

fn check_finite<const N: usize>(entries: &[[Complex64; N]; N]) -> Result<()> {
    for (row, values) in entries.iter().enumerate() {
        for (col, z) in values.iter().enumerate() {
            if !(z.re.is_finite() && z.im.is_finite()) {
                return Err(Error::NonFinite { row, col });
            }
        }
    }
    Ok(())
}

/// Eigenvalues (ascending) and the unitary whose columns are the matching
/// eigenvectors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralDecomposition {
    eigenvalues: [f64; 4],
    eigenvectors: ComplexMatrix4,
}

impl SpectralDecomposition {
    /// Wraps an externally supplied decomposition. The caller is responsible
    /// for the pairing; only ordering and unitarity are checked here.
    pub fn from_parts(eigenvalues: [f64; 4], eigenvectors: ComplexMatrix4) -> Result<Self> {
        if eigenvalues.windows(2).any(|w| !(w[0] <= w[1])) {
            return Err(Error::NumericalDefect(
                "eigenvalues not sorted ascending".into(),
            ));
        }
        let defect =
            (eigenvectors.adjoint() * eigenvectors).max_abs_diff(&ComplexMatrix4::identity());
        if defect > 1e-10 {
            return Err(Error::NumericalDefect(format!(
                "eigenvector matrix not unitary (defect {defect:e})"
            )));
        }
        Ok(Self {
            eigenvalues,
            eigenvectors,
        })
    }

    pub fn eigenvalues(&self) -> [f64; 4] {
        self.eigenvalues
    }

    pub fn eigenvectors(&self) -> &ComplexMatrix4 {
        &self.eigenvectors
    }

    pub fn eigenvector(&self, k: usize) -> [Complex64; 4] {
        self.eigenvectors.column(k)
    }

    /// `V diag(λ) V†`.
    pub fn reconstruct(&self) -> ComplexMatrix4 {
        self.map_eigenvalues(|x| x)
    }

    /// `V diag(f(λ)) V†`.
    pub fn map_eigenvalues(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix4 {
        let v = &self.eigenvectors;
        let d = self.eigenvalues.map(f);
        ComplexMatrix4::from_fn(|r, c| (0..4).map(|k| v.0[r][k] * d[k] * v.0[c][k].conj()).sum())
    }

    /// Expresses `m` in this eigenbasis: `V† m V`.
    pub fn to_eigenbasis(&self, m: &ComplexMatrix4) -> ComplexMatrix4 {
        self.eigenvectors.adjoint() * *m * self.eigenvectors
    }

    /// Inverse of [`Self::to_eigenbasis`]: `V m V†`.
    pub fn from_eigenbasis(&self, m: &ComplexMatrix4) -> ComplexMatrix4 {
        m.conjugate_by(&self.eigenvectors)
    }
}

/// Hermitian eigendecomposition by cyclic complex Jacobi rotations.
pub fn eig_hermitian(m: &ComplexMatrix4) -> Result<SpectralDecomposition> {
    let deviation = m.hermiticity_deviation();
    if !(deviation <= HERMITIAN_TOL) {
        return Err(Error::NotHermitian { deviation });
    }
    let (eigenvalues, vectors) = jacobi_hermitian(m.hermitian_part().0);
    Ok(SpectralDecomposition {
        eigenvalues,
        eigenvectors: ComplexMatrix4(vectors),
    })
}

/// Eigenvalues of a real symmetric 3×3 matrix, ascending.
pub fn symmetric3_eigenvalues(a: [[f64; 3]; 3]) -> [f64; 3] {
    let sym = std::array::from_fn(|r| {
        std::array::from_fn(|c| Complex64::from(0.5 * (a[r][c] + a[c][r])))
    });
    jacobi_hermitian(sym).0
}

/// Cyclic Jacobi for an N×N Hermitian matrix. Each rotation first removes the
/// phase of the pivot and then applies a real Givens rotation, so the update
/// `A ← G† A G` uses `G = diag(1, e^{-iφ}) · [[c, s], [-s, c]]` in the (p, q)
/// plane.
fn jacobi_hermitian<const N: usize>(mut a: [[Complex64; N]; N]) -> ([f64; N], [[Complex64; N]; N]) {
    let mut v: [[Complex64; N]; N] =
        std::array::from_fn(|r| std::array::from_fn(|c| if r == c { ONE } else { ZERO }));

    for _ in 0..JACOBI_MAX_SWEEPS {
        let off: f64 = (0..N)
            .flat_map(|r| (0..N).filter(move |&c| c != r).map(move |c| (r, c)))
            .map(|(r, c)| a[r][c].norm_sqr())
            .sum::<f64>()
            .sqrt();
        if off <= JACOBI_OFF_DIAGONAL_TOL {
            break;
        }
        for p in 0..N {
            for q in p + 1..N {
                let apq = a[p][q];
                let magnitude = apq.norm();
                if magnitude < f64::MIN_POSITIVE {
                    continue;
                }
                let phase = apq / magnitude;
                let theta = (a[q][q].re - a[p][p].re) / (2.0 * magnitude);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                let phase_conj = phase.conj();

                // columns: A ← A G, V ← V G
                for row in a.iter_mut().chain(v.iter_mut()) {
                    let xp = row[p];
                    let xq = row[q];
                    row[p] = xp * c - xq * s * phase_conj;
                    row[q] = xp * s + xq * c * phase_conj;
                }
                // rows: A ← G† A
                for k in 0..N {
                    let xp = a[p][k];
                    let xq = a[q][k];
                    a[p][k] = xp * c - xq * s * phase;
                    a[q][k] = xp * s + xq * c * phase;
                }
                a[p][q] = ZERO;
                a[q][p] = ZERO;
                a[p][p] = a[p][p].re.into();
                a[q][q] = a[q][q].re.into();
            }
        }
    }

    let mut order: [usize; N] = std::array::from_fn(|k| k);
    order.sort_by(|&i, &j| a[i][i].re.total_cmp(&a[j][j].re));
    let values = order.map(|k| a[k][k].re);
    let vectors = std::array::from_fn(|r| order.map(|k| v[r][k]));
    (values, vectors)
}

/// Principal square root of a positive semidefinite Hermitian matrix.
///
/// Eigenvalues at the round-off level of the largest one are zeroed before
/// the square root, otherwise `√ε ≈ 1e-8` noise leaks into the result.
pub fn matrix_sqrt_psd(m: &ComplexMatrix4) -> Result<ComplexMatrix4> {
    let spectrum = eig_hermitian(m)?;
    let [lowest, .., highest] = spectrum.eigenvalues();
    if lowest < -PSD_CLAMP {
        return Err(Error::NotPositiveSemidefinite { eigenvalue: lowest });
    }
    let floor = SQRT_ROUNDOFF_FLOOR * highest.abs();
    Ok(spectrum
        .map_eigenvalues(|x| if x <= floor { 0.0 } else { x.sqrt() })
        .hermitian_part())
}

/// Transposes the qubit-B index: `⟨a b|m|a' b'⟩ ↦ ⟨a b'|m|a' b⟩`.
pub fn partial_transpose_b(m: &ComplexMatrix4) -> ComplexMatrix4 {
    ComplexMatrix4::from_fn(|r, c| {
        let (a, b) = (r / 2, r % 2);
        let (a2, b2) = (c / 2, c % 2);
        m.0[2 * a + b2][2 * a2 + b]
    })
}

/// Transposes the qubit-A index: `⟨a b|m|a' b'⟩ ↦ ⟨a' b|m|a b'⟩`.
pub fn partial_transpose_a(m: &ComplexMatrix4) -> ComplexMatrix4 {
    ComplexMatrix4::from_fn(|r, c| {
        let (a, b) = (r / 2, r % 2);
        let (a2, b2) = (c / 2, c % 2);
        m.0[2 * a2 + b][2 * a + b2]
    })
}

/// Kronecker product `a ⊗ b` with `a` acting on qubit A.
pub fn kron(a: &ComplexMatrix2, b: &ComplexMatrix2) -> ComplexMatrix4 {
    ComplexMatrix4::from_fn(|r, c| a.0[r / 2][c / 2] * b.0[r % 2][c % 2])
}

/// Checks Hermiticity, unit trace and positivity, returning the spectrum on
/// success.
pub fn validate_density_matrix(m: &ComplexMatrix4) -> Result<SpectralDecomposition> {
    if !m.is_finite() {
        return Err(Error::InvalidDensityMatrix(DensityViolation::NonFinite));
    }
    let deviation = m.hermiticity_deviation();
    if deviation > HERMITIAN_TOL {
        return Err(Error::InvalidDensityMatrix(
            DensityViolation::NotHermitian { deviation },
        ));
    }
    let trace = m.trace().re;
    if (trace - 1.0).abs() > 1e-9 {
        return Err(Error::InvalidDensityMatrix(DensityViolation::Trace {
            trace,
        }));
    }
    let spectrum = eig_hermitian(m)?;
    let lowest = spectrum.eigenvalues()[0];
    if lowest < -PSD_CLAMP {
        return Err(Error::InvalidDensityMatrix(
            DensityViolation::NegativeEigenvalue { eigenvalue: lowest },
        ));
    }
    Ok(spectrum)
}
