//! Non-local correlation quantifiers for two-qubit density matrices: local
//! quantum Fisher information (LQFI), local quantum uncertainty (LQU) and
//! logarithmic negativity, plus purity.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{
    kron, matrix_sqrt_psd, partial_transpose_b, symmetric3_eigenvalues, validate_density_matrix,
    ComplexMatrix2, ComplexMatrix4, PauliAxis,
};

/// Terms with `π_m + π_n` at or below this are dropped from the LQFI sum.
pub const LQFI_DENOMINATOR_CUTOFF: f64 = 1e-12;

/// Partial-transpose eigenvalues in `[-NEGATIVITY_ZERO, 0)` count as zero.
pub const NEGATIVITY_ZERO: f64 = 1e-12;

/// Out-of-range results within this distance of `[lo, hi]` are clamped;
/// anything further is reported as a defect.
pub const CLAMP_SLACK: f64 = 1e-9;

/// Largest imaginary part tolerated in the 3×3 correlation matrices.
pub const SYMMETRY_TOL: f64 = 1e-8;

/// Which qubit the local Pauli observables act on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LocalSide {
    QubitA,
    QubitB,
}

impl LocalSide {
    /// `σ^i ⊗ I` for qubit A, `I ⊗ σ^i` for qubit B.
    pub fn observable(self, axis: PauliAxis) -> ComplexMatrix4 {
        let id = ComplexMatrix2::identity();
        match self {
            LocalSide::QubitA => kron(&axis.matrix(), &id),
            LocalSide::QubitB => kron(&id, &axis.matrix()),
        }
    }

    fn observables(self) -> [ComplexMatrix4; 3] {
        PauliAxis::ALL.map(|axis| self.observable(axis))
    }
}

/// One time point of the correlation dynamics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationSample {
    pub t: f64,
    pub lqfi: f64,
    pub lqu: f64,
    pub log_negativity: f64,
    pub purity: f64,
}

fn clamp_to(value: f64, lo: f64, hi: f64, what: &str) -> Result<f64> {
    if !value.is_finite() || value < lo - CLAMP_SLACK || value > hi + CLAMP_SLACK {
        return Err(Error::NumericalDefect(format!(
            "{what} = {value} outside [{lo}, {hi}]"
        )));
    }
    Ok(value.clamp(lo, hi))
}

/// Takes the real part of a 3×3 accumulation after checking it is Hermitian
/// with negligible imaginary parts.
fn real_symmetric_part(acc: [[Complex64; 3]; 3], what: &str) -> Result<[[f64; 3]; 3]> {
    let mut out = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let sym = 0.5 * (acc[i][j] + acc[j][i].conj());
            let skew = 0.5 * (acc[i][j] - acc[j][i].conj());
            if sym.im.abs() > SYMMETRY_TOL || skew.norm() > SYMMETRY_TOL {
                return Err(Error::NumericalDefect(format!(
                    "{what} matrix not real symmetric at ({i}, {j}): {}",
                    acc[i][j]
                )));
            }
            out[i][j] = sym.re;
        }
    }
    Ok(out)
}

fn largest(values: [f64; 3]) -> f64 {
    values[2]
}

/// Local quantum Fisher information `F = 1 − π_R^max`, where
/// `r_ij = Σ_{π_m+π_n>0} 2π_mπ_n/(π_m+π_n) · ξ^i_mn ξ^j_nm` and
/// `ξ^i_mn = ⟨Π_m|O_i|Π_n⟩` over the spectral decomposition of `m`.
pub fn lqfi(m: &ComplexMatrix4, side: LocalSide) -> Result<f64> {
    let spectrum = validate_density_matrix(m)?;
    let weights = spectrum.eigenvalues().map(|p| p.max(0.0));
    let vectors = spectrum.eigenvectors();
    let xi = side.observables().map(|o| vectors.adjoint() * o * *vectors);

    let mut acc = [[Complex64::new(0.0, 0.0); 3]; 3];
    for a in 0..4 {
        for b in 0..4 {
            let denom = weights[a] + weights[b];
            if denom <= LQFI_DENOMINATOR_CUTOFF {
                continue;
            }
            let w = 2.0 * weights[a] * weights[b] / denom;
            if w == 0.0 {
                continue;
            }
            for i in 0..3 {
                for j in 0..3 {
                    acc[i][j] += w * xi[i][(a, b)] * xi[j][(b, a)];
                }
            }
        }
    }
    let r = real_symmetric_part(acc, "LQFI")?;
    clamp_to(1.0 - largest(symmetric3_eigenvalues(r)), 0.0, 1.0, "LQFI")
}

/// Local quantum uncertainty `U = 1 − λ_max(Λ)` with
/// `a_ij = Tr{√M O_i √M O_j}`.
pub fn lqu(m: &ComplexMatrix4, side: LocalSide) -> Result<f64> {
    validate_density_matrix(m)?;
    let root = matrix_sqrt_psd(m)?;
    let sandwiched = side.observables().map(|o| root * o * root);
    let obs = side.observables();

    let acc: [[Complex64; 3]; 3] =
        std::array::from_fn(|i| std::array::from_fn(|j| (sandwiched[i] * obs[j]).trace()));
    let a = real_symmetric_part(acc, "LQU")?;
    clamp_to(1.0 - largest(symmetric3_eigenvalues(a)), 0.0, 1.0, "LQU")
}

/// Sum of the magnitudes of the negative eigenvalues of the partial transpose.
pub fn negativity(m: &ComplexMatrix4) -> Result<f64> {
    validate_density_matrix(m)?;
    let pt = crate::linalg::eig_hermitian(&partial_transpose_b(m))?;
    Ok(pt
        .eigenvalues()
        .iter()
        .filter(|&&x| x < -NEGATIVITY_ZERO)
        .map(|x| -x)
        .sum())
}

/// `N = log₂(1 + 2μ)`.
pub fn log_negativity(m: &ComplexMatrix4) -> Result<f64> {
    let mu = negativity(m)?;
    clamp_to((1.0 + 2.0 * mu).log2(), 0.0, 1.0, "log-negativity")
}

/// `Tr(m²)`.
pub fn purity(m: &ComplexMatrix4) -> f64 {
    (*m * *m).trace().re
}

/// Bundles the three quantifiers with LQFI probing qubit B and LQU probing
/// qubit A.
pub fn sample(m: &ComplexMatrix4, t: f64) -> Result<CorrelationSample> {
    sample_with_sides(m, t, LocalSide::QubitB, LocalSide::QubitA)
}

pub fn sample_with_sides(
    m: &ComplexMatrix4,
    t: f64,
    lqfi_side: LocalSide,
    lqu_side: LocalSide,
) -> Result<CorrelationSample> {
    Ok(CorrelationSample {
        t,
        lqfi: lqfi(m, lqfi_side)?,
        lqu: lqu(m, lqu_side)?,
        log_negativity: log_negativity(m)?,
        purity: clamp_to(purity(m), 0.25, 1.0, "purity")?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{ONE, ZERO};
    use crate::model::initial_state;
    use crate::random;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    const SIDES: [LocalSide; 2] = [LocalSide::QubitA, LocalSide::QubitB];

    fn bell() -> ComplexMatrix4 {
        ComplexMatrix4::projector([ONE, ZERO, ZERO, ONE]).unwrap()
    }

    fn mixed() -> ComplexMatrix4 {
        ComplexMatrix4::identity().scale(0.25)
    }

    #[test]
    fn product_pure_state_has_no_correlation() {
        for side in SIDES {
            assert!(lqfi(&initial_state(), side).unwrap().abs() < 1e-12);
            assert!(lqu(&initial_state(), side).unwrap().abs() < 1e-12);
        }
        assert_eq!(log_negativity(&initial_state()).unwrap(), 0.0);
    }

    #[test]
    fn bell_state_saturates_everything() {
        for side in SIDES {
            assert!((lqfi(&bell(), side).unwrap() - 1.0).abs() < 1e-12);
            assert!((lqu(&bell(), side).unwrap() - 1.0).abs() < 1e-12);
        }
        assert!((log_negativity(&bell()).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn maximally_mixed_has_no_correlation() {
        for side in SIDES {
            assert!(lqfi(&mixed(), side).unwrap().abs() < 1e-12);
            assert!(lqu(&mixed(), side).unwrap().abs() < 1e-12);
        }
        assert_eq!(log_negativity(&mixed()).unwrap(), 0.0);
    }

    #[test]
    fn purity_examples() {
        assert!((purity(&bell()) - 1.0).abs() < 1e-15);
        assert_eq!(purity(&mixed()), 0.25);
        let half = ComplexMatrix4::from_real_diagonal([0.5, 0.0, 0.5, 0.0]);
        assert_eq!(purity(&half), 0.5);
    }

    #[test]
    fn sample_examples() {
        let s = sample(&initial_state(), 0.0).unwrap();
        assert_eq!(
            (s.lqfi, s.lqu, s.log_negativity, s.purity),
            (0.0, 0.0, 0.0, 1.0)
        );

        let s = sample(&bell(), 1.5).unwrap();
        assert_eq!(s.t, 1.5);
        for v in [s.lqfi, s.lqu, s.log_negativity, s.purity] {
            assert!((v - 1.0).abs() < 1e-12);
        }

        let s = sample(&mixed(), 0.0).unwrap();
        assert!(s.lqfi.abs() < 1e-12 && s.lqu.abs() < 1e-12);
        assert_eq!(s.log_negativity, 0.0);
        assert_eq!(s.purity, 0.25);
    }

    #[test]
    fn invalid_state_is_rejected() {
        let bad = ComplexMatrix4::from_real_diagonal([0.7, 0.7, 0.0, 0.0]);
        assert!(matches!(
            lqfi(&bad, LocalSide::QubitB),
            Err(Error::InvalidDensityMatrix(_))
        ));
        assert!(matches!(
            lqu(&bad, LocalSide::QubitA),
            Err(Error::InvalidDensityMatrix(_))
        ));
        assert!(matches!(
            log_negativity(&bad),
            Err(Error::InvalidDensityMatrix(_))
        ));
    }

    #[test]
    fn pure_states_give_equal_lqfi_and_lqu() {
        let mut rng = StdRng::seed_from_u64(31);
        for _ in 0..300 {
            let m = ComplexMatrix4::projector(random::pure_state(&mut rng)).unwrap();
            for side in SIDES {
                let f = lqfi(&m, side).unwrap();
                let u = lqu(&m, side).unwrap();
                assert!((f - u).abs() < 1e-8, "{f} vs {u}");
            }
        }
    }

    #[test]
    fn explicit_product_states_have_zero_negativity() {
        let mut rng = StdRng::seed_from_u64(32);
        for _ in 0..300 {
            let m = kron(
                &random::qubit_density_matrix(&mut rng),
                &random::qubit_density_matrix(&mut rng),
            );
            assert_eq!(log_negativity(&m).unwrap(), 0.0);
        }
    }

    #[test]
    fn quantifiers_are_continuous() {
        let mut rng = StdRng::seed_from_u64(33);
        for _ in 0..200 {
            let m = random::density_matrix(&mut rng);
            let delta = random::hermitian(&mut rng, 1.0);
            let delta = (delta - ComplexMatrix4::identity().scale(delta.trace().re / 4.0))
                .scale(1e-8 / delta.max_abs());
            let perturbed = m + delta;
            for side in SIDES {
                assert!((lqfi(&m, side).unwrap() - lqfi(&perturbed, side).unwrap()).abs() <= 1e-5);
                assert!((lqu(&m, side).unwrap() - lqu(&perturbed, side).unwrap()).abs() <= 1e-5);
            }
            assert!(
                (log_negativity(&m).unwrap() - log_negativity(&perturbed).unwrap()).abs() <= 1e-5
            );
        }
    }
}
