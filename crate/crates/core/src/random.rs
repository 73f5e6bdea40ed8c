//! Seeded random ensembles of states, observables and unitaries.
//!
//! Used by the property suites; every generator takes the caller's RNG so
//! runs are reproducible.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::linalg::{ComplexMatrix2, ComplexMatrix4, ZERO};

fn gaussian(rng: &mut impl Rng) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

fn ginibre(rng: &mut impl Rng) -> [[Complex64; 4]; 4] {
    std::array::from_fn(|_| std::array::from_fn(|_| gaussian(rng)))
}

fn from_entries(e: [[Complex64; 4]; 4]) -> ComplexMatrix4 {
    ComplexMatrix4::new(e).expect("gaussian samples are finite")
}

/// Hermitian matrix with entries of order `scale`.
pub fn hermitian(rng: &mut impl Rng, scale: f64) -> ComplexMatrix4 {
    from_entries(ginibre(rng)).hermitian_part().scale(scale)
}

/// Normalized state vector drawn uniformly from the unit sphere.
pub fn pure_state(rng: &mut impl Rng) -> [Complex64; 4] {
    let v: [Complex64; 4] = std::array::from_fn(|_| gaussian(rng));
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    v.map(|z| z / norm)
}

/// Full-rank density matrix `G G† / Tr(G G†)` from a Ginibre sample.
pub fn density_matrix(rng: &mut impl Rng) -> ComplexMatrix4 {
    let g = from_entries(ginibre(rng));
    let m = g * g.adjoint();
    m.scale(1.0 / m.trace().re).hermitian_part()
}

/// Density matrix of random rank 1..=4, mixing pure and mixed ensembles.
pub fn density_matrix_of_rank(rng: &mut impl Rng, rank: usize) -> ComplexMatrix4 {
    let rank = rank.clamp(1, 4);
    let mut e = ginibre(rng);
    for row in e.iter_mut() {
        for z in row.iter_mut().skip(rank) {
            *z = ZERO;
        }
    }
    let g = from_entries(e);
    let m = g * g.adjoint();
    m.scale(1.0 / m.trace().re).hermitian_part()
}

/// Haar-distributed 4×4 unitary via Gram–Schmidt on a Ginibre sample.
pub fn unitary(rng: &mut impl Rng) -> ComplexMatrix4 {
    let g = ginibre(rng);
    let mut cols: Vec<[Complex64; 4]> = Vec::with_capacity(4);
    for c in 0..4 {
        let mut v: [Complex64; 4] = std::array::from_fn(|r| g[r][c]);
        for u in &cols {
            let overlap: Complex64 = (0..4).map(|k| u[k].conj() * v[k]).sum();
            for k in 0..4 {
                v[k] -= overlap * u[k];
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        cols.push(v.map(|z| z / norm));
    }
    from_entries(std::array::from_fn(|r| std::array::from_fn(|c| cols[c][r])))
}

/// Haar-distributed single-qubit unitary from a random unit quaternion.
pub fn unitary2(rng: &mut impl Rng) -> ComplexMatrix2 {
    let q: [f64; 4] = std::array::from_fn(|_| rng.sample(StandardNormal));
    let n = q.iter().map(|x| x * x).sum::<f64>().sqrt();
    let [a, b, c, d] = q.map(|x| x / n);
    let phase = Complex64::from_polar(1.0, rng.random_range(0.0..std::f64::consts::TAU));
    ComplexMatrix2::new([
        [Complex64::new(a, b), Complex64::new(c, d)],
        [Complex64::new(-c, d), Complex64::new(a, -b)],
    ])
    .expect("finite")
    .scale(phase)
}

/// Random single-qubit density matrix inside the Bloch ball.
pub fn qubit_density_matrix(rng: &mut impl Rng) -> ComplexMatrix2 {
    let v: [f64; 3] = std::array::from_fn(|_| rng.sample(StandardNormal));
    let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    let r: f64 = rng.random_range(0.0..=1.0);
    let [x, y, z] = v.map(|c| c * r / n);
    ComplexMatrix2::new([
        [
            Complex64::new(0.5 * (1.0 + z), 0.0),
            Complex64::new(0.5 * x, -0.5 * y),
        ],
        [
            Complex64::new(0.5 * x, 0.5 * y),
            Complex64::new(0.5 * (1.0 - z), 0.0),
        ],
    ])
    .expect("finite")
}
