//! Milburn intrinsic-decoherence dynamics
//!
//! ```text
//! dM/dt = −i[H, M] − (γ/2)[H, [H, M]]
//! ```
//!
//! In the Hamiltonian eigenbasis the solution is elementwise:
//! `ρ_mn(t) = ρ_mn(0) · e^{−i(V_m−V_n)t} · e^{−(γ/2)(V_m−V_n)² t}`.
//! [`Propagator`] evaluates that closed form; [`rk4_oracle`] integrates the
//! master equation directly and exists only to cross-check it.
//!
//! When every spectral gap is nonzero and `γ > 0`, `M(t)` tends to the
//! eigenbasis-diagonal part of `M(0)` as `t → ∞`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{validate_density_matrix, ComplexMatrix4};
use crate::model::Hamiltonian;

/// Closed uniform grid `t_start, …, t_end` with `samples` points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeGrid {
    t_start: f64,
    t_end: f64,
    samples: usize,
}

impl TimeGrid {
    pub fn new(t_start: f64, t_end: f64, samples: usize) -> Result<Self> {
        if !(t_start.is_finite() && t_end.is_finite()) {
            return Err(Error::InvalidGrid("time bounds must be finite".into()));
        }
        if t_start < 0.0 {
            return Err(Error::InvalidGrid(format!("t_start {t_start} is negative")));
        }
        if t_end <= t_start {
            return Err(Error::InvalidGrid(format!(
                "t_end {t_end} must exceed t_start {t_start}"
            )));
        }
        if samples < 2 {
            return Err(Error::InvalidGrid(format!(
                "samples must be at least 2, got {samples}"
            )));
        }
        let grid = Self {
            t_start,
            t_end,
            samples,
        };
        if !(grid.spacing() > 0.0) {
            return Err(Error::InvalidGrid("grid spacing underflows".into()));
        }
        Ok(grid)
    }

    pub fn t_start(&self) -> f64 {
        self.t_start
    }

    pub fn t_end(&self) -> f64 {
        self.t_end
    }

    pub fn samples(&self) -> usize {
        self.samples
    }

    pub fn spacing(&self) -> f64 {
        (self.t_end - self.t_start) / (self.samples - 1) as f64
    }

    /// The `i`-th grid time; the last point is `t_end` exactly.
    pub fn point(&self, i: usize) -> f64 {
        if i + 1 == self.samples {
            self.t_end
        } else {
            self.t_start + i as f64 * self.spacing()
        }
    }

    pub fn points(&self) -> impl ExactSizeIterator<Item = f64> + '_ {
        (0..self.samples).map(|i| self.point(i))
    }

    /// RK4 substeps per grid interval so that no step exceeds `max_step`.
    pub fn substeps_for(&self, max_step: f64) -> usize {
        ((self.spacing() / max_step).ceil() as usize).max(1)
    }
}

/// Everything needed to evaluate `M(t)` in closed form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Propagator {
    hamiltonian: Hamiltonian,
    gamma: f64,
    initial_in_eigenbasis: ComplexMatrix4,
}

/// Validates `m0` and stores `⟨V_m|M(0)|V_n⟩`.
pub fn make_propagator(h: Hamiltonian, gamma: f64, m0: &ComplexMatrix4) -> Result<Propagator> {
    Propagator::new(h, gamma, m0)
}

impl Propagator {
    pub fn new(hamiltonian: Hamiltonian, gamma: f64, m0: &ComplexMatrix4) -> Result<Self> {
        if !(gamma.is_finite() && gamma >= 0.0) {
            return Err(Error::InvalidParams {
                name: "gamma",
                reason: format!("{gamma} must be finite and non-negative"),
            });
        }
        validate_density_matrix(m0)?;
        let initial_in_eigenbasis = hamiltonian.spectrum().to_eigenbasis(m0).hermitian_part();
        Ok(Self {
            hamiltonian,
            gamma,
            initial_in_eigenbasis,
        })
    }

    pub fn hamiltonian(&self) -> &Hamiltonian {
        &self.hamiltonian
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn initial_in_eigenbasis(&self) -> &ComplexMatrix4 {
        &self.initial_in_eigenbasis
    }

    /// Combined phase and damping factor `U_mn(t) · S_mn(t)`.
    pub fn dephasing_factor(&self, m: usize, n: usize, t: f64) -> Complex64 {
        let v = self.hamiltonian.eigenvalues();
        let gap = v[m] - v[n];
        let damping = (-0.5 * self.gamma * gap * gap * t).exp();
        Complex64::from_polar(damping, -gap * t)
    }

    /// `⟨V_m|M(t)|V_n⟩`.
    pub fn eigenbasis_state(&self, t: f64) -> ComplexMatrix4 {
        assert!(
            t.is_finite() && t >= 0.0,
            "evolution time must be finite and non-negative, got {t}"
        );
        ComplexMatrix4::from_fn(|m, n| {
            self.initial_in_eigenbasis[(m, n)] * self.dephasing_factor(m, n, t)
        })
    }

    /// `M(t)` in the product basis.
    ///
    /// # Panics
    /// If `t` is negative or not finite.
    pub fn evolve(&self, t: f64) -> ComplexMatrix4 {
        self.hamiltonian
            .spectrum()
            .from_eigenbasis(&self.eigenbasis_state(t))
            .hermitian_part()
    }

    pub fn evolve_series(&self, grid: &TimeGrid) -> Vec<(f64, ComplexMatrix4)> {
        grid.points().map(|t| (t, self.evolve(t))).collect()
    }
}

/// Right-hand side of the Milburn master equation.
pub fn milburn_rhs(h: &ComplexMatrix4, gamma: f64, m: &ComplexMatrix4) -> ComplexMatrix4 {
    let comm = h.commutator(m);
    let double = h.commutator(&comm);
    comm.scale(Complex64::new(0.0, -1.0)) - double.scale(0.5 * gamma)
}

fn rk4_step(h: &ComplexMatrix4, gamma: f64, m: &ComplexMatrix4, dt: f64) -> ComplexMatrix4 {
    let k1 = milburn_rhs(h, gamma, m);
    let k2 = milburn_rhs(h, gamma, &(*m + k1.scale(0.5 * dt)));
    let k3 = milburn_rhs(h, gamma, &(*m + k2.scale(0.5 * dt)));
    let k4 = milburn_rhs(h, gamma, &(*m + k3.scale(dt)));
    *m + (k1 + k2.scale(2.0) + k3.scale(2.0) + k4).scale(dt / 6.0)
}

/// Classical fourth-order Runge–Kutta integration of the master equation,
/// starting from `m0` at `t = 0` and sampled on `grid`. Each grid interval
/// is split into `substeps` equal steps; the lead-in from 0 to `t_start`
/// uses steps no longer than those.
pub fn rk4_oracle(
    h: &Hamiltonian,
    gamma: f64,
    m0: &ComplexMatrix4,
    grid: &TimeGrid,
    substeps: usize,
) -> Result<Vec<(f64, ComplexMatrix4)>> {
    if substeps == 0 {
        return Err(Error::InvalidGrid("substeps must be at least 1".into()));
    }
    validate_density_matrix(m0)?;
    let hm = h.matrix();
    let dt = grid.spacing() / substeps as f64;

    let mut state = *m0;
    if grid.t_start() > 0.0 {
        let lead_steps = (grid.t_start() / dt).ceil() as usize;
        let lead_dt = grid.t_start() / lead_steps as f64;
        for _ in 0..lead_steps {
            state = rk4_step(hm, gamma, &state, lead_dt);
        }
    }

    let mut out = Vec::with_capacity(grid.samples());
    out.push((grid.point(0), state));
    for i in 1..grid.samples() {
        let step = (grid.point(i) - grid.point(i - 1)) / substeps as f64;
        for _ in 0..substeps {
            state = rk4_step(hm, gamma, &state, step);
        }
        out.push((grid.point(i), state));
    }
    Ok(out)
}

/// Largest elementwise deviation between two trajectories on the same grid.
pub fn max_trajectory_deviation(a: &[(f64, ComplexMatrix4)], b: &[(f64, ComplexMatrix4)]) -> f64 {
    assert_eq!(a.len(), b.len(), "trajectories have different lengths");
    a.iter()
        .zip(b)
        .map(|((_, x), (_, y))| x.max_abs_diff(y))
        .map(|d| if d.is_nan() { f64::INFINITY } else { d })
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::eig_hermitian;
    use crate::model::{build_hamiltonian, initial_state, ModelParams};

    fn fig1a() -> ModelParams {
        ModelParams {
            j_x: 0.8,
            j_y: 0.8,
            j_z: 0.8,
            b_uniform: 0.3,
            b_inhomog: 0.5,
            ..Default::default()
        }
    }

    fn purity(m: &ComplexMatrix4) -> f64 {
        (*m * *m).trace().re
    }

    #[test]
    fn grid_rejects_bad_bounds() {
        assert!(TimeGrid::new(0.0, 1.0, 1).is_err());
        assert!(TimeGrid::new(1.0, 1.0, 5).is_err());
        assert!(TimeGrid::new(-1.0, 1.0, 5).is_err());
        assert!(TimeGrid::new(0.0, f64::NAN, 5).is_err());
        let g = TimeGrid::new(0.0, 1.0, 5).unwrap();
        assert_eq!(
            g.points().collect::<Vec<_>>(),
            vec![0.0, 0.25, 0.5, 0.75, 1.0]
        );
        assert_eq!(g.substeps_for(1e-3), 250);
    }

    #[test]
    fn diagonal_hamiltonian_keeps_product_basis() {
        let h = Hamiltonian::from_matrix(ComplexMatrix4::from_real_diagonal([-1.0, 0.0, 0.5, 2.0]))
            .unwrap();
        let p = make_propagator(h, 0.1, &initial_state()).unwrap();
        assert_eq!(*p.initial_in_eigenbasis(), initial_state());
    }

    #[test]
    fn maximally_mixed_is_basis_independent() {
        let h = build_hamiltonian(&ModelParams {
            d_x: 0.7,
            ..fig1a()
        })
        .unwrap();
        let mixed = ComplexMatrix4::identity().scale(0.25);
        let p = make_propagator(h, 0.2, &mixed).unwrap();
        assert!(p.initial_in_eigenbasis().max_abs_diff(&mixed) < 1e-15);
        assert!(p.evolve(13.0).max_abs_diff(&mixed) < 1e-15);
    }

    #[test]
    fn fig1a_internal_state_is_valid() {
        let h = build_hamiltonian(&fig1a()).unwrap();
        let p = make_propagator(h, 0.0, &initial_state()).unwrap();
        let r = p.initial_in_eigenbasis();
        assert!(r.hermiticity_deviation() < 1e-10);
        assert!((r.trace().re - 1.0).abs() < 1e-10);
    }

    #[test]
    fn rejects_invalid_initial_state() {
        let h = build_hamiltonian(&fig1a()).unwrap();
        let bad = ComplexMatrix4::from_real_diagonal([0.6, 0.6, 0.0, 0.0]);
        assert!(matches!(
            make_propagator(h, 0.0, &bad),
            Err(Error::InvalidDensityMatrix(_))
        ));
    }

    #[test]
    fn time_zero_returns_initial_state() {
        let h = build_hamiltonian(&ModelParams {
            d_x: 0.5,
            d_y: 0.5,
            ..fig1a()
        })
        .unwrap();
        let p = make_propagator(h, 0.05, &initial_state()).unwrap();
        assert!(p.evolve(0.0).max_abs_diff(&initial_state()) <= 1e-12);
    }

    #[test]
    fn unitary_evolution_preserves_spectrum() {
        let h = build_hamiltonian(&ModelParams {
            d_x: 0.5,
            ..fig1a()
        })
        .unwrap();
        let m0 = ComplexMatrix4::from_real_diagonal([0.6, 0.3, 0.1, 0.0]);
        let p = make_propagator(h, 0.0, &m0).unwrap();
        for t in [0.3, 2.0, 17.5, 101.0] {
            let ev = eig_hermitian(&p.evolve(t)).unwrap().eigenvalues();
            for (x, y) in ev.iter().zip([0.0, 0.1, 0.3, 0.6]) {
                assert!((x - y).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn long_time_coherences_are_damped() {
        let params = ModelParams {
            gamma: 0.05,
            ..fig1a()
        };
        let h = build_hamiltonian(&params).unwrap();
        let v = h.eigenvalues();
        let p = make_propagator(h, params.gamma, &initial_state()).unwrap();
        let t = 200.0;
        let rho = p.eigenbasis_state(t);
        for m in 0..4 {
            for n in 0..4 {
                let gap = v[m] - v[n];
                if m == n || gap.abs() < 1e-9 {
                    continue;
                }
                // oracle: direct evaluation of the damping envelope
                let envelope = (-0.5 * params.gamma * gap * gap * t).exp();
                let bound = p.initial_in_eigenbasis()[(m, n)].norm() * envelope;
                assert!((rho[(m, n)].norm() - bound).abs() < 1e-15);
                // the smallest gap here is ~0.31, so t = 200 leaves up to ~1e-1;
                // the envelope only drops below 1e-3 near t ≈ 2400
                let late = p.eigenbasis_state(3000.0)[(m, n)].norm();
                assert!(late <= 1e-3, "gap {gap}: {late}");
            }
        }
    }

    #[test]
    fn series_matches_pointwise() {
        let h = build_hamiltonian(&fig1a()).unwrap();
        let p = make_propagator(h, 0.05, &initial_state()).unwrap();
        let grid = TimeGrid::new(0.0, 7.0, 2).unwrap();
        let series = p.evolve_series(&grid);
        assert_eq!(series, vec![(0.0, p.evolve(0.0)), (7.0, p.evolve(7.0))]);
    }

    #[test]
    fn purity_constant_when_unitary_and_monotone_when_dephasing() {
        let grid = TimeGrid::new(0.0, 30.0, 601).unwrap();
        let h = build_hamiltonian(&ModelParams {
            d_x: 0.5,
            d_y: 0.5,
            ..fig1a()
        })
        .unwrap();

        let unitary = make_propagator(h, 0.0, &initial_state()).unwrap();
        for (_, m) in unitary.evolve_series(&grid) {
            assert!((purity(&m) - 1.0).abs() < 1e-9);
        }

        let damped = make_propagator(h, 0.05, &initial_state()).unwrap();
        let purities: Vec<f64> = damped
            .evolve_series(&grid)
            .iter()
            .map(|(_, m)| purity(m))
            .collect();
        for w in purities.windows(2) {
            assert!(w[1] <= w[0] + 1e-10);
        }
        assert!(purities.last().unwrap() < &0.99);
    }

    #[test]
    fn semigroup_in_dephasing_factors() {
        let h = build_hamiltonian(&ModelParams {
            gamma: 0.2,
            d_y: 1.0,
            ..fig1a()
        })
        .unwrap();
        let p = make_propagator(h, 0.2, &initial_state()).unwrap();
        let (t1, t2) = (1.25, 2.5);
        for m in 0..4 {
            for n in 0..4 {
                let split = p.dephasing_factor(m, n, t1) * p.dephasing_factor(m, n, t2);
                let joint = p.dephasing_factor(m, n, t1 + t2);
                assert!((split - joint).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn rk4_constant_for_commuting_state() {
        let h = Hamiltonian::from_matrix(ComplexMatrix4::from_real_diagonal([-1.0, 0.0, 0.5, 0.5]))
            .unwrap();
        let m0 = ComplexMatrix4::from_real_diagonal([0.4, 0.3, 0.2, 0.1]);
        let grid = TimeGrid::new(0.0, 3.0, 4).unwrap();
        for (_, m) in rk4_oracle(&h, 0.0, &m0, &grid, 10).unwrap() {
            assert_eq!(m, m0);
        }
    }

    #[test]
    fn rk4_constant_for_maximally_mixed() {
        let h = build_hamiltonian(&ModelParams {
            d_x: 1.3,
            ..fig1a()
        })
        .unwrap();
        let mixed = ComplexMatrix4::identity().scale(0.25);
        let grid = TimeGrid::new(0.0, 2.0, 3).unwrap();
        for (_, m) in rk4_oracle(&h, 0.3, &mixed, &grid, 50).unwrap() {
            assert!(m.max_abs_diff(&mixed) < 1e-15);
        }
    }

    #[test]
    fn rk4_agrees_with_closed_form() {
        let params = ModelParams {
            d_x: 0.5,
            d_y: -0.3,
            gamma: 0.05,
            ..fig1a()
        };
        let h = build_hamiltonian(&params).unwrap();
        let grid = TimeGrid::new(0.0, 5.0, 51).unwrap();
        let closed = make_propagator(h, params.gamma, &initial_state())
            .unwrap()
            .evolve_series(&grid);
        let rk4 = rk4_oracle(
            &h,
            params.gamma,
            &initial_state(),
            &grid,
            grid.substeps_for(1e-3),
        )
        .unwrap();
        assert!(max_trajectory_deviation(&closed, &rk4) <= 1e-6);
    }

    #[test]
    fn rk4_handles_offset_grid() {
        let params = ModelParams {
            gamma: 0.1,
            ..fig1a()
        };
        let h = build_hamiltonian(&params).unwrap();
        let grid = TimeGrid::new(1.5, 2.5, 11).unwrap();
        let closed = make_propagator(h, params.gamma, &initial_state())
            .unwrap()
            .evolve_series(&grid);
        let rk4 = rk4_oracle(&h, params.gamma, &initial_state(), &grid, 20).unwrap();
        assert!(max_trajectory_deviation(&closed, &rk4) <= 1e-8);
    }

    #[test]
    fn rk4_rejects_zero_substeps() {
        let h = build_hamiltonian(&fig1a()).unwrap();
        let grid = TimeGrid::new(0.0, 1.0, 2).unwrap();
        assert!(rk4_oracle(&h, 0.0, &initial_state(), &grid, 0).is_err());
    }

    #[test]
    fn nan_trajectory_counts_as_infinite_deviation() {
        let m = initial_state();
        let a = vec![(0.0, m), (1.0, m)];
        let b = vec![(0.0, m), (1.0, m.scale(f64::NAN))];
        assert_eq!(max_trajectory_deviation(&a, &a), 0.0);
        assert_eq!(max_trajectory_deviation(&a, &b), f64::INFINITY);
    }
}
