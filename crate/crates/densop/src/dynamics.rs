//! Time evolution under the von Neumann–Schrödinger equation
//! iℏ dρ/dt = [H, ρ].
//!
//! For a constant Hamiltonian the exact propagator ρ(t) = U ρ₀ U† with
//! U = exp(−iHt/ℏ) is available; time-dependent generators go through a
//! fourth-order single-step integrator with re-Hermitization and trace
//! renormalization after every step.

use crate::error::{Error, Result};
use crate::matrix::{commutator, C64, ComplexMatrix};
use crate::observable::Observable;
use crate::state::DensityOperator;

/// Time grid and constants for a stepped evolution. ℏ defaults to 1 in
/// scenario files.
#[derive(Clone, Copy, Debug)]
pub struct EvolutionSpec {
    pub t_start: f64,
    pub t_end: f64,
    pub step: f64,
    pub hbar: f64,
}

impl EvolutionSpec {
    pub fn new(t_start: f64, t_end: f64, step: f64, hbar: f64) -> Result<Self> {
        if !(step > 0.0) || !step.is_finite() {
            return Err(Error::InvalidEvolution(format!(
                "step must be positive (got {step})"
            )));
        }
        if t_end < t_start || !t_start.is_finite() || !t_end.is_finite() {
            return Err(Error::InvalidEvolution(format!(
                "need t_end >= t_start (got {t_start}..{t_end})"
            )));
        }
        if hbar == 0.0 || !hbar.is_finite() {
            return Err(Error::InvalidEvolution(format!(
                "hbar must be finite and nonzero (got {hbar})"
            )));
        }
        Ok(Self {
            t_start,
            t_end,
            step,
            hbar,
        })
    }
}

/// One emitted sample of a trajectory.
#[derive(Clone, Debug)]
pub struct TrajectoryPoint {
    pub time: f64,
    pub state: DensityOperator,
}

/// Closed-form evolution for a constant Hamiltonian: ρ(t) = U ρ₀ U†.
///
/// The spectrum of ρ is untouched, so purity and information content are
/// conserved.
pub fn evolve_exact(
    rho0: &DensityOperator,
    h: &Observable,
    t: f64,
    hbar: f64,
) -> Result<DensityOperator> {
    if h.dim() != rho0.dim() {
        return Err(Error::DimensionMismatch {
            expected: rho0.dim(),
            actual: h.dim(),
        });
    }
    let u = ComplexMatrix::unitary_from_generator(h.matrix(), t, hbar)?;
    DensityOperator::new(&(&u * rho0.matrix()) * &u.adjoint())
}

/// Integrate dρ/dt = −(i/ℏ)[H(t), ρ] with classic fourth-order steps.
///
/// `h_of_t` is sampled at t, t+step/2 and t+step; every sample must be
/// Hermitian. The emitted trajectory starts at `spec.t_start` and ends at
/// `spec.t_end` (the final step is shortened when the interval is not a
/// multiple of `step`). For constant H the result agrees with
/// [`evolve_exact`] within τ_dyn at the documented step size.
pub fn evolve_stepped(
    rho0: &DensityOperator,
    mut h_of_t: impl FnMut(f64) -> ComplexMatrix,
    spec: &EvolutionSpec,
) -> Result<Vec<TrajectoryPoint>> {
    let d = rho0.dim();
    let mut sample = |t: f64| -> Result<ComplexMatrix> {
        let h = h_of_t(t);
        if h.rows() != d || h.cols() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                actual: h.rows(),
            });
        }
        h.require_hermitian()?;
        Ok(h)
    };

    let span = spec.t_end - spec.t_start;
    let full_steps = (span / spec.step).floor() as u64;
    let remainder = span - full_steps as f64 * spec.step;

    let mut trajectory = Vec::with_capacity(full_steps as usize + 2);
    trajectory.push(TrajectoryPoint {
        time: spec.t_start,
        state: rho0.clone(),
    });

    let mut current = rho0.matrix().clone();
    let mut advance = |m: &ComplexMatrix, t: f64, dt: f64| -> Result<ComplexMatrix> {
        let rhs = |h: &ComplexMatrix, rho: &ComplexMatrix| {
            commutator(h, rho).scaled(C64::new(0.0, -1.0 / spec.hbar))
        };
        let h1 = sample(t)?;
        let h2 = sample(t + 0.5 * dt)?;
        let h3 = sample(t + dt)?;
        let k1 = rhs(&h1, m);
        let k2 = rhs(&h2, &(m + &k1.scaled_re(0.5 * dt)));
        let k3 = rhs(&h2, &(m + &k2.scaled_re(0.5 * dt)));
        let k4 = rhs(&h3, &(m + &k3.scaled_re(dt)));
        let increment = &(&k1 + &k4) + &(&k2 + &k3).scaled_re(2.0);
        let mut next = m + &increment.scaled_re(dt / 6.0);
        // Suppress Hermiticity and trace drift before it accumulates.
        next = next.hermitized();
        let trace = next.trace().re;
        Ok(next.scaled_re(1.0 / trace))
    };

    for k in 0..full_steps {
        let t = spec.t_start + k as f64 * spec.step;
        current = advance(&current, t, spec.step)?;
        trajectory.push(TrajectoryPoint {
            time: spec.t_start + (k + 1) as f64 * spec.step,
            state: DensityOperator::new(current.clone())?,
        });
    }
    if remainder > spec.step * 1e-9 {
        let t = spec.t_start + full_steps as f64 * spec.step;
        current = advance(&current, t, remainder)?;
        trajectory.push(TrajectoryPoint {
            time: spec.t_end,
            state: DensityOperator::new(current)?,
        });
    }
    Ok(trajectory)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::info::info_content;
    use crate::matrix::C64;
    use crate::observable::{expectation, pauli_x, spin_component, Direction, Observable};
    use crate::rng::{complex_normal, trial_stream};
    use crate::tol::{TAU_DYN, TAU_EIG};

    fn plus_x() -> DensityOperator {
        DensityOperator::from_pure_vector(&[C64::new(1.0, 0.0), C64::new(1.0, 0.0)]).unwrap()
    }

    fn random_state(rng: &mut rand_chacha::ChaCha12Rng, d: usize) -> DensityOperator {
        let raw = ComplexMatrix::from_fn(d, d, |_, _| {
            let (re, im) = complex_normal(rng);
            C64::new(re, im)
        });
        let psd = &raw * &raw.adjoint();
        let trace = psd.trace().re;
        DensityOperator::new(psd.scaled_re(1.0 / trace)).unwrap()
    }

    #[test]
    fn stationary_states_do_not_move() {
        // [H, rho] = 0 keeps rho fixed.
        let h = Observable::new(ComplexMatrix::from_real_diagonal(&[1.0, 3.0])).unwrap();
        let rho = DensityOperator::new(ComplexMatrix::from_real_diagonal(&[0.7, 0.3])).unwrap();
        for t in [0.1, 1.0, 11.7] {
            let out = evolve_exact(&rho, &h, t, 1.0).unwrap();
            assert!(out.distance(&rho) < TAU_EIG);
        }

        let zero_h = Observable::new(ComplexMatrix::zeros(2, 2)).unwrap();
        let out = evolve_exact(&plus_x(), &zero_h, 5.0, 1.0).unwrap();
        assert!(out.distance(&plus_x()) < TAU_EIG);
    }

    #[test]
    fn larmor_precession_oracle() {
        // H = w S_z on |+x><+x| gives <sigma_x>(t) = cos(w t).
        let omega = 1.3;
        let h = Observable::new(spin_component(&Direction::z_axis()).matrix().scaled_re(omega))
            .unwrap();
        let sx = Observable::new(pauli_x()).unwrap();
        for k in 0..20 {
            let t = k as f64 * 0.37;
            let rho_t = evolve_exact(&plus_x(), &h, t, 1.0).unwrap();
            let value = expectation(&rho_t, &sx).unwrap();
            assert!(
                (value - (omega * t).cos()).abs() < 1e-10,
                "t={t}: {value} vs {}",
                (omega * t).cos()
            );
        }
    }

    #[test]
    fn exact_evolution_composes() {
        let h = Observable::new(pauli_x()).unwrap();
        let mut rng = trial_stream(41, 0);
        let rho = random_state(&mut rng, 2);
        let step1 = evolve_exact(&rho, &h, 0.6, 1.0).unwrap();
        let step2 = evolve_exact(&step1, &h, 1.1, 1.0).unwrap();
        let direct = evolve_exact(&rho, &h, 1.7, 1.0).unwrap();
        assert!(step2.distance(&direct) < TAU_EIG);
    }

    #[test]
    fn exact_evolution_preserves_spectrum_purity_information() {
        let mut rng = trial_stream(42, 0);
        let rho = random_state(&mut rng, 3);
        let raw = ComplexMatrix::from_fn(3, 3, |_, _| {
            let (re, im) = complex_normal(&mut rng);
            C64::new(re, im)
        });
        let h = Observable::new(raw.hermitized()).unwrap();
        let out = evolve_exact(&rho, &h, 2.9, 1.0).unwrap();

        let before = rho.eigenvalues();
        let after = out.eigenvalues();
        for (x, y) in before.iter().zip(&after) {
            assert!((x - y).abs() < 1e-8);
        }
        assert!((info_content(&out) - info_content(&rho)).abs() < 1e-8);

        let pure = plus_x();
        let h2 = Observable::new(spin_component(&Direction::y_axis()).matrix().scaled_re(2.0))
            .unwrap();
        assert!(evolve_exact(&pure, &h2, 1.23, 1.0).unwrap().is_pure());
    }

    #[test]
    fn stepped_matches_exact_for_constant_generator() {
        let omega = 1.0;
        let h = spin_component(&Direction::z_axis()).matrix().scaled_re(omega);
        let spec = EvolutionSpec::new(0.0, std::f64::consts::TAU / omega, 0.01 / omega, 1.0)
            .unwrap();
        let trajectory = evolve_stepped(&plus_x(), |_| h.clone(), &spec).unwrap();
        let h_obs = Observable::new(h.clone()).unwrap();
        let mut worst = 0.0_f64;
        for point in &trajectory {
            let exact = evolve_exact(&plus_x(), &h_obs, point.time, 1.0).unwrap();
            worst = worst.max(point.state.distance(&exact));
        }
        assert!(worst <= TAU_DYN, "integrator strays {worst:.3e} from exact");
    }

    #[test]
    fn zero_generator_keeps_trajectory_constant() {
        let spec = EvolutionSpec::new(0.0, 1.0, 0.125, 1.0).unwrap();
        let trajectory =
            evolve_stepped(&plus_x(), |_| ComplexMatrix::zeros(2, 2), &spec).unwrap();
        assert_eq!(trajectory.len(), 9);
        for point in &trajectory {
            assert!(point.state.distance(&plus_x()) < 1e-12);
        }
    }

    #[test]
    fn trajectory_traces_stay_unit() {
        // Driven qubit with a time-dependent generator.
        let spec = EvolutionSpec::new(0.0, 2.0, 0.01, 1.0).unwrap();
        let h_of_t = |t: f64| {
            &pauli_x().scaled_re((2.0 * t).cos()) + &crate::observable::pauli_z().scaled_re(0.5)
        };
        let trajectory = evolve_stepped(&plus_x(), h_of_t, &spec).unwrap();
        for point in &trajectory {
            assert!((point.state.matrix().trace().re - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn stepped_handles_partial_final_step() {
        // 1.0 is not a multiple of 0.03; the last step shrinks to 0.01.
        let spec = EvolutionSpec::new(0.0, 1.0, 0.03, 1.0).unwrap();
        let h = spin_component(&Direction::z_axis()).matrix().clone();
        let trajectory = evolve_stepped(&plus_x(), |_| h.clone(), &spec).unwrap();
        let last = trajectory.last().unwrap();
        assert!((last.time - 1.0).abs() < 1e-12);
        assert_eq!(trajectory.len(), 35);
        let exact = evolve_exact(
            &plus_x(),
            &Observable::new(h).unwrap(),
            1.0,
            1.0,
        )
        .unwrap();
        assert!(last.state.distance(&exact) < TAU_DYN);
    }

    #[test]
    fn invalid_specs_rejected() {
        assert!(matches!(
            EvolutionSpec::new(0.0, 1.0, 0.0, 1.0),
            Err(Error::InvalidEvolution(_))
        ));
        assert!(matches!(
            EvolutionSpec::new(1.0, 0.0, 0.1, 1.0),
            Err(Error::InvalidEvolution(_))
        ));
        assert!(matches!(
            EvolutionSpec::new(0.0, 1.0, 0.1, 0.0),
            Err(Error::InvalidEvolution(_))
        ));
    }

    #[test]
    fn non_hermitian_generator_sample_rejected() {
        let spec = EvolutionSpec::new(0.0, 1.0, 0.5, 1.0).unwrap();
        let mut skew = ComplexMatrix::zeros(2, 2);
        skew[(0, 1)] = C64::new(1.0, 0.0);
        let result = evolve_stepped(&plus_x(), move |_| skew.clone(), &spec);
        assert!(matches!(result, Err(Error::NotHermitian { .. })));
    }
}
