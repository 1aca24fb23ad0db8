//! Bipartite composition: tensor products, observable lifting, partial
//! trace, remote conditional states, the no-signaling identity, and
//! factorizability testing.
//!
//! # Index convention (A-major)
//!
//! For a layout (d_A, d_B) the composite basis index is `i = a·d_B + b`:
//! factor A runs on the slow axis. Worked 2⊗2 example: the basis order is
//! |00⟩, |01⟩, |10⟩, |11⟩ with |ab⟩ = |a⟩_A ⊗ |b⟩_B, so for
//! M = σ_z ⊗ I the entry M[(2,2)] (state |10⟩) is −1, while for
//! N = I ⊗ σ_z the entry N[(2,2)] is +1.
//!
//! Multipartite systems are handled by nesting bipartite layouts.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::observable::{Filter, Observable};
use crate::state::DensityOperator;
use crate::tol::{TAU_FACT, TAU_PROB};

/// Ordered factor dimensions of a bipartite system.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubsystemLayout {
    pub dim_a: usize,
    pub dim_b: usize,
}

/// Which factor an operation addresses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    A,
    B,
}

impl SubsystemLayout {
    pub fn new(dim_a: usize, dim_b: usize) -> Result<Self> {
        if dim_a == 0 || dim_b == 0 {
            return Err(Error::ZeroDimension);
        }
        Ok(Self { dim_a, dim_b })
    }

    pub fn total(&self) -> usize {
        self.dim_a * self.dim_b
    }

    pub fn dim_of(&self, side: Side) -> usize {
        match side {
            Side::A => self.dim_a,
            Side::B => self.dim_b,
        }
    }

    fn check_total(&self, total: usize) -> Result<()> {
        if self.total() != total {
            return Err(Error::LayoutMismatch {
                dim_a: self.dim_a,
                dim_b: self.dim_b,
                total,
            });
        }
        Ok(())
    }
}

/// ρ_A ⊗ ρ_B: the joint state of two statistically independent parts.
pub fn compose(rho_a: &DensityOperator, rho_b: &DensityOperator) -> DensityOperator {
    DensityOperator::new(rho_a.matrix().kron(rho_b.matrix()))
        .expect("tensor product of valid states is a valid state")
}

/// G_A ⊗ I (or I ⊗ G_B): the observable of one part as an observable of the
/// whole.
pub fn lift_observable(
    g: &Observable,
    layout: SubsystemLayout,
    side: Side,
) -> Result<Observable> {
    if g.dim() != layout.dim_of(side) {
        return Err(Error::DimensionMismatch {
            expected: layout.dim_of(side),
            actual: g.dim(),
        });
    }
    let lifted = match side {
        Side::A => g.matrix().kron(&ComplexMatrix::identity(layout.dim_b)),
        Side::B => ComplexMatrix::identity(layout.dim_a).kron(g.matrix()),
    };
    Observable::new(lifted)
}

/// F_A ⊗ I (or I ⊗ F_B).
pub fn lift_filter(f: &Filter, layout: SubsystemLayout, side: Side) -> Result<Filter> {
    if f.dim() != layout.dim_of(side) {
        return Err(Error::DimensionMismatch {
            expected: layout.dim_of(side),
            actual: f.dim(),
        });
    }
    let lifted = match side {
        Side::A => f.matrix().kron(&ComplexMatrix::identity(layout.dim_b)),
        Side::B => ComplexMatrix::identity(layout.dim_a).kron(f.matrix()),
    };
    Filter::new(lifted)
}

/// Contract one factor of a (not necessarily normalized) composite matrix.
pub fn partial_trace_matrix(
    m: &ComplexMatrix,
    layout: SubsystemLayout,
    keep: Side,
) -> Result<ComplexMatrix> {
    layout.check_total(m.require_square()?)?;
    let (da, db) = (layout.dim_a, layout.dim_b);
    let out = match keep {
        Side::A => ComplexMatrix::from_fn(da, da, |i, j| {
            (0..db).map(|b| m[(i * db + b, j * db + b)]).sum()
        }),
        Side::B => ComplexMatrix::from_fn(db, db, |k, l| {
            (0..da).map(|a| m[(a * db + k, a * db + l)]).sum()
        }),
    };
    Ok(out)
}

/// Reduced state of one factor: ρ_A = Tr^(B) ρ (and symmetrically for B).
pub fn partial_trace(
    rho: &DensityOperator,
    layout: SubsystemLayout,
    keep: Side,
) -> Result<DensityOperator> {
    DensityOperator::new(partial_trace_matrix(rho.matrix(), layout, keep)?)
}

/// The state a measurement of filter `f_a` on part A prepares for part B:
/// ρ_B^(1) = Tr^(A)(FρF)/Tr((F_A⊗I)ρ) for result 1, the complement form for
/// result 0. Conditioning on a branch of probability ≤ τ_prob is an error.
pub fn remote_conditional_state(
    rho: &DensityOperator,
    layout: SubsystemLayout,
    f_a: &Filter,
    result: bool,
) -> Result<DensityOperator> {
    layout.check_total(rho.dim())?;
    let lifted = lift_filter(f_a, layout, Side::A)?;
    let effective = if result { lifted } else { lifted.complement() };
    let probability = rho
        .matrix()
        .trace_product(effective.matrix())
        .re
        .clamp(0.0, 1.0);
    if probability <= TAU_PROB {
        return Err(Error::ZeroProbabilityBranch { probability });
    }
    let projected = &(effective.matrix() * rho.matrix()) * effective.matrix();
    let reduced = partial_trace_matrix(&projected, layout, Side::B)?;
    DensityOperator::new(reduced.scaled_re(1.0 / probability))
}

/// ‖Tr^(A)[FρF + (I−F)ρ(I−F)] − ρ_B‖_F: the defect of the no-signaling
/// identity, which the theory pins at zero. Stays ≤ τ_eig for every input.
pub fn no_signaling_check(
    rho: &DensityOperator,
    layout: SubsystemLayout,
    f_a: &Filter,
) -> Result<f64> {
    layout.check_total(rho.dim())?;
    let lifted = lift_filter(f_a, layout, Side::A)?;
    let blocked = lifted.complement();
    let mixed = &(&(lifted.matrix() * rho.matrix()) * lifted.matrix())
        + &(&(blocked.matrix() * rho.matrix()) * blocked.matrix());
    let remote = partial_trace_matrix(&mixed, layout, Side::B)?;
    let rho_b = partial_trace(rho, layout, Side::B)?;
    Ok(remote.frobenius_distance(rho_b.matrix()))
}

/// Whether ρ equals the product of its own marginals, with the Frobenius
/// deviation ‖ρ − ρ_A ⊗ ρ_B‖_F.
pub fn is_factorizable(
    rho: &DensityOperator,
    layout: SubsystemLayout,
) -> Result<(bool, f64)> {
    layout.check_total(rho.dim())?;
    let rho_a = partial_trace(rho, layout, Side::A)?;
    let rho_b = partial_trace(rho, layout, Side::B)?;
    let product = rho_a.matrix().kron(rho_b.matrix());
    let deviation = rho.matrix().frobenius_distance(&product);
    Ok((deviation <= TAU_FACT, deviation))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::epr::singlet;
    use crate::matrix::C64;
    use crate::observable::{expectation, pauli_z, spin_projector, Direction};
    use crate::rng::{complex_normal, trial_stream, unit_sphere};
    use crate::tol::TAU_EIG;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn qubit_layout() -> SubsystemLayout {
        SubsystemLayout::new(2, 2).unwrap()
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

    fn random_pure(rng: &mut rand_chacha::ChaCha12Rng, d: usize) -> DensityOperator {
        let v: Vec<C64> = (0..d)
            .map(|_| {
                let (re, im) = complex_normal(rng);
                c(re, im)
            })
            .collect();
        DensityOperator::from_pure_vector(&v).unwrap()
    }

    #[test]
    fn compose_mixed_and_basis_states() {
        let half = DensityOperator::maximally_mixed(2).unwrap();
        let joint = compose(&half, &half);
        assert!(joint.distance(&DensityOperator::maximally_mixed(4).unwrap()) < 1e-14);

        let zero = DensityOperator::from_pure_vector(&[c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
        let one = DensityOperator::from_pure_vector(&[c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
        let zero_one = compose(&zero, &one);
        let expected =
            DensityOperator::from_pure_vector(&[c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)])
                .unwrap();
        assert!(zero_one.distance(&expected) < 1e-14);
    }

    #[test]
    fn marginals_of_product_recover_factors() {
        let mut rng = trial_stream(31, 0);
        for _ in 0..10 {
            let a = random_state(&mut rng, 2);
            let b = random_state(&mut rng, 3);
            let layout = SubsystemLayout::new(2, 3).unwrap();
            let joint = compose(&a, &b);
            assert!(partial_trace(&joint, layout, Side::A).unwrap().distance(&a) < TAU_EIG);
            assert!(partial_trace(&joint, layout, Side::B).unwrap().distance(&b) < TAU_EIG);
        }
    }

    #[test]
    fn lift_matches_direct_tensor() {
        let sz = Observable::new(pauli_z()).unwrap();
        let lifted = lift_observable(&sz, qubit_layout(), Side::A).unwrap();
        let expected = pauli_z().kron(&ComplexMatrix::identity(2));
        assert!(lifted.matrix().frobenius_distance(&expected) < 1e-15);

        let id = Observable::identity(2);
        let lifted_id = lift_observable(&id, qubit_layout(), Side::B).unwrap();
        assert!(
            lifted_id
                .matrix()
                .frobenius_distance(&ComplexMatrix::identity(4))
                < 1e-15
        );
    }

    #[test]
    fn lift_rejects_wrong_dimension() {
        let g = Observable::identity(3);
        assert!(matches!(
            lift_observable(&g, qubit_layout(), Side::A),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn lifted_expectation_equals_marginal_expectation() {
        let mut rng = trial_stream(32, 0);
        let sz = Observable::new(pauli_z()).unwrap();
        for _ in 0..20 {
            let rho = random_state(&mut rng, 4);
            let lhs = expectation(&rho, &lift_observable(&sz, qubit_layout(), Side::A).unwrap())
                .unwrap();
            let marginal = partial_trace(&rho, qubit_layout(), Side::A).unwrap();
            let rhs = expectation(&marginal, &sz).unwrap();
            assert!((lhs - rhs).abs() < TAU_EIG);
        }
    }

    #[test]
    fn partial_trace_of_classically_correlated_state() {
        // (|00><00| + |11><11|)/2 reduces to I/2 on either side.
        let m = ComplexMatrix::from_real_diagonal(&[0.5, 0.0, 0.0, 0.5]);
        let rho = DensityOperator::new(m).unwrap();
        let half = DensityOperator::maximally_mixed(2).unwrap();
        assert!(partial_trace(&rho, qubit_layout(), Side::A).unwrap().distance(&half) < 1e-14);
        assert!(partial_trace(&rho, qubit_layout(), Side::B).unwrap().distance(&half) < 1e-14);
    }

    #[test]
    fn partial_trace_rejects_bad_layout() {
        let rho = DensityOperator::maximally_mixed(4).unwrap();
        let layout = SubsystemLayout::new(3, 2).unwrap();
        assert!(matches!(
            partial_trace(&rho, layout, Side::A),
            Err(Error::LayoutMismatch { .. })
        ));
    }

    #[test]
    fn partial_trace_linear_and_trace_preserving() {
        let mut rng = trial_stream(33, 0);
        let layout = qubit_layout();
        for _ in 0..10 {
            let r1 = random_state(&mut rng, 4);
            let r2 = random_state(&mut rng, 4);
            let blend = &r1.matrix().scaled_re(0.3) + &r2.matrix().scaled_re(0.7);
            let direct = partial_trace_matrix(&blend, layout, Side::B).unwrap();
            let split = &partial_trace_matrix(r1.matrix(), layout, Side::B)
                .unwrap()
                .scaled_re(0.3)
                + &partial_trace_matrix(r2.matrix(), layout, Side::B)
                    .unwrap()
                    .scaled_re(0.7);
            assert!(direct.frobenius_distance(&split) < 1e-13);
            assert!((direct.trace().re - 1.0).abs() < 1e-13);
        }
    }

    #[test]
    fn remote_conditioning_on_singlet_steers_opposite_spin() {
        let rho = singlet();
        let layout = qubit_layout();

        // Measuring S_A·z = +1/2 leaves B in the S_B·z = −1/2 state.
        let f_z = spin_projector(&Direction::z_axis(), true);
        let steered = remote_conditional_state(&rho, layout, &f_z, true).unwrap();
        let down = DensityOperator::from_pure_vector(&[c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
        assert!(steered.distance(&down) < 1e-12);

        // Same along x.
        let f_x = spin_projector(&Direction::x_axis(), true);
        let steered_x = remote_conditional_state(&rho, layout, &f_x, true).unwrap();
        let minus_x =
            DensityOperator::from_pure_vector(&[c(1.0, 0.0), c(-1.0, 0.0)]).unwrap();
        assert!(steered_x.distance(&minus_x) < 1e-12);
    }

    #[test]
    fn remote_conditioning_on_product_state_changes_nothing() {
        let mut rng = trial_stream(34, 0);
        for _ in 0..10 {
            let a = random_state(&mut rng, 2);
            let b = random_state(&mut rng, 2);
            let joint = compose(&a, &b);
            let [x, y, z] = unit_sphere(&mut rng);
            let f = spin_projector(&Direction::new(x, y, z).unwrap(), true);
            for result in [true, false] {
                match remote_conditional_state(&joint, qubit_layout(), &f, result) {
                    Ok(cond) => assert!(cond.distance(&b) < TAU_EIG),
                    // A branch the filter never takes carries no conditional state.
                    Err(Error::ZeroProbabilityBranch { .. }) => {}
                    Err(e) => panic!("unexpected error: {e}"),
                }
            }
        }
    }

    #[test]
    fn remote_conditioning_error_on_impossible_branch() {
        let up = DensityOperator::from_pure_vector(&[c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
        let joint = compose(&up, &up);
        let f_down = spin_projector(&Direction::z_axis(), false);
        assert!(matches!(
            remote_conditional_state(&joint, qubit_layout(), &f_down, true),
            Err(Error::ZeroProbabilityBranch { .. })
        ));
    }

    #[test]
    fn conditional_branches_average_to_marginal() {
        let mut rng = trial_stream(35, 0);
        for _ in 0..10 {
            let rho = random_state(&mut rng, 4);
            let [x, y, z] = unit_sphere(&mut rng);
            let f = spin_projector(&Direction::new(x, y, z).unwrap(), true);
            let layout = qubit_layout();

            let lifted = lift_filter(&f, layout, Side::A).unwrap();
            let p1 = rho.matrix().trace_product(lifted.matrix()).re;
            let b1 = remote_conditional_state(&rho, layout, &f, true).unwrap();
            let b0 = remote_conditional_state(&rho, layout, &f, false).unwrap();
            let blend = &b1.matrix().scaled_re(p1) + &b0.matrix().scaled_re(1.0 - p1);
            let rho_b = partial_trace(&rho, layout, Side::B).unwrap();
            assert!(blend.frobenius_distance(rho_b.matrix()) < TAU_EIG);
        }
    }

    #[test]
    fn no_signaling_on_singlet_and_products() {
        let layout = qubit_layout();
        let mut rng = trial_stream(36, 0);
        for _ in 0..10 {
            let [x, y, z] = unit_sphere(&mut rng);
            let f = spin_projector(&Direction::new(x, y, z).unwrap(), true);
            assert!(no_signaling_check(&singlet(), layout, &f).unwrap() <= 1e-12);

            let a = random_state(&mut rng, 2);
            let b = random_state(&mut rng, 2);
            assert!(no_signaling_check(&compose(&a, &b), layout, &f).unwrap() <= 1e-12);
        }
    }

    #[test]
    fn no_signaling_sweep_on_random_states() {
        let layout = qubit_layout();
        let mut rng = trial_stream(37, 0);
        for _ in 0..100 {
            let rho = random_state(&mut rng, 4);
            let v: Vec<C64> = (0..2)
                .map(|_| {
                    let (re, im) = complex_normal(&mut rng);
                    c(re, im)
                })
                .collect();
            let f = Filter::onto_vector(&v).unwrap();
            assert!(no_signaling_check(&rho, layout, &f).unwrap() <= 1e-10);
        }
    }

    #[test]
    fn factorizability_separates_products_from_entangled() {
        let mut rng = trial_stream(38, 0);
        let layout = qubit_layout();
        for _ in 0..10 {
            let joint = compose(&random_state(&mut rng, 2), &random_state(&mut rng, 2));
            let (factorizable, dev) = is_factorizable(&joint, layout).unwrap();
            assert!(factorizable, "product state flagged entangled (dev {dev:.3e})");
        }

        let (factorizable, dev) = is_factorizable(&singlet(), layout).unwrap();
        assert!(!factorizable);
        // Hand value: ‖singlet − I/4‖_F = √3/2.
        assert!((dev - 3.0_f64.sqrt() / 2.0).abs() < 1e-12);

        let classical =
            DensityOperator::new(ComplexMatrix::from_real_diagonal(&[0.5, 0.0, 0.0, 0.5]))
                .unwrap();
        let (factorizable, dev) = is_factorizable(&classical, layout).unwrap();
        assert!(!factorizable);
        assert!((dev - 0.5).abs() < 1e-12);
    }

    #[test]
    fn pure_marginal_implies_factorizable() {
        let mut rng = trial_stream(39, 0);
        let layout = qubit_layout();
        for _ in 0..20 {
            let pure_a = random_pure(&mut rng, 2);
            let any_b = random_state(&mut rng, 2);
            let joint = compose(&pure_a, &any_b);
            let marginal = partial_trace(&joint, layout, Side::A).unwrap();
            assert!(marginal.is_pure());
            let (factorizable, _) = is_factorizable(&joint, layout).unwrap();
            assert!(factorizable);
        }
        // Contrapositive: the singlet is entangled and neither marginal is pure.
        let ma = partial_trace(&singlet(), layout, Side::A).unwrap();
        assert!(!ma.is_pure());
    }
}
