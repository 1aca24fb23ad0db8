//! Information content I(ρ) = Tr(ρ ln ρ) and its composition laws.
//!
//! I is nonpositive and vanishes exactly on pure states. Over a bipartition
//! it is additive on product states and superadditive in general: the state
//! of the whole carries at least as much information as the states of its
//! parts combined. All values are in nats.

use serde::Serialize;

use crate::composite::{partial_trace, Side, SubsystemLayout};
use crate::error::{Error, Result};
use crate::matrix::C64;
use crate::rng::{complex_normal, trial_stream};
use crate::state::DensityOperator;
use crate::tol::EIG_ZERO;

/// Joint-versus-parts information balance of one bipartite state.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct InfoReport {
    /// I(ρ) of the joint state, ≤ 0.
    pub i_joint: f64,
    /// I(ρ_A) of the A marginal, ≤ 0.
    pub i_a: f64,
    /// I(ρ_B) of the B marginal, ≤ 0.
    pub i_b: f64,
    /// i_joint − i_a − i_b, ≥ 0 up to τ_info.
    pub excess: f64,
}

/// I(ρ) = Σ λ ln λ over the spectrum, with 0·ln 0 = 0.
pub fn info_content(rho: &DensityOperator) -> f64 {
    rho.eigenvalues()
        .iter()
        .filter(|&&l| l > EIG_ZERO)
        .map(|&l| l * l.ln())
        .sum()
}

/// |I(ρ_A ⊗ ρ_B) − I(ρ_A) − I(ρ_B)|: the additivity defect, ≤ τ_info for
/// statistically independent parts.
pub fn additivity_check(rho_a: &DensityOperator, rho_b: &DensityOperator) -> f64 {
    let joint = crate::composite::compose(rho_a, rho_b);
    (info_content(&joint) - info_content(rho_a) - info_content(rho_b)).abs()
}

/// Information balance I(ρ) − I(ρ_A) − I(ρ_B) of a bipartite state.
///
/// The excess is nonnegative (up to τ_info): the product of the marginals is
/// the least informative state with those marginals.
pub fn minimality_check(
    rho: &DensityOperator,
    layout: SubsystemLayout,
) -> Result<InfoReport> {
    let rho_a = partial_trace(rho, layout, Side::A)?;
    let rho_b = partial_trace(rho, layout, Side::B)?;
    let i_joint = info_content(rho);
    let i_a = info_content(&rho_a);
    let i_b = info_content(&rho_b);
    Ok(InfoReport {
        i_joint,
        i_a,
        i_b,
        excess: i_joint - i_a - i_b,
    })
}

/// Reproducible random mixed state: a seeded random pure vector on
/// dimension d·ancilla, traced over the ancilla. Full rank with probability
/// one when ancilla ≥ d; ancilla = 1 yields a pure state.
pub fn random_state(d: usize, ancilla: usize, seed: u64) -> Result<DensityOperator> {
    if d == 0 || ancilla == 0 {
        return Err(Error::ZeroDimension);
    }
    let mut rng = trial_stream(seed, 0);
    let v: Vec<C64> = (0..d * ancilla)
        .map(|_| {
            let (re, im) = complex_normal(&mut rng);
            C64::new(re, im)
        })
        .collect();
    let pure = DensityOperator::from_pure_vector(&v)?;
    if ancilla == 1 {
        return Ok(pure);
    }
    partial_trace(&pure, SubsystemLayout::new(d, ancilla)?, Side::A)
}
