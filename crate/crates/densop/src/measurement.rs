//! Ideal measurement channels and stochastic outcome sampling.
//!
//! The conditioned channel is ρ′ = FρF/Tr(Fρ) for result 1 and its
//! complement form for result 0; disregarding the result mixes both
//! branches: ρ′ = FρF + (I−F)ρ(I−F). Immediate repetition of an ideal
//! measurement reproduces its result and leaves the state fixed.

use rand::Rng;

use crate::error::{Error, Result};
use crate::observable::{Filter, Observable, spectral_measure};
use crate::rng::trial_stream;
use crate::state::DensityOperator;
use crate::tol::{TAU_EIG, TAU_PROB};

/// One realized (or conditioned) measurement.
#[derive(Clone, Debug)]
pub struct MeasurementOutcome {
    /// 1/0 for a filter; the index into the spectral measure for an
    /// observable (eigenvalues descending).
    pub result: usize,
    /// The measured value: 1.0/0.0 for a filter, the eigenvalue λ_k for an
    /// observable.
    pub value: f64,
    /// Probability of this result in the pre-measurement state.
    pub probability: f64,
    /// State after the measurement.
    pub post_state: DensityOperator,
}

fn branch_probability(rho: &DensityOperator, f: &Filter) -> f64 {
    let p = rho.matrix().trace_product(f.matrix());
    assert!(
        p.im.abs() <= TAU_EIG,
        "filter probability came out complex (imag {:.3e})",
        p.im
    );
    // Rounding may leave the real part a hair outside [0, 1].
    p.re.clamp(0.0, 1.0)
}

fn conditioned_state(rho: &DensityOperator, f: &Filter, probability: f64) -> Result<DensityOperator> {
    let projected = &(f.matrix() * rho.matrix()) * f.matrix();
    DensityOperator::new(projected.scaled_re(1.0 / probability))
}

fn check_dims(rho: &DensityOperator, dim: usize) -> Result<()> {
    if rho.dim() != dim {
        return Err(Error::DimensionMismatch {
            expected: rho.dim(),
            actual: dim,
        });
    }
    Ok(())
}

/// Ideal measurement of a filter conditioned on a known result.
///
/// Result 1 yields ρ′ = FρF/Tr(Fρ) with probability Tr(Fρ); result 0 the
/// complement form. Conditioning on a branch of probability ≤ τ_prob is an
/// error: the conditional state is undefined there.
pub fn ideal_measure_conditioned(
    rho: &DensityOperator,
    f: &Filter,
    result: bool,
) -> Result<MeasurementOutcome> {
    check_dims(rho, f.dim())?;
    let p_pass = branch_probability(rho, f);
    let (probability, effective) = if result {
        (p_pass, f.clone())
    } else {
        (1.0 - p_pass, f.complement())
    };
    if probability <= TAU_PROB {
        return Err(Error::ZeroProbabilityBranch { probability });
    }
    let post_state = conditioned_state(rho, &effective, probability)?;
    Ok(MeasurementOutcome {
        result: result as usize,
        value: result as usize as f64,
        probability,
        post_state,
    })
}

/// Ideal measurement of a filter with the result disregarded:
/// ρ′ = FρF + (I−F)ρ(I−F). Trace-preserving.
pub fn ideal_measure_disregarded(rho: &DensityOperator, f: &Filter) -> Result<DensityOperator> {
    check_dims(rho, f.dim())?;
    let g = f.complement();
    let passed = &(f.matrix() * rho.matrix()) * f.matrix();
    let blocked = &(g.matrix() * rho.matrix()) * g.matrix();
    DensityOperator::new(&passed + &blocked)
}

/// Draw the result of an ideal filter measurement.
///
/// The draw is a pure function of `(seed, trial)`. Branches of probability
/// ≤ τ_prob (or ≥ 1 − τ_prob) are resolved deterministically, so the
/// returned conditional state always exists.
pub fn sample_filter(
    rho: &DensityOperator,
    f: &Filter,
    seed: u64,
    trial: u64,
) -> Result<MeasurementOutcome> {
    check_dims(rho, f.dim())?;
    let p_pass = branch_probability(rho, f);
    let result = if p_pass <= TAU_PROB {
        false
    } else if p_pass >= 1.0 - TAU_PROB {
        true
    } else {
        let u: f64 = trial_stream(seed, trial).gen();
        u < p_pass
    };
    ideal_measure_conditioned(rho, f, result)
}

/// Draw an eigenvalue of an observable with Born-rule probabilities over its
/// spectral measure; the post-state is the conditioned channel output for
/// the selected filter.
pub fn measure_observable(
    rho: &DensityOperator,
    g: &Observable,
    seed: u64,
    trial: u64,
) -> Result<MeasurementOutcome> {
    check_dims(rho, g.dim())?;
    let parts = spectral_measure(g);
    let probabilities: Vec<f64> = parts
        .iter()
        .map(|(_, f)| branch_probability(rho, f))
        .collect();
    let u: f64 = trial_stream(seed, trial).gen();
    let k = sample_index(&probabilities, u);
    let (eigenvalue, filter) = &parts[k];
    let probability = probabilities[k];
    let post_state = conditioned_state(rho, filter, probability)?;
    Ok(MeasurementOutcome {
        result: k,
        value: *eigenvalue,
        probability,
        post_state,
    })
}

/// Pick an index from unnormalized category weights, treating weights
/// ≤ τ_prob as exactly zero.
pub(crate) fn sample_index(weights: &[f64], u: f64) -> usize {
    let cleaned: Vec<f64> = weights
        .iter()
        .map(|&w| if w <= TAU_PROB { 0.0 } else { w })
        .collect();
    let total: f64 = cleaned.iter().sum();
    debug_assert!(total > 0.0, "all categories have zero weight");
    let target = u * total;
    let mut acc = 0.0;
    let mut last_nonzero = 0;
    for (k, &w) in cleaned.iter().enumerate() {
        if w == 0.0 {
            continue;
        }
        acc += w;
        last_nonzero = k;
        if target < acc {
            return k;
        }
    }
    last_nonzero
}
