//! The Bohm-EPR singlet laboratory: marginals, spin correlations, remote
//! preparation, the microrealism falsification report, local-hidden-variable
//! sampling, and the Bell-inequality audit.
//!
//! The singlet carries perfectly anticorrelated spin components: measuring
//! 2S_A·n̂ fixes 2S_B·n̂ to the opposite sign for every direction n̂, and the
//! two-point correlation is ⟨2S_A·â 2S_B·b̂⟩ = −â·b̂. Predetermined ±1
//! assignments with that anticorrelation obey
//! |P(â,b̂) − P(â,ĉ)| ≤ 1 + P(b̂,ĉ) for every hidden-variable ensemble;
//! the quantum correlation does not.

use rand::Rng;
use serde::Serialize;

use crate::composite::{
    no_signaling_check, remote_conditional_state, SubsystemLayout,
};
use crate::error::{Error, Result};
use crate::matrix::{commutator, C64};
use crate::observable::{expectation, spin_component, spin_projector, Direction, Observable};
use crate::rng::{trial_stream, unit_sphere};
use crate::state::DensityOperator;
use crate::tol::{TAU_BELL, TAU_EIG, TAU_PROB};

/// A predetermined ±1 measurement outcome.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Plus,
    Minus,
}

impl Outcome {
    pub fn value(self) -> f64 {
        match self {
            Outcome::Plus => 1.0,
            Outcome::Minus => -1.0,
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            Outcome::Plus => Outcome::Minus,
            Outcome::Minus => Outcome::Plus,
        }
    }

    fn from_sign(x: f64) -> Self {
        // sign(0) breaks towards +1 so the rule stays total and deterministic.
        if x < 0.0 {
            Outcome::Minus
        } else {
            Outcome::Plus
        }
    }
}

/// Hidden variable for one trial, shared across every direction queried in
/// that trial.
#[derive(Clone, Copy, Debug)]
pub struct Lambda {
    /// Uniform point on the unit sphere.
    pub axis: [f64; 3],
    /// Auxiliary uniform draw in [0, 1).
    pub aux: f64,
}

/// Draw the hidden variable of trial `trial`; pure in `(seed, trial)`.
pub fn draw_lambda(seed: u64, trial: u64) -> Lambda {
    let mut rng = trial_stream(seed, trial);
    let axis = unit_sphere(&mut rng);
    let aux = rng.gen();
    Lambda { axis, aux }
}

/// A rule assigning predetermined outcomes A(n̂, λ) for side A.
///
/// Side B is not part of the rule: B(n̂, λ) = −A(n̂, λ) always, so the
/// anticorrelation constraint holds by construction.
pub trait LhvStrategy {
    fn outcome_a(&self, direction: &Direction, lambda: &Lambda) -> Outcome;
}

/// A(n̂, λ) = sign(λ·n̂) with λ uniform on the sphere.
#[derive(Clone, Copy, Debug, Default)]
pub struct SignModel;

impl LhvStrategy for SignModel {
    fn outcome_a(&self, direction: &Direction, lambda: &Lambda) -> Outcome {
        let [x, y, z] = lambda.axis;
        let [nx, ny, nz] = direction.components();
        Outcome::from_sign(x * nx + y * ny + z * nz)
    }
}

/// Fixed outcome table for hand-constructed ensembles. Directions not
/// listed fall back to the sign rule, keeping the strategy total.
#[derive(Clone, Debug, Default)]
pub struct TableStrategy {
    entries: Vec<(Direction, Outcome)>,
}

impl TableStrategy {
    pub fn new(entries: Vec<(Direction, Outcome)>) -> Self {
        Self { entries }
    }
}

impl LhvStrategy for TableStrategy {
    fn outcome_a(&self, direction: &Direction, lambda: &Lambda) -> Outcome {
        for (entry, outcome) in &self.entries {
            if entry.dot(direction) > 1.0 - 1e-12 {
                return *outcome;
            }
        }
        SignModel.outcome_a(direction, lambda)
    }
}

/// One estimated two-point correlation P(â, b̂).
#[derive(Clone, Debug, Serialize)]
pub struct CorrelationRecord {
    pub pair: (Direction, Direction),
    /// Empirical mean of the ±1 products, in [−1, 1].
    pub correlation: f64,
    pub n_trials: u64,
    /// √((1 − P²)/n), the standard error of a mean of ±1 values.
    pub std_error: f64,
}

fn record(pair: (Direction, Direction), sum: i64, n: u64) -> CorrelationRecord {
    let correlation = sum as f64 / n as f64;
    let variance = (1.0 - correlation * correlation).max(0.0);
    CorrelationRecord {
        pair,
        correlation,
        n_trials: n,
        std_error: (variance / n as f64).sqrt(),
    }
}

/// Result of one Bell-inequality audit.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct BellCheck {
    pub satisfied: bool,
    /// 1 + P(b̂,ĉ) − |P(â,b̂) − P(â,ĉ)|; nonnegative when the inequality
    /// holds.
    pub margin: f64,
}

/// The total-spin-zero two-qubit pure state (|½,−½⟩ − |−½,½⟩)/√2.
pub fn singlet() -> DensityOperator {
    let s = 1.0 / 2.0_f64.sqrt();
    DensityOperator::from_pure_vector(&[
        C64::new(0.0, 0.0),
        C64::new(s, 0.0),
        C64::new(-s, 0.0),
        C64::new(0.0, 0.0),
    ])
    .expect("singlet vector is nonzero")
}

/// ⟨2S_A·â 2S_B·b̂⟩ on the singlet. Equals −â·b̂; the identity is asserted
/// to τ_eig before the value is returned.
pub fn qm_correlation(a: &Direction, b: &Direction) -> f64 {
    let op_a = spin_component(a).matrix().scaled_re(2.0);
    let op_b = spin_component(b).matrix().scaled_re(2.0);
    let joint = Observable::new(op_a.kron(&op_b)).expect("tensor of Hermitians");
    let value = expectation(&singlet(), &joint).expect("dimensions match");
    assert!(
        (value + a.dot(b)).abs() <= TAU_EIG,
        "singlet correlation {value} strays from {}",
        -a.dot(b)
    );
    value
}

/// Empirical P(â,b̂) = (1/N) Σ_i A(â,i)·B(b̂,i) for each requested pair,
/// with one shared hidden-variable draw per trial across all pairs.
pub fn lhv_estimate(
    strategy: &dyn LhvStrategy,
    pairs: &[(Direction, Direction)],
    n: u64,
    seed: u64,
) -> Vec<CorrelationRecord> {
    assert!(n >= 1, "need at least one trial");
    let mut sums = vec![0i64; pairs.len()];
    for trial in 0..n {
        let lambda = draw_lambda(seed, trial);
        for (k, (a, b)) in pairs.iter().enumerate() {
            let out_a = strategy.outcome_a(a, &lambda);
            let out_b = strategy.outcome_a(b, &lambda).flipped();
            sums[k] += (out_a.value() * out_b.value()) as i64;
        }
    }
    pairs
        .iter()
        .zip(sums)
        .map(|(&pair, sum)| record(pair, sum, n))
        .collect()
}

/// Audit |P(â,b̂) − P(â,ĉ)| ≤ 1 + P(b̂,ĉ) with τ_bell slack.
pub fn bell_check(p_ab: f64, p_ac: f64, p_bc: f64) -> Result<BellCheck> {
    for value in [p_ab, p_ac, p_bc] {
        if !(value.abs() <= 1.0 + TAU_BELL) {
            return Err(Error::CorrelationOutOfRange { value });
        }
    }
    let margin = 1.0 + p_bc - (p_ab - p_ac).abs();
    Ok(BellCheck {
        satisfied: margin >= -TAU_BELL,
        margin,
    })
}

/// Sampled singlet correlation: joint ±1 outcomes drawn over the four
/// filter pairs of S_A·â and S_B·b̂ with Born-rule weights.
pub fn qm_sampled_correlation(
    a: &Direction,
    b: &Direction,
    n: u64,
    seed: u64,
) -> CorrelationRecord {
    assert!(n >= 1, "need at least one trial");
    let rho = singlet();
    // Categories (+,+), (+,−), (−,+), (−,−) with their ±1 products.
    let mut probabilities = [0.0f64; 4];
    let products = [1.0f64, -1.0, -1.0, 1.0];
    for (k, (sa, sb)) in [(true, true), (true, false), (false, true), (false, false)]
        .iter()
        .enumerate()
    {
        let joint = spin_projector(a, *sa)
            .matrix()
            .kron(spin_projector(b, *sb).matrix());
        let p = rho.matrix().trace_product(&joint).re;
        probabilities[k] = if p <= TAU_PROB { 0.0 } else { p };
    }

    let mut sum = 0i64;
    for trial in 0..n {
        let u: f64 = trial_stream(seed, trial).gen();
        let k = crate::measurement::sample_index(&probabilities, u);
        sum += products[k] as i64;
    }
    record((*a, *b), sum, n)
}

/// One remote-conditioning branch of the falsification argument.
#[derive(Clone, Debug, Serialize)]
pub struct ConditionedBranch {
    /// Measured spin axis on side A: "z" or "x".
    pub axis: String,
    /// Result of the A-side filter (1 = spin +½ along the axis).
    pub result: u8,
    /// ‖ρ² − ρ‖_F of the conditioned B state; ≤ τ_eig (the state is pure).
    pub purity_residue: f64,
    /// The conditioned state of B.
    pub state: DensityOperator,
}

/// Structured output of [`statement_f_falsification`].
#[derive(Clone, Debug, Serialize)]
pub struct StatementFReport {
    /// All four conditioned B states: axes ẑ and x̂, both results.
    pub branches: Vec<ConditionedBranch>,
    /// ‖[Π_z, Π_x]‖_F between the result-1 conditioned projectors; equals
    /// 1/√2 for the singlet, so the two pure states cannot coexist as one
    /// predetermined state.
    pub commutator_norm: f64,
    /// Worst ‖Tr^(A)[FρF + (I−F)ρ(I−F)] − ρ_B‖_F over both axes; zero up to
    /// rounding, so disregarded measurements on A never move ρ_B.
    pub marginal_deviation: f64,
}

/// Run the falsification of microrealism ("every member of a mixed ensemble
/// is in some pure state"): conditioning the singlet on ẑ- and x̂-axis
/// results steers B into incompatible pure states, while the unconditioned
/// marginal never moves. Assertion failure signals an engine defect.
pub fn statement_f_falsification() -> StatementFReport {
    let rho = singlet();
    let layout = SubsystemLayout::new(2, 2).expect("2x2 layout");

    let axes = [("z", Direction::z_axis()), ("x", Direction::x_axis())];
    let mut branches = Vec::with_capacity(4);
    let mut result_one_states = Vec::with_capacity(2);
    let mut marginal_deviation = 0.0f64;

    for (name, axis) in &axes {
        let f_a = spin_projector(axis, true);
        for result in [true, false] {
            let state = remote_conditional_state(&rho, layout, &f_a, result)
                .expect("singlet branches have probability 1/2");
            let purity_residue = state.purity_residue();
            assert!(
                purity_residue <= TAU_EIG,
                "conditioned state failed to be pure (residue {purity_residue:.3e})"
            );
            if result {
                result_one_states.push(state.clone());
            }
            branches.push(ConditionedBranch {
                axis: (*name).to_string(),
                result: result as u8,
                purity_residue,
                state,
            });
        }
        marginal_deviation =
            marginal_deviation.max(no_signaling_check(&rho, layout, &f_a).expect("dims match"));
    }

    assert!(
        marginal_deviation <= TAU_EIG,
        "disregarded measurement moved the marginal by {marginal_deviation:.3e}"
    );

    let commutator_norm = commutator(
        result_one_states[0].matrix(),
        result_one_states[1].matrix(),
    )
    .frobenius_norm();
    assert!(
        commutator_norm > 0.1,
        "conditioned projectors unexpectedly commute (norm {commutator_norm:.3e})"
    );

    StatementFReport {
        branches,
        commutator_norm,
        marginal_deviation,
    }
}
