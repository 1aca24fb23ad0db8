//! # Ideal measurement: conditioning, disregarding, sampling
//!
//! Measuring the filter F = |0⟩⟨0| on |+x⟩⟨+x|:
//! conditioning on a result projects (ρ′ = FρF/Tr Fρ) and is repetition-
//! stable; disregarding the result mixes both branches into
//! FρF + (I−F)ρ(I−F), here the fully mixed state. Seeded sampling
//! reproduces the Born weights to binomial accuracy.
//!
//! ## Run
//! ```sh
//! cargo run --release --example measurement_channels
//! ```

use densop::matrix::{C64, ComplexMatrix};
use densop::measurement::{
    ideal_measure_conditioned, ideal_measure_disregarded, sample_filter,
};
use densop::observable::Filter;
use densop::state::DensityOperator;

const TRIALS: u64 = 100_000;
const SEED: u64 = 7;

fn main() {
    let plus_x =
        DensityOperator::from_pure_vector(&[C64::new(1.0, 0.0), C64::new(1.0, 0.0)]).unwrap();
    let f = Filter::new(ComplexMatrix::from_real_diagonal(&[1.0, 0.0])).unwrap();

    let passed = ideal_measure_conditioned(&plus_x, &f, true).unwrap();
    println!(
        "conditioned on result 1: probability {:.3}, post state pure = {}",
        passed.probability,
        passed.post_state.is_pure()
    );
    let again = ideal_measure_conditioned(&passed.post_state, &f, true).unwrap();
    println!(
        "repeating the same measurement: probability {:.12}, state moved {:.2e}",
        again.probability,
        again.post_state.distance(&passed.post_state)
    );

    let blurred = ideal_measure_disregarded(&plus_x, &f).unwrap();
    println!(
        "result disregarded: distance from I/2 = {:.2e}, information {:+.4} nats",
        blurred.distance(&DensityOperator::maximally_mixed(2).unwrap()),
        densop::info::info_content(&blurred)
    );

    let mut hits = 0u64;
    for trial in 0..TRIALS {
        hits += sample_filter(&plus_x, &f, SEED, trial).unwrap().result as u64;
    }
    let freq = hits as f64 / TRIALS as f64;
    let sigma = (0.25 / TRIALS as f64).sqrt();
    println!(
        "\nsampled {TRIALS} trials (seed {SEED}): frequency {:.4} vs Tr(F rho) = 0.5 (sigma {:.5})",
        freq, sigma
    );

    assert!((again.probability - 1.0).abs() < 1e-9);
    assert!((freq - 0.5).abs() < 4.0 * sigma);
    println!("conditioning is repetition-stable; disregarding only ever mixes");
}
