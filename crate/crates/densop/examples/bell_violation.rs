//! # Bell inequality: quantum singlet vs local hidden variables
//!
//! Three coplanar directions a, b, c at 0°, 60° and 120°. Every strategy of
//! predetermined ±1 outcomes with B(n, i) = −A(n, i) obeys
//!
//! ```text
//! |P(a,b) − P(a,c)| ≤ 1 + P(b,c)
//! ```
//!
//! The singlet's correlation P(a,b) = −a·b does not: at these angles the
//! margin 1 + P(bc) − |P(ab) − P(ac)| lands at −0.5.
//!
//! ## Run
//! ```sh
//! cargo run --release --example bell_violation
//! ```

use densop::epr::{
    bell_check, lhv_estimate, qm_correlation, qm_sampled_correlation, SignModel,
};
use densop::observable::Direction;

/// Trials per correlation estimate.
const TRIALS: u64 = 100_000;

/// Root seed; every draw is a pure function of (seed, trial index).
const SEED: u64 = 2026;

fn main() {
    let a = Direction::in_xz_plane(0.0);
    let b = Direction::in_xz_plane(60.0_f64.to_radians());
    let c = Direction::in_xz_plane(120.0_f64.to_radians());
    let pairs = [("ab", a, b), ("ac", a, c), ("bc", b, c)];

    println!("directions: coplanar 0/60/120 degrees, {TRIALS} trials, seed {SEED}\n");

    // Exact quantum correlations.
    let exact: Vec<f64> = pairs
        .iter()
        .map(|(_, u, v)| qm_correlation(u, v))
        .collect();
    println!("exact quantum:   P(ab) = {:+.4}  P(ac) = {:+.4}  P(bc) = {:+.4}",
        exact[0], exact[1], exact[2]);
    let quantum = bell_check(exact[0], exact[1], exact[2]).unwrap();
    println!(
        "                 margin = {:+.4}  satisfied = {}",
        quantum.margin, quantum.satisfied
    );

    // Monte Carlo over the singlet's joint Born probabilities.
    let sampled: Vec<_> = pairs
        .iter()
        .enumerate()
        .map(|(k, (_, u, v))| qm_sampled_correlation(u, v, TRIALS, SEED + k as u64))
        .collect();
    let mc = bell_check(
        sampled[0].correlation,
        sampled[1].correlation,
        sampled[2].correlation,
    )
    .unwrap();
    println!(
        "sampled quantum: P(ab) = {:+.4}  P(ac) = {:+.4}  P(bc) = {:+.4}",
        sampled[0].correlation, sampled[1].correlation, sampled[2].correlation
    );
    println!(
        "                 margin = {:+.4}  satisfied = {}",
        mc.margin, mc.satisfied
    );

    // Sign-model hidden variables: one shared lambda per trial.
    let dirs = [(a, b), (a, c), (b, c)];
    let lhv = lhv_estimate(&SignModel, &dirs, TRIALS, SEED);
    let lhv_result = bell_check(
        lhv[0].correlation,
        lhv[1].correlation,
        lhv[2].correlation,
    )
    .unwrap();
    println!(
        "sign-model LHV:  P(ab) = {:+.4}  P(ac) = {:+.4}  P(bc) = {:+.4}",
        lhv[0].correlation, lhv[1].correlation, lhv[2].correlation
    );
    println!(
        "                 margin = {:+.4}  satisfied = {}",
        lhv_result.margin, lhv_result.satisfied
    );

    assert!((quantum.margin + 0.5).abs() < 1e-12);
    assert!(!quantum.satisfied);
    assert!(!mc.satisfied, "sampled margin {:+.4}", mc.margin);
    assert!(lhv_result.satisfied, "LHV margin {:+.4}", lhv_result.margin);
    println!("\nquantum correlations violate the inequality; the LHV model cannot");
}
