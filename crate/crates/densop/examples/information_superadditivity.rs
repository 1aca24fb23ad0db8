//! # Information content of the whole vs its parts
//!
//! I(ρ) = Tr(ρ ln ρ) is nonpositive and zero exactly on pure states. Over a
//! bipartition it is additive on products, I(ρ_A ⊗ ρ_B) = I(ρ_A) + I(ρ_B),
//! and superadditive in general: I(ρ) ≥ I(ρ_A) + I(ρ_B). The singlet is the
//! extreme case — the joint state is pure (I = 0) while each marginal is
//! maximally mixed, leaving an excess of 2 ln 2 nats that lives in neither
//! part alone.
//!
//! ## Run
//! ```sh
//! cargo run --release --example information_superadditivity
//! ```

use densop::composite::SubsystemLayout;
use densop::epr::singlet;
use densop::info::{additivity_check, info_content, minimality_check, random_state};
use densop::state::DensityOperator;

/// Random bipartite states tested against superadditivity.
const SWEEP: u64 = 1000;

fn main() {
    let layout = SubsystemLayout::new(2, 2).unwrap();

    let half = DensityOperator::maximally_mixed(2).unwrap();
    println!("I(I/2)            = {:+.6} nats  (-ln 2)", info_content(&half));
    println!("I(singlet)        = {:+.6} nats  (pure)", info_content(&singlet()));

    let report = minimality_check(&singlet(), layout).unwrap();
    println!(
        "singlet marginals: I(A) = {:+.6}, I(B) = {:+.6}",
        report.i_a, report.i_b
    );
    println!(
        "singlet excess    = {:+.6} nats  (2 ln 2 = {:+.6})",
        report.excess,
        2.0 * std::f64::consts::LN_2
    );

    let mut worst_additivity = 0.0f64;
    for seed in 0..200 {
        let a = random_state(2, 2, seed).unwrap();
        let b = random_state(3, 3, seed + 10_000).unwrap();
        worst_additivity = worst_additivity.max(additivity_check(&a, &b));
    }
    println!("\nadditivity defect over 200 random product pairs: {worst_additivity:.3e}");

    let mut min_excess = f64::INFINITY;
    for seed in 0..SWEEP {
        let rho = random_state(4, 4, seed).unwrap();
        min_excess = min_excess.min(minimality_check(&rho, layout).unwrap().excess);
    }
    println!("minimum excess over {SWEEP} random bipartite states: {min_excess:+.6}");

    assert!((report.excess - 2.0 * std::f64::consts::LN_2).abs() < 1e-9);
    assert!(worst_additivity < 1e-9);
    assert!(min_excess > -1e-9);
    println!("\nthe whole always carries at least the information of its parts");
}
