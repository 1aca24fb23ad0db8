//! # Why mixed states are not ignorance over pure states
//!
//! The claim under test ("microrealism"): in a mixed ensemble, each member
//! can be assumed to sit in some definite pure state. The singlet falsifies
//! it. Conditioning on a ẑ-axis result on side A steers B into a ẑ
//! eigenstate; conditioning on an x̂ result steers B into an x̂ eigenstate.
//! A single predetermined pure state for B would have to be both, but the
//! two projectors do not commute. Meanwhile the unconditioned marginal of B
//! never moves, so nothing was signaled.
//!
//! ## Run
//! ```sh
//! cargo run --release --example statement_f
//! ```

use densop::composite::{remote_conditional_state, SubsystemLayout};
use densop::epr::{singlet, statement_f_falsification};
use densop::observable::{spin_projector, Direction};

fn main() {
    let layout = SubsystemLayout::new(2, 2).unwrap();
    let rho = singlet();

    println!("remote steering of spin B by measurements on spin A\n");
    for (axis, dir) in [("z", Direction::z_axis()), ("x", Direction::x_axis())] {
        let filter = spin_projector(&dir, true);
        for result in [true, false] {
            let state = remote_conditional_state(&rho, layout, &filter, result).unwrap();
            println!(
                "  S_A.{axis} result {}: B becomes pure = {}, eigenvalues {:?}",
                result as u8,
                state.is_pure(),
                state
                    .eigenvalues()
                    .iter()
                    .map(|l| (l * 1e6).round() / 1e6)
                    .collect::<Vec<_>>()
            );
        }
    }

    let report = statement_f_falsification();
    println!("\nfalsification report");
    println!(
        "  commutator norm of z- and x-conditioned projectors: {:.6} (= 1/sqrt 2)",
        report.commutator_norm
    );
    println!(
        "  marginal deviation when results are disregarded:    {:.2e}",
        report.marginal_deviation
    );

    assert!((report.commutator_norm - 1.0 / 2.0_f64.sqrt()).abs() < 1e-9);
    assert!(report.marginal_deviation < 1e-12);
    println!("\nno single pure state of B fits both conditionings; rho_B itself never changed");
}
