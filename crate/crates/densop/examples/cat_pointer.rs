//! # Two-level atom and pointer
//!
//! A decaying atom entangled with a macroscopic pointer, boiled down to
//! 2 ⊗ 2: the joint state is (|undecayed, alive⟩ + |decayed, dead⟩)/√2.
//! The pointer's own state is the coin-toss mixture diag(½, ½) — the joint
//! superposition does not put the pointer in a superposed pure state — and
//! reading the pointer conditions the atom into the matching pure state.
//!
//! ## Run
//! ```sh
//! cargo run --release --example cat_pointer
//! ```

use densop::scenario::cat_demo;

const SEED: u64 = 42;

fn main() {
    let report = cat_demo(SEED);

    println!("pointer marginal:");
    for i in 0..2 {
        let row: Vec<String> = (0..2)
            .map(|j| format!("{:+.3}", report.pointer_marginal.matrix()[(i, j)].re))
            .collect();
        println!("  [{}]", row.join(", "));
    }
    println!(
        "pointer marginal is pure: {}",
        report.pointer_marginal_pure
    );

    println!("\nconditional atom states:");
    for branch in &report.branches {
        println!(
            "  pointer \"{}\" (p = {:.2}): atom pure = {}",
            branch.pointer_reading, branch.probability, branch.atom_state_pure
        );
    }

    println!("\none sampled readout (seed {SEED}): {}", report.sampled_reading);

    assert!(!report.pointer_marginal_pure);
    assert!(report.branches.iter().all(|b| b.atom_state_pure));
    println!("the pointer holds a definite reading; the mixture records our ignorance of it");
}
