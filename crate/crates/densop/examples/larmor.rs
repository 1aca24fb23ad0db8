//! # Larmor precession: closed form vs stepped integration
//!
//! H = ω S_z applied to |+x⟩⟨+x| precesses the Bloch vector:
//! ⟨σ_x⟩(t) = cos(ωt). The exact propagator comes from the
//! eigendecomposition of H; the stepped path integrates
//! dρ/dt = −i[H, ρ] with fourth-order steps. At ω·dt = 0.01 they agree to
//! better than 1e-6 over a full period.
//!
//! ## Run
//! ```sh
//! cargo run --release --example larmor
//! ```

use densop::dynamics::{evolve_exact, evolve_stepped, EvolutionSpec};
use densop::matrix::C64;
use densop::observable::{expectation, pauli_x, spin_component, Direction, Observable};
use densop::state::DensityOperator;

const OMEGA: f64 = 1.0;
const STEP: f64 = 0.01;

fn main() {
    let rho0 =
        DensityOperator::from_pure_vector(&[C64::new(1.0, 0.0), C64::new(1.0, 0.0)]).unwrap();
    let h = spin_component(&Direction::z_axis())
        .matrix()
        .scaled_re(OMEGA);
    let h_obs = Observable::new(h.clone()).unwrap();
    let sx = Observable::new(pauli_x()).unwrap();

    let spec = EvolutionSpec::new(0.0, std::f64::consts::TAU / OMEGA, STEP / OMEGA, 1.0).unwrap();
    let trajectory = evolve_stepped(&rho0, |_| h.clone(), &spec).unwrap();

    println!("t        cos(wt)    stepped    exact      |stepped-closed|");
    let mut worst = 0.0f64;
    for point in trajectory.iter().step_by(80) {
        let closed = (OMEGA * point.time).cos();
        let stepped = expectation(&point.state, &sx).unwrap();
        let exact_state = evolve_exact(&rho0, &h_obs, point.time, 1.0).unwrap();
        let exact = expectation(&exact_state, &sx).unwrap();
        println!(
            "{:6.3}   {:+.5}   {:+.5}   {:+.5}   {:.2e}",
            point.time,
            closed,
            stepped,
            exact,
            (stepped - closed).abs()
        );
    }
    for point in &trajectory {
        let closed = (OMEGA * point.time).cos();
        let stepped = expectation(&point.state, &sx).unwrap();
        worst = worst.max((stepped - closed).abs());
    }

    println!("\nmax |<sigma_x> - cos(wt)| over one period: {worst:.3e}");
    assert!(worst < 1e-6);

    let last = trajectory.last().unwrap();
    assert!(last.state.is_pure(), "unitary evolution keeps purity");
    println!("state stayed pure along the whole trajectory");
}
