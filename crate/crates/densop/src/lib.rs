//! densop — a density-operator quantum mechanics engine.
//!
//! Every state is a density operator (ρ = ρ†, ρ ≥ 0, Tr ρ = 1), pure states
//! being the idempotent special case. On top of that single state type the
//! crate provides:
//!
//! * observables, projective filters and spectral measures ([`observable`]);
//! * ideal measurement channels, conditioned and result-disregarded, with
//!   seeded Born-rule sampling ([`measurement`]);
//! * bipartite composition, partial traces, remote conditional states, the
//!   no-signaling identity and factorizability tests ([`composite`]);
//! * unitary time evolution, exact and stepped ([`dynamics`]);
//! * an EPR/Bell laboratory: singlet correlations, local-hidden-variable
//!   strategies, and the Bell-inequality audit ([`epr`]);
//! * the information content I(ρ) = Tr(ρ ln ρ) with its additivity and
//!   superadditivity checks ([`info`]);
//! * a deterministic scenario runner behind the `densop` binary
//!   ([`scenario`]).
//!
//! All tolerances are compile-time constants in [`tol`]. Randomness is
//! counter-based ([`rng`]): every draw is a pure function of
//! `(seed, trial index)`, so results reproduce exactly regardless of
//! scheduling.
//!
//! The `examples/` directory exercises each capability end to end; start
//! with `cargo run --example bell_violation`.

pub mod composite;
pub mod dynamics;
pub mod epr;
pub mod error;
pub mod info;
pub mod matrix;
pub mod measurement;
pub mod observable;
pub mod rng;
pub mod scenario;
pub mod state;
pub mod tol;

pub use composite::{Side, SubsystemLayout};
pub use error::{Error, Result};
pub use matrix::{C64, ComplexMatrix};
pub use observable::{Direction, Filter, Observable};
pub use state::DensityOperator;
