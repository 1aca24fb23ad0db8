//! Centralized numerical tolerances.
//!
//! Every threshold used by the engine is defined here. These are engine
//! contracts, fixed at compile time; the CLI `--tol` flag only reclassifies
//! report rows and never touches any constant in this module.
//!
//! System sizes are tiny (d ≤ 16 in every scenario), so double precision
//! leaves several orders of magnitude between accumulated rounding and each
//! threshold.

/// Hermiticity check: ‖M − M†‖_F ≤ `TAU_HERM` · max(1, ‖M‖_F).
pub const TAU_HERM: f64 = 1e-10;

/// Eigendecomposition residuals: reconstruction, orthonormality of
/// eigenvector sets, unitarity of generated propagators, and the imaginary
/// residue of traces that are real by symmetry.
pub const TAU_EIG: f64 = 1e-9;

/// Most negative eigenvalue a state may carry before construction fails.
/// Eigenvalues in [−`TAU_PSD`, 0) are clamped to 0; measurement channels
/// produce such dust in floating point.
pub const TAU_PSD: f64 = 1e-10;

/// Allowed deviation of a state's trace from 1 before construction fails.
/// Within this band the trace is renormalized to exactly 1.
pub const TAU_TRACE: f64 = 1e-10;

/// Idempotency threshold: ρ is pure iff ‖ρ² − ρ‖_F ≤ `TAU_PURITY`; a filter
/// operator must satisfy ‖F² − F‖_F ≤ `TAU_PURITY`.
pub const TAU_PURITY: f64 = 1e-9;

/// Branch probabilities at or below this are treated as zero: conditioning
/// on them is an error and sampling never selects them.
pub const TAU_PROB: f64 = 1e-12;

/// Eigenvalues λ_i, λ_j belong to the same spectral eigenspace when
/// |λ_i − λ_j| ≤ `TAU_DEGEN_REL` · max(1, |λ_max|).
pub const TAU_DEGEN_REL: f64 = 1e-8;

/// Factorizability: ρ counts as a product state when
/// ‖ρ − ρ_A ⊗ ρ_B‖_F ≤ `TAU_FACT`. Exact products land many orders below
/// this; entangled desk-scale states land far above.
pub const TAU_FACT: f64 = 1e-8;

/// Agreement between the stepped integrator and the closed-form propagator
/// for constant generators at the documented step size.
pub const TAU_DYN: f64 = 1e-6;

/// Slack on the Bell inequality margin, absorbing floating summation error
/// in the ±1 product averages. The inequality itself is exact.
pub const TAU_BELL: f64 = 1e-12;

/// Information-content identities (additivity, superadditivity, purity of
/// the zero) hold to this bound.
pub const TAU_INFO: f64 = 1e-9;

/// Eigenvalues at or below this are exact zeros for the λ ln λ sum,
/// realizing the 0·ln 0 = 0 convention before the logarithm underflows.
pub const EIG_ZERO: f64 = 1e-14;

/// Unit-norm requirement on measurement directions.
pub const TAU_UNIT: f64 = 1e-12;
