//! Density operators: ρ = ρ†, ρ ≥ 0, Tr ρ = 1.
//!
//! Every state in the engine is a `DensityOperator`, pure or mixed alike;
//! there is no state-vector type. Construction validates the three defining
//! properties, clamps the floating-point dust that measurement channels
//! leave on the spectrum, and renormalizes the trace to exactly 1.

use serde::de::Error as _;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::matrix::{C64, ComplexMatrix};
use crate::tol::{TAU_PSD, TAU_PURITY, TAU_TRACE};

/// A validated quantum state.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityOperator {
    matrix: ComplexMatrix,
    dim: usize,
}

impl DensityOperator {
    /// Validate and canonicalize a candidate density matrix.
    ///
    /// Rejects non-square, non-Hermitian, wrong-trace and negative inputs.
    /// Eigenvalues in [−τ_psd, 0) are clamped to 0 and the spectrum is
    /// rescaled so the trace is exactly 1.
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        let dim = matrix.require_square()?;
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        matrix.require_hermitian()?;

        let trace = matrix.trace();
        let trace_dev = (trace - C64::new(1.0, 0.0)).norm();
        if trace_dev > TAU_TRACE {
            return Err(Error::InvalidTrace { trace: trace.re });
        }

        let eig = matrix.eig_hermitian()?;
        let min = eig.eigenvalues.iter().copied().fold(f64::INFINITY, f64::min);
        if min < -TAU_PSD {
            return Err(Error::NotPositive {
                min_eigenvalue: min,
            });
        }

        let clamped: Vec<f64> = eig.eigenvalues.iter().map(|&l| l.max(0.0)).collect();
        let total: f64 = clamped.iter().sum();
        let spectrum: Vec<C64> = clamped
            .iter()
            .map(|&l| C64::new(l / total, 0.0))
            .collect();
        let canonical = eig.rebuild_from(&spectrum).hermitized();

        Ok(Self {
            matrix: canonical,
            dim,
        })
    }

    /// ρ = v v† / ‖v‖², the pure state of a (not necessarily normalized)
    /// vector. The result is idempotent.
    pub fn from_pure_vector(v: &[C64]) -> Result<Self> {
        let norm_sq: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        if norm_sq == 0.0 || v.is_empty() {
            return Err(Error::ZeroVector);
        }
        let mut outer = ComplexMatrix::outer(v, v);
        outer = outer.scaled_re(1.0 / norm_sq);
        Self::new(outer)
    }

    /// I/d, the completely unpolarized state.
    pub fn maximally_mixed(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        Self::new(ComplexMatrix::identity(dim).scaled_re(1.0 / dim as f64))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    /// ‖ρ² − ρ‖_F; zero exactly when the state is pure.
    pub fn purity_residue(&self) -> f64 {
        (&(&self.matrix * &self.matrix) - &self.matrix).frobenius_norm()
    }

    /// A state is pure iff its density operator is idempotent.
    pub fn is_pure(&self) -> bool {
        self.purity_residue() <= TAU_PURITY
    }

    /// Tr(ρ²) ∈ [1/d, 1].
    pub fn purity(&self) -> f64 {
        self.matrix.trace_product(&self.matrix).re
    }

    /// Spectrum, descending. All entries lie in [0, 1].
    pub fn eigenvalues(&self) -> Vec<f64> {
        self.matrix
            .eig_hermitian()
            .expect("stored density matrix stays Hermitian")
            .eigenvalues
    }

    /// Frobenius distance to another state.
    pub fn distance(&self, other: &Self) -> f64 {
        self.matrix.frobenius_distance(&other.matrix)
    }
}

const KIND: &str = "density";

impl Serialize for DensityOperator {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("DensityOperator", 4)?;
        s.serialize_field("kind", KIND)?;
        s.serialize_field("rows", &self.dim)?;
        s.serialize_field("cols", &self.dim)?;
        let data: Vec<[f64; 2]> = (0..self.dim)
            .flat_map(|i| (0..self.dim).map(move |j| (i, j)))
            .map(|(i, j)| {
                let z = self.matrix[(i, j)];
                [z.re, z.im]
            })
            .collect();
        s.serialize_field("data", &data)?;
        s.end()
    }
}

#[derive(Deserialize)]
struct TaggedMatrix {
    kind: String,
    rows: usize,
    cols: usize,
    data: Vec<[f64; 2]>,
}

impl<'de> Deserialize<'de> for DensityOperator {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let tagged = TaggedMatrix::deserialize(deserializer)?;
        if tagged.kind != KIND {
            return Err(D::Error::custom(format!(
                "expected kind \"{KIND}\", got \"{}\"",
                tagged.kind
            )));
        }
        if tagged.data.len() != tagged.rows * tagged.cols {
            return Err(D::Error::custom("matrix data does not fill its shape"));
        }
        let m = ComplexMatrix::from_fn(tagged.rows, tagged.cols, |i, j| {
            let [re, im] = tagged.data[i * tagged.cols + j];
            C64::new(re, im)
        });
        DensityOperator::new(m).map_err(D::Error::custom)
    }
}
