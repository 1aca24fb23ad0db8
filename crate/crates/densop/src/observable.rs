//! Self-adjoint observables, projective filters, spectral measures,
//! expectation values, and functions of observables.
//!
//! Convention: σ_z = diag(1, −1) and basis index 0 carries spin +½.

use serde::de::Error as _;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::matrix::{C64, ComplexMatrix};
use crate::state::DensityOperator;
use crate::tol::{TAU_DEGEN_REL, TAU_EIG, TAU_PURITY, TAU_UNIT};

pub fn pauli_x() -> ComplexMatrix {
    ComplexMatrix::from_real(2, 2, &[0.0, 1.0, 1.0, 0.0])
}

pub fn pauli_y() -> ComplexMatrix {
    ComplexMatrix::from_row_slice(
        2,
        2,
        &[
            C64::new(0.0, 0.0),
            C64::new(0.0, -1.0),
            C64::new(0.0, 1.0),
            C64::new(0.0, 0.0),
        ],
    )
}

pub fn pauli_z() -> ComplexMatrix {
    ComplexMatrix::from_real_diagonal(&[1.0, -1.0])
}

/// A physical quantity: a validated self-adjoint operator.
#[derive(Clone, Debug, PartialEq)]
pub struct Observable {
    matrix: ComplexMatrix,
}

impl Observable {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        matrix.require_hermitian()?;
        Ok(Self { matrix })
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            matrix: ComplexMatrix::identity(dim),
        }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }
}

/// A two-valued observable: its operator is a projection.
#[derive(Clone, Debug, PartialEq)]
pub struct Filter {
    matrix: ComplexMatrix,
}

impl Filter {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        matrix.require_hermitian()?;
        let deviation = (&(&matrix * &matrix) - &matrix).frobenius_norm();
        if deviation > TAU_PURITY {
            return Err(Error::NotProjector { deviation });
        }
        Ok(Self { matrix })
    }

    /// Rank-1 projector onto the span of `v`.
    pub fn onto_vector(v: &[C64]) -> Result<Self> {
        let norm_sq: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        if norm_sq == 0.0 || v.is_empty() {
            return Err(Error::ZeroVector);
        }
        Self::new(ComplexMatrix::outer(v, v).scaled_re(1.0 / norm_sq))
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            matrix: ComplexMatrix::identity(dim),
        }
    }

    /// I − F.
    pub fn complement(&self) -> Self {
        Self {
            matrix: &ComplexMatrix::identity(self.dim()) - &self.matrix,
        }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn as_observable(&self) -> Observable {
        Observable {
            matrix: self.matrix.clone(),
        }
    }
}

/// Unit 3-vector selecting a spin component S·n̂.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 3]", into = "[f64; 3]")]
pub struct Direction {
    x: f64,
    y: f64,
    z: f64,
}

impl Direction {
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        let norm = (x * x + y * y + z * z).sqrt();
        if (norm - 1.0).abs() > TAU_UNIT {
            return Err(Error::NotUnit { norm });
        }
        Ok(Self { x, y, z })
    }

    /// Normalize an arbitrary nonzero vector into a direction.
    pub fn normalized(x: f64, y: f64, z: f64) -> Result<Self> {
        let norm = (x * x + y * y + z * z).sqrt();
        if norm == 0.0 {
            return Err(Error::ZeroVector);
        }
        Ok(Self {
            x: x / norm,
            y: y / norm,
            z: z / norm,
        })
    }

    pub fn x_axis() -> Self {
        Self { x: 1.0, y: 0.0, z: 0.0 }
    }

    pub fn y_axis() -> Self {
        Self { x: 0.0, y: 1.0, z: 0.0 }
    }

    pub fn z_axis() -> Self {
        Self { x: 0.0, y: 0.0, z: 1.0 }
    }

    /// Direction at angle θ from ẑ inside the x–z plane; the coplanar family
    /// used for Bell angle scans.
    pub fn in_xz_plane(theta_rad: f64) -> Self {
        Self {
            x: theta_rad.sin(),
            y: 0.0,
            z: theta_rad.cos(),
        }
    }

    pub fn dot(&self, other: &Self) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn components(&self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }
}

impl TryFrom<[f64; 3]> for Direction {
    type Error = Error;
    fn try_from([x, y, z]: [f64; 3]) -> Result<Self> {
        Self::new(x, y, z)
    }
}

impl From<Direction> for [f64; 3] {
    fn from(d: Direction) -> [f64; 3] {
        d.components()
    }
}

/// ⟨g⟩ = Tr(ρG).
pub fn expectation(rho: &DensityOperator, g: &Observable) -> Result<f64> {
    if rho.dim() != g.dim() {
        return Err(Error::DimensionMismatch {
            expected: rho.dim(),
            actual: g.dim(),
        });
    }
    let value = rho.matrix().trace_product(g.matrix());
    let scale = g.matrix().frobenius_norm().max(1.0);
    assert!(
        value.im.abs() <= TAU_EIG * scale,
        "expectation of a Hermitian pair came out complex (imag {:.3e})",
        value.im
    );
    Ok(value.re)
}

/// The set of filters of an observable's spectral measure, one per distinct
/// eigenvalue, ordered by eigenvalue descending.
///
/// Eigenvalues within τ_degen = `TAU_DEGEN_REL`·max(1, |λ_max|) of each other
/// share an eigenspace. The filters are mutually orthogonal projectors that
/// sum to the identity, and Σ λ_k F_k rebuilds the operator.
pub fn spectral_measure(g: &Observable) -> Vec<(f64, Filter)> {
    let eig = g
        .matrix()
        .eig_hermitian()
        .expect("observable matrix stays Hermitian");
    let d = eig.dim();
    let lambda_max = eig.eigenvalues.first().map(|l| l.abs()).unwrap_or(0.0);
    let tau_degen = TAU_DEGEN_REL * lambda_max.max(1.0);

    let mut components = Vec::new();
    let mut start = 0;
    while start < d {
        let mut stop = start + 1;
        while stop < d && eig.eigenvalues[stop - 1] - eig.eigenvalues[stop] <= tau_degen {
            stop += 1;
        }
        let eigenvalue =
            eig.eigenvalues[start..stop].iter().sum::<f64>() / (stop - start) as f64;
        let mut projector = ComplexMatrix::zeros(d, d);
        for k in start..stop {
            let v = eig.eigenvector(k);
            projector = &projector + &ComplexMatrix::outer(&v, &v);
        }
        let filter = Filter::new(projector)
            .expect("sum of orthonormal rank-1 projectors is a projector");
        components.push((eigenvalue, filter));
        start = stop;
    }
    components
}

/// f(G) = V diag(f(λ)) V†, the operator of the observable f(g).
///
/// Fails when `f` returns a non-finite value on the spectrum.
pub fn apply_function(g: &Observable, f: impl Fn(f64) -> f64) -> Result<Observable> {
    let eig = g
        .matrix()
        .eig_hermitian()
        .expect("observable matrix stays Hermitian");
    let mapped: Vec<f64> = eig.eigenvalues.iter().map(|&l| f(l)).collect();
    for (k, &y) in mapped.iter().enumerate() {
        if !y.is_finite() {
            return Err(Error::UndefinedFunctionValue {
                eigenvalue: eig.eigenvalues[k],
            });
        }
    }
    let spectrum: Vec<C64> = mapped.iter().map(|&y| C64::new(y, 0.0)).collect();
    Observable::new(eig.rebuild_from(&spectrum).hermitized())
}

/// S·n̂ = ½(n_x σ_x + n_y σ_y + n_z σ_z), in units of ℏ. Eigenvalues ±½.
pub fn spin_component(n: &Direction) -> Observable {
    let [nx, ny, nz] = n.components();
    let m = &(&pauli_x().scaled_re(nx) + &pauli_y().scaled_re(ny)) + &pauli_z().scaled_re(nz);
    Observable::new(m.scaled_re(0.5)).expect("spin component is Hermitian")
}

/// Projector onto the S·n̂ = +½ eigenspace (or −½ when `positive` is false):
/// F = ½ I ± S·n̂.
pub fn spin_projector(n: &Direction, positive: bool) -> Filter {
    let sign = if positive { 1.0 } else { -1.0 };
    let m = &ComplexMatrix::identity(2).scaled_re(0.5)
        + &spin_component(n).matrix().scaled_re(sign);
    Filter::new(m).expect("half-identity plus spin component is a projector")
}

const KIND: &str = "observable";

impl Serialize for Observable {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let d = self.dim();
        let mut s = serializer.serialize_struct("Observable", 4)?;
        s.serialize_field("kind", KIND)?;
        s.serialize_field("rows", &d)?;
        s.serialize_field("cols", &d)?;
        let data: Vec<[f64; 2]> = (0..d)
            .flat_map(|i| (0..d).map(move |j| (i, j)))
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

impl<'de> Deserialize<'de> for Observable {
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
        Observable::new(m).map_err(D::Error::custom)
    }
}
