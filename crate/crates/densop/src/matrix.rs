//! Dense complex-matrix substrate: Hermitian eigendecomposition, Kronecker
//! products, and unitary generation.
//!
//! Matrices are stored row-major. The eigensolver is backed by nalgebra's
//! Hermitian decomposition; eigenvalues are returned sorted descending with
//! phase-fixed eigenvectors so that repeated runs produce identical output.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::tol::{TAU_EIG, TAU_HERM};

pub type C64 = Complex64;

/// Dense complex matrix, row-major.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![C64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim, dim);
        for i in 0..dim {
            m[(i, i)] = C64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Build from a row-major slice. Panics if the length does not match.
    pub fn from_row_slice(rows: usize, cols: usize, entries: &[C64]) -> Self {
        assert_eq!(
            entries.len(),
            rows * cols,
            "entry count {} does not fill a {}x{} matrix",
            entries.len(),
            rows,
            cols
        );
        Self {
            rows,
            cols,
            data: entries.to_vec(),
        }
    }

    /// Build from real row-major entries.
    pub fn from_real(rows: usize, cols: usize, entries: &[f64]) -> Self {
        assert_eq!(entries.len(), rows * cols);
        Self {
            rows,
            cols,
            data: entries.iter().map(|&x| C64::new(x, 0.0)).collect(),
        }
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        let d = diag.len();
        let mut m = Self::zeros(d, d);
        for (i, &x) in diag.iter().enumerate() {
            m[(i, i)] = C64::new(x, 0.0);
        }
        m
    }

    /// Outer product v w†.
    pub fn outer(v: &[C64], w: &[C64]) -> Self {
        Self::from_fn(v.len(), w.len(), |i, j| v[i] * w[j].conj())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn require_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn scaled(&self, factor: C64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| z * factor).collect(),
        }
    }

    pub fn scaled_re(&self, factor: f64) -> Self {
        self.scaled(C64::new(factor, 0.0))
    }

    pub fn trace(&self) -> C64 {
        debug_assert!(self.is_square());
        (0..self.rows).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn frobenius_distance(&self, other: &Self) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// ‖M − M†‖_F.
    pub fn hermiticity_deviation(&self) -> f64 {
        debug_assert!(self.is_square());
        let mut sum = 0.0;
        for i in 0..self.rows {
            for j in 0..self.cols {
                sum += (self[(i, j)] - self[(j, i)].conj()).norm_sqr();
            }
        }
        sum.sqrt()
    }

    /// Hermitian within `TAU_HERM`, relative to the Frobenius norm.
    pub fn is_hermitian(&self) -> bool {
        self.is_square()
            && self.hermiticity_deviation() <= TAU_HERM * self.frobenius_norm().max(1.0)
    }

    pub fn require_hermitian(&self) -> Result<()> {
        self.require_square()?;
        let deviation = self.hermiticity_deviation();
        if deviation <= TAU_HERM * self.frobenius_norm().max(1.0) {
            Ok(())
        } else {
            Err(Error::NotHermitian { deviation })
        }
    }

    /// (M + M†)/2.
    pub fn hermitized(&self) -> Self {
        debug_assert!(self.is_square());
        Self::from_fn(self.rows, self.cols, |i, j| {
            (self[(i, j)] + self[(j, i)].conj()) * 0.5
        })
    }

    /// Kronecker product, A-major: `(a⊗b)[(i·p+k),(j·q+l)] = a[i,j]·b[k,l]`
    /// for b of shape p×q.
    pub fn kron(&self, other: &Self) -> Self {
        let (p, q) = (other.rows, other.cols);
        Self::from_fn(self.rows * p, self.cols * q, |r, c| {
            self[(r / p, c / q)] * other[(r % p, c % q)]
        })
    }

    /// Tr(AB) without forming the product.
    pub fn trace_product(&self, other: &Self) -> C64 {
        assert_eq!(self.cols, other.rows);
        assert_eq!(self.rows, other.cols);
        let mut acc = C64::new(0.0, 0.0);
        for i in 0..self.rows {
            for j in 0..self.cols {
                acc += self[(i, j)] * other[(j, i)];
            }
        }
        acc
    }

    /// Hermitian eigendecomposition with deterministic ordering.
    ///
    /// Eigenvalues come out real and sorted descending; exact ties are broken
    /// lexicographically on the phase-fixed eigenvector entries. Each
    /// eigenvector's first component of significant modulus is made real and
    /// positive.
    pub fn eig_hermitian(&self) -> Result<HermitianEigen> {
        let d = self.require_square()?;
        self.require_hermitian()?;
        let sym = self.hermitized();
        let nd = DMatrix::from_fn(d, d, |i, j| sym[(i, j)]);
        let eig = nd.symmetric_eigen();

        let mut pairs: Vec<(f64, Vec<C64>)> = (0..d)
            .map(|k| {
                let mut v: Vec<C64> = (0..d).map(|i| eig.eigenvectors[(i, k)]).collect();
                phase_fix(&mut v);
                (eig.eigenvalues[k], v)
            })
            .collect();
        pairs.sort_by(|a, b| {
            b.0.partial_cmp(&a.0)
                .unwrap_or(Ordering::Equal)
                .then_with(|| lex_cmp(&a.1, &b.1))
        });

        let eigenvalues: Vec<f64> = pairs.iter().map(|p| p.0).collect();
        let eigenvectors = Self::from_fn(d, d, |i, k| pairs[k].1[i]);

        let gram_dev = (&eigenvectors.adjoint() * &eigenvectors)
            .frobenius_distance(&Self::identity(d));
        assert!(
            gram_dev <= TAU_EIG,
            "eigenvector set lost orthonormality (deviation {gram_dev:.3e})"
        );

        Ok(HermitianEigen {
            eigenvalues,
            eigenvectors,
        })
    }

    /// U = exp(−i H t / ℏ) for Hermitian `h`, via eigendecomposition.
    pub fn unitary_from_generator(h: &Self, t: f64, hbar: f64) -> Result<Self> {
        if hbar == 0.0 || !hbar.is_finite() {
            return Err(Error::InvalidEvolution(format!(
                "hbar must be finite and nonzero (got {hbar})"
            )));
        }
        let eig = h.eig_hermitian()?;
        let u = eig.rebuild_with(|lambda| {
            let phase = -lambda * t / hbar;
            C64::new(phase.cos(), phase.sin())
        });
        let d = u.rows();
        let unitarity = (&u.adjoint() * &u).frobenius_distance(&Self::identity(d));
        assert!(
            unitarity <= TAU_EIG,
            "generated propagator is not unitary (deviation {unitarity:.3e})"
        );
        Ok(u)
    }
}

/// Eigenvalue/eigenvector pair set of a Hermitian matrix.
///
/// Column k of `eigenvectors` pairs with `eigenvalues[k]`.
pub struct HermitianEigen {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

impl HermitianEigen {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// Column k as a vector.
    pub fn eigenvector(&self, k: usize) -> Vec<C64> {
        (0..self.dim()).map(|i| self.eigenvectors[(i, k)]).collect()
    }

    /// V diag(f(λ)) V†.
    pub fn rebuild_with(&self, f: impl Fn(f64) -> C64) -> ComplexMatrix {
        let mapped: Vec<C64> = self.eigenvalues.iter().map(|&l| f(l)).collect();
        self.rebuild_from(&mapped)
    }

    /// V diag(values) V† for a replacement spectrum.
    pub fn rebuild_from(&self, values: &[C64]) -> ComplexMatrix {
        let d = self.dim();
        assert_eq!(values.len(), d);
        let v = &self.eigenvectors;
        ComplexMatrix::from_fn(d, d, |i, j| {
            (0..d)
                .map(|k| v[(i, k)] * values[k] * v[(j, k)].conj())
                .sum()
        })
    }

    /// V diag(λ) V†.
    pub fn rebuild(&self) -> ComplexMatrix {
        self.rebuild_with(|x| C64::new(x, 0.0))
    }
}

/// Rotate `v` by a global phase so its first significantly nonzero component
/// is real and positive.
fn phase_fix(v: &mut [C64]) {
    if let Some(z) = v.iter().find(|z| z.norm() > 1e-9).copied() {
        let phase = z.conj() / z.norm();
        for entry in v.iter_mut() {
            *entry *= phase;
        }
    }
}

fn lex_cmp(a: &[C64], b: &[C64]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match x
            .re
            .partial_cmp(&y.re)
            .unwrap_or(Ordering::Equal)
            .then(x.im.partial_cmp(&y.im).unwrap_or(Ordering::Equal))
        {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    Ordering::Equal
}

/// AB − BA.
pub fn commutator(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    &(a * b) - &(b * a)
}

/// AB + BA.
pub fn anticommutator(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    &(a * b) + &(b * a)
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(
            self.cols, rhs.rows,
            "cannot multiply {}x{} by {}x{}",
            self.rows, self.cols, rhs.rows, rhs.cols
        );
        let mut out = ComplexMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == C64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += a * rhs[(k, j)];
                }
            }
        }
        out
    }
}

impl Mul<&[C64]> for &ComplexMatrix {
    type Output = Vec<C64>;
    fn mul(self, v: &[C64]) -> Vec<C64> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self[(i, j)] * v[j]).sum())
            .collect()
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let z = self[(i, j)];
                write!(f, "{:+.4}{:+.4}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// JSON wire form shared repo-wide:
/// `{"rows": r, "cols": c, "data": [[re, im], ...]}` row-major.
#[derive(Serialize, Deserialize)]
struct MatrixRepr {
    rows: usize,
    cols: usize,
    data: Vec<[f64; 2]>,
}

impl From<&ComplexMatrix> for MatrixRepr {
    fn from(m: &ComplexMatrix) -> Self {
        MatrixRepr {
            rows: m.rows,
            cols: m.cols,
            data: m.data.iter().map(|z| [z.re, z.im]).collect(),
        }
    }
}

impl TryFrom<MatrixRepr> for ComplexMatrix {
    type Error = String;
    fn try_from(r: MatrixRepr) -> std::result::Result<Self, String> {
        if r.data.len() != r.rows * r.cols {
            return Err(format!(
                "matrix data holds {} entries but shape is {}x{}",
                r.data.len(),
                r.rows,
                r.cols
            ));
        }
        Ok(ComplexMatrix {
            rows: r.rows,
            cols: r.cols,
            data: r.data.iter().map(|&[re, im]| C64::new(re, im)).collect(),
        })
    }
}

impl Serialize for ComplexMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixRepr::from(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ComplexMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = MatrixRepr::deserialize(deserializer)?;
        ComplexMatrix::try_from(repr).map_err(D::Error::custom)
    }
}
