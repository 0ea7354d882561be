//! Scalar, vector and matrix aliases plus eigenvalue/eigenpair types.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::fmt;

pub type Complex = Complex64;
pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

/// Absolute floor used by every relative tolerance.
pub const FLOOR: f64 = 1e-300;

#[inline]
pub fn c(re: f64, im: f64) -> Complex {
    Complex::new(re, im)
}

#[inline]
pub fn re(x: f64) -> Complex {
    Complex::new(x, 0.0)
}

/// Builds a complex matrix from real row-major data.
pub fn real_matrix(rows: usize, cols: usize, data: &[f64]) -> CMatrix {
    assert_eq!(data.len(), rows * cols, "real_matrix: data length mismatch");
    CMatrix::from_row_iterator(rows, cols, data.iter().map(|&x| re(x)))
}

pub fn real_vector(data: &[f64]) -> CVector {
    CVector::from_iterator(data.len(), data.iter().map(|&x| re(x)))
}

/// Eigenvalue of a matrix function, possibly the point at infinity.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Eigenvalue {
    Finite(Complex),
    Infinite,
}

impl Eigenvalue {
    pub fn is_finite(&self) -> bool {
        matches!(self, Eigenvalue::Finite(_))
    }

    pub fn finite(&self) -> Option<Complex> {
        match *self {
            Eigenvalue::Finite(z) => Some(z),
            Eigenvalue::Infinite => None,
        }
    }

    pub fn modulus(&self) -> f64 {
        match self {
            Eigenvalue::Finite(z) => z.norm(),
            Eigenvalue::Infinite => f64::INFINITY,
        }
    }

    /// `1/0 = ∞`, `1/∞ = 0`.
    pub fn reciprocal(&self) -> Eigenvalue {
        match *self {
            Eigenvalue::Infinite => Eigenvalue::Finite(Complex::new(0.0, 0.0)),
            Eigenvalue::Finite(z) if z == Complex::new(0.0, 0.0) => Eigenvalue::Infinite,
            Eigenvalue::Finite(z) => Eigenvalue::Finite(z.inv()),
        }
    }
}

impl From<Complex> for Eigenvalue {
    fn from(z: Complex) -> Self {
        Eigenvalue::Finite(z)
    }
}

impl fmt::Display for Eigenvalue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Eigenvalue::Finite(z) => write!(f, "{}", format_complex(*z)),
            Eigenvalue::Infinite => f.write_str("Inf"),
        }
    }
}

/// Formats a complex number as `RE`, `RE+IMi` or `RE-IMi` using the
/// shortest round-trip decimal for each part.
pub fn format_complex(z: Complex) -> String {
    if z.im == 0.0 {
        format!("{:?}", z.re)
    } else if z.im < 0.0 {
        format!("{:?}-{:?}i", z.re, -z.im)
    } else {
        format!("{:?}+{:?}i", z.re, z.im)
    }
}

/// An eigenvalue with its right (and optionally left) eigenvector.
///
/// Right vectors have unit 2-norm and their first nonzero entry real positive.
#[derive(Clone, Debug)]
pub struct EigenPair {
    pub value: Eigenvalue,
    pub right: CVector,
    pub left: Option<CVector>,
    pub residual: f64,
    /// Set when the infinity classification was close to its threshold.
    pub borderline: bool,
}

/// Scales `x` to unit norm with its first nonzero entry real and positive.
pub fn normalize_phase(x: &CVector) -> CVector {
    let norm = x.norm();
    if norm == 0.0 {
        return x.clone();
    }
    let cutoff = 1e-10 * norm;
    let pivot = x.iter().find(|e| e.norm() > cutoff).copied().unwrap_or(re(1.0));
    let phase = pivot.conj() / pivot.norm();
    x.map(|e| e * phase / norm)
}
