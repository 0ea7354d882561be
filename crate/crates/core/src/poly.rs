//! Matrix polynomials `A(z) = Σ zⁱAᵢ` and matrix Laurent polynomials
//! `A(z) = Σ_{i=lo}^{hi} zⁱAᵢ`.

use crate::error::{Error, Result};
use crate::linalg;
use crate::types::{CMatrix, Complex};

/// Anything that can be evaluated pointwise as an `n × n` matrix.
pub trait MatrixFunction {
    fn dim(&self) -> usize;
    fn evaluate(&self, z: Complex) -> Result<CMatrix>;
}

/// Dense matrix polynomial; `coeffs[i]` multiplies `zⁱ`.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixPoly {
    n: usize,
    coeffs: Vec<CMatrix>,
}

impl MatrixPoly {
    pub fn new(coeffs: Vec<CMatrix>) -> Result<Self> {
        let first = coeffs
            .first()
            .ok_or_else(|| Error::InvalidInput("matrix polynomial needs at least one coefficient".into()))?;
        let n = first.nrows();
        if n == 0 {
            return Err(Error::InvalidInput("matrix dimension must be positive".into()));
        }
        for a in &coeffs {
            if a.nrows() != n || a.ncols() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: if a.nrows() != n { a.nrows() } else { a.ncols() },
                });
            }
        }
        Ok(Self { n, coeffs })
    }

    /// The pencil `zI − A`.
    pub fn pencil(a: &CMatrix) -> Result<Self> {
        Self::new(vec![-a.clone(), linalg::identity(a.nrows())])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[CMatrix] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &CMatrix {
        &self.coeffs[i]
    }

    pub fn leading(&self) -> &CMatrix {
        &self.coeffs[self.degree()]
    }

    pub fn into_coeffs(self) -> Vec<CMatrix> {
        self.coeffs
    }

    /// `A_R(z) = Σ zⁱ A_{d−i}`; eigenvalues become reciprocals.
    pub fn reverse(&self) -> MatrixPoly {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        MatrixPoly { n: self.n, coeffs }
    }

    /// Coefficientwise transpose (not conjugated).
    pub fn transpose(&self) -> MatrixPoly {
        MatrixPoly {
            n: self.n,
            coeffs: self.coeffs.iter().map(|a| a.transpose()).collect(),
        }
    }

    /// Derivative `A'(z)` evaluated by Horner.
    pub fn derivative_at(&self, z: Complex) -> CMatrix {
        let d = self.degree();
        let mut acc = linalg::zeros(self.n);
        for i in (1..=d).rev() {
            acc = acc * z + &self.coeffs[i] * Complex::new(i as f64, 0.0);
        }
        acc
    }

    /// `Σ ‖Aᵢ‖_F |z|ⁱ`, the normalisation used by residual tests.
    pub fn scale_at(&self, z: Complex) -> f64 {
        let r = z.norm();
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, a)| a.norm() * r.powi(i as i32))
            .sum()
    }

    pub fn coeff_norm_sum(&self) -> f64 {
        self.coeffs.iter().map(|a| a.norm()).sum()
    }

    /// Degree-preserving equality check up to `tol` (max abs entry difference).
    pub fn approx_eq(&self, other: &MatrixPoly, tol: f64) -> bool {
        self.n == other.n
            && self.coeffs.len() == other.coeffs.len()
            && self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .all(|(a, b)| linalg::max_abs_diff(a, b) <= tol)
    }
}

impl MatrixFunction for MatrixPoly {
    fn dim(&self) -> usize {
        self.n
    }

    fn evaluate(&self, z: Complex) -> Result<CMatrix> {
        Ok(horner(&self.coeffs, z))
    }
}

fn horner(coeffs: &[CMatrix], z: Complex) -> CMatrix {
    let mut iter = coeffs.iter().rev();
    let mut acc = iter.next().expect("non-empty coefficients").clone();
    for a in iter {
        acc *= z;
        acc += a;
    }
    acc
}

/// Matrix Laurent polynomial, or a Laurent series truncated to `[lo, hi]`.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentPoly {
    n: usize,
    lo: i64,
    coeffs: Vec<CMatrix>,
    truncated: bool,
}

impl LaurentPoly {
    /// `coeffs[k]` multiplies `z^{lo+k}`; requires `lo ≤ 0 ≤ hi`.
    pub fn new(lo: i64, coeffs: Vec<CMatrix>) -> Result<Self> {
        if lo > 0 {
            return Err(Error::InvalidInput(format!("lowest power must be <= 0, got {lo}")));
        }
        let hi = lo + coeffs.len() as i64 - 1;
        if hi < 0 {
            return Err(Error::InvalidInput(format!(
                "highest power must be >= 0, got {hi} (lo = {lo}, {} coefficients)",
                coeffs.len()
            )));
        }
        let poly = MatrixPoly::new(coeffs)?;
        Ok(Self {
            n: poly.n,
            lo,
            coeffs: poly.coeffs,
            truncated: false,
        })
    }

    /// Tridiagonal Laurent polynomial `z⁻¹A₋₁ + A₀ + zA₁`.
    pub fn quadratic(a_minus: CMatrix, a_zero: CMatrix, a_plus: CMatrix) -> Result<Self> {
        Self::new(-1, vec![a_minus, a_zero, a_plus])
    }

    pub fn with_truncated(mut self, truncated: bool) -> Self {
        self.truncated = truncated;
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.coeffs.len() as i64 - 1
    }

    pub fn truncated(&self) -> bool {
        self.truncated
    }

    pub fn coeffs(&self) -> &[CMatrix] {
        &self.coeffs
    }

    /// Coefficient of `zⁱ`, or `None` outside the stored range.
    pub fn coeff(&self, i: i64) -> Option<&CMatrix> {
        if i < self.lo || i > self.hi() {
            None
        } else {
            Some(&self.coeffs[(i - self.lo) as usize])
        }
    }

    pub(crate) fn coeff_mut(&mut self, i: i64) -> &mut CMatrix {
        let lo = self.lo;
        &mut self.coeffs[(i - lo) as usize]
    }

    pub fn transpose(&self) -> LaurentPoly {
        LaurentPoly {
            n: self.n,
            lo: self.lo,
            coeffs: self.coeffs.iter().map(|a| a.transpose()).collect(),
            truncated: self.truncated,
        }
    }

    /// The polynomial `z^{−lo} A(z)`, which has the same nonzero eigenvalues.
    pub fn shifted_to_poly(&self) -> MatrixPoly {
        MatrixPoly {
            n: self.n,
            coeffs: self.coeffs.clone(),
        }
    }

    /// Reinterprets a Laurent polynomial with `lo = 0` as a matrix polynomial.
    pub fn to_poly(&self) -> Option<MatrixPoly> {
        (self.lo == 0).then(|| self.shifted_to_poly())
    }

    pub fn scale_at(&self, z: Complex) -> f64 {
        let r = z.norm();
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, a)| a.norm() * r.powi((self.lo + k as i64) as i32))
            .sum()
    }

    pub fn coeff_norm_sum(&self) -> f64 {
        self.coeffs.iter().map(|a| a.norm()).sum()
    }

    pub fn approx_eq(&self, other: &LaurentPoly, tol: f64) -> bool {
        self.n == other.n
            && self.lo == other.lo
            && self.coeffs.len() == other.coeffs.len()
            && self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .all(|(a, b)| linalg::max_abs_diff(a, b) <= tol)
    }
}

impl MatrixFunction for LaurentPoly {
    fn dim(&self) -> usize {
        self.n
    }

    fn evaluate(&self, z: Complex) -> Result<CMatrix> {
        if self.lo < 0 && z == Complex::new(0.0, 0.0) {
            return Err(Error::ZeroAtNegativePower);
        }
        let value = horner(&self.coeffs, z);
        Ok(if self.lo == 0 {
            value
        } else {
            value * z.powi(self.lo as i32)
        })
    }
}

impl From<MatrixPoly> for LaurentPoly {
    fn from(p: MatrixPoly) -> Self {
        LaurentPoly {
            n: p.n,
            lo: 0,
            coeffs: p.coeffs,
            truncated: false,
        }
    }
}

impl From<&MatrixPoly> for LaurentPoly {
    fn from(p: &MatrixPoly) -> Self {
        p.clone().into()
    }
}

/// Evaluates either kind of polynomial.
pub fn evaluate<P: MatrixFunction + ?Sized>(p: &P, z: Complex) -> Result<CMatrix> {
    p.evaluate(z)
}

/// Reverses the coefficient order of a matrix polynomial.
pub fn reverse(p: &MatrixPoly) -> MatrixPoly {
    p.reverse()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::types::{c, re, real_matrix};

    fn naive(p: &MatrixPoly, z: Complex) -> CMatrix {
        p.coeffs()
            .iter()
            .enumerate()
            .fold(linalg::zeros(p.n()), |acc, (i, a)| acc + a * z.powi(i as i32))
    }

    #[test]
    fn p1_at_one_is_singular_with_kernel_e1() {
        let a = fixtures::p1().evaluate(re(1.0)).unwrap();
        assert_eq!(a, real_matrix(2, 2, &[0.0, 2.0, 0.0, 1.0]));
    }

    #[test]
    fn constant_polynomial_evaluates_to_its_coefficient() {
        let a0 = real_matrix(2, 2, &[1.0, 2.0, 3.0, 4.0]);
        let p = MatrixPoly::new(vec![a0.clone()]).unwrap();
        assert_eq!(p.evaluate(c(0.3, -2.0)).unwrap(), a0);
    }

    #[test]
    fn p2_constant_coefficient() {
        let a = fixtures::p2().evaluate(re(0.0)).unwrap();
        assert_eq!(a, real_matrix(3, 3, &[1.0, 0.0, -1.0, 1.0, 2.0, 0.0, 1.0, 1.0, 1.0]));
    }

    #[test]
    fn laurent_evaluation_matches_direct_sum() {
        let a = real_matrix(2, 2, &[1.0, 2.0, 0.5, -1.0]);
        let b = real_matrix(2, 2, &[0.0, 1.0, 1.0, 0.0]);
        let d = real_matrix(2, 2, &[3.0, 0.0, -2.0, 1.0]);
        let p = LaurentPoly::quadratic(a.clone(), b.clone(), d.clone()).unwrap();
        let z = c(0.4, 0.9);
        let expected = a / z + b + d * z;
        assert!(linalg::max_abs_diff(&p.evaluate(z).unwrap(), &expected) < 1e-14);
    }

    #[test]
    fn laurent_rejects_zero_with_negative_powers() {
        let p = LaurentPoly::quadratic(linalg::identity(1), linalg::identity(1), linalg::identity(1)).unwrap();
        assert!(matches!(p.evaluate(re(0.0)), Err(Error::ZeroAtNegativePower)));
        let q: LaurentPoly = fixtures::p1().into();
        assert!(q.evaluate(re(0.0)).is_ok());
    }

    #[test]
    fn reverse_of_p2_is_singular_at_zero() {
        let r = fixtures::p2().reverse();
        let at0 = r.evaluate(re(0.0)).unwrap();
        assert_eq!(at0, real_matrix(3, 3, &[0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0]));
        assert_eq!(linalg::det(&at0), re(0.0));
    }

    #[test]
    fn reverse_is_an_involution() {
        let p = fixtures::p3();
        assert_eq!(p.reverse().reverse(), p);
    }

    #[test]
    fn rejects_mismatched_coefficients() {
        let err = MatrixPoly::new(vec![linalg::identity(2), linalg::identity(3)]).unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch { expected: 2, found: 3 }));
        assert!(LaurentPoly::new(1, vec![linalg::identity(2)]).is_err());
        assert!(LaurentPoly::new(-2, vec![linalg::identity(2)]).is_err());
    }

    #[test]
    fn horner_agrees_with_power_sum_on_p3() {
        let p = fixtures::p3();
        let z = c(0.7, 0.3);
        let diff = linalg::max_abs_diff(&p.evaluate(z).unwrap(), &naive(&p, z));
        assert!(diff < 1e-14);
    }
}
