//! Brauer-type shifts of matrix polynomials and matrix Laurent polynomials.
//!
//! A right shift replaces `A(z)` by `A(z)(I + (λ−μ)/(z−λ)·uv*)`, which keeps
//! every eigenvalue of `A` except `λ`, now moved to `μ`. The coefficient
//! formulas for single shifts, multishifts with an invariant pair `(U, Λ)` and
//! the Laurent case all go through one kernel, so that an `m = 1` multishift
//! reproduces the single shift bit for bit. Left shifts are right shifts of the
//! transposed function.

mod infinity;
mod palindromic;

pub use infinity::{shift_from_infinity, shift_to_infinity};
pub use palindromic::{is_palindromic, palindromic_det_ratio, palindromic_deviation, palindromic_shift};

use crate::error::{Error, Result};
use crate::linalg;
use crate::oracle::RatioConstant;
use crate::poly::{LaurentPoly, MatrixFunction, MatrixPoly};
use crate::spectra::InvariantPair;
use crate::types::{CMatrix, CVector, Complex, Eigenvalue, FLOOR};
use log::warn;

/// Relative residual accepted for `A(λ)u = 0` style preconditions.
pub const EIGENPAIR_TOLERANCE: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Right,
    Left,
}

/// One eigenvalue to move, with its eigenvector and a dual vector.
///
/// For a right shift `vector` is `u` with `A(λ)u = 0` and `dual` is `v`
/// (`Q = uv*`). For a left shift `vector` is `v` with `v*A(λ) = 0` and `dual`
/// is `y` (`S = yv*`). A missing dual defaults to `vector / ‖vector‖²`.
#[derive(Clone, Debug)]
pub struct ShiftSpec {
    pub lambda: Eigenvalue,
    pub mu: Eigenvalue,
    pub vector: CVector,
    pub dual: Option<CVector>,
    pub side: Side,
}

impl ShiftSpec {
    pub fn right(lambda: impl Into<Eigenvalue>, mu: impl Into<Eigenvalue>, u: CVector) -> Self {
        Self {
            lambda: lambda.into(),
            mu: mu.into(),
            vector: u,
            dual: None,
            side: Side::Right,
        }
    }

    pub fn left(lambda: impl Into<Eigenvalue>, mu: impl Into<Eigenvalue>, v: CVector) -> Self {
        Self {
            lambda: lambda.into(),
            mu: mu.into(),
            vector: v,
            dual: None,
            side: Side::Left,
        }
    }

    pub fn with_dual(mut self, dual: CVector) -> Self {
        self.dual = Some(dual);
        self
    }

    /// The eigenvector and the dual scaled so that `dual* vector = 1`.
    pub fn vectors(&self) -> Result<(CVector, CVector)> {
        normalized_pair(&self.vector, self.dual.as_ref())
    }

    pub fn is_identity(&self) -> bool {
        self.lambda == self.mu
    }

    fn finite_values(&self) -> Result<(Complex, Complex)> {
        match (self.lambda, self.mu) {
            (Eigenvalue::Finite(l), Eigenvalue::Finite(m)) => Ok((l, m)),
            _ => Err(Error::UnsupportedInfinity(
                "this shift needs finite lambda and mu; use the infinity shifts for matrix polynomials",
            )),
        }
    }
}

/// Scales `dual` (default `x/‖x‖²`) so that `dual* x = 1`.
pub(crate) fn normalized_pair(x: &CVector, dual: Option<&CVector>) -> Result<(CVector, CVector)> {
    let norm2 = x.norm_squared();
    if norm2 == 0.0 || !norm2.is_finite() {
        return Err(Error::InvalidInput("shift vector must be nonzero and finite".into()));
    }
    let y = match dual {
        None => x.unscale(norm2),
        Some(y) => {
            if y.len() != x.len() {
                return Err(Error::DimensionMismatch {
                    expected: x.len(),
                    found: y.len(),
                });
            }
            let inner = y.dotc(x);
            if inner.norm() <= 1e-14 * x.norm() * y.norm() {
                return Err(Error::InvalidInput("dual vector is orthogonal to the shift vector".into()));
            }
            y / inner.conj()
        }
    };
    Ok((x.clone(), y))
}

/// `m` eigenvalues at once: `Σ AᵢUΛⁱ = 0`, new eigenvalues are those of `S`.
#[derive(Clone, Debug)]
pub struct MultiShiftSpec {
    pub u: CMatrix,
    pub lambda: CMatrix,
    pub s: CMatrix,
    pub v: CMatrix,
}

impl MultiShiftSpec {
    /// `v = None` selects `V = U(U*U)⁻¹`.
    pub fn new(u: CMatrix, lambda: CMatrix, s: CMatrix, v: Option<CMatrix>) -> Result<Self> {
        let (n, m) = u.shape();
        if m == 0 || m >= n {
            return Err(Error::InvalidInput(format!(
                "multishift needs 0 < m < n, got m = {m}, n = {n}"
            )));
        }
        for (name, mat) in [("Lambda", &lambda), ("S", &s)] {
            if mat.shape() != (m, m) {
                return Err(Error::InvalidInput(format!(
                    "{name} must be {m}x{m}, got {}x{}",
                    mat.nrows(),
                    mat.ncols()
                )));
            }
        }
        let v = match v {
            Some(v) => {
                if v.shape() != (n, m) {
                    return Err(Error::InvalidInput(format!("V must be {n}x{m}")));
                }
                v
            }
            None if m == 1 => u.unscale(u.norm_squared()),
            None => {
                let gram = u.adjoint() * &u;
                &u * linalg::inverse(&gram).ok_or(Error::DependentEigenvectors {
                    sigma_min: linalg::smallest_singular_value(&u),
                })?
            }
        };
        let deviation = (v.adjoint() * &u - linalg::identity(m)).norm();
        if deviation > 1e-10 {
            return Err(Error::InvalidInput(format!("V*U differs from I by {deviation:.3e}")));
        }
        Ok(Self { u, lambda, s, v })
    }

    pub fn from_pair(pair: &InvariantPair, s: CMatrix) -> Result<Self> {
        Self::new(pair.u.clone(), pair.lambda.clone(), s, Some(pair.v.clone()))
    }

    pub fn m(&self) -> usize {
        self.u.ncols()
    }

    /// `(Λ − S)V*`, the `m × n` factor of every correction term.
    fn correction(&self) -> CMatrix {
        (&self.lambda - &self.s) * self.v.adjoint()
    }
}

/// Eigenvalues removed and added by a shift, and the constant in
/// `det Ã(z)·Π(z − removed) = c·det A(z)·Π(z − added)`.
#[derive(Clone, Debug)]
pub struct DetRatio {
    pub removed: Vec<Eigenvalue>,
    pub added: Vec<Eigenvalue>,
    pub constant: RatioConstant,
}

impl DetRatio {
    pub fn simple(removed: Vec<Eigenvalue>, added: Vec<Eigenvalue>) -> Self {
        Self {
            removed,
            added,
            constant: RatioConstant::Unit,
        }
    }
}

/// Oracle data for a single (right or left) shift, including moves to and from infinity.
pub fn det_ratio_for(spec: &ShiftSpec) -> DetRatio {
    match (spec.lambda, spec.mu) {
        (Eigenvalue::Infinite, Eigenvalue::Finite(mu)) => DetRatio {
            removed: vec![],
            added: vec![mu.into()],
            constant: RatioConstant::Known(-mu.inv()),
        },
        (Eigenvalue::Finite(lambda), Eigenvalue::Infinite) => DetRatio {
            removed: vec![lambda.into()],
            added: vec![],
            constant: RatioConstant::Known(-lambda),
        },
        (Eigenvalue::Infinite, Eigenvalue::Infinite) => DetRatio::simple(vec![], vec![]),
        (l, m) => DetRatio::simple(vec![l], vec![m]),
    }
}

fn is_zero(z: Complex) -> bool {
    z == Complex::new(0.0, 0.0)
}

fn check_right_eigenpair<P: MatrixFunction + ?Sized>(
    p: &P,
    lambda: Complex,
    u: &CVector,
    scale: f64,
) -> Result<()> {
    let r = (p.evaluate(lambda)? * u).norm() / (scale * u.norm()).max(FLOOR);
    if r > EIGENPAIR_TOLERANCE {
        return Err(Error::NotAnEigenpair { residual: r });
    }
    Ok(())
}

fn check_left_eigenpair<P: MatrixFunction + ?Sized>(
    p: &P,
    lambda: Complex,
    v: &CVector,
    scale: f64,
) -> Result<()> {
    let r = (v.adjoint() * p.evaluate(lambda)?).norm() / (scale * v.norm()).max(FLOOR);
    if r > EIGENPAIR_TOLERANCE {
        return Err(Error::NotAnEigenpair { residual: r });
    }
    Ok(())
}

fn check_dims(n: usize, x: &CVector) -> Result<()> {
    if x.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: x.len(),
        });
    }
    Ok(())
}

/// `Ãᵢ = Aᵢ + Σ_k A_{k+i+1} U Λᵏ C` for `i ≥ 0` and
/// `Ãᵢ = Aᵢ − Σ_k A_{i−k} U Λ^{−k−1} C` for `i < 0`, with `C = (Λ−S)V*`.
fn shift_kernel(p: &LaurentPoly, u: &CMatrix, lambda: &CMatrix, c: &CMatrix, lambda_inv: Option<&CMatrix>) -> LaurentPoly {
    let (lo, hi) = (p.lo(), p.hi());
    let coeff = |i: i64| p.coeff(i).expect("index inside stored range");
    let mut out = p.clone();

    if hi > 0 {
        let mut w = Vec::with_capacity(hi as usize);
        let mut pk = c.clone();
        for _ in 0..hi {
            w.push(u * &pk);
            pk = lambda * pk;
        }
        for i in 0..hi {
            let mut acc = coeff(i).clone();
            for k in 0..(hi - i) {
                acc += coeff(k + i + 1) * &w[k as usize];
            }
            *out.coeff_mut(i) = acc;
        }
    }
    if lo < 0 {
        let inv = lambda_inv.expect("negative powers need the inverse of Lambda");
        let count = (-lo) as usize;
        let mut w = Vec::with_capacity(count);
        let mut pk = inv * c;
        for _ in 0..count {
            w.push(u * &pk);
            pk = inv * pk;
        }
        for i in lo..0 {
            let mut acc = coeff(i).clone();
            for k in 0..=(i - lo) {
                acc -= coeff(i - k) * &w[k as usize];
            }
            *out.coeff_mut(i) = acc;
        }
    }
    out
}

fn warn_truncated(p: &LaurentPoly) {
    if p.truncated() {
        warn!(
            "shifting a truncated series: sums run over the stored range [{}, {}] only",
            p.lo(),
            p.hi()
        );
    }
}

/// Right shift without precondition checks; `u`, `v` already normalized.
pub(crate) fn right_laurent_unchecked(
    p: &LaurentPoly,
    lambda: Complex,
    mu: Complex,
    u: &CVector,
    v: &CVector,
) -> LaurentPoly {
    let um = CMatrix::from_column_slice(u.len(), 1, u.as_slice());
    let lm = CMatrix::from_element(1, 1, lambda);
    let c = CMatrix::from_row_slice(1, v.len(), v.adjoint().as_slice()) * (lambda - mu);
    let inv = (p.lo() < 0).then(|| CMatrix::from_element(1, 1, lambda.inv()));
    shift_kernel(p, &um, &lm, &c, inv.as_ref())
}

/// Left shift without precondition checks; `v`, `y` already normalized.
pub(crate) fn left_laurent_unchecked(
    p: &LaurentPoly,
    lambda: Complex,
    mu: Complex,
    v: &CVector,
    y: &CVector,
) -> LaurentPoly {
    // (I + c·yv*)A = ((Aᵀ)(I + c·v̄yᵀ))ᵀ, a right shift with u' = v̄, w' = ȳ.
    let shifted = right_laurent_unchecked(&p.transpose(), lambda, mu, &v.conjugate(), &y.conjugate());
    shifted.transpose()
}

/// `Ã = A + (μ−λ)uv*` for an eigenpair `Au = λu` of a matrix.
pub fn right_shift_pencil(a: &CMatrix, spec: &ShiftSpec) -> Result<CMatrix> {
    if spec.side != Side::Right {
        return Err(Error::InvalidInput("right_shift_pencil needs a right shift spec".into()));
    }
    let (lambda, mu) = spec.finite_values()?;
    let (u, v) = spec.vectors()?;
    check_dims(a.nrows(), &u)?;
    check_matrix_eigenpair(a, lambda, &u)?;
    let um = CMatrix::from_column_slice(u.len(), 1, u.as_slice());
    let c = CMatrix::from_row_slice(1, v.len(), v.adjoint().as_slice()) * (lambda - mu);
    Ok(pencil_kernel(a, &um, &c))
}

fn check_matrix_eigenpair(a: &CMatrix, lambda: Complex, u: &CVector) -> Result<()> {
    let r = (a * u - u * lambda).norm() / (a.norm().max(lambda.norm()) * u.norm()).max(FLOOR);
    if r > EIGENPAIR_TOLERANCE {
        return Err(Error::NotAnEigenpair { residual: r });
    }
    Ok(())
}

fn pencil_kernel(a: &CMatrix, u: &CMatrix, c: &CMatrix) -> CMatrix {
    a - u * c
}

/// `Ã = A − U(Λ−S)V*`.
pub fn multishift_pencil(a: &CMatrix, ms: &MultiShiftSpec) -> Result<CMatrix> {
    if a.nrows() != ms.u.nrows() {
        return Err(Error::DimensionMismatch {
            expected: a.nrows(),
            found: ms.u.nrows(),
        });
    }
    let r = (a * &ms.u - &ms.u * &ms.lambda).norm();
    let scale = (a.norm() + ms.lambda.norm()) * ms.u.norm();
    let residual = r / scale.max(FLOOR);
    if residual > EIGENPAIR_TOLERANCE {
        return Err(Error::NotInvariant { residual });
    }
    Ok(pencil_kernel(a, &ms.u, &ms.correction()))
}

/// Right shift of a matrix polynomial. Infinite `λ` or `μ` is routed to the
/// infinity shifts.
pub fn right_shift_poly(p: &MatrixPoly, spec: &ShiftSpec) -> Result<MatrixPoly> {
    if spec.side != Side::Right {
        return Err(Error::InvalidInput("right_shift_poly needs a right shift spec".into()));
    }
    match (spec.lambda, spec.mu) {
        (Eigenvalue::Infinite, Eigenvalue::Infinite) => Ok(p.clone()),
        (Eigenvalue::Infinite, Eigenvalue::Finite(mu)) => {
            shift_from_infinity(p, mu, &spec.vector, spec.dual.as_ref())
        }
        (Eigenvalue::Finite(lambda), Eigenvalue::Infinite) => {
            shift_to_infinity(p, lambda, &spec.vector, spec.dual.as_ref())
        }
        (Eigenvalue::Finite(_), Eigenvalue::Finite(_)) => {
            let out = right_shift_laurent(&LaurentPoly::from(p), spec)?;
            Ok(out.to_poly().expect("lo = 0 is preserved"))
        }
    }
}

/// Left shift of a matrix polynomial (`v*A(λ) = 0`, `S = yv*`).
pub fn left_shift_poly(p: &MatrixPoly, spec: &ShiftSpec) -> Result<MatrixPoly> {
    let out = left_shift_laurent(&LaurentPoly::from(p), spec)?;
    Ok(out.to_poly().expect("lo = 0 is preserved"))
}

/// Right shift of a matrix Laurent polynomial or truncated series.
pub fn right_shift_laurent(p: &LaurentPoly, spec: &ShiftSpec) -> Result<LaurentPoly> {
    if spec.side != Side::Right {
        return Err(Error::InvalidInput("right_shift_laurent needs a right shift spec".into()));
    }
    if !spec.lambda.is_finite() || !spec.mu.is_finite() {
        if p.lo() == 0 {
            return Ok(right_shift_poly(&p.to_poly().expect("lo = 0"), spec)?.into());
        }
        return Err(Error::UnsupportedInfinity(
            "shifts from or to infinity are defined for matrix polynomials only",
        ));
    }
    let (lambda, mu) = spec.finite_values()?;
    if p.lo() < 0 && is_zero(lambda) {
        return Err(Error::ZeroLambdaWithNegativePowers);
    }
    let (u, v) = spec.vectors()?;
    check_dims(p.n(), &u)?;
    check_right_eigenpair(p, lambda, &u, p.scale_at(lambda))?;
    warn_truncated(p);
    Ok(right_laurent_unchecked(p, lambda, mu, &u, &v))
}

/// Left shift of a matrix Laurent polynomial or truncated series.
pub fn left_shift_laurent(p: &LaurentPoly, spec: &ShiftSpec) -> Result<LaurentPoly> {
    if spec.side != Side::Left {
        return Err(Error::InvalidInput("left shift needs a left shift spec".into()));
    }
    if !spec.lambda.is_finite() || !spec.mu.is_finite() {
        return Err(Error::UnsupportedInfinity("left shifts need finite lambda and mu"));
    }
    let (lambda, mu) = spec.finite_values()?;
    if p.lo() < 0 && is_zero(lambda) {
        return Err(Error::ZeroLambdaWithNegativePowers);
    }
    let (v, y) = spec.vectors()?;
    check_dims(p.n(), &v)?;
    check_left_eigenpair(p, lambda, &v, p.scale_at(lambda))?;
    warn_truncated(p);
    Ok(left_laurent_unchecked(p, lambda, mu, &v, &y))
}

/// Right shift of `λ₁` followed by a left shift of `λ₂` (`λ₁ ≠ λ₂`).
pub fn double_shift_laurent(p: &LaurentPoly, right: &ShiftSpec, left: &ShiftSpec) -> Result<LaurentPoly> {
    if right.side != Side::Right || left.side != Side::Left {
        return Err(Error::InvalidInput("double shift needs a right spec and a left spec".into()));
    }
    let (l1, _) = right.finite_values()?;
    let (l2, mu2) = left.finite_values()?;
    if (l1 - l2).norm() <= 1e-12 * l1.norm().max(l2.norm()).max(1.0) {
        return Err(Error::CoincidentEigenvalues);
    }
    let (v, y) = left.vectors()?;
    check_dims(p.n(), &v)?;
    if p.lo() < 0 && is_zero(l2) {
        return Err(Error::ZeroLambdaWithNegativePowers);
    }
    check_left_eigenpair(p, l2, &v, p.scale_at(l2))?;
    let hat = right_shift_laurent(p, right)?;
    Ok(left_laurent_unchecked(&hat, l2, mu2, &v, &y))
}

/// `Σ AᵢUΛⁱ` relative residual of a Laurent polynomial (negative powers via `Λ⁻¹`).
fn laurent_invariant_residual(p: &LaurentPoly, u: &CMatrix, lambda: &CMatrix) -> f64 {
    // z^{−lo}A(z) is a polynomial with the same invariant pairs when Λ is nonsingular.
    crate::spectra::invariant_residual(&p.shifted_to_poly(), u, lambda)
}

/// Multishift of a matrix polynomial.
pub fn multishift_poly(p: &MatrixPoly, ms: &MultiShiftSpec) -> Result<MatrixPoly> {
    let out = multishift_laurent(&LaurentPoly::from(p), ms)?;
    Ok(out.to_poly().expect("lo = 0 is preserved"))
}

/// Multishift of a matrix Laurent polynomial or truncated series.
pub fn multishift_laurent(p: &LaurentPoly, ms: &MultiShiftSpec) -> Result<LaurentPoly> {
    if p.n() != ms.u.nrows() {
        return Err(Error::DimensionMismatch {
            expected: p.n(),
            found: ms.u.nrows(),
        });
    }
    let inv = if p.lo() < 0 {
        let rc = linalg::rcond(&ms.lambda);
        if rc < 1e-14 {
            return Err(Error::SingularLambda);
        }
        if ms.m() == 1 {
            Some(ms.lambda.map(|x| x.inv()))
        } else {
            Some(linalg::inverse(&ms.lambda).ok_or(Error::SingularLambda)?)
        }
    } else {
        None
    };
    let residual = laurent_invariant_residual(p, &ms.u, &ms.lambda);
    if residual > EIGENPAIR_TOLERANCE {
        return Err(Error::NotInvariant { residual });
    }
    warn_truncated(p);
    Ok(shift_kernel(p, &ms.u, &ms.lambda, &ms.correction(), inv.as_ref()))
}

/// Eigenvalues of `Λ` and `S` for the multishift oracle.
pub fn multishift_det_ratio(ms: &MultiShiftSpec) -> Result<DetRatio> {
    let removed = crate::eigen::eigenvalues(&ms.lambda)?.into_iter().map(Eigenvalue::from).collect();
    let added = crate::eigen::eigenvalues(&ms.s)?.into_iter().map(Eigenvalue::from).collect();
    Ok(DetRatio::simple(removed, added))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::oracle::{det_ratio_oracle, OracleConfig};
    use crate::types::{c, re, real_matrix, real_vector};

    fn e1() -> CVector {
        real_vector(&[1.0, 0.0])
    }

    #[test]
    fn pencil_diagonal_case() {
        let a = real_matrix(2, 2, &[1.0, 0.0, 0.0, 2.0]);
        let spec = ShiftSpec::right(re(1.0), re(5.0), e1()).with_dual(e1());
        let out = right_shift_pencil(&a, &spec).unwrap();
        assert_eq!(out, real_matrix(2, 2, &[5.0, 0.0, 0.0, 2.0]));
    }

    #[test]
    fn pencil_identity_when_mu_equals_lambda() {
        let a = real_matrix(2, 2, &[1.0, 3.0, 0.0, 2.0]);
        let spec = ShiftSpec::right(re(1.0), re(1.0), e1());
        assert_eq!(right_shift_pencil(&a, &spec).unwrap(), a);
    }

    #[test]
    fn pencil_rejects_non_eigenvector() {
        let a = real_matrix(2, 2, &[1.0, 0.0, 0.0, 2.0]);
        let spec = ShiftSpec::right(re(1.0), re(5.0), real_vector(&[0.0, 1.0]));
        assert!(matches!(right_shift_pencil(&a, &spec), Err(Error::NotAnEigenpair { .. })));
    }

    #[test]
    fn p1_shift_is_integer_exact() {
        let spec = ShiftSpec::right(re(1.0), re(0.0), e1()).with_dual(e1());
        let out = right_shift_poly(&fixtures::p1(), &spec).unwrap();
        assert_eq!(out, fixtures::p1_shifted());
    }

    #[test]
    fn scalar_rational_cancellation() {
        let p = MatrixPoly::new(vec![real_matrix(1, 1, &[-2.0]), real_matrix(1, 1, &[1.0])]).unwrap();
        let spec = ShiftSpec::right(re(2.0), re(3.0), real_vector(&[1.0]));
        let out = right_shift_poly(&p, &spec).unwrap();
        assert_eq!(out.coeff(0)[(0, 0)], re(-3.0));
        assert_eq!(out.coeff(1)[(0, 0)], re(1.0));
    }

    #[test]
    fn dual_is_normalized() {
        let spec = ShiftSpec::right(re(1.0), re(0.0), real_vector(&[2.0, 0.0])).with_dual(e1() * c(0.0, 3.0));
        let (u, v) = spec.vectors().unwrap();
        assert!((v.dotc(&u) - re(1.0)).norm() < 1e-15);
        let orthogonal = ShiftSpec::right(re(1.0), re(0.0), e1()).with_dual(real_vector(&[0.0, 1.0]));
        assert!(orthogonal.vectors().is_err());
    }

    #[test]
    fn tridiagonal_closed_forms_agree() {
        // Build a quadratic Laurent polynomial with A(λ)u = 0 by correcting A₋₁.
        let lambda = c(0.4, 0.1);
        let u = CVector::from_vec(vec![c(1.0, 0.0), c(0.5, -0.5)]);
        let a1 = CMatrix::from_fn(2, 2, |i, j| c(0.3 * i as f64 - 0.2, 0.1 * j as f64));
        let a0 = CMatrix::from_fn(2, 2, |i, j| c(if i == j { 2.0 } else { 0.3 }, 0.05 * (i + j) as f64));
        let partial = (&a0 + &a1 * lambda) * &u * lambda;
        let am = CMatrix::from_fn(2, 2, |i, j| c(0.1 * (i + 2 * j) as f64, -0.2));
        let am = &am - (&am * &u + &partial) * u.adjoint() / re(u.norm_squared());
        let p = LaurentPoly::quadratic(am.clone(), a0.clone(), a1.clone()).unwrap();
        let mu = c(-0.2, 0.3);
        let spec = ShiftSpec::right(lambda, mu, u.clone());
        let out = right_shift_laurent(&p, &spec).unwrap();
        let (u, v) = spec.vectors().unwrap();
        let q = &u * v.adjoint();
        let d = lambda - mu;
        assert_eq!(out.coeff(1).unwrap(), &a1);
        assert!(linalg::max_abs_diff(out.coeff(0).unwrap(), &(&a0 + &a1 * &q * d)) < 1e-13);
        let printed = &am + (&a0 + &a1 * lambda) * &q * d;
        let formula = &am - &am * &q * (d / lambda);
        assert!(linalg::max_abs_diff(out.coeff(-1).unwrap(), &formula) < 1e-13);
        assert!(linalg::max_abs_diff(out.coeff(-1).unwrap(), &printed) < 1e-12);
    }

    #[test]
    fn laurent_rejects_zero_lambda() {
        let p = fixtures::scalar_quadratic();
        let spec = ShiftSpec::right(re(0.0), re(0.5), real_vector(&[1.0]));
        assert!(matches!(right_shift_laurent(&p, &spec), Err(Error::ZeroLambdaWithNegativePowers)));
    }

    #[test]
    fn left_equals_transpose_route() {
        let p = fixtures::p3();
        let lambda = re(1.0);
        let (w, _) = linalg::smallest_left_singular(&p.evaluate(lambda).unwrap());
        let spec = ShiftSpec::left(lambda, re(0.0), w.clone());
        let out = left_shift_poly(&p, &spec).unwrap();
        let (w, y) = spec.vectors().unwrap();
        let right = ShiftSpec::right(lambda, re(0.0), w.conjugate()).with_dual(y.conjugate());
        let via = right_shift_poly(&p.transpose(), &right).unwrap().transpose();
        assert_eq!(out, via);
        let report = det_ratio_oracle(&p, &out, &[lambda.into()], &[re(0.0).into()], &OracleConfig::default()).unwrap();
        assert!(report.pass, "{}", report.max_error);
    }

    #[test]
    fn double_shift_rejects_coincident_values() {
        let p = LaurentPoly::from(fixtures::p1());
        let right = ShiftSpec::right(re(1.0), re(0.0), e1());
        let left = ShiftSpec::left(re(1.0), re(0.0), e1());
        assert!(matches!(double_shift_laurent(&p, &right, &left), Err(Error::CoincidentEigenvalues)));
    }

    #[test]
    fn multishift_diagonal_pencil() {
        let a = real_matrix(3, 3, &[1.0, 0.0, 0.0, 0.0, 2.0, 0.0, 0.0, 0.0, 3.0]);
        let u = real_matrix(3, 2, &[1.0, 0.0, 0.0, 1.0, 0.0, 0.0]);
        let ms = MultiShiftSpec::new(
            u,
            real_matrix(2, 2, &[1.0, 0.0, 0.0, 2.0]),
            real_matrix(2, 2, &[7.0, 0.0, 0.0, 8.0]),
            None,
        )
        .unwrap();
        let out = multishift_pencil(&a, &ms).unwrap();
        assert_eq!(out, real_matrix(3, 3, &[7.0, 0.0, 0.0, 0.0, 8.0, 0.0, 0.0, 0.0, 3.0]));
    }

    #[test]
    fn multishift_m1_matches_p1_fixture() {
        let ms = MultiShiftSpec::new(
            real_matrix(2, 1, &[1.0, 0.0]),
            real_matrix(1, 1, &[1.0]),
            real_matrix(1, 1, &[0.0]),
            None,
        )
        .unwrap();
        assert_eq!(multishift_poly(&fixtures::p1(), &ms).unwrap(), fixtures::p1_shifted());
    }

    #[test]
    fn multishift_rejects_non_invariant_pair() {
        let ms = MultiShiftSpec::new(
            real_matrix(2, 1, &[0.0, 1.0]),
            real_matrix(1, 1, &[1.0]),
            real_matrix(1, 1, &[0.0]),
            None,
        )
        .unwrap();
        assert!(matches!(multishift_poly(&fixtures::p1(), &ms), Err(Error::NotInvariant { .. })));
    }

    #[test]
    fn multishift_rejects_singular_lambda_with_negative_powers() {
        let p = LaurentPoly::quadratic(linalg::identity(2), linalg::zeros(2), linalg::identity(2)).unwrap();
        let ms = MultiShiftSpec::new(
            real_matrix(2, 1, &[1.0, 0.0]),
            real_matrix(1, 1, &[0.0]),
            real_matrix(1, 1, &[0.5]),
            None,
        )
        .unwrap();
        assert!(matches!(multishift_laurent(&p, &ms), Err(Error::SingularLambda)));
    }

    #[test]
    fn infinite_lambda_on_laurent_is_unsupported() {
        let p = fixtures::scalar_quadratic();
        let spec = ShiftSpec::right(Eigenvalue::Infinite, re(1.0), real_vector(&[1.0]));
        assert!(matches!(right_shift_laurent(&p, &spec), Err(Error::UnsupportedInfinity(_))));
    }

    #[test]
    fn infinite_lambda_routes_to_from_infinity() {
        let spec = ShiftSpec::right(Eigenvalue::Infinite, re(1.0), real_vector(&[1.0, 0.0, 0.0]));
        let out = right_shift_poly(&fixtures::p2(), &spec).unwrap();
        assert_eq!(out, fixtures::p2_after_first_shift());
    }
}
