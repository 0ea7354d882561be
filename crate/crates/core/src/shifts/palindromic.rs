//! Structure-preserving double shift of *-palindromic matrix polynomials
//! (`Aᵢ = A_{d−i}*`), whose eigenvalues come in pairs `(λ, 1/λ̄)`.

use super::{check_dims, check_right_eigenpair, right_laurent_unchecked, DetRatio};
use crate::error::{Error, Result};
use crate::oracle::RatioConstant;
use crate::poly::{LaurentPoly, MatrixPoly};
use crate::types::{CMatrix, CVector, Complex, Eigenvalue};
use log::warn;

const PALINDROMIC_TOLERANCE: f64 = 1e-12;

/// `max ‖Aᵢ − A_{d−i}*‖_F / Σ‖Aᵢ‖_F`.
pub fn palindromic_deviation(p: &MatrixPoly) -> f64 {
    let d = p.degree();
    let scale = p.coeff_norm_sum().max(crate::types::FLOOR);
    (0..=d)
        .map(|i| (p.coeff(i) - p.coeff(d - i).adjoint()).norm())
        .fold(0.0, f64::max)
        / scale
}

pub fn is_palindromic(p: &MatrixPoly, tol: f64) -> bool {
    palindromic_deviation(p) <= tol
}

fn zero() -> Complex {
    Complex::new(0.0, 0.0)
}

/// The two-stage coefficients before re-symmetrization; `u` must satisfy `A(λ)u = 0`.
pub(crate) fn palindromic_unsymmetrized(p: &MatrixPoly, lambda: Complex, mu: Complex, u: &CVector) -> MatrixPoly {
    let d = p.degree();
    let q = u * u.adjoint() / Complex::new(u.norm_squared(), 0.0);
    let a = p.coeffs();
    if lambda == zero() {
        let m2 = mu.norm_sqr();
        let coeffs = (0..=d)
            .map(|i| {
                let mut t = a[i].clone();
                if i < d {
                    t -= &a[i + 1] * &q * mu;
                }
                if i > 0 {
                    t -= &q * &a[i - 1] * mu.conj();
                }
                t + &q * &a[i] * &q * Complex::new(m2, 0.0)
            })
            .collect();
        return MatrixPoly::new(coeffs).expect("same shapes");
    }
    let v = u / Complex::new(u.norm_squared(), 0.0);
    let hat = right_laurent_unchecked(&LaurentPoly::from(p), lambda, mu, u, &v)
        .to_poly()
        .expect("lo = 0");
    let ah = hat.coeffs();
    let lb = lambda.conj();
    let diff = lb - mu.conj();
    let mut coeffs: Vec<CMatrix> = vec![ah[0].clone()];
    for i in 1..=d {
        let mut acc = ah[i].clone();
        let mut power = Complex::new(1.0, 0.0);
        for k in 0..i {
            acc += &q * &ah[i - k - 1] * (diff * power);
            power *= lb;
        }
        coeffs.push(acc);
    }
    MatrixPoly::new(coeffs).expect("same shapes")
}

/// Moves the eigenvalue pair `(λ, 1/λ̄)` to `(μ, 1/μ̄)` keeping `Aᵢ = A_{d−i}*`.
///
/// Uses `Q = uu*/(u*u)`. The result is re-symmetrized (`Ãᵢ ← (Ãᵢ + Ã_{d−i}*)/2`).
pub fn palindromic_shift(p: &MatrixPoly, lambda: Complex, mu: Complex, u: &CVector) -> Result<MatrixPoly> {
    let deviation = palindromic_deviation(p);
    if deviation > PALINDROMIC_TOLERANCE {
        return Err(Error::NotPalindromic { deviation });
    }
    check_dims(p.n(), u)?;
    if u.norm() == 0.0 {
        return Err(Error::InvalidInput("shift vector must be nonzero".into()));
    }
    check_right_eigenpair(p, lambda, u, p.scale_at(lambda))?;
    if lambda == mu {
        return Ok(p.clone());
    }
    if (lambda.norm_sqr() - 1.0).abs() <= 1e-8 {
        warn!("|lambda| = 1: lambda and 1/conj(lambda) coincide, the pair is not moved as a pair");
    }
    let raw = palindromic_unsymmetrized(p, lambda, mu, u);
    let drift = palindromic_deviation(&raw);
    if drift > PALINDROMIC_TOLERANCE {
        warn!("palindromic structure drifted by {drift:.3e} before re-symmetrization");
    }
    let d = raw.degree();
    let coeffs = (0..=d)
        .map(|i| (raw.coeff(i) + raw.coeff(d - i).adjoint()) * Complex::new(0.5, 0.0))
        .collect();
    MatrixPoly::new(coeffs)
}

/// Oracle data: `det Ã = det A · (z−μ)(1−μ̄z) / ((z−λ)(1−λ̄z))`.
pub fn palindromic_det_ratio(lambda: Complex, mu: Complex) -> DetRatio {
    let mut removed = vec![Eigenvalue::Finite(lambda)];
    let mut added = vec![Eigenvalue::Finite(mu)];
    let mut constant = Complex::new(1.0, 0.0);
    if lambda != zero() {
        removed.push(Eigenvalue::Finite(lambda.conj().inv()));
        constant /= -lambda.conj();
    }
    if mu != zero() {
        added.push(Eigenvalue::Finite(mu.conj().inv()));
        constant *= -mu.conj();
    }
    DetRatio {
        removed,
        added,
        constant: RatioConstant::Known(constant),
    }
}
