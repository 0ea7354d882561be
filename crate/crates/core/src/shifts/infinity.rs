//! Moving eigenvalues between infinity and finite values for matrix polynomials.

use super::{check_dims, check_right_eigenpair, normalized_pair};
use crate::error::{Error, Result};
use crate::poly::MatrixPoly;
use crate::types::{CVector, Complex, FLOOR};

/// Replaces one infinite eigenvalue (`A_d u = 0`) by `μ`:
/// `Ã₀ = A₀`, `Ãᵢ = Aᵢ − μ⁻¹A_{i−1}Q`, `Q = uv*`.
pub fn shift_from_infinity(p: &MatrixPoly, mu: Complex, u: &CVector, v: Option<&CVector>) -> Result<MatrixPoly> {
    if mu == Complex::new(0.0, 0.0) {
        return Err(Error::ZeroMu);
    }
    if p.degree() == 0 {
        return Err(Error::InvalidInput("a constant polynomial has no eigenvalues at infinity".into()));
    }
    let (u, v) = normalized_pair(u, v)?;
    check_dims(p.n(), &u)?;
    let lead = p.leading();
    let residual = (lead * &u).norm() / (lead.norm() * u.norm()).max(FLOOR);
    if residual > 1e-8 {
        return Err(Error::NotInKernel { residual });
    }
    let q = &u * v.adjoint();
    let inv = mu.inv();
    let a = p.coeffs();
    let mut coeffs = vec![a[0].clone()];
    for i in 1..a.len() {
        coeffs.push(&a[i] - &a[i - 1] * &q * inv);
    }
    MatrixPoly::new(coeffs)
}

/// Moves the finite eigenvalue `λ ≠ 0` to infinity:
/// `Ã₀ = A₀`, `Ãᵢ = Aᵢ + λ⁻¹ Σ_{k=0}^{i−1} λ^{−k} A_{i−k−1} Q`.
pub fn shift_to_infinity(p: &MatrixPoly, lambda: Complex, u: &CVector, v: Option<&CVector>) -> Result<MatrixPoly> {
    if lambda == Complex::new(0.0, 0.0) {
        return Err(Error::ZeroLambda);
    }
    let (u, v) = normalized_pair(u, v)?;
    check_dims(p.n(), &u)?;
    check_right_eigenpair(p, lambda, &u, p.scale_at(lambda))?;
    let q = &u * v.adjoint();
    let inv = lambda.inv();
    let a = p.coeffs();
    // Partial sums T_i = λ⁻¹ Σ_{k<i} λ^{−k} A_{i−k−1} satisfy T_{i+1} = λ⁻¹(A_i + T_i).
    let mut coeffs = vec![a[0].clone()];
    let mut t = &a[0] * inv;
    for i in 1..a.len() {
        coeffs.push(&a[i] + &t * &q);
        t = (&a[i] + &t) * inv;
    }
    MatrixPoly::new(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::oracle::{det_ratio_oracle, OracleConfig, RatioConstant};
    use crate::spectra::polyeig;
    use crate::types::{re, real_matrix, real_vector};
    use crate::poly::MatrixFunction;

    fn e1() -> CVector {
        real_vector(&[1.0, 0.0, 0.0])
    }

    #[test]
    fn p2_two_steps_are_integer_exact() {
        let first = shift_from_infinity(&fixtures::p2(), re(1.0), &e1(), Some(&e1())).unwrap();
        assert_eq!(first, fixtures::p2_after_first_shift());
        let second = shift_from_infinity(&first, re(0.5), &e1(), Some(&e1())).unwrap();
        assert_eq!(second, fixtures::p2_final());
        let det = crate::linalg::det(second.leading());
        assert_eq!(det, re(2.0));
    }

    #[test]
    fn p2_final_spectrum() {
        let s = polyeig(&fixtures::p2_final(), 42).unwrap();
        assert_eq!(s.infinite_count(), 0);
        let v = s.finite_values();
        assert_eq!(v.len(), 6);
        assert!((v[0] - re(0.5)).norm() < 1e-7);
        assert!(v.iter().any(|z| (z - re(1.0)).norm() < 1e-7));
    }

    #[test]
    fn from_infinity_rejects_bad_input() {
        let p = fixtures::p2();
        assert!(matches!(shift_from_infinity(&p, re(0.0), &e1(), None), Err(Error::ZeroMu)));
        let not_kernel = real_vector(&[0.0, 1.0, 0.0]);
        assert!(matches!(
            shift_from_infinity(&p, re(1.0), &not_kernel, None),
            Err(Error::NotInKernel { .. })
        ));
    }

    #[test]
    fn from_infinity_oracle() {
        let out = shift_from_infinity(&fixtures::p2(), re(1.0), &e1(), None).unwrap();
        let cfg = OracleConfig::default().with_constant(RatioConstant::Known(re(-1.0)));
        let report = det_ratio_oracle(&fixtures::p2(), &out, &[], &[re(1.0).into()], &cfg).unwrap();
        assert!(report.pass, "{}", report.max_error);
    }

    #[test]
    fn scalar_to_infinity_drops_degree() {
        let p = MatrixPoly::new(vec![real_matrix(1, 1, &[-2.0]), real_matrix(1, 1, &[1.0])]).unwrap();
        let out = shift_to_infinity(&p, re(2.0), &real_vector(&[1.0]), None).unwrap();
        assert_eq!(out.coeff(0)[(0, 0)], re(-2.0));
        assert_eq!(out.coeff(1)[(0, 0)], re(0.0));
    }

    #[test]
    fn p1_half_to_infinity() {
        let p = fixtures::p1();
        let (u, _) = crate::linalg::smallest_right_singular(&p.evaluate(re(0.5)).unwrap());
        let out = shift_to_infinity(&p, re(0.5), &u, None).unwrap();
        assert!((out.leading() * &u).norm() < 1e-12);
        let s = polyeig(&out, 1).unwrap();
        assert_eq!(s.infinite_count(), 1);
        let v = s.finite_values();
        assert!((v[0] - re(1.0 / 3.0)).norm() < 1e-7);
        assert!((v[1] - re(1.0)).norm() < 1e-6);
        let cfg = OracleConfig::default().with_constant(RatioConstant::Known(re(-0.5)));
        let report = det_ratio_oracle(&p, &out, &[re(0.5).into()], &[], &cfg).unwrap();
        assert!(report.pass, "{}", report.max_error);
    }

    #[test]
    fn round_trip_restores_spectrum() {
        let p = fixtures::p1();
        let (u, _) = crate::linalg::smallest_right_singular(&p.evaluate(re(0.5)).unwrap());
        let there = shift_to_infinity(&p, re(0.5), &u, None).unwrap();
        let back = shift_from_infinity(&there, re(0.5), &u, None).unwrap();
        let cfg = OracleConfig::default().with_constant(RatioConstant::Fitted);
        let report = det_ratio_oracle(&p, &back, &[], &[], &cfg).unwrap();
        assert!(report.pass, "{}", report.max_error);
    }
}
