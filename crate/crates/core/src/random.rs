//! Seeded random instances for tests and benchmarks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg;
use crate::oracle::{det_ratio_oracle, OracleConfig, OracleReport};
use crate::poly::{LaurentPoly, MatrixFunction, MatrixPoly};
use crate::shifts::{
    det_ratio_for, double_shift_laurent, left_shift_laurent, left_shift_poly, multishift_det_ratio, multishift_poly,
    palindromic_det_ratio, palindromic_shift, right_shift_laurent, right_shift_poly, shift_from_infinity,
    shift_to_infinity, DetRatio, MultiShiftSpec, ShiftSpec,
};
use crate::spectra::{polyeig, refine_pair};
use crate::types::{c, CMatrix, CVector, Complex, Eigenvalue};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Entries with real and imaginary parts uniform in `[-1, 1)`.
pub fn complex<R: Rng>(rng: &mut R) -> Complex {
    c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
}

pub fn matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| complex(rng))
}

pub fn real_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| c(rng.random_range(-1.0..1.0), 0.0))
}

pub fn vector<R: Rng>(rng: &mut R, n: usize) -> CVector {
    CVector::from_fn(n, |_, _| complex(rng))
}

pub fn poly<R: Rng>(rng: &mut R, n: usize, degree: usize) -> MatrixPoly {
    MatrixPoly::new((0..=degree).map(|_| matrix(rng, n, n)).collect()).expect("square coefficients")
}

pub fn laurent<R: Rng>(rng: &mut R, n: usize, lo: i64, hi: i64) -> LaurentPoly {
    let coeffs = (lo..=hi).map(|_| matrix(rng, n, n)).collect();
    LaurentPoly::new(lo, coeffs).expect("square coefficients")
}

/// Rank-one correction of `A₀` so that `A(λ)u = 0`.
fn plant<P: MatrixFunction>(p: &P, lambda: Complex, u: &CVector) -> CMatrix {
    let a = p.evaluate(lambda).expect("finite evaluation point");
    let uu = linalg::dot_h(u, u);
    &a * u * u.adjoint() / uu
}

/// A random polynomial together with a right eigenpair `(λ, u)`.
pub fn poly_with_eigenpair<R: Rng>(rng: &mut R, n: usize, degree: usize, lambda: Complex) -> (MatrixPoly, CVector) {
    let p = poly(rng, n, degree);
    let u = vector(rng, n);
    let correction = plant(&p, lambda, &u);
    let mut coeffs = p.into_coeffs();
    coeffs[0] -= correction;
    (MatrixPoly::new(coeffs).expect("square coefficients"), u)
}

/// A random Laurent polynomial together with a right eigenpair `(λ, u)`, `λ ≠ 0`.
pub fn laurent_with_eigenpair<R: Rng>(rng: &mut R, n: usize, lo: i64, hi: i64, lambda: Complex) -> (LaurentPoly, CVector) {
    let mut p = laurent(rng, n, lo, hi);
    let u = vector(rng, n);
    let correction = plant(&p, lambda, &u);
    *p.coeff_mut(0) -= correction;
    (p, u)
}

/// `A₀ ← A₀ − R(U*U)⁻¹U*` with `R = Σ AᵢUΛⁱ`, so that `(U, Λ)` is invariant.
pub fn poly_with_invariant_pair<R: Rng>(rng: &mut R, n: usize, degree: usize, lambda: &CMatrix) -> (MatrixPoly, CMatrix) {
    let m = lambda.nrows();
    let p = poly(rng, n, degree);
    let u = matrix(rng, n, m);
    let r = crate::spectra::invariant_residual_matrix(&p, &u, lambda);
    let gram = u.adjoint() * &u;
    let gram_inv = linalg::inverse(&gram).expect("random columns are independent");
    let mut coeffs = p.into_coeffs();
    coeffs[0] -= r * gram_inv * u.adjoint();
    (MatrixPoly::new(coeffs).expect("square coefficients"), u)
}

/// `A₀ + A₁z + A₀*z²` with `A₁` Hermitian.
pub fn palindromic_quadratic<R: Rng>(rng: &mut R, n: usize) -> MatrixPoly {
    let a0 = matrix(rng, n, n);
    let r = matrix(rng, n, n);
    let a1 = &r + r.adjoint();
    let a2 = a0.adjoint();
    MatrixPoly::new(vec![a0, a1, a2]).expect("square coefficients")
}

/// Quasi-birth-death generator `A₋₁/z + A₀ + A₁z` with `A₋₁ = −B₋₁`,
/// `A₀ = I − B₀`, `A₁ = −B₁`, nonnegative `Bᵢ` and row sums of `ΣBᵢ` equal to `0.9`.
pub fn subcritical_qbd<R: Rng>(rng: &mut R, n: usize) -> LaurentPoly {
    let raw: Vec<Vec<f64>> = (0..3).map(|_| (0..n * n).map(|_| rng.random_range(0.0..1.0)).collect()).collect();
    let mut b: Vec<CMatrix> = (0..3).map(|_| CMatrix::zeros(n, n)).collect();
    for row in 0..n {
        let sum: f64 = (0..3).map(|k| raw[k][row * n..(row + 1) * n].iter().sum::<f64>()).sum();
        for (k, bk) in b.iter_mut().enumerate() {
            for col in 0..n {
                bk[(row, col)] = c(0.9 * raw[k][row * n + col] / sum, 0.0);
            }
        }
    }
    let am = -&b[0];
    let a0 = linalg::identity(n) - &b[1];
    let ap = -&b[2];
    LaurentPoly::quadratic(am, a0, ap).expect("square coefficients")
}

/// Shift variants covered by [`shift_case`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ShiftVariant {
    RightPoly,
    LeftPoly,
    RightLaurent,
    LeftLaurent,
    Double,
    Multi1,
    Multi2,
    Palindromic,
    ToInfinity,
    FromInfinity,
}

impl ShiftVariant {
    pub const ALL: [ShiftVariant; 10] = [
        ShiftVariant::RightPoly,
        ShiftVariant::LeftPoly,
        ShiftVariant::RightLaurent,
        ShiftVariant::LeftLaurent,
        ShiftVariant::Double,
        ShiftVariant::Multi1,
        ShiftVariant::Multi2,
        ShiftVariant::Palindromic,
        ShiftVariant::ToInfinity,
        ShiftVariant::FromInfinity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ShiftVariant::RightPoly => "right poly",
            ShiftVariant::LeftPoly => "left poly",
            ShiftVariant::RightLaurent => "right laurent",
            ShiftVariant::LeftLaurent => "left laurent",
            ShiftVariant::Double => "double",
            ShiftVariant::Multi1 => "multishift m=1",
            ShiftVariant::Multi2 => "multishift m=2",
            ShiftVariant::Palindromic => "palindromic",
            ShiftVariant::ToInfinity => "to infinity",
            ShiftVariant::FromInfinity => "from infinity",
        }
    }
}

/// A shifted instance with the data its determinant identity needs.
#[derive(Clone, Debug)]
pub struct ShiftCase {
    pub original: LaurentPoly,
    pub shifted: LaurentPoly,
    pub ratio: DetRatio,
}

fn nonzero<R: Rng>(rng: &mut R) -> Complex {
    loop {
        let z = complex(rng);
        if z.norm() > 0.2 {
            return z;
        }
    }
}

/// Left eigenpair `w*A(λ) = 0` obtained by transposing a planted right pair.
fn poly_with_left_eigenpair<R: Rng>(rng: &mut R, n: usize, degree: usize, lambda: Complex) -> (MatrixPoly, CVector) {
    let (p, u) = poly_with_eigenpair(rng, n, degree, lambda);
    (p.transpose(), u.conjugate())
}

fn laurent_with_left_eigenpair<R: Rng>(rng: &mut R, n: usize, lo: i64, hi: i64, lambda: Complex) -> (LaurentPoly, CVector) {
    let (p, u) = laurent_with_eigenpair(rng, n, lo, hi, lambda);
    (p.transpose(), u.conjugate())
}

/// A palindromic quadratic with a refined eigenpair away from the unit circle and from 0.
fn palindromic_with_pair<R: Rng>(rng: &mut R, n: usize) -> Result<(MatrixPoly, Complex, CVector)> {
    for _ in 0..16 {
        let p = palindromic_quadratic(rng, n);
        let spectrum = polyeig(&p, 1)?;
        let candidate = spectrum.pairs.iter().find(|pair| {
            let m = pair.value.modulus();
            pair.value.is_finite() && m > 0.05 && (m - 1.0).abs() > 0.05
        });
        if let Some(pair) = candidate {
            let z = pair.value.finite().expect("finite");
            let refined = refine_pair(&p, z, &pair.right)?;
            let lambda = refined.value.finite().expect("finite");
            return Ok((p, lambda, refined.right));
        }
    }
    Err(Error::InvalidInput("no suitable palindromic eigenvalue".into()))
}

/// A seeded random instance of `variant` together with its shifted polynomial.
pub fn shift_case(variant: ShiftVariant, seed: u64) -> Result<ShiftCase> {
    let mut rng = rng(seed);
    let rng = &mut rng;
    let n = 4;
    match variant {
        ShiftVariant::RightPoly | ShiftVariant::LeftPoly => {
            let lambda = complex(rng);
            let mu = complex(rng);
            let (p, spec) = if variant == ShiftVariant::RightPoly {
                let (p, u) = poly_with_eigenpair(rng, n, 3, lambda);
                (p, ShiftSpec::right(lambda, mu, u))
            } else {
                let (p, v) = poly_with_left_eigenpair(rng, n, 3, lambda);
                (p, ShiftSpec::left(lambda, mu, v))
            };
            let shifted = match variant {
                ShiftVariant::RightPoly => right_shift_poly(&p, &spec)?,
                _ => left_shift_poly(&p, &spec)?,
            };
            Ok(ShiftCase {
                original: p.into(),
                shifted: shifted.into(),
                ratio: det_ratio_for(&spec),
            })
        }
        ShiftVariant::RightLaurent | ShiftVariant::LeftLaurent => {
            let lambda = nonzero(rng);
            let mu = complex(rng);
            let (p, spec) = if variant == ShiftVariant::RightLaurent {
                let (p, u) = laurent_with_eigenpair(rng, n, -2, 1, lambda);
                (p, ShiftSpec::right(lambda, mu, u))
            } else {
                let (p, v) = laurent_with_left_eigenpair(rng, n, -2, 1, lambda);
                (p, ShiftSpec::left(lambda, mu, v))
            };
            let shifted = match variant {
                ShiftVariant::RightLaurent => right_shift_laurent(&p, &spec)?,
                _ => left_shift_laurent(&p, &spec)?,
            };
            Ok(ShiftCase {
                original: p,
                shifted,
                ratio: det_ratio_for(&spec),
            })
        }
        ShiftVariant::Double => {
            let lambda1 = nonzero(rng);
            let lambda2 = lambda1 + nonzero(rng);
            let (mu1, mu2) = (complex(rng), complex(rng));
            let (p, u) = laurent_with_eigenpair(rng, n, -1, 1, lambda1);
            // F(z − λ₁) vanishes at λ₁ and plants w*A(λ₂) = 0.
            let w = vector(rng, n);
            let residual = w.adjoint() * p.evaluate(lambda2)?;
            let f = &w * residual / ((lambda2 - lambda1) * linalg::dot_h(&w, &w));
            let mut p = p;
            *p.coeff_mut(1) -= &f;
            *p.coeff_mut(0) += f * lambda1;
            let right = ShiftSpec::right(lambda1, mu1, u);
            let left = ShiftSpec::left(lambda2, mu2, w);
            let shifted = double_shift_laurent(&p, &right, &left)?;
            Ok(ShiftCase {
                original: p,
                shifted,
                ratio: DetRatio::simple(vec![lambda1.into(), lambda2.into()], vec![mu1.into(), mu2.into()]),
            })
        }
        ShiftVariant::Multi1 | ShiftVariant::Multi2 => {
            let m = if variant == ShiftVariant::Multi1 { 1 } else { 2 };
            let lambda = matrix(rng, m, m);
            let s = matrix(rng, m, m);
            let (p, u) = poly_with_invariant_pair(rng, n, 3, &lambda);
            let ms = MultiShiftSpec::new(u, lambda, s, None)?;
            let shifted = multishift_poly(&p, &ms)?;
            Ok(ShiftCase {
                original: p.into(),
                shifted: shifted.into(),
                ratio: multishift_det_ratio(&ms)?,
            })
        }
        ShiftVariant::Palindromic => {
            let (p, lambda, u) = palindromic_with_pair(rng, n)?;
            let mu = loop {
                let z = nonzero(rng);
                if (z.norm() - 1.0).abs() > 0.05 {
                    break z;
                }
            };
            let shifted = palindromic_shift(&p, lambda, mu, &u)?;
            Ok(ShiftCase {
                original: p.into(),
                shifted: shifted.into(),
                ratio: palindromic_det_ratio(lambda, mu),
            })
        }
        ShiftVariant::ToInfinity => {
            let lambda = nonzero(rng);
            let (p, u) = poly_with_eigenpair(rng, n, 3, lambda);
            let shifted = shift_to_infinity(&p, lambda, &u, None)?;
            Ok(ShiftCase {
                original: p.into(),
                shifted: shifted.into(),
                ratio: det_ratio_for(&ShiftSpec::right(lambda, Eigenvalue::Infinite, u)),
            })
        }
        ShiftVariant::FromInfinity => {
            let mu = nonzero(rng);
            let p = poly(rng, n, 3);
            let u = vector(rng, n);
            let mut coeffs = p.into_coeffs();
            let lead = coeffs.last_mut().expect("non-empty");
            let correction = &*lead * &u * u.adjoint() / linalg::dot_h(&u, &u);
            *lead -= correction;
            let p = MatrixPoly::new(coeffs)?;
            let shifted = shift_from_infinity(&p, mu, &u, None)?;
            Ok(ShiftCase {
                original: p.into(),
                shifted: shifted.into(),
                ratio: det_ratio_for(&ShiftSpec::right(Eigenvalue::Infinite, mu, u)),
            })
        }
    }
}

/// Runs the determinant-ratio oracle on a case with `samples` points.
pub fn check_case(case: &ShiftCase, samples: usize, seed: u64) -> Result<OracleReport> {
    let config = OracleConfig::default()
        .with_samples(samples)
        .with_seed(seed)
        .with_constant(case.ratio.constant);
    det_ratio_oracle(&case.original, &case.shifted, &case.ratio.removed, &case.ratio.added, &config)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_is_reproducible() {
        let a = poly(&mut rng(7), 3, 2);
        let b = poly(&mut rng(7), 3, 2);
        assert!(a.approx_eq(&b, 0.0));
    }

    #[test]
    fn planted_pair_is_eigenpair() {
        let lambda = c(0.3, -0.4);
        let (p, u) = poly_with_eigenpair(&mut rng(1), 4, 3, lambda);
        let r = p.evaluate(lambda).unwrap() * &u;
        assert!(r.norm() < 1e-13);
    }

    #[test]
    fn planted_laurent_pair() {
        let lambda = c(1.5, 0.2);
        let (p, u) = laurent_with_eigenpair(&mut rng(2), 3, -1, 1, lambda);
        assert!((p.evaluate(lambda).unwrap() * &u).norm() < 1e-13);
    }

    #[test]
    fn planted_invariant_pair() {
        let lambda = crate::types::real_matrix(2, 2, &[0.5, 1.0, 0.0, -0.25]);
        let (p, u) = poly_with_invariant_pair(&mut rng(3), 4, 2, &lambda);
        assert!(crate::spectra::invariant_residual(&p, &u, &lambda) < 1e-13);
    }

    #[test]
    fn every_variant_passes_its_oracle() {
        for variant in ShiftVariant::ALL {
            let case = shift_case(variant, 11).unwrap();
            let report = check_case(&case, 16, 3).unwrap();
            assert!(report.pass, "{}: {:e}", variant.name(), report.max_error);
        }
    }

    #[test]
    fn qbd_row_sums() {
        let p = subcritical_qbd(&mut rng(4), 3);
        let a = p.evaluate(c(1.0, 0.0)).unwrap();
        for row in 0..3 {
            let s: Complex = a.row(row).iter().sum();
            assert!((s - c(0.1, 0.0)).norm() < 1e-14);
        }
    }
}
