//! Determinant evaluation and the determinant-ratio oracle.
//!
//! Every shift `A → Ã` satisfies an identity of the form
//! `det Ã(z) · Π(z − λⱼ) = c · det A(z) · Π(z − μⱼ)`. The oracle checks it at
//! random points on two circles using LU determinants only, so it never shares
//! a code path with the shift formulas it validates.

use crate::error::{Error, Result};
use crate::linalg;
use crate::poly::MatrixFunction;
use crate::types::{Complex, Eigenvalue, FLOOR};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::f64::consts::PI;

/// Determinant of `p(z)` via pivoted LU.
pub fn det_at<P: MatrixFunction + ?Sized>(p: &P, z: Complex) -> Result<Complex> {
    Ok(linalg::det(&p.evaluate(z)?))
}

/// How the constant `c` in the determinant identity is obtained.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum RatioConstant {
    /// `c = 1`, the plain Brauer identity.
    Unit,
    Known(Complex),
    /// Fitted at the first accepted sample and verified at the others.
    Fitted,
}

#[derive(Clone, Debug)]
pub struct OracleConfig {
    pub samples: usize,
    pub radii: Vec<f64>,
    pub seed: u64,
    pub tolerance: f64,
    /// Samples closer than this to any removed/added value are rejected.
    pub exclusion: f64,
    pub constant: RatioConstant,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            samples: 32,
            radii: vec![0.7, 1.3],
            seed: 42,
            tolerance: 1e-8,
            exclusion: 1e-3,
            constant: RatioConstant::Unit,
        }
    }
}

impl OracleConfig {
    pub fn with_samples(mut self, samples: usize) -> Self {
        self.samples = samples;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_constant(mut self, constant: RatioConstant) -> Self {
        self.constant = constant;
        self
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleReport {
    pub max_error: f64,
    pub samples: usize,
    pub tolerance: f64,
    pub pass: bool,
    /// The constant that was used (fitted or given).
    pub constant: Complex,
}

impl OracleReport {
    pub fn verdict(&self) -> &'static str {
        if self.pass {
            "PASS"
        } else {
            "FAIL"
        }
    }
}

fn linear_product(values: &[Eigenvalue], z: Complex) -> Complex {
    values
        .iter()
        .filter_map(|v| v.finite())
        .fold(Complex::new(1.0, 0.0), |acc, lam| acc * (z - lam))
}

fn is_degenerate(det: Complex, value_norm: f64, n: usize) -> bool {
    det.norm() <= 1e-14 * value_norm.powi(n as i32).max(FLOOR)
}

/// Checks `det ã(z)·Π(z − removed) = c·det a(z)·Π(z − added)` at sampled points.
///
/// Infinite entries contribute no linear factor; their effect is carried by `c`.
pub fn det_ratio_oracle<P, Q>(
    a: &P,
    shifted: &Q,
    removed: &[Eigenvalue],
    added: &[Eigenvalue],
    config: &OracleConfig,
) -> Result<OracleReport>
where
    P: MatrixFunction + ?Sized,
    Q: MatrixFunction + ?Sized,
{
    if a.dim() != shifted.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: shifted.dim(),
        });
    }
    if config.samples == 0 || config.radii.is_empty() {
        return Err(Error::InvalidInput("oracle needs at least one sample and one radius".into()));
    }
    let n = a.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let special: Vec<Complex> = removed.iter().chain(added).filter_map(|v| v.finite()).collect();

    let mut constant = match config.constant {
        RatioConstant::Unit => Some(Complex::new(1.0, 0.0)),
        RatioConstant::Known(c) => Some(c),
        RatioConstant::Fitted => None,
    };
    let mut accepted = 0usize;
    let mut attempts = 0usize;
    let mut nondegenerate = 0usize;
    let mut max_error = 0.0f64;

    while accepted < config.samples {
        attempts += 1;
        if attempts > 100 * config.samples {
            return Err(Error::InvalidInput(
                "could not draw sample points away from the removed/added values".into(),
            ));
        }
        let radius = config.radii[accepted % config.radii.len()];
        let theta: f64 = rng.random_range(0.0..2.0 * PI);
        let z = Complex::from_polar(radius, theta);
        if special.iter().any(|s| (z - s).norm() < config.exclusion) {
            continue;
        }
        accepted += 1;

        let a_value = a.evaluate(z)?;
        let det_a = linalg::det(&a_value);
        if !is_degenerate(det_a, a_value.norm(), n) {
            nondegenerate += 1;
        }
        let det_s = det_at(shifted, z)?;
        let lhs = det_s * linear_product(removed, z);
        let base = det_a * linear_product(added, z);

        let c = match constant {
            Some(c) => c,
            None => {
                if base.norm() <= FLOOR {
                    accepted -= 1;
                    continue;
                }
                let fitted = lhs / base;
                constant = Some(fitted);
                fitted
            }
        };
        let rhs = base * c;
        let err = (lhs - rhs).norm() / rhs.norm().max(FLOOR);
        max_error = max_error.max(err);
    }
    if nondegenerate == 0 {
        return Err(Error::DegeneratePolynomial);
    }
    Ok(OracleReport {
        max_error,
        samples: accepted,
        tolerance: config.tolerance,
        pass: max_error <= config.tolerance,
        constant: constant.unwrap_or(Complex::new(1.0, 0.0)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::poly::MatrixPoly;
    use crate::types::{re, real_matrix};

    #[test]
    fn det_of_p1_vanishes_at_one() {
        let a1 = fixtures::p1().evaluate(re(1.0)).unwrap();
        let d = det_at(&fixtures::p1(), re(1.0)).unwrap();
        assert!(d.norm() <= 1e-12 * a1.norm().powi(2));
    }

    #[test]
    fn det_of_identity_pencil() {
        let p = MatrixPoly::pencil(&linalg::zeros(2)).unwrap();
        assert_eq!(det_at(&p, re(2.0)).unwrap(), re(4.0));
    }

    #[test]
    fn det_of_p2_vanishes_at_i() {
        let p = fixtures::p2();
        let d = det_at(&p, Complex::new(0.0, 1.0)).unwrap();
        assert!(d.norm() < 1e-13, "{d}");
    }

    #[test]
    fn p1_shift_passes() {
        let report = det_ratio_oracle(
            &fixtures::p1(),
            &fixtures::p1_shifted(),
            &[re(1.0).into()],
            &[re(0.0).into()],
            &OracleConfig::default(),
        )
        .unwrap();
        assert!(report.pass, "max error {}", report.max_error);
    }

    #[test]
    fn identity_shift_has_zero_error() {
        let p = fixtures::p1();
        let report = det_ratio_oracle(&p, &p, &[], &[], &OracleConfig::default()).unwrap();
        assert!(report.pass);
        assert_eq!(report.max_error, 0.0);
    }

    #[test]
    fn unrelated_polynomial_fails() {
        let report = det_ratio_oracle(
            &fixtures::p1(),
            &fixtures::p1_shifted(),
            &[re(1.0).into()],
            &[re(0.5).into()],
            &OracleConfig::default(),
        )
        .unwrap();
        assert!(!report.pass);
    }

    #[test]
    fn fitted_constant_is_recovered() {
        let p = fixtures::p1();
        let scaled = MatrixPoly::new(p.coeffs().iter().map(|a| a * re(2.0)).collect()).unwrap();
        let cfg = OracleConfig::default().with_constant(RatioConstant::Fitted);
        let report = det_ratio_oracle(&p, &scaled, &[], &[], &cfg).unwrap();
        assert!(report.pass);
        assert!((report.constant - re(4.0)).norm() < 1e-12);
    }

    #[test]
    fn zero_polynomial_is_degenerate() {
        let z = MatrixPoly::new(vec![real_matrix(2, 2, &[0.0; 4])]).unwrap();
        let err = det_ratio_oracle(&z, &z, &[], &[], &OracleConfig::default()).unwrap_err();
        assert!(matches!(err, Error::DegeneratePolynomial));
    }
}
