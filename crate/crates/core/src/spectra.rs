//! Eigenvalues, eigenvectors and invariant pairs of matrix polynomials.
//!
//! `polyeig` linearizes `A(z)` by the block companion pencil `C1 − zC2` and
//! solves the standard eigenproblem of `M = (C1 − cC2)⁻¹C2` for a random point
//! `c` on `|c| = 0.9`. Eigenvalues map back through `z = c + 1/θ`, with `θ ≈ 0`
//! meaning `z = ∞`. Numerically null directions of `M` are deflated exactly
//! before the QR iteration, so that infinite eigenvalues belonging to Jordan
//! chains are not smeared into huge finite values.

use crate::eigen;
use crate::error::{Error, Result};
use crate::linalg;
use crate::poly::{MatrixFunction, MatrixPoly};
use crate::types::{normalize_phase, CMatrix, CVector, Complex, EigenPair, Eigenvalue, FLOOR};
use log::warn;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

/// `|θ| ≤ INFINITY_THRESHOLD·‖M‖_F` is classified as an infinite eigenvalue.
pub const INFINITY_THRESHOLD: f64 = 1e-10;
/// Finite values with `|θ| ≤ BORDERLINE_THRESHOLD·‖M‖_F` are flagged.
pub const BORDERLINE_THRESHOLD: f64 = 1e-7;
const CAYLEY_RADIUS: f64 = 0.9;
const CAYLEY_RETRIES: usize = 10;

/// Block companion pencil `C1 − zC2` with `det(C1 − zC2) = ±det A(z)`.
#[derive(Clone, Debug)]
pub struct CompanionPencil {
    pub c1: CMatrix,
    pub c2: CMatrix,
}

impl CompanionPencil {
    pub fn new(p: &MatrixPoly) -> Self {
        let n = p.n();
        let d = p.degree();
        let size = n * d;
        let mut c1 = CMatrix::zeros(size, size);
        let mut c2 = CMatrix::identity(size, size);
        for i in 0..d.saturating_sub(1) {
            c1.view_mut((i * n, (i + 1) * n), (n, n)).fill_with_identity();
        }
        for j in 0..d {
            c1.view_mut(((d - 1) * n, j * n), (n, n)).copy_from(&(-p.coeff(j)));
        }
        c2.view_mut(((d - 1) * n, (d - 1) * n), (n, n)).copy_from(p.leading());
        Self { c1, c2 }
    }

    pub fn at(&self, z: Complex) -> CMatrix {
        &self.c1 - &self.c2 * z
    }
}

/// All `n·d` eigenpairs of a matrix polynomial, sorted by modulus with `∞` last.
#[derive(Clone, Debug)]
pub struct Spectrum {
    pub pairs: Vec<EigenPair>,
    pub cayley_point: Complex,
}

impl Spectrum {
    pub fn values(&self) -> Vec<Eigenvalue> {
        self.pairs.iter().map(|p| p.value).collect()
    }

    pub fn finite_values(&self) -> Vec<Complex> {
        self.pairs.iter().filter_map(|p| p.value.finite()).collect()
    }

    pub fn infinite_count(&self) -> usize {
        self.pairs.iter().filter(|p| !p.value.is_finite()).count()
    }

    /// Fills in left eigenvectors (`v* A(λ) = 0`, or `v* A_d = 0` at infinity).
    pub fn compute_left(&mut self, p: &MatrixPoly) -> Result<()> {
        let mut infinite_index = 0;
        for pair in &mut self.pairs {
            let left = match pair.value {
                Eigenvalue::Finite(z) => linalg::smallest_left_singular(&p.evaluate(z)?).0,
                Eigenvalue::Infinite => {
                    let v = kernel_vector(&p.leading().adjoint(), infinite_index);
                    infinite_index += 1;
                    v
                }
            };
            pair.left = Some(normalize_phase(&left));
        }
        Ok(())
    }
}

fn sort_key(v: &Eigenvalue) -> (f64, f64, f64) {
    match v {
        Eigenvalue::Finite(z) => (z.norm(), z.re, z.im),
        Eigenvalue::Infinite => (f64::INFINITY, 0.0, 0.0),
    }
}

fn is_degenerate_at(p: &MatrixPoly, z: Complex) -> Result<bool> {
    let a = p.evaluate(z)?;
    let d = linalg::det(&a);
    Ok(d.norm() <= 1e-13 * a.norm().powi(p.n() as i32).max(FLOOR))
}

/// Kernel vector number `index` of `a` (orthogonal kernel vectors for repeated
/// infinite eigenvalues when the kernel allows it).
fn kernel_vector(a: &CMatrix, index: usize) -> CVector {
    let (values, v) = linalg::svd_right(a);
    let n = values.len();
    let scale = a.norm().max(FLOOR);
    let nullity = values.iter().filter(|&&s| s <= 1e-8 * scale).count().max(1);
    let col = n - 1 - (index % nullity);
    v.column(col).into_owned()
}

/// Relative residual `‖A(λ)u‖ / (‖u‖·Σ‖Aᵢ‖|λ|ⁱ)`.
pub fn finite_residual(p: &MatrixPoly, lambda: Complex, u: &CVector) -> Result<f64> {
    let r = (p.evaluate(lambda)? * u).norm();
    Ok(r / (u.norm() * p.scale_at(lambda)).max(FLOOR))
}

pub fn infinite_residual(p: &MatrixPoly, u: &CVector) -> f64 {
    (p.leading() * u).norm() / (u.norm() * p.leading().norm()).max(FLOOR)
}

/// Removes numerically null directions of `m` by unitary similarity.
/// Returns the reduced matrix and how many zero eigenvalues were split off.
fn deflate_null_space(m: &CMatrix, threshold: f64) -> (CMatrix, usize) {
    let mut current = m.clone();
    let mut removed = 0;
    while current.nrows() > 0 {
        let (values, v) = linalg::svd_right(&current);
        let k = values.iter().filter(|&&s| s <= threshold).count();
        if k == 0 {
            break;
        }
        let size = current.nrows();
        // Put null vectors first: Q = [Z, Z⊥].
        let mut q = CMatrix::zeros(size, size);
        for j in 0..k {
            q.set_column(j, &v.column(size - 1 - j));
        }
        for j in 0..size - k {
            q.set_column(k + j, &v.column(j));
        }
        let t = q.adjoint() * &current * &q;
        current = t.view((k, k), (size - k, size - k)).into_owned();
        removed += k;
    }
    (current, removed)
}

/// Computes every eigenvalue of `p` (finite and infinite) with right eigenvectors.
pub fn polyeig(p: &MatrixPoly, seed: u64) -> Result<Spectrum> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = p.n();
    let d = p.degree();

    let probes: Vec<Complex> = (0..3)
        .map(|_| Complex::from_polar(rng.random_range(0.5..1.5), rng.random_range(0.0..2.0 * PI)))
        .collect();
    let mut all_degenerate = true;
    for z in probes {
        if !is_degenerate_at(p, z)? {
            all_degenerate = false;
        }
    }
    if all_degenerate {
        return Err(Error::DegeneratePolynomial);
    }
    if d == 0 {
        return Ok(Spectrum {
            pairs: Vec::new(),
            cayley_point: Complex::new(0.0, 0.0),
        });
    }

    let pencil = CompanionPencil::new(p);
    let mut chosen = None;
    for _ in 0..CAYLEY_RETRIES {
        let c = Complex::from_polar(CAYLEY_RADIUS, rng.random_range(0.0..2.0 * PI));
        if !is_degenerate_at(p, c)? {
            chosen = Some(c);
            break;
        }
    }
    let cayley_point = chosen.ok_or(Error::DegeneratePolynomial)?;
    let m = linalg::solve(&pencil.at(cayley_point), &pencil.c2).ok_or(Error::DegeneratePolynomial)?;
    let m_norm = m.norm().max(FLOOR);

    let (reduced, null_count) = deflate_null_space(&m, INFINITY_THRESHOLD * m_norm);
    let thetas = eigen::eigenvalues(&reduced)?;

    let mut classified: Vec<(Eigenvalue, bool)> = vec![(Eigenvalue::Infinite, false); null_count];
    for theta in thetas {
        let rel = theta.norm() / m_norm;
        if rel <= INFINITY_THRESHOLD {
            classified.push((Eigenvalue::Infinite, false));
        } else {
            let borderline = rel <= BORDERLINE_THRESHOLD;
            if borderline {
                warn!("eigenvalue with |theta|/|M| = {rel:.3e} is close to the infinity threshold");
            }
            classified.push((Eigenvalue::Finite(cayley_point + theta.inv()), borderline));
        }
    }
    debug_assert_eq!(classified.len(), n * d);
    classified.sort_by(|a, b| {
        let (ka, kb) = (sort_key(&a.0), sort_key(&b.0));
        ka.0.total_cmp(&kb.0).then(ka.1.total_cmp(&kb.1)).then(ka.2.total_cmp(&kb.2))
    });

    let mut pairs = Vec::with_capacity(classified.len());
    let mut infinite_index = 0;
    for (value, borderline) in classified {
        let pair = match value {
            Eigenvalue::Finite(z) => {
                let (u, _) = linalg::smallest_right_singular(&p.evaluate(z)?);
                let u = normalize_phase(&u);
                let residual = finite_residual(p, z, &u)?;
                EigenPair {
                    value,
                    right: u,
                    left: None,
                    residual,
                    borderline,
                }
            }
            Eigenvalue::Infinite => {
                let u = normalize_phase(&kernel_vector(p.leading(), infinite_index));
                infinite_index += 1;
                EigenPair {
                    value,
                    residual: infinite_residual(p, &u),
                    right: u,
                    left: None,
                    borderline,
                }
            }
        };
        pairs.push(pair);
    }
    Ok(Spectrum { pairs, cayley_point })
}

/// Polishes an approximate finite eigenpair with one Newton step on the
/// eigenvalue and smallest-singular-vector updates of the eigenvector.
/// Returns the input unchanged unless the residual strictly improves.
pub fn refine_pair(p: &MatrixPoly, lambda: Complex, u: &CVector) -> Result<EigenPair> {
    if u.norm() == 0.0 {
        return Err(Error::InvalidInput("eigenvector must be nonzero".into()));
    }
    let input_residual = finite_residual(p, lambda, u)?;
    let mut best = EigenPair {
        value: Eigenvalue::Finite(lambda),
        right: u.clone(),
        left: None,
        residual: input_residual,
        borderline: false,
    };
    if input_residual == 0.0 {
        return Ok(best);
    }

    let mut consider = |z: Complex, v: CVector| -> Result<()> {
        let v = normalize_phase(&v);
        let r = finite_residual(p, z, &v)?;
        if r < best.residual {
            best = EigenPair {
                value: Eigenvalue::Finite(z),
                right: v,
                left: None,
                residual: r,
                borderline: false,
            };
        }
        Ok(())
    };

    let a = p.evaluate(lambda)?;
    let (u1, _) = linalg::smallest_right_singular(&a);
    let (w, _) = linalg::smallest_left_singular(&a);
    consider(lambda, u1.clone())?;

    let num = w.dotc(&(&a * &u1));
    let den = w.dotc(&(p.derivative_at(lambda) * &u1));
    if den.norm() > FLOOR && (num / den).norm().is_finite() {
        let z = lambda - num / den;
        let (u2, _) = linalg::smallest_right_singular(&p.evaluate(z)?);
        consider(z, u2)?;
    }
    Ok(best)
}

/// `(U, Λ)` with `Σ AᵢUΛⁱ = 0`, plus `V = U(U*U)⁻¹` so that `V*U = I`.
#[derive(Clone, Debug)]
pub struct InvariantPair {
    pub u: CMatrix,
    pub lambda: CMatrix,
    pub v: CMatrix,
    pub residual: f64,
}

/// `Σ AᵢUΛⁱ` evaluated by Horner in `Λ` from the right.
pub fn invariant_residual_matrix(p: &MatrixPoly, u: &CMatrix, lambda: &CMatrix) -> CMatrix {
    // Σ Aᵢ U Λⁱ = A₀U + (A₁U + (A₂U + …)Λ)Λ
    let mut acc = p.leading() * u;
    for i in (0..p.degree()).rev() {
        acc = acc * lambda + p.coeff(i) * u;
    }
    acc
}

/// Relative invariance residual `‖Σ AᵢUΛⁱ‖_F / (‖U‖_F Σ‖Aᵢ‖_F ‖Λ‖_Fⁱ)`.
pub fn invariant_residual(p: &MatrixPoly, u: &CMatrix, lambda: &CMatrix) -> f64 {
    let r = invariant_residual_matrix(p, u, lambda).norm();
    let ln = lambda.norm();
    let scale: f64 = p
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, a)| a.norm() * ln.powi(i as i32))
        .sum();
    r / (u.norm() * scale).max(FLOOR)
}

/// Builds an invariant pair from distinct finite eigenpairs.
pub fn invariant_pair(p: &MatrixPoly, selected: &[EigenPair]) -> Result<InvariantPair> {
    let m = selected.len();
    if m == 0 {
        return Err(Error::InvalidInput("invariant pair needs at least one eigenpair".into()));
    }
    let values: Vec<Complex> = selected
        .iter()
        .map(|s| s.value.finite().ok_or(Error::DistinctnessViolated))
        .collect::<Result<_>>()?;
    for i in 0..m {
        for j in 0..i {
            let tol = 1e-10 * values[i].norm().max(values[j].norm()).max(1.0);
            if (values[i] - values[j]).norm() <= tol {
                return Err(Error::DistinctnessViolated);
            }
        }
    }
    let n = p.n();
    let mut u = CMatrix::zeros(n, m);
    for (j, s) in selected.iter().enumerate() {
        if s.right.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: s.right.len(),
            });
        }
        u.set_column(j, &s.right);
    }
    let sigma_min = linalg::smallest_singular_value(&u);
    if m > n || sigma_min < 1e-8 {
        return Err(Error::DependentEigenvectors { sigma_min });
    }
    let lambda = CMatrix::from_diagonal(&CVector::from_vec(values));
    let residual = invariant_residual(p, &u, &lambda);
    if residual > 1e-8 {
        return Err(Error::NotInvariant { residual });
    }
    let gram = u.adjoint() * &u;
    let v = &u * linalg::inverse(&gram).ok_or(Error::DependentEigenvectors { sigma_min })?;
    Ok(InvariantPair { u, lambda, v, residual })
}
