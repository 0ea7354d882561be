//! Minimal solvents of unilateral matrix equations `Σ AᵢXⁱ = 0`, reduction
//! of degree-`d` equations to quadratic ones, and shift-accelerated solving.

use crate::error::{Error, Result};
use crate::factorizations::{cyclic_reduction, solvent_residual};
use crate::linalg;
use crate::poly::MatrixPoly;
use crate::shifts::{right_shift_poly, ShiftSpec};
use crate::spectra::polyeig;
use crate::types::{CMatrix, CVector, Complex, Eigenvalue};

const SOLVE_RESIDUAL: f64 = 1e-10;
const RECOVERED_RESIDUAL: f64 = 1e-8;
const BOUNDARY: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Cr,
    Eigen,
}

/// How a solvent of the shifted equation was mapped back: `G = G̃ + (λ−μ)Q`.
#[derive(Clone, Debug)]
pub struct Recovery {
    pub lambda: Complex,
    pub mu: Complex,
    pub q: CMatrix,
    /// Residual of the shifted equation before recovery.
    pub shifted_residual: f64,
}

#[derive(Clone, Debug)]
pub struct SolveReport {
    pub g: CMatrix,
    pub iterations: usize,
    /// `‖Σ AᵢGⁱ‖_F / Σ‖Aᵢ‖_F` on the equation that was asked for.
    pub residual: f64,
    /// Convergence ratio of the polynomial actually iterated on, if it splits.
    pub sigma: Option<f64>,
    pub shifted: bool,
    pub recovery: Option<Recovery>,
}

#[derive(Clone, Debug)]
pub struct SolveOptions {
    pub method: Method,
    pub tol: f64,
    pub maxit: usize,
    pub seed: u64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            method: Method::Cr,
            tol: 1e-14,
            maxit: 64,
            seed: 42,
        }
    }
}

/// Quadratic `B₋₁ + B₀X + B₁X²` of size `n(d−1)` equivalent to a degree-`d` equation.
#[derive(Clone, Debug)]
pub struct ReblockedQuadratic {
    pub b_minus: CMatrix,
    pub b_zero: CMatrix,
    pub b_plus: CMatrix,
    pub n: usize,
}

/// Block `(i, j)` (zero based) of an `N × N` matrix made of `n × n` blocks.
fn set_block(m: &mut CMatrix, n: usize, i: usize, j: usize, b: &CMatrix) {
    m.view_mut((i * n, j * n), (n, n)).copy_from(b);
}

/// With `k = d − 1`: `B₋₁ = A₀` in block (1,1); `B₀` has first block row
/// `[A₁ … A_{d−1}]` and `−I` on blocks (i,i), `i ≥ 2`; `B₁` has `A_d` in
/// block (1,k) and `I` on blocks (i, i−1).
pub fn reblock(p: &MatrixPoly) -> Result<ReblockedQuadratic> {
    let d = p.degree();
    let n = p.n();
    if d < 2 {
        return Err(Error::InvalidInput(format!("reblocking needs degree >= 2, got {d}")));
    }
    if d == 2 {
        return Ok(ReblockedQuadratic {
            b_minus: p.coeff(0).clone(),
            b_zero: p.coeff(1).clone(),
            b_plus: p.coeff(2).clone(),
            n,
        });
    }
    let k = d - 1;
    let size = n * k;
    let mut bm = CMatrix::zeros(size, size);
    let mut b0 = CMatrix::zeros(size, size);
    let mut bp = CMatrix::zeros(size, size);
    let minus_i = -linalg::identity(n);
    let i = linalg::identity(n);
    set_block(&mut bm, n, 0, 0, p.coeff(0));
    for j in 0..k {
        set_block(&mut b0, n, 0, j, p.coeff(j + 1));
    }
    for r in 1..k {
        set_block(&mut b0, n, r, r, &minus_i);
        set_block(&mut bp, n, r, r - 1, &i);
    }
    set_block(&mut bp, n, 0, k - 1, p.leading());
    Ok(ReblockedQuadratic {
        b_minus: bm,
        b_zero: b0,
        b_plus: bp,
        n,
    })
}

impl ReblockedQuadratic {
    /// The block solvent whose first block column is `[G; G²; …; G^k]`.
    pub fn lift(&self, g: &CMatrix) -> CMatrix {
        let n = self.n;
        let k = self.b_zero.nrows() / n;
        if k == 1 {
            return g.clone();
        }
        let mut out = CMatrix::zeros(n * k, n * k);
        let mut power = g.clone();
        for r in 0..k {
            set_block(&mut out, n, r, 0, &power);
            power = &power * g;
        }
        out
    }

    pub fn residual(&self, x: &CMatrix) -> f64 {
        let r = &self.b_minus + &self.b_zero * x + &self.b_plus * x * x;
        let scale = self.b_minus.norm() + self.b_zero.norm() + self.b_plus.norm();
        r.norm() / scale.max(crate::types::FLOOR)
    }
}

fn check_solution(p: &MatrixPoly, g: &CMatrix, tolerance: f64) -> Result<f64> {
    let residual = solvent_residual(p, g);
    if !(residual <= tolerance) {
        return Err(Error::ResidualCheck {
            what: "solvent equation",
            residual,
            tolerance,
        });
    }
    Ok(residual)
}

fn map_cr_error(e: Error) -> Error {
    match e {
        Error::NoConvergence { maxit } => Error::SplittingFailure(format!(
            "cyclic reduction did not converge in {maxit} iterations"
        )),
        other => other,
    }
}

/// Minimal solvent of `Σ AᵢXⁱ = 0`.
pub fn solve_unilateral(p: &MatrixPoly, opts: &SolveOptions) -> Result<SolveReport> {
    let n = p.n();
    let (g, iterations) = match p.degree() {
        0 => return Err(Error::InvalidInput("a constant polynomial has no solvent".into())),
        1 => {
            let g = -linalg::solve(p.coeff(1), p.coeff(0))
                .ok_or_else(|| Error::SplittingFailure("leading coefficient is singular".into()))?;
            (g, 1)
        }
        _ => match opts.method {
            Method::Cr => {
                let q = reblock(p)?;
                let cr = cyclic_reduction(&q.b_minus, &q.b_zero, &q.b_plus, opts.tol, opts.maxit).map_err(map_cr_error)?;
                (cr.g.view((0, 0), (n, n)).into_owned(), cr.iterations)
            }
            Method::Eigen => (eigen_solvent(p, opts.seed)?, 0),
        },
    };
    let residual = check_solution(p, &g, SOLVE_RESIDUAL)?;
    let sigma = convergence_ratio(p, opts.seed).ok().map(|r| r.sigma);
    Ok(SolveReport {
        g,
        iterations,
        residual,
        sigma,
        shifted: false,
        recovery: None,
    })
}

/// `G = V diag(λ) V⁻¹` from the `n` smallest-modulus eigenpairs.
fn eigen_solvent(p: &MatrixPoly, seed: u64) -> Result<CMatrix> {
    let n = p.n();
    let spectrum = polyeig(p, seed)?;
    let pairs = &spectrum.pairs;
    if pairs.len() < n || pairs[..n].iter().any(|e| !e.value.is_finite()) {
        return Err(Error::SplittingFailure("fewer than n finite eigenvalues".into()));
    }
    if pairs.len() > n {
        let inner = pairs[n - 1].value.modulus();
        let outer = pairs[n].value.modulus();
        if outer - inner <= 1e-12 * outer.max(1.0) {
            return Err(Error::SplittingFailure(format!(
                "no gap between the n-th ({inner:.6}) and (n+1)-th ({outer:.6}) eigenvalue moduli"
            )));
        }
    }
    let mut v = CMatrix::zeros(n, n);
    let mut values = CVector::zeros(n);
    for (j, pair) in pairs[..n].iter().enumerate() {
        v.set_column(j, &pair.right);
        values[j] = pair.value.finite().expect("checked finite");
    }
    let rcond = linalg::rcond(&v);
    if rcond < 1e-12 {
        return Err(Error::IllConditionedEigenbasis { rcond });
    }
    let vinv = linalg::inverse(&v).ok_or(Error::IllConditionedEigenbasis { rcond })?;
    Ok(&v * CMatrix::from_diagonal(&values) * vinv)
}

/// Solves the equation with `λ` moved to `μ` (`Q = uv*`), then recovers
/// `G = G̃ + (λ−μ)Q` and checks it on the original equation.
pub fn shift_accelerated_solve(
    p: &MatrixPoly,
    lambda: Complex,
    mu: Complex,
    u: &CVector,
    v: Option<&CVector>,
    opts: &SolveOptions,
) -> Result<SolveReport> {
    if lambda == mu {
        return Err(Error::InvalidInput("mu equals lambda: the shift would not change anything".into()));
    }
    let mut spec = ShiftSpec::right(lambda, mu, u.clone());
    if let Some(v) = v {
        spec = spec.with_dual(v.clone());
    }
    let (u, v) = spec.vectors()?;
    let shifted = right_shift_poly(p, &spec)?;
    let inner = solve_unilateral(&shifted, opts)?;
    let q = &u * v.adjoint();
    let g = &inner.g + &q * (lambda - mu);
    let residual = check_solution(p, &g, RECOVERED_RESIDUAL)?;
    Ok(SolveReport {
        g,
        iterations: inner.iterations,
        residual,
        sigma: inner.sigma,
        shifted: true,
        recovery: Some(Recovery {
            lambda,
            mu,
            q,
            shifted_residual: inner.residual,
        }),
    })
}

#[derive(Clone, Copy, Debug)]
pub struct RatioReport {
    pub sigma: f64,
    /// Largest modulus among eigenvalues with `|λ| ≤ 1` (boundary counts as inside).
    pub inside_max: f64,
    /// Smallest modulus among eigenvalues with `|λ| > 1`, `∞` included.
    pub outside_min: f64,
}

/// `σ = max_{|λ|≤1}|λ| / min_{|λ|>1}|λ|`.
pub fn convergence_ratio(p: &MatrixPoly, seed: u64) -> Result<RatioReport> {
    let spectrum = polyeig(p, seed)?;
    let mut inside_max: Option<f64> = None;
    let mut outside_min: Option<f64> = None;
    for pair in &spectrum.pairs {
        let m = pair.value.modulus();
        let inside = matches!(pair.value, Eigenvalue::Finite(_)) && m <= 1.0 + BOUNDARY;
        if inside {
            inside_max = Some(inside_max.map_or(m, |x| x.max(m)));
        } else {
            outside_min = Some(outside_min.map_or(m, |x| x.min(m)));
        }
    }
    match (inside_max, outside_min) {
        (Some(inside_max), Some(outside_min)) => Ok(RatioReport {
            sigma: inside_max / outside_min,
            inside_max,
            outside_min,
        }),
        _ => Err(Error::NoSplitting),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::types::{re, real_matrix};

    fn scalar(coeffs: &[f64]) -> MatrixPoly {
        MatrixPoly::new(coeffs.iter().map(|&x| real_matrix(1, 1, &[x])).collect()).unwrap()
    }

    #[test]
    fn quadratic_passthrough() {
        let p = fixtures::p1();
        let q = reblock(&p).unwrap();
        assert_eq!(q.b_minus, *p.coeff(0));
        assert_eq!(q.b_zero, *p.coeff(1));
        assert_eq!(q.b_plus, *p.coeff(2));
    }

    #[test]
    fn scalar_quartic_substitution() {
        // (z−1/2)(z−1/4)(z−3)(z−5)
        let p = scalar(&[1.875, -12.25, 21.125, -8.75, 1.0]);
        let q = reblock(&p).unwrap();
        assert_eq!(q.b_zero.nrows(), 3);
        let lifted = q.lift(&real_matrix(1, 1, &[0.25]));
        assert!(q.residual(&lifted) < 1e-15);
    }

    #[test]
    fn scalar_quartic_solve() {
        // (z−1/4)(z−2)(z−3)(z−5)
        let p = scalar(&[7.5, -37.75, 33.5, -10.25, 1.0]);
        let report = solve_unilateral(&p, &SolveOptions::default()).unwrap();
        assert!((report.g[(0, 0)] - re(0.25)).norm() < 1e-12);
    }

    #[test]
    fn p3_structure() {
        let p = fixtures::p3();
        let q = reblock(&p).unwrap();
        assert_eq!(q.b_minus.nrows(), 15);
        assert_eq!(q.b_minus.view((0, 0), (5, 5)).into_owned(), *p.coeff(0));
        assert_eq!(q.b_minus.view((5, 5), (10, 10)).norm(), 0.0);
        assert_eq!(q.b_zero.view((0, 10), (5, 5)).into_owned(), *p.coeff(3));
        assert_eq!(q.b_zero.view((5, 5), (5, 5)).into_owned(), -linalg::identity(5));
        assert_eq!(q.b_plus.view((0, 10), (5, 5)).into_owned(), *p.coeff(4));
        assert_eq!(q.b_plus.view((10, 5), (5, 5)).into_owned(), linalg::identity(5));
    }

    #[test]
    fn scalar_quadratic_root() {
        let p = scalar(&[-0.25, 1.0, -0.25]);
        let report = solve_unilateral(&p, &SolveOptions::default()).unwrap();
        assert!((report.g[(0, 0)] - re(2.0 - 3f64.sqrt())).norm() < 1e-13);
    }

    #[test]
    fn pencil_in_one_step() {
        let m = real_matrix(2, 2, &[0.5, 0.1, 0.0, 0.2]);
        let report = solve_unilateral(&MatrixPoly::pencil(&m).unwrap(), &SolveOptions::default()).unwrap();
        assert_eq!(report.iterations, 1);
        assert!(linalg::max_abs_diff(&report.g, &m) < 1e-15);
    }

    #[test]
    fn ratio_of_diagonal_pencil() {
        let m = real_matrix(2, 2, &[0.5, 0.0, 0.0, 2.0]);
        let r = convergence_ratio(&MatrixPoly::pencil(&m).unwrap(), 1).unwrap();
        assert!((r.sigma - 0.25).abs() < 1e-14);
    }

    #[test]
    fn ratio_without_splitting() {
        let m = real_matrix(2, 2, &[0.5, 0.0, 0.0, 0.2]);
        assert!(matches!(convergence_ratio(&MatrixPoly::pencil(&m).unwrap(), 1), Err(Error::NoSplitting)));
    }

    #[test]
    fn shift_with_mu_equal_lambda_is_rejected() {
        let p = fixtures::p3();
        let e = CVector::from_element(5, re(1.0));
        let err = shift_accelerated_solve(&p, re(1.0), re(1.0), &e, None, &SolveOptions::default()).unwrap_err();
        assert!(matches!(err, Error::InvalidInput(_)));
    }

    #[test]
    fn cr_and_eigen_agree_on_scalar_quartic() {
        let p = scalar(&[7.5, -37.75, 33.5, -10.25, 1.0]);
        let cr = solve_unilateral(&p, &SolveOptions::default()).unwrap();
        let opts = SolveOptions {
            method: Method::Eigen,
            ..SolveOptions::default()
        };
        let eig = solve_unilateral(&p, &opts).unwrap();
        assert!(linalg::max_abs_diff(&cr.g, &eig.g) < 1e-10);
    }
}
