//! Canonical factorizations `A(z) = U(z)L(z⁻¹)` of quadratic Laurent
//! polynomials and matrix polynomials, the inverse coefficients `Hᵢ` of
//! `A(z)⁻¹`, and the closed-form updates of the factors under shifts.
//!
//! Every constructor re-verifies its defining identity at the eight points
//! `z = e^{2πik/8}` with relative scale `Σ‖Aᵢ‖_F`.

use crate::eigen::spectral_radius;
use crate::error::{Error, Result};
use crate::linalg;
use crate::poly::{LaurentPoly, MatrixFunction, MatrixPoly};
use crate::shifts::{self, ShiftSpec, Side};
use crate::spectra::polyeig;
use crate::types::{CMatrix, CVector, Complex, Eigenvalue, FLOOR};
use std::f64::consts::PI;

pub const DEFAULT_TOL: f64 = 1e-14;
pub const DEFAULT_MAXIT: usize = 64;
const RESIDUAL_TOLERANCE: f64 = 1e-10;
const RADIUS_MARGIN: f64 = 1e-8;

/// `z = e^{2πik/8}`, `k = 0..8`.
pub fn unit_circle_points() -> Vec<Complex> {
    (0..8).map(|k| Complex::from_polar(1.0, 2.0 * PI * k as f64 / 8.0)).collect()
}

fn check(what: &'static str, residual: f64, tolerance: f64) -> Result<()> {
    if residual > tolerance || residual.is_nan() {
        return Err(Error::ResidualCheck {
            what,
            residual,
            tolerance,
        });
    }
    Ok(())
}

fn check_radius(which: &'static str, m: &CMatrix) -> Result<f64> {
    let radius = spectral_radius(m)?;
    if radius >= 1.0 - RADIUS_MARGIN {
        return Err(Error::NotCanonical { which, radius });
    }
    Ok(radius)
}

fn identity_like(m: &CMatrix) -> CMatrix {
    linalg::identity(m.nrows())
}

/// Raw cyclic reduction output for `A₋₁ + A₀X + A₁X² = 0`.
#[derive(Clone, Debug)]
pub struct CrOutput {
    pub g: CMatrix,
    pub r: CMatrix,
    /// Limit `K₊ = A₀ + A₁G₊ = A₀ + R₊A₋₁`.
    pub hhat: CMatrix,
    /// Limit of the dual accumulation, `K₋` of the factorization of `A(z⁻¹)`.
    pub hcheck: CMatrix,
    pub iterations: usize,
}

/// Cyclic reduction on `(A₋₁, A₀, A₁)` without any canonicity checks.
pub fn cyclic_reduction(am: &CMatrix, a0: &CMatrix, ap: &CMatrix, tol: f64, maxit: usize) -> Result<CrOutput> {
    let n = a0.nrows();
    for m in [am, ap] {
        if m.shape() != (n, n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: m.nrows(),
            });
        }
    }
    let threshold = tol * (linalg::norm_inf(am) + linalg::norm_inf(a0) + linalg::norm_inf(ap));
    let (mut bm, mut b0, mut bp) = (am.clone(), a0.clone(), ap.clone());
    let mut hhat = a0.clone();
    let mut hcheck = a0.clone();
    let mut iterations = 0;
    while linalg::norm_inf(&bm).min(linalg::norm_inf(&bp)) > threshold {
        if iterations == maxit {
            return Err(Error::NoConvergence { maxit });
        }
        let s = linalg::inverse(&b0).ok_or(Error::SingularPivot { step: iterations })?;
        let sbm = &s * &bm;
        let sbp = &s * &bp;
        let bm_s_bp = &bm * &sbp;
        let bp_s_bm = &bp * &sbm;
        hhat -= &bp_s_bm;
        hcheck -= &bm_s_bp;
        b0 = b0 - bm_s_bp - bp_s_bm;
        bm = -(&bm * sbm);
        bp = -(&bp * sbp);
        iterations += 1;
        if !linalg::is_finite(&b0) {
            return Err(Error::NoConvergence { maxit });
        }
    }
    let g = -linalg::solve(&hhat, am).ok_or(Error::SingularPivot { step: iterations })?;
    let hhat_inv = linalg::inverse(&hhat).ok_or(Error::SingularPivot { step: iterations })?;
    let r = -(ap * hhat_inv);
    Ok(CrOutput {
        g,
        r,
        hhat,
        hcheck,
        iterations,
    })
}

/// `A(z) = z⁻¹A₋₁ + A₀ + zA₁ = (I − zR₊)K₊(I − z⁻¹G₊)`.
#[derive(Clone, Debug)]
pub struct QuadFactorization {
    pub gplus: CMatrix,
    pub rplus: CMatrix,
    pub kplus: CMatrix,
    pub iterations: usize,
    pub residual: f64,
}

fn quad_product(r: &CMatrix, k: &CMatrix, g: &CMatrix, z: Complex) -> CMatrix {
    let i = identity_like(k);
    (&i - r * z) * k * (&i - g * z.inv())
}

fn quad_value(am: &CMatrix, a0: &CMatrix, ap: &CMatrix, z: Complex) -> CMatrix {
    am * z.inv() + a0 + ap * z
}

impl QuadFactorization {
    pub fn evaluate(&self, z: Complex) -> CMatrix {
        quad_product(&self.rplus, &self.kplus, &self.gplus, z)
    }

    /// As `U(z)L(z⁻¹)` with `U(z) = (I − zR₊)K₊`, `L(z) = I − zG₊`.
    pub fn canonical(&self) -> CanonicalFactorization {
        CanonicalFactorization {
            u: vec![self.kplus.clone(), -(&self.rplus * &self.kplus)],
            l: vec![identity_like(&self.gplus), -self.gplus.clone()],
        }
    }
}

fn quad_scale(am: &CMatrix, a0: &CMatrix, ap: &CMatrix) -> f64 {
    (am.norm() + a0.norm() + ap.norm()).max(FLOOR)
}

fn verify_plus(am: &CMatrix, a0: &CMatrix, ap: &CMatrix, g: &CMatrix, r: &CMatrix, k: &CMatrix) -> Result<f64> {
    let scale = quad_scale(am, a0, ap);
    check_radius("G+", g)?;
    check_radius("R+", r)?;
    let tol = RESIDUAL_TOLERANCE;
    check("G+ equation", (am + a0 * g + ap * g * g).norm() / scale, tol)?;
    check("R+ equation", (r * r * am + r * a0 + ap).norm() / scale, tol)?;
    check("K+ identity", (a0 - k - r * k * g).norm() / scale, tol)?;
    let residual = unit_circle_points()
        .into_iter()
        .map(|z| (quad_value(am, a0, ap, z) - quad_product(r, k, g, z)).norm() / scale)
        .fold(0.0, f64::max);
    check("factorization of A(z)", residual, tol)?;
    Ok(residual)
}

/// Canonical factorization of `z⁻¹A₋₁ + A₀ + zA₁` by cyclic reduction.
pub fn cr_quadratic(am: &CMatrix, a0: &CMatrix, ap: &CMatrix, tol: f64, maxit: usize) -> Result<QuadFactorization> {
    let cr = cyclic_reduction(am, a0, ap, tol, maxit)?;
    let kplus = a0 + ap * &cr.g;
    let residual = verify_plus(am, a0, ap, &cr.g, &cr.r, &kplus)?;
    Ok(QuadFactorization {
        gplus: cr.g,
        rplus: cr.r,
        kplus,
        iterations: cr.iterations,
        residual,
    })
}

/// The three coefficients of a quadratic Laurent polynomial (`lo = −1`, `hi = 1`).
pub fn quadratic_parts(p: &LaurentPoly) -> Result<(CMatrix, CMatrix, CMatrix)> {
    if p.lo() != -1 || p.hi() != 1 {
        return Err(Error::InvalidInput(format!(
            "expected a quadratic Laurent polynomial with powers -1..1, got {}..{}",
            p.lo(),
            p.hi()
        )));
    }
    let get = |i| p.coeff(i).expect("in range").clone();
    Ok((get(-1), get(0), get(1)))
}

pub fn cr_quadratic_laurent(p: &LaurentPoly, tol: f64, maxit: usize) -> Result<QuadFactorization> {
    let (am, a0, ap) = quadratic_parts(p)?;
    cr_quadratic(&am, &a0, &ap, tol, maxit)
}

/// `H₀ = Σⱼ G₊ʲK₊⁻¹R₊ʲ`, summed until the term is below `1e-16‖H₀‖`.
pub fn h0(f: &QuadFactorization) -> Result<CMatrix> {
    let kinv = linalg::inverse(&f.kplus).ok_or_else(|| Error::InvalidInput("K+ is singular".into()))?;
    let mut term = kinv.clone();
    let mut sum = kinv;
    for _ in 0..100_000 {
        term = &f.gplus * term * &f.rplus;
        sum += &term;
        if term.norm() <= 1e-16 * sum.norm() {
            return Ok(sum);
        }
    }
    Err(Error::NoConvergence { maxit: 100_000 })
}

/// `Hᵢ` for `i = −m..=m` (entry `i + m`), the Laurent coefficients of `A(z)⁻¹`.
pub fn inverse_coefficients(f: &QuadFactorization, m: usize) -> Result<Vec<CMatrix>> {
    let h = h0(f)?;
    let mut out = vec![CMatrix::zeros(h.nrows(), h.ncols()); 2 * m + 1];
    out[m] = h.clone();
    let mut left = h.clone();
    let mut right = h;
    for i in 1..=m {
        left = &f.gplus * left;
        right *= &f.rplus;
        out[m - i] = left.clone();
        out[m + i] = right.clone();
    }
    Ok(out)
}

/// `A(z⁻¹) = (I − zR₋)K₋(I − z⁻¹G₋)` with `W = H₀`.
#[derive(Clone, Debug)]
pub struct ReversedFactorization {
    pub gminus: CMatrix,
    pub rminus: CMatrix,
    pub kminus: CMatrix,
    pub w: CMatrix,
    pub rcond: f64,
    pub residual: f64,
}

impl ReversedFactorization {
    pub fn evaluate(&self, z: Complex) -> CMatrix {
        quad_product(&self.rminus, &self.kminus, &self.gminus, z)
    }
}

fn build_reversed(
    am: &CMatrix,
    a0: &CMatrix,
    ap: &CMatrix,
    gplus: &CMatrix,
    rplus: &CMatrix,
    w: CMatrix,
    singular: impl Fn(f64) -> Error,
) -> Result<ReversedFactorization> {
    let rcond = linalg::rcond(&w);
    if rcond < 1e-12 {
        return Err(singular(rcond));
    }
    let winv = linalg::inverse(&w).ok_or_else(|| singular(rcond))?;
    let gminus = &w * rplus * &winv;
    let rminus = &winv * gplus * &w;
    let kminus = a0 + am * &gminus;
    let scale = quad_scale(am, a0, ap);
    check("K- expressions", (&kminus - (a0 + &rminus * ap)).norm() / scale, RESIDUAL_TOLERANCE)?;
    check_radius("G-", &gminus)?;
    check_radius("R-", &rminus)?;
    let residual = unit_circle_points()
        .into_iter()
        .map(|z| (quad_value(am, a0, ap, z.inv()) - quad_product(&rminus, &kminus, &gminus, z)).norm() / scale)
        .fold(0.0, f64::max);
    check("factorization of A(1/z)", residual, RESIDUAL_TOLERANCE)?;
    Ok(ReversedFactorization {
        gminus,
        rminus,
        kminus,
        w,
        rcond,
        residual,
    })
}

/// Factorization of `A(z⁻¹)` from that of `A(z)`.
pub fn reversed_factorization(am: &CMatrix, a0: &CMatrix, ap: &CMatrix, f: &QuadFactorization) -> Result<ReversedFactorization> {
    let w = h0(f)?;
    build_reversed(am, a0, ap, &f.gplus, &f.rplus, w, |rcond| Error::SingularH0 { rcond })
}

/// General canonical factorization `A(z) = U(z)L(z⁻¹)` with polynomial factors.
#[derive(Clone, Debug, PartialEq)]
pub struct CanonicalFactorization {
    pub u: Vec<CMatrix>,
    pub l: Vec<CMatrix>,
}

fn poly_at(coeffs: &[CMatrix], z: Complex) -> CMatrix {
    let mut iter = coeffs.iter().rev();
    let mut acc = iter.next().expect("non-empty").clone();
    for c in iter {
        acc = acc * z + c;
    }
    acc
}

impl CanonicalFactorization {
    pub fn evaluate(&self, z: Complex) -> CMatrix {
        poly_at(&self.u, z) * poly_at(&self.l, z.inv())
    }

    pub fn u_poly(&self) -> MatrixPoly {
        MatrixPoly::new(self.u.clone()).expect("square factors")
    }

    pub fn l_poly(&self) -> MatrixPoly {
        MatrixPoly::new(self.l.clone()).expect("square factors")
    }

    /// The product `U(z)L(z⁻¹)` as a Laurent polynomial.
    pub fn to_laurent(&self) -> LaurentPoly {
        let n = self.u[0].nrows();
        let (p, q) = (self.u.len() - 1, self.l.len() - 1);
        let lo = -(q as i64);
        let mut coeffs = vec![CMatrix::zeros(n, n); p + q + 1];
        for (i, ui) in self.u.iter().enumerate() {
            for (j, lj) in self.l.iter().enumerate() {
                coeffs[(i as i64 - j as i64 - lo) as usize] += ui * lj;
            }
        }
        LaurentPoly::new(lo, coeffs).expect("valid support")
    }

    fn scale(&self) -> f64 {
        let u: f64 = self.u.iter().map(|m| m.norm()).sum();
        let l: f64 = self.l.iter().map(|m| m.norm()).sum();
        (u * l).max(FLOOR)
    }
}

/// `L̃₀ = L₀`, `L̃ᵢ = Lᵢ − (λ−μ) Σ_{j≥1} λ^{−j} L_{j+i−1} Q` (finite for polynomial `L`).
fn shift_l(l: &[CMatrix], lambda: Complex, mu: Complex, q: &CMatrix) -> Vec<CMatrix> {
    let deg = l.len() - 1;
    let inv = lambda.inv();
    let mut out = vec![l[0].clone()];
    for i in 1..=deg {
        let mut sum = CMatrix::zeros(l[0].nrows(), l[0].ncols());
        let mut power = inv;
        for j in 1..=(deg + 1 - i) {
            sum += &l[j + i - 1] * power;
            power *= inv;
        }
        out.push(&l[i] - sum * q * (lambda - mu));
    }
    out
}

fn check_outside_disk(l: &[CMatrix], seed: u64) -> Result<()> {
    if l.len() < 2 {
        return Ok(());
    }
    let spectrum = polyeig(&MatrixPoly::new(l.to_vec())?, seed)?;
    let min = spectrum.pairs.iter().map(|p| p.value.modulus()).fold(f64::INFINITY, f64::min);
    if min <= 1.0 {
        return Err(Error::NotCanonical {
            which: "L~(z) (eigenvalue inside the unit disk)",
            radius: min,
        });
    }
    Ok(())
}

fn right_vectors(spec: &ShiftSpec) -> Result<(Complex, Complex, CVector, CVector)> {
    match (spec.lambda, spec.mu, spec.side) {
        (Eigenvalue::Finite(l), Eigenvalue::Finite(m), Side::Right) => {
            let (u, v) = spec.vectors()?;
            Ok((l, m, u, v))
        }
        (_, _, Side::Left) => Err(Error::InvalidInput("expected a right shift spec".into())),
        _ => Err(Error::UnsupportedInfinity("factorization updates need finite lambda and mu")),
    }
}

fn check_l_kernel(l: &[CMatrix], lambda: Complex, u: &CVector) -> Result<()> {
    let w = lambda.inv();
    let scale: f64 = l.iter().enumerate().map(|(i, m)| m.norm() * w.norm().powi(i as i32)).sum();
    let residual = (poly_at(l, w) * u).norm() / (scale * u.norm()).max(FLOOR);
    if residual > shifts::EIGENPAIR_TOLERANCE {
        return Err(Error::NotAnEigenpair { residual });
    }
    Ok(())
}

/// Factorization of the right-shifted `Ã(z) = A(z)(I + (λ−μ)/(z−λ)Q)`:
/// `Ũ = U`, `L̃` as in [`shift_l`]. Requires `|λ|, |μ| < 1`.
pub fn shifted_factorization_right(f: &CanonicalFactorization, spec: &ShiftSpec) -> Result<CanonicalFactorization> {
    let (lambda, mu, u, v) = right_vectors(spec)?;
    if lambda.norm() >= 1.0 || mu.norm() >= 1.0 {
        return Err(Error::ShiftOutsideDisk);
    }
    if lambda == Complex::new(0.0, 0.0) {
        return Err(Error::ZeroLambda);
    }
    check_l_kernel(&f.l, lambda, &u)?;
    let q = &u * v.adjoint();
    let out = CanonicalFactorization {
        u: f.u.clone(),
        l: shift_l(&f.l, lambda, mu, &q),
    };
    let scale = f.scale();
    let i = linalg::identity(q.nrows());
    let residual = unit_circle_points()
        .into_iter()
        .map(|z| {
            let expected = f.evaluate(z) * (&i + &q * ((lambda - mu) / (z - lambda)));
            (expected - out.evaluate(z)).norm() / scale
        })
        .fold(0.0, f64::max);
    check("shifted factorization", residual, RESIDUAL_TOLERANCE)?;
    check_outside_disk(&out.l, 17)?;
    Ok(out)
}

/// Both factorizations of a right-shifted quadratic Laurent polynomial.
#[derive(Clone, Debug)]
pub struct ShiftedQuadFactorizations {
    pub shifted: LaurentPoly,
    pub plus: QuadFactorization,
    pub minus: ReversedFactorization,
    /// `(λ−μ) v*G₋u`, which must stay away from 1.
    pub condition: Complex,
}

/// Closed-form update of `(G₊, R₊, K₊)` and `(G₋, R₋, K₋, W)` under a right shift
/// with `|λ|, |μ| < 1`.
pub fn shifted_factorization_both(
    p: &LaurentPoly,
    f: &QuadFactorization,
    rf: &ReversedFactorization,
    spec: &ShiftSpec,
) -> Result<ShiftedQuadFactorizations> {
    let (lambda, mu, u, v) = right_vectors(spec)?;
    if lambda.norm() >= 1.0 || mu.norm() >= 1.0 {
        return Err(Error::ShiftOutsideDisk);
    }
    let condition = v.dotc(&(&rf.gminus * &u)) * (lambda - mu);
    if (condition - Complex::new(1.0, 0.0)).norm() < 1e-10 {
        return Err(Error::DegenerateShift { value: condition });
    }
    let shifted = shifts::right_shift_laurent(p, spec)?;
    let (am, a0, ap) = quadratic_parts(&shifted)?;
    let q = &u * v.adjoint();
    let gplus = &f.gplus + &q * (mu - lambda);
    let rplus = f.rplus.clone();
    let kplus = f.kplus.clone();
    let residual = verify_plus(&am, &a0, &ap, &gplus, &rplus, &kplus)?;
    let w = &rf.w + &q * &rf.w * &f.rplus * (mu - lambda);
    let minus = build_reversed(&am, &a0, &ap, &gplus, &rplus, w, |_| Error::SingularWtilde)?;
    Ok(ShiftedQuadFactorizations {
        shifted,
        plus: QuadFactorization {
            gplus,
            rplus,
            kplus,
            iterations: 0,
            residual,
        },
        minus,
        condition,
    })
}

/// Factors of `(I + (λ₂−μ₂)/(z−λ₂)S) A(z) (I + (λ₁−μ₁)/(z−λ₁)Q)`, with
/// `|λ₁|, |μ₁| < 1` moved through `L` and `|λ₂|, |μ₂| > 1` through `U`.
pub fn double_shift_factorization(
    f: &CanonicalFactorization,
    right: &ShiftSpec,
    left: &ShiftSpec,
) -> Result<CanonicalFactorization> {
    let (l1, m1, u, w) = right_vectors(right)?;
    let (l2, m2) = match (left.lambda, left.mu, left.side) {
        (Eigenvalue::Finite(l), Eigenvalue::Finite(m), Side::Left) => (l, m),
        (_, _, Side::Right) => return Err(Error::InvalidInput("expected a left shift spec".into())),
        _ => return Err(Error::UnsupportedInfinity("factorization updates need finite lambda and mu")),
    };
    if !(l1.norm() < 1.0 && m1.norm() < 1.0 && l2.norm() > 1.0 && m2.norm() > 1.0) {
        return Err(Error::ModulusConstraintViolated);
    }
    if l1 == Complex::new(0.0, 0.0) {
        return Err(Error::ZeroLambda);
    }
    check_l_kernel(&f.l, l1, &u)?;
    let q = &u * w.adjoint();
    let l = shift_l(&f.l, l1, m1, &q);
    let (v, y) = left.vectors()?;
    let u_shifted = shifts::left_shift_poly(&f.u_poly(), left)?;
    let out = CanonicalFactorization {
        u: u_shifted.into_coeffs(),
        l,
    };
    let s = &y * v.adjoint();
    let i = linalg::identity(q.nrows());
    let scale = f.scale();
    let residual = unit_circle_points()
        .into_iter()
        .map(|z| {
            let expected = (&i + &s * ((l2 - m2) / (z - l2))) * f.evaluate(z) * (&i + &q * ((l1 - m1) / (z - l1)));
            (expected - out.evaluate(z)).norm() / scale
        })
        .fold(0.0, f64::max);
    check("double shifted factorization", residual, RESIDUAL_TOLERANCE)?;
    Ok(out)
}

/// `A(z) = U(z)(zI − G)` for a minimal solvent `G`.
#[derive(Clone, Debug)]
pub struct PolyFactorization {
    pub g: CMatrix,
    pub u: Vec<CMatrix>,
    pub consistency: f64,
    pub residual: f64,
}

/// Relative solvent residual `‖Σ AᵢGⁱ‖_F / Σ‖Aᵢ‖_F`.
pub fn solvent_residual(p: &MatrixPoly, g: &CMatrix) -> f64 {
    // Horner from the right: ((A_d G + A_{d−1}) G + …)G + A₀.
    let mut acc = p.leading().clone();
    for i in (0..p.degree()).rev() {
        acc = acc * g + p.coeff(i);
    }
    acc.norm() / p.coeff_norm_sum().max(FLOOR)
}

/// Division `A(z) = U(z)(zI − G)`: `U_{d−1} = A_d`, `U_{i−1} = Aᵢ + UᵢG`.
pub fn poly_factorization(p: &MatrixPoly, g: &CMatrix) -> Result<PolyFactorization> {
    let d = p.degree();
    if d == 0 {
        return Err(Error::InvalidInput("a constant polynomial has no solvent".into()));
    }
    let radius = spectral_radius(g)?;
    let residual = solvent_residual(p, g);
    if radius >= 1.0 - RADIUS_MARGIN || residual > RESIDUAL_TOLERANCE {
        return Err(Error::NotASolvent { residual, radius });
    }
    let mut u = vec![CMatrix::zeros(p.n(), p.n()); d];
    u[d - 1] = p.leading().clone();
    for i in (1..d).rev() {
        u[i - 1] = p.coeff(i) + &u[i] * g;
    }
    let scale = p.coeff_norm_sum().max(FLOOR);
    let consistency = (p.coeff(0) + &u[0] * g).norm() / scale;
    check("A0 + U0 G", consistency, 1e-8)?;
    let i = linalg::identity(p.n());
    let reconstruction = unit_circle_points()
        .into_iter()
        .map(|z| (p.evaluate(z).expect("polynomial") - poly_at(&u, z) * (&i * z - g)).norm() / scale)
        .fold(0.0, f64::max);
    check("U(z)(zI - G)", reconstruction, RESIDUAL_TOLERANCE)?;
    Ok(PolyFactorization {
        g: g.clone(),
        u,
        consistency,
        residual,
    })
}
