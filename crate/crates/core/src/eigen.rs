//! Eigenvalues of a dense complex matrix: balancing, Householder reduction to
//! upper Hessenberg form, then single-shift implicit QR with Wilkinson shifts
//! and deflation on negligible subdiagonal entries.

use crate::error::{Error, Result};
use crate::types::{CMatrix, Complex};

const MAX_SWEEPS_PER_EIGENVALUE: usize = 60;

/// All eigenvalues of `a`, in no particular order.
pub fn eigenvalues(a: &CMatrix) -> Result<Vec<Complex>> {
    assert!(a.is_square(), "eigenvalues of a non-square matrix");
    let n = a.nrows();
    if n == 0 {
        return Ok(Vec::new());
    }
    if a.iter().any(|x| !x.re.is_finite() || !x.im.is_finite()) {
        return Err(Error::InvalidInput("matrix has non-finite entries".into()));
    }
    let mut h = a.clone();
    balance(&mut h);
    hessenberg(&mut h);
    hessenberg_qr(&mut h)
}

/// Spectral radius `max |eig(a)|`.
pub fn spectral_radius(a: &CMatrix) -> Result<f64> {
    Ok(eigenvalues(a)?.iter().map(|z| z.norm()).fold(0.0, f64::max))
}

/// Diagonal similarity by powers of two so that row and column norms are comparable.
fn balance(a: &mut CMatrix) {
    let n = a.nrows();
    let radix = 2.0_f64;
    let mut converged = false;
    while !converged {
        converged = true;
        for i in 0..n {
            let mut col = 0.0;
            let mut row = 0.0;
            for j in 0..n {
                if j != i {
                    col += a[(j, i)].l1_norm();
                    row += a[(i, j)].l1_norm();
                }
            }
            if col == 0.0 || row == 0.0 {
                continue;
            }
            let total = col + row;
            let mut f = 1.0;
            let mut g = row / radix;
            while col < g {
                f *= radix;
                col *= radix * radix;
            }
            g = row * radix;
            while col > g {
                f /= radix;
                col /= radix * radix;
            }
            if (col + row) / f < 0.95 * total {
                converged = false;
                for j in 0..n {
                    a[(i, j)] /= f;
                }
                for j in 0..n {
                    a[(j, i)] *= f;
                }
            }
        }
    }
}

/// In-place unitary reduction to upper Hessenberg form.
fn hessenberg(a: &mut CMatrix) {
    let n = a.nrows();
    if n < 3 {
        return;
    }
    for k in 0..n - 2 {
        let alpha_norm: f64 = (k + 1..n).map(|i| a[(i, k)].norm_sqr()).sum::<f64>().sqrt();
        if alpha_norm == 0.0 {
            continue;
        }
        let x0 = a[(k + 1, k)];
        let phase = if x0.norm() == 0.0 {
            Complex::new(1.0, 0.0)
        } else {
            x0 / x0.norm()
        };
        // v = x + phase·‖x‖·e₁ avoids cancellation; H = I − 2vv*/(v*v).
        let mut v: Vec<Complex> = (k + 1..n).map(|i| a[(i, k)]).collect();
        v[0] += phase * alpha_norm;
        let vnorm2: f64 = v.iter().map(|x| x.norm_sqr()).sum();
        if vnorm2 == 0.0 {
            continue;
        }
        let beta = 2.0 / vnorm2;
        // Left: A ← H A on rows k+1..n.
        for j in k..n {
            let mut s = Complex::new(0.0, 0.0);
            for (idx, vi) in v.iter().enumerate() {
                s += vi.conj() * a[(k + 1 + idx, j)];
            }
            s *= beta;
            for (idx, vi) in v.iter().enumerate() {
                a[(k + 1 + idx, j)] -= vi * s;
            }
        }
        // Right: A ← A H on columns k+1..n.
        for i in 0..n {
            let mut s = Complex::new(0.0, 0.0);
            for (idx, vi) in v.iter().enumerate() {
                s += a[(i, k + 1 + idx)] * vi;
            }
            s *= beta;
            for (idx, vi) in v.iter().enumerate() {
                a[(i, k + 1 + idx)] -= s * vi.conj();
            }
        }
        for i in k + 2..n {
            a[(i, k)] = Complex::new(0.0, 0.0);
        }
    }
}

/// Givens rotation `[[c, s], [−s̄, c]]` (c real) mapping `(x, y)` to `(r, 0)`.
fn givens(x: Complex, y: Complex) -> (f64, Complex) {
    let ax = x.norm();
    let ay = y.norm();
    if ay == 0.0 {
        return (1.0, Complex::new(0.0, 0.0));
    }
    if ax == 0.0 {
        return (0.0, Complex::new(1.0, 0.0));
    }
    let r = ax.hypot(ay);
    let c = ax / r;
    let s = (x / ax) * y.conj() / r;
    (c, s)
}

fn hessenberg_qr(h: &mut CMatrix) -> Result<Vec<Complex>> {
    let n = h.nrows();
    let eps = f64::EPSILON;
    let mut eigs = vec![Complex::new(0.0, 0.0); n];
    let total_norm = h.norm().max(f64::MIN_POSITIVE);
    let mut hi = n - 1;
    let mut iterations = 0usize;
    let mut since_deflation = 0usize;
    let budget = MAX_SWEEPS_PER_EIGENVALUE * n;

    loop {
        // Locate the active unreduced block [lo, hi].
        let mut lo = hi;
        while lo > 0 {
            let sub = h[(lo, lo - 1)].norm();
            let mut diag = h[(lo - 1, lo - 1)].norm() + h[(lo, lo)].norm();
            if diag == 0.0 {
                diag = total_norm;
            }
            if sub <= eps * diag {
                h[(lo, lo - 1)] = Complex::new(0.0, 0.0);
                break;
            }
            lo -= 1;
        }
        if lo == hi {
            eigs[hi] = h[(hi, hi)];
            since_deflation = 0;
            if hi == 0 {
                break;
            }
            hi -= 1;
            continue;
        }

        iterations += 1;
        since_deflation += 1;
        if iterations > budget {
            return Err(Error::EigensolverFailure { iterations });
        }

        let shift = if since_deflation.is_multiple_of(11) {
            // Exceptional shift to break cycles.
            h[(hi, hi)] + Complex::new(0.75 * h[(hi, hi - 1)].norm(), 0.0)
        } else {
            wilkinson_shift(h[(hi - 1, hi - 1)], h[(hi - 1, hi)], h[(hi, hi - 1)], h[(hi, hi)])
        };

        // Implicit single-shift bulge chase on rows/columns lo..=hi.
        for k in lo..hi {
            let (x, y) = if k == lo {
                (h[(lo, lo)] - shift, h[(lo + 1, lo)])
            } else {
                (h[(k, k - 1)], h[(k + 1, k - 1)])
            };
            let (cs, sn) = givens(x, y);
            let start = if k == lo { lo } else { k - 1 };
            for j in start..=hi {
                let a = h[(k, j)];
                let b = h[(k + 1, j)];
                h[(k, j)] = a * cs + sn * b;
                h[(k + 1, j)] = -sn.conj() * a + b * cs;
            }
            let end = (k + 2).min(hi);
            for i in lo..=end {
                let a = h[(i, k)];
                let b = h[(i, k + 1)];
                h[(i, k)] = a * cs + b * sn.conj();
                h[(i, k + 1)] = -a * sn + b * cs;
            }
            if k > lo {
                h[(k + 1, k - 1)] = Complex::new(0.0, 0.0);
            }
        }
    }
    Ok(eigs)
}

/// Eigenvalue of the trailing 2×2 block `[[a, b], [c, d]]` closest to `d`.
fn wilkinson_shift(a: Complex, b: Complex, c: Complex, d: Complex) -> Complex {
    let half = (a - d) * 0.5;
    let disc = (half * half + b * c).sqrt();
    let mu1 = d + half - disc;
    let mu2 = d + half + disc;
    let s = a.norm() + b.norm() + c.norm() + d.norm();
    if s == 0.0 {
        return Complex::new(0.0, 0.0);
    }
    if (mu1 - d).norm() <= (mu2 - d).norm() {
        mu1
    } else {
        mu2
    }
}
