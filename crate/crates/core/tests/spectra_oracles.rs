use std::f64::consts::PI;

use mpshift_core::oracle::det_at;
use mpshift_core::random;
use mpshift_core::spectra::polyeig;
use mpshift_core::types::c;
use mpshift_core::{linalg, CMatrix, Complex, MatrixFunction, MatrixPoly};

/// Zeros of `det P(z)` inside `|z| = r` by the argument principle.
fn winding_count(p: &MatrixPoly, r: f64) -> i64 {
    let points = 4096;
    let mut total = 0.0;
    let mut prev = det_at(p, c(r, 0.0)).unwrap().arg();
    for k in 1..=points {
        let t = 2.0 * PI * k as f64 / points as f64;
        let arg = det_at(p, Complex::from_polar(r, t)).unwrap().arg();
        let mut delta = arg - prev;
        if delta > PI {
            delta -= 2.0 * PI;
        } else if delta < -PI {
            delta += 2.0 * PI;
        }
        total += delta;
        prev = arg;
    }
    (total / (2.0 * PI)).round() as i64
}

#[test]
fn counts_inside_circles_match_the_argument_principle() {
    for seed in 1..=10 {
        let p = random::poly(&mut random::rng(seed), 3, 3);
        let s = polyeig(&p, seed).unwrap();
        let mut moduli: Vec<f64> = s.finite_values().iter().map(|z| z.norm()).collect();
        moduli.sort_by(f64::total_cmp);
        for w in moduli.windows(2) {
            if w[1] - w[0] < 0.05 {
                continue;
            }
            let r = 0.5 * (w[0] + w[1]);
            let inside = moduli.iter().filter(|&&m| m < r).count() as i64;
            assert_eq!(winding_count(&p, r), inside, "seed {seed}, r = {r}");
        }
    }
}

#[test]
fn computed_values_are_singular_points() {
    for seed in 1..=10 {
        let p = random::poly(&mut random::rng(seed), 4, 2);
        let s = polyeig(&p, 3).unwrap();
        assert_eq!(s.pairs.len(), 8);
        for z in s.finite_values() {
            let a = p.evaluate(z).unwrap();
            let sigma = linalg::smallest_singular_value(&a);
            assert!(sigma <= 1e-10 * p.scale_at(z), "seed {seed}: {sigma:e}");
        }
    }
}

/// Unitary mixing of a diagonal polynomial with known roots.
#[test]
fn mixed_diagonal_quadratic() {
    let roots = [(0.5, -2.0), (-1.5, 3.0), (-0.25, 0.75)];
    let mut rng = random::rng(9);
    let q1 = random::matrix(&mut rng, 3, 3).qr().q();
    let q2 = random::matrix(&mut rng, 3, 3).qr().q();
    let mut coeffs = vec![CMatrix::zeros(3, 3); 3];
    for (k, (a, b)) in roots.iter().enumerate() {
        coeffs[0][(k, k)] = c(a * b, 0.0);
        coeffs[1][(k, k)] = c(-(a + b), 0.0);
        coeffs[2][(k, k)] = c(1.0, 0.0);
    }
    let p = MatrixPoly::new(coeffs.into_iter().map(|m| &q1 * m * &q2).collect()).unwrap();
    let s = polyeig(&p, 1).unwrap();
    let mut want: Vec<f64> = roots.iter().flat_map(|&(a, b)| [a, b]).collect();
    want.sort_by(|x, y| x.abs().total_cmp(&y.abs()));
    for (got, w) in s.finite_values().iter().zip(want) {
        assert!((got - c(w, 0.0)).norm() < 1e-12, "{got} vs {w}");
    }
}
