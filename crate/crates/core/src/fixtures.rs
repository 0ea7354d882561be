//! Worked example polynomials used throughout the tests and by `mpshift fixture`.

use crate::linalg;
use crate::poly::{LaurentPoly, MatrixPoly};
use crate::types::{real_matrix, CMatrix};

/// Quadratic `A₀ + zA₁ + z²A₂` with eigenvalues `1/3, 1/2, 1, 1`; `e₁` spans the
/// kernel of `A(1)`.
pub fn p1() -> MatrixPoly {
    MatrixPoly::new(vec![
        real_matrix(2, 2, &[-1.0, -1.0, 0.0, -1.0]),
        real_matrix(2, 2, &[4.0, 3.0, 1.0, 4.0]),
        real_matrix(2, 2, &[-3.0, 0.0, -1.0, -2.0]),
    ])
    .expect("valid fixture")
}

/// `p1` after moving the double eigenvalue `1` (once) to `0` with `Q = e₁e₁*`.
pub fn p1_shifted() -> MatrixPoly {
    MatrixPoly::new(vec![
        real_matrix(2, 2, &[0.0, -1.0, 0.0, -1.0]),
        real_matrix(2, 2, &[1.0, 3.0, 0.0, 4.0]),
        real_matrix(2, 2, &[-3.0, 0.0, -1.0, -2.0]),
    ])
    .expect("valid fixture")
}

/// Quadratic with a singular leading coefficient: two eigenvalues at infinity
/// and `±i√3`, `±i`.
pub fn p2() -> MatrixPoly {
    MatrixPoly::new(vec![
        real_matrix(3, 3, &[1.0, 0.0, -1.0, 1.0, 2.0, 0.0, 1.0, 1.0, 1.0]),
        real_matrix(3, 3, &[0.0, 1.0, 1.0, 0.0, 1.0, 1.0, 0.0, 1.0, 1.0]),
        real_matrix(3, 3, &[0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0]),
    ])
    .expect("valid fixture")
}

/// `p2` after moving the first infinite eigenvalue to `1`.
pub fn p2_after_first_shift() -> MatrixPoly {
    MatrixPoly::new(vec![
        real_matrix(3, 3, &[1.0, 0.0, -1.0, 1.0, 2.0, 0.0, 1.0, 1.0, 1.0]),
        real_matrix(3, 3, &[-1.0, 1.0, 1.0, -1.0, 1.0, 1.0, -1.0, 1.0, 1.0]),
        real_matrix(3, 3, &[0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0]),
    ])
    .expect("valid fixture")
}

/// `p2` with both infinite eigenvalues moved to `1` and `1/2`.
pub fn p2_final() -> MatrixPoly {
    MatrixPoly::new(vec![
        real_matrix(3, 3, &[1.0, 0.0, -1.0, 1.0, 2.0, 0.0, 1.0, 1.0, 1.0]),
        real_matrix(3, 3, &[-3.0, 1.0, 1.0, -3.0, 1.0, 1.0, -3.0, 1.0, 1.0]),
        real_matrix(3, 3, &[2.0, 0.0, 0.0, 2.0, 1.0, 0.0, 2.0, 0.0, 1.0]),
    ])
    .expect("valid fixture")
}

const P3_DIAG: [i64; 5] = [57, 49, 41, 33, 25];

/// Integer numerators `N_i` of `B_i = D⁻¹ N_i` for the stochastic fixture.
fn p3_numerators() -> [[[i64; 5]; 5]; 5] {
    let mut b = [[[0i64; 5]; 5]; 5];
    for r in 0..5 {
        for col in 0..5 {
            b[0][r][col] = if r <= col { 9 } else { 0 };
            b[1][r][col] = if col <= r { 1 } else { 0 };
            b[2][r][col] = 1;
            b[3][r][col] = 1;
            b[4][r][col] = if r == col { 1 } else { 0 };
        }
    }
    b
}

/// Row sums of `Σ N_i`, which must equal the diagonal of `D` so that `B(1)e = e`.
pub fn p3_numerator_row_sums() -> [i64; 5] {
    let b = p3_numerators();
    let mut sums = [0i64; 5];
    for (r, s) in sums.iter_mut().enumerate() {
        *s = b.iter().map(|bi| bi[r].iter().sum::<i64>()).sum();
    }
    sums
}

pub fn p3_diagonal() -> [i64; 5] {
    P3_DIAG
}

/// `A(z) = zI − B(z)` with `B₀ = 9D⁻¹T`, `B₁ = D⁻¹Tᵀ`, `B₂ = B₃ = D⁻¹E`,
/// `B₄ = D⁻¹`, `D = diag(57, 49, 41, 33, 25)`.
pub fn p3() -> MatrixPoly {
    let numerators = p3_numerators();
    let coeffs = numerators
        .iter()
        .enumerate()
        .map(|(i, num)| {
            let mut a = CMatrix::from_fn(5, 5, |r, col| {
                crate::types::re(-(num[r][col] as f64) / P3_DIAG[r] as f64 + 0.0)
            });
            if i == 1 {
                a += linalg::identity(5);
            }
            a
        })
        .collect();
    MatrixPoly::new(coeffs).expect("valid fixture")
}

/// Scalar `−1/4 z⁻¹ + 1 − z/4`, whose factor `G₊ = R₊ = 2 − √3`.
pub fn scalar_quadratic() -> LaurentPoly {
    LaurentPoly::quadratic(
        real_matrix(1, 1, &[-0.25]),
        real_matrix(1, 1, &[1.0]),
        real_matrix(1, 1, &[-0.25]),
    )
    .expect("valid fixture")
}

/// Looks a fixture up by its CLI name.
pub fn by_name(name: &str) -> Option<LaurentPoly> {
    match name {
        "p1" => Some(p1().into()),
        "p2" => Some(p2().into()),
        "p3" => Some(p3().into()),
        "scalar-quadratic" => Some(scalar_quadratic()),
        _ => None,
    }
}

pub const NAMES: [&str; 4] = ["p1", "p2", "p3", "scalar-quadratic"];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::types::re;

    #[test]
    fn p3_rows_are_stochastic_in_exact_arithmetic() {
        assert_eq!(p3_numerator_row_sums(), p3_diagonal());
    }

    #[test]
    fn p3_vanishes_at_one_on_ones() {
        let a1 = crate::poly::MatrixFunction::evaluate(&p3(), re(1.0)).unwrap();
        let e = crate::types::CVector::from_element(5, re(1.0));
        assert!((a1 * e).norm() < 1e-15);
    }
}
