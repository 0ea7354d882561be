//! Small dense helpers on top of nalgebra's complex LU and SVD.

use crate::types::{CMatrix, CVector, Complex, FLOOR};

pub fn identity(n: usize) -> CMatrix {
    CMatrix::identity(n, n)
}

pub fn zeros(n: usize) -> CMatrix {
    CMatrix::zeros(n, n)
}

pub fn frobenius(a: &CMatrix) -> f64 {
    a.norm()
}

/// Maximum absolute row sum.
pub fn norm_inf(a: &CMatrix) -> f64 {
    a.row_iter()
        .map(|r| r.iter().map(|x| x.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Determinant via LU with partial pivoting.
pub fn det(a: &CMatrix) -> Complex {
    if a.nrows() == 0 {
        return Complex::new(1.0, 0.0);
    }
    a.clone().lu().determinant()
}

pub fn inverse(a: &CMatrix) -> Option<CMatrix> {
    let inv = a.clone().lu().try_inverse()?;
    inv.iter().all(|x| x.re.is_finite() && x.im.is_finite()).then_some(inv)
}

/// Solves `a x = b` for a matrix right-hand side.
pub fn solve(a: &CMatrix, b: &CMatrix) -> Option<CMatrix> {
    let x = a.clone().lu().solve(b)?;
    x.iter().all(|x| x.re.is_finite() && x.im.is_finite()).then_some(x)
}

/// Reciprocal 1-norm condition number computed from an explicit inverse.
pub fn rcond(a: &CMatrix) -> f64 {
    match inverse(a) {
        Some(inv) => 1.0 / (norm_1(a) * norm_1(&inv)).max(FLOOR),
        None => 0.0,
    }
}

pub fn norm_1(a: &CMatrix) -> f64 {
    a.column_iter()
        .map(|c| c.iter().map(|x| x.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Singular values (descending) and the matching right singular vectors as columns.
pub fn svd_right(a: &CMatrix) -> (Vec<f64>, CMatrix) {
    let n = a.ncols();
    // nalgebra's SVD is thin; pad tall/wide cases so every right vector is returned.
    let work = if a.nrows() < n {
        let mut padded = CMatrix::zeros(n, n);
        padded.view_mut((0, 0), (a.nrows(), n)).copy_from(a);
        padded
    } else {
        a.clone()
    };
    let svd = work.svd(false, true);
    let v_t = svd.v_t.expect("requested right singular vectors");
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&i, &j| svd.singular_values[j].total_cmp(&svd.singular_values[i]));
    let values = order.iter().map(|&i| svd.singular_values[i]).collect();
    let mut v = CMatrix::zeros(n, order.len());
    for (col, &i) in order.iter().enumerate() {
        for r in 0..n {
            v[(r, col)] = v_t[(i, r)].conj();
        }
    }
    (values, v)
}

/// Right singular vector for the smallest singular value, and that value.
pub fn smallest_right_singular(a: &CMatrix) -> (CVector, f64) {
    let (values, v) = svd_right(a);
    let last = values.len() - 1;
    (v.column(last).into_owned(), values[last])
}

/// Left singular vector `w` for the smallest singular value (`w* a ≈ 0`).
pub fn smallest_left_singular(a: &CMatrix) -> (CVector, f64) {
    smallest_right_singular(&a.adjoint())
}

pub fn smallest_singular_value(a: &CMatrix) -> f64 {
    let (values, _) = svd_right(a);
    values.last().copied().unwrap_or(0.0)
}

/// `u v*` for column vectors.
pub fn outer(u: &CVector, v: &CVector) -> CMatrix {
    u * v.adjoint()
}

/// `v* u`.
pub fn dot_h(v: &CVector, u: &CVector) -> Complex {
    v.dotc(u)
}

pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    (a - b).iter().map(|x| x.norm()).fold(0.0, f64::max)
}

pub fn is_finite(a: &CMatrix) -> bool {
    a.iter().all(|x| x.re.is_finite() && x.im.is_finite())
}
