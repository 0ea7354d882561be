use mpshift_core::random::{self, complex, laurent_with_eigenpair, poly_with_eigenpair, vector};
use mpshift_core::shifts::{
    double_shift_laurent, is_palindromic, left_shift_laurent, multishift_laurent, multishift_poly, palindromic_shift,
    right_shift_laurent, right_shift_poly, MultiShiftSpec, ShiftSpec,
};
use mpshift_core::spectra::{polyeig, refine_pair};
use mpshift_core::types::c;
use mpshift_core::{linalg, CMatrix, LaurentPoly, MatrixFunction};
use proptest::prelude::*;

fn max_coeff_diff(a: &LaurentPoly, b: &LaurentPoly) -> f64 {
    assert_eq!((a.lo(), a.hi()), (b.lo(), b.hi()));
    a.coeffs()
        .iter()
        .zip(b.coeffs())
        .map(|(x, y)| linalg::max_abs_diff(x, y))
        .fold(0.0, f64::max)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 32, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn identity_when_mu_equals_lambda(seed in 0u64..10_000) {
        let mut rng = random::rng(seed);
        let lambda = complex(&mut rng);
        let (p, u) = poly_with_eigenpair(&mut rng, 3, 2, lambda);
        let shifted = right_shift_poly(&p, &ShiftSpec::right(lambda, lambda, u)).unwrap();
        prop_assert_eq!(shifted, p);
    }

    #[test]
    fn support_is_preserved(seed in 0u64..10_000, lo in -2i64..=0, hi in 1i64..=2) {
        let mut rng = random::rng(seed);
        let lambda = c(0.5, 0.0) + complex(&mut rng) * 0.4;
        let (p, u) = laurent_with_eigenpair(&mut rng, 3, lo, hi, lambda);
        let shifted = right_shift_laurent(&p, &ShiftSpec::right(lambda, complex(&mut rng), u)).unwrap();
        prop_assert_eq!((shifted.lo(), shifted.hi()), (p.lo(), p.hi()));
    }

    #[test]
    fn single_column_multishift_is_the_single_shift(seed in 0u64..10_000) {
        let mut rng = random::rng(seed);
        let lambda = c(0.5, 0.0) + complex(&mut rng) * 0.4;
        let mu = complex(&mut rng);
        let (p, u) = laurent_with_eigenpair(&mut rng, 3, -1, 2, lambda);
        let single = right_shift_laurent(&p, &ShiftSpec::right(lambda, mu, u.clone())).unwrap();
        let um = CMatrix::from_column_slice(3, 1, u.as_slice());
        let ms = MultiShiftSpec::new(um, CMatrix::from_element(1, 1, lambda), CMatrix::from_element(1, 1, mu), None).unwrap();
        prop_assert_eq!(multishift_laurent(&p, &ms).unwrap(), single.clone());
        let poly = p.shifted_to_poly();
        let single_poly = right_shift_poly(&poly, &ShiftSpec::right(lambda, mu, u)).unwrap();
        prop_assert_eq!(multishift_poly(&poly, &ms).unwrap(), single_poly);
    }

    #[test]
    fn double_shift_order_does_not_matter(seed in 0u64..10_000) {
        let case = random::shift_case(random::ShiftVariant::Double, seed).unwrap();
        // Rebuild the two specs from the case data.
        let (l1, l2) = (case.ratio.removed[0].finite().unwrap(), case.ratio.removed[1].finite().unwrap());
        let (m1, m2) = (case.ratio.added[0].finite().unwrap(), case.ratio.added[1].finite().unwrap());
        let p = &case.original;
        let u = linalg::smallest_right_singular(&p.evaluate(l1).unwrap()).0;
        let w = linalg::smallest_left_singular(&p.evaluate(l2).unwrap()).0;
        let right = ShiftSpec::right(l1, m1, u);
        let left = ShiftSpec::left(l2, m2, w);
        let both = double_shift_laurent(p, &right, &left).unwrap();
        let other = right_shift_laurent(&left_shift_laurent(p, &left).unwrap(), &right).unwrap();
        let scale = p.coeff_norm_sum();
        prop_assert!(max_coeff_diff(&both, &other) <= 1e-13 * scale);
    }

    #[test]
    fn palindromic_structure_survives(seed in 0u64..10_000) {
        let mut rng = random::rng(seed);
        let p = random::palindromic_quadratic(&mut rng, 3);
        let spectrum = polyeig(&p, 1).unwrap();
        let pair = spectrum.pairs.iter().find(|e| {
            let m = e.value.modulus();
            e.value.is_finite() && m > 0.05 && (m - 1.0).abs() > 0.05
        });
        prop_assume!(pair.is_some());
        let pair = pair.unwrap();
        let refined = refine_pair(&p, pair.value.finite().unwrap(), &pair.right).unwrap();
        let lambda = refined.value.finite().unwrap();
        let mu = c(0.3, 0.1) * (1.0 + seed as f64 % 3.0);
        let shifted = palindromic_shift(&p, lambda, mu, &refined.right).unwrap();
        prop_assert!(is_palindromic(&shifted, 1e-12));
    }

    #[test]
    fn laurent_text_round_trip(seed in 0u64..10_000) {
        let mut rng = random::rng(seed);
        let p = random::laurent(&mut rng, 2, -1, 1);
        let text = mpshift_core::io::format_laurent(&p).unwrap();
        prop_assert_eq!(mpshift_core::io::parse_laurent(&text).unwrap(), p);
    }
}

#[test]
fn planted_vectors_are_not_degenerate() {
    let mut rng = random::rng(5);
    let v = vector(&mut rng, 4);
    assert!(v.norm() > 0.1);
}
