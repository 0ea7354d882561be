use mpshift_core::random::{check_case, shift_case, ShiftVariant};

const INSTANCES: u64 = 20;
const SAMPLES: usize = 16;

fn run_variant(variant: ShiftVariant) {
    let mut worst: f64 = 0.0;
    for seed in 1..=INSTANCES {
        let case = shift_case(variant, seed).unwrap_or_else(|e| panic!("{} seed {seed}: {e}", variant.name()));
        let report = check_case(&case, SAMPLES, 1000 + seed).unwrap();
        assert!(
            report.pass,
            "{} seed {seed}: error {:e} above {:e}",
            variant.name(),
            report.max_error,
            report.tolerance
        );
        assert_eq!(report.samples, SAMPLES);
        worst = worst.max(report.max_error);
    }
    assert!(worst <= 1e-8);
}

#[test]
fn right_poly() {
    run_variant(ShiftVariant::RightPoly);
}

#[test]
fn left_poly() {
    run_variant(ShiftVariant::LeftPoly);
}

#[test]
fn right_laurent() {
    run_variant(ShiftVariant::RightLaurent);
}

#[test]
fn left_laurent() {
    run_variant(ShiftVariant::LeftLaurent);
}

#[test]
fn double() {
    run_variant(ShiftVariant::Double);
}

#[test]
fn multishift_one() {
    run_variant(ShiftVariant::Multi1);
}

#[test]
fn multishift_two() {
    run_variant(ShiftVariant::Multi2);
}

#[test]
fn palindromic() {
    run_variant(ShiftVariant::Palindromic);
}

#[test]
fn to_infinity() {
    run_variant(ShiftVariant::ToInfinity);
}

#[test]
fn from_infinity() {
    run_variant(ShiftVariant::FromInfinity);
}

#[test]
fn oracle_rejects_a_wrong_shift() {
    let mut case = shift_case(ShiftVariant::RightPoly, 3).unwrap();
    case.ratio.added[0] = mpshift_core::Eigenvalue::Finite(case.ratio.added[0].finite().unwrap() + 0.1);
    assert!(!check_case(&case, SAMPLES, 7).unwrap().pass);
}
