use proptest::prelude::*;

use qso_core::families::{make_alpha_combination, make_quasi_strict, make_regular, make_s2};
use qso_core::sampling::Sampler;
use qso_core::{convex_combine, Family, FamilySpec, Operator, Permutation, SimplexPoint};

#[test]
fn family_rows_are_exact() {
    for m in 3..9 {
        assert!(make_regular(m).unwrap().max_row_residual() < 1e-15);
        let pi = Permutation::from_images(&(1..m).rev().collect::<Vec<_>>()).unwrap();
        assert!(make_quasi_strict(m, &pi).unwrap().max_row_residual() < 1e-15);
    }
    for f in Family::ALL.into_iter().filter(|f| f.is_s2()) {
        let p = f.info().parameter.map(|_| 0.37);
        assert!(make_s2(f, p).unwrap().max_row_residual() < 1e-15, "{f}");
    }
}

#[test]
fn regular_three_is_v0() {
    let a = make_regular(3).unwrap();
    let b = make_s2(Family::V0, None).unwrap();
    assert_eq!(a.max_abs_diff(&b).unwrap(), 0.0);
}

#[test]
fn volterra_detection_threshold() {
    assert!(make_s2(Family::Zakharevich, None).unwrap().is_volterra());
    assert!(!make_s2(Family::V0, None).unwrap().is_volterra());
    let pure = qso_core::CoefficientTensor::from_fn(3, |i, j, k| {
        if i == j {
            (k == i) as u8 as f64
        } else if k == i {
            0.5
        } else if k == j {
            0.5
        } else {
            0.0
        }
    })
    .unwrap();
    assert!(pure.is_volterra());
    for (eps, expect) in [(1e-14, true), (1e-3, false)] {
        let t = qso_core::CoefficientTensor::from_fn(3, |i, j, k| match (i, j, k) {
            (0, 1, 0) => 0.5 - eps,
            (0, 1, 2) => eps,
            _ => pure.get(i + 1, j + 1, k + 1).unwrap(),
        })
        .unwrap();
        assert_eq!(t.is_volterra(), expect, "eps {eps}");
    }
}

#[test]
fn quasi_strict_formula() {
    let pi = qso_core::parse_cycles("(1 2)(3 4 5)", 5).unwrap();
    let t = make_quasi_strict(6, &pi).unwrap();
    let x = SimplexPoint::new(&[0.1, 0.15, 0.05, 0.2, 0.1, 0.4]).unwrap();
    let y = t.apply(&x).unwrap();
    let xm = 0.4;
    for k in 1..6 {
        let expect = 2.0 * xm * x.coords()[pi.apply(k).unwrap() - 1];
        assert!((y.coords()[k - 1] - expect).abs() < 1e-15);
    }
    assert!((y.last() - (xm * xm + (1.0 - xm) * (1.0 - xm))).abs() < 1e-15);
}

#[test]
fn spiral_at_half_is_identity() {
    let t = make_s2(Family::VallanderSpiral, Some(0.5)).unwrap();
    let mut rng = Sampler::new(11);
    for _ in 0..50 {
        let x = rng.interior_point(3);
        assert!(t.apply(&x).unwrap().sup_distance(&x) < 1e-12);
    }
}

#[test]
fn spec_validation() {
    use qso_core::Error;
    assert!(matches!(FamilySpec::new(Family::V0, Some(4), None, None), Err(Error::DimensionMismatch { .. })));
    assert!(matches!(FamilySpec::new(Family::VallanderTheta, None, None, None), Err(Error::MissingParameter { .. })));
    assert!(matches!(FamilySpec::new(Family::VallanderTheta, None, None, Some(1.5)), Err(Error::WeightOutOfRange(_))));
    assert!(matches!(FamilySpec::new(Family::QuasiStrict, Some(4), None, None), Err(Error::MissingPermutation { .. })));
    let pi = Permutation::identity(2);
    assert!(matches!(FamilySpec::new(Family::QuasiStrict, Some(4), Some(pi), None), Err(Error::PermutationSizeMismatch { .. })));
    assert!(matches!("NOPE".parse::<Family>(), Err(Error::UnknownFamily(_))));
    assert_eq!("khukr".parse::<Family>().unwrap(), Family::Khukr);
}

fn permutation(n: usize) -> impl Strategy<Value = Permutation> {
    Just((1..=n).collect::<Vec<usize>>()).prop_shuffle().prop_map(|v| Permutation::from_images(&v).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn alpha_combination_is_entrywise_mix(
        (m, pi) in (3usize..8).prop_flat_map(|m| (Just(m), permutation(m - 1))),
        alpha in 0.0f64..=1.0,
    ) {
        let direct = make_alpha_combination(m, &pi, alpha).unwrap();
        let mix = convex_combine(&make_regular(m).unwrap(), &make_quasi_strict(m, &pi).unwrap(), alpha).unwrap();
        prop_assert!(direct.max_abs_diff(&mix).unwrap() < 1e-15);
        let op = Operator::from_spec(FamilySpec::alpha_combination(m, pi, alpha).unwrap()).unwrap();
        prop_assert!(op.tensor.max_abs_diff(&direct).unwrap() == 0.0);
    }
}

proptest! {
    #[test]
    fn khukr_inverts_ratio(w in proptest::collection::vec(1e-3f64..1.0, 3)) {
        let s: f64 = w.iter().sum();
        let x = SimplexPoint::new(&w.iter().map(|v| v / s).collect::<Vec<_>>()).unwrap();
        let y = make_s2(Family::Khukr, None).unwrap().apply(&x).unwrap();
        let (x, y) = (x.coords(), y.coords());
        prop_assert!((y[1] / y[2] - x[2] / x[1]).abs() <= 1e-12 * (1.0 + x[2] / x[1]));
    }
}
