use qso_core::sampling::Sampler;
use qso_core::scalar::scalar_fixed_point;
use qso_core::ScalarMap;

const GRID: [(usize, f64); 9] = [(3, 0.1), (3, 0.5), (3, 1.0), (5, 0.1), (5, 0.5), (5, 0.9), (8, 0.2), (8, 0.7), (12, 1.0)];

#[test]
fn f_maps_into_upper_half() {
    let min = (0..=10_000).map(|i| ScalarMap::F.eval(i as f64 / 10_000.0).unwrap()).fold(f64::INFINITY, f64::min);
    assert!(min >= 0.5 - 1e-15);
    assert_eq!(ScalarMap::F.eval(1.0).unwrap(), 1.0);
}

#[test]
fn fixed_point_is_attracting() {
    for (m, alpha) in GRID {
        let f = ScalarMap::f_alpha(m, alpha).unwrap();
        let x = scalar_fixed_point(m, alpha);
        assert!((f.eval(x).unwrap() - x).abs() < 1e-14, "m={m} alpha={alpha}");
        let h = 1e-6;
        let slope = (f.eval(x + h).unwrap() - f.eval(x - h).unwrap()) / (2.0 * h);
        assert!(slope.abs() < 1.0, "m={m} alpha={alpha}: slope {slope}");
        assert!((slope - f.derivative(x)).abs() < 1e-8);
    }
}

#[test]
fn iterates_converge() {
    let mut rng = Sampler::new(5);
    for (m, alpha) in GRID {
        let f = ScalarMap::f_alpha(m, alpha).unwrap();
        let x = scalar_fixed_point(m, alpha);
        for _ in 0..1000 {
            let x0 = rng.open_uniform();
            assert!((f.iterate(x0, 500).unwrap() - x).abs() < 1e-10, "m={m} alpha={alpha} x0={x0}");
        }
    }
}

#[test]
fn domain_is_checked() {
    assert!(ScalarMap::F.eval(1.5).is_err());
    assert!(ScalarMap::F.eval(f64::NAN).is_err());
    assert!(ScalarMap::f_alpha(2, 0.5).is_err());
}
