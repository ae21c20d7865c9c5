//! Calibration of the Cesàro separation threshold used by the non-ergodicity
//! probe. Run with `cargo test -p qso-core --release --test calibration -- --ignored --nocapture`.

use qso_core::analysis::ergodicity_probe;
use qso_core::families::make_s2;
use qso_core::{Family, SimplexPoint};

#[test]
#[ignore = "10^7 steps; run explicitly in release mode"]
fn zakharevich_cesaro_calibration() {
    let t = make_s2(Family::Zakharevich, None).unwrap();
    let x0 = SimplexPoint::new(&[0.3, 0.3, 0.4]).unwrap();
    let r = ergodicity_probe(&t, &x0, &[10_000, 100_000, 1_000_000, 10_000_000]).unwrap();
    for s in &r.samples {
        println!("n={:>8}  A_n={}  x_n={}  running min {:e}", s.n, s.mean, s.current, s.running_min);
    }
    for (a, b, d) in &r.pairwise {
        println!("|A_{a} - A_{b}| = {d:.4e}");
    }
    let three: Vec<f64> = r.pairwise.iter().filter(|p| p.1 <= 1_000_000).map(|p| p.2).collect();
    let smallest = three.iter().copied().fold(f64::INFINITY, f64::min);
    println!("smallest separation over the 1e4/1e5/1e6 checkpoints: {smallest:.4e}");
    assert!(smallest > 5e-4);
}
