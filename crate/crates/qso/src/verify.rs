//! Built-in verification suites.
//!
//! Each criterion runs a fixed, seeded experiment and records one line per
//! measured quantity. Output depends only on the suite and the seed.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use qso_core::analysis::{
    check_lyapunov, classify_fixed_point, contraction_report, detect_period, ergodicity_probe, max_norm_check,
    omega_estimate, periodic_absence_search, psi_bound_check, Classification, LyapunovFn, SolutionKind,
};
use qso_core::analysis::fixed_points::DEFAULT_BAND;
use qso_core::analysis::lyapunov::LYAPUNOV_SLACK;
use qso_core::analysis::omega::{DEFAULT_CLUSTER_TOL, DEFAULT_PERIOD_TOL};
use qso_core::families::{make_alpha_combination, make_quasi_strict, make_regular, make_s2};
use qso_core::sampling::Sampler;
use qso_core::scalar::{conjugacy_h, logistic, low_period_scan};
use qso_core::{iterate, parse_cycles, CoefficientTensor, Family, FamilySpec, Operator, Permutation, ScalarMap, SimplexPoint};

use crate::error::Error;

/// Cesàro checkpoints for the ergodicity probe.
pub const ERGODIC_CHECKPOINTS: [usize; 3] = [10_000, 100_000, 1_000_000];
/// Separation required between Zakharevich Cesàro means at every pair of
/// checkpoints. Calibrated against a 10⁷-step run; see the README.
pub const ZAKHAREVICH_DELTA: f64 = 5e-4;
/// Largest Cesàro fluctuation allowed for the regular operator.
pub const REGULAR_FLUCTUATION: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Regular,
    QuasiStrict,
    Alpha,
    S2Theorems,
    Scalar,
    CoreProperties,
    All,
}

impl Suite {
    pub const NAMES: [&'static str; 7] = ["regular", "quasi_strict", "alpha", "s2_theorems", "scalar", "core_properties", "all"];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Regular => "regular",
            Suite::QuasiStrict => "quasi_strict",
            Suite::Alpha => "alpha",
            Suite::S2Theorems => "s2_theorems",
            Suite::Scalar => "scalar",
            Suite::CoreProperties => "core_properties",
            Suite::All => "all",
        }
    }

    pub fn criteria(self) -> &'static [Criterion] {
        use Criterion::*;
        match self {
            Suite::Regular => &[C1, C2],
            Suite::QuasiStrict => &[C4, C5],
            Suite::Alpha => &[C7],
            Suite::S2Theorems => &[C9],
            Suite::Scalar => &[C6],
            Suite::CoreProperties => &[C3, C8, C10],
            Suite::All => &Criterion::ALL,
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Ok(match s {
            "regular" => Suite::Regular,
            "quasi_strict" => Suite::QuasiStrict,
            "alpha" => Suite::Alpha,
            "s2_theorems" => Suite::S2Theorems,
            "scalar" => Suite::Scalar,
            "core_properties" => Suite::CoreProperties,
            "all" => Suite::All,
            other => return Err(Error::config(format!("unknown suite `{other}`"))),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Criterion {
    C1,
    C2,
    C3,
    C4,
    C5,
    C6,
    C7,
    C8,
    C9,
    C10,
}

impl Criterion {
    pub const ALL: [Criterion; 10] = [
        Criterion::C1,
        Criterion::C2,
        Criterion::C3,
        Criterion::C4,
        Criterion::C5,
        Criterion::C6,
        Criterion::C7,
        Criterion::C8,
        Criterion::C9,
        Criterion::C10,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Criterion::C1 => "C1",
            Criterion::C2 => "C2",
            Criterion::C3 => "C3",
            Criterion::C4 => "C4",
            Criterion::C5 => "C5",
            Criterion::C6 => "C6",
            Criterion::C7 => "C7",
            Criterion::C8 => "C8",
            Criterion::C9 => "C9",
            Criterion::C10 => "C10",
        }
    }

    pub fn title(self) -> &'static str {
        match self {
            Criterion::C1 => "regular operator converges to the center",
            Criterion::C2 => "psi bound and max-norm decrease",
            Criterion::C3 => "Lyapunov monotonicity",
            Criterion::C4 => "V_pi limit orbit",
            Criterion::C5 => "Per_s segment and absence of extra period-(s+1) points",
            Criterion::C6 => "scalar maps",
            Criterion::C7 => "V_alpha global convergence and contraction",
            Criterion::C8 => "spectral classification and Jacobian",
            Criterion::C9 => "two-dimensional operator theorems",
            Criterion::C10 => "non-ergodicity probe",
        }
    }

    pub fn run(self, seed: u64) -> Outcome {
        let mut out = Outcome { criterion: self, checks: Vec::new() };
        let tagged = sub_seed(seed, self as u64 + 1);
        let result = match self {
            Criterion::C1 => c1(&mut out, tagged),
            Criterion::C2 => c2(&mut out, tagged),
            Criterion::C3 => c3(&mut out, tagged),
            Criterion::C4 => c4(&mut out, tagged),
            Criterion::C5 => c5(&mut out, tagged),
            Criterion::C6 => c6(&mut out, tagged),
            Criterion::C7 => c7(&mut out, tagged),
            Criterion::C8 => c8(&mut out, tagged),
            Criterion::C9 => c9(&mut out, tagged),
            Criterion::C10 => c10(&mut out),
        };
        if let Err(e) = result {
            out.check(false, format!("aborted: {e}"));
        }
        out
    }
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub passed: bool,
    pub text: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub criterion: Criterion,
    pub checks: Vec<Check>,
}

impl Outcome {
    pub fn passed(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(|c| c.passed)
    }

    fn check(&mut self, passed: bool, text: impl Into<String>) {
        self.checks.push(Check { passed, text: text.into() });
    }

    /// Indented per-check lines followed by the criterion verdict.
    pub fn render(&self) -> String {
        let mut s = String::new();
        for c in &self.checks {
            writeln!(s, "  {} {}", verdict(c.passed), c.text).unwrap();
        }
        writeln!(s, "{} {} {}", verdict(self.passed()), self.criterion.id(), self.criterion.title()).unwrap();
        s
    }
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub seed: u64,
    pub outcomes: Vec<Outcome>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(Outcome::passed)
    }

    pub fn render(&self) -> String {
        let mut s = format!("suite {} seed {}\n", self.suite.name(), self.seed);
        for o in &self.outcomes {
            s.push_str(&o.render());
        }
        let ok = self.outcomes.iter().filter(|o| o.passed()).count();
        writeln!(s, "{} {}/{} criteria passed", verdict(self.passed()), ok, self.outcomes.len()).unwrap();
        s
    }
}

pub fn run_suite(suite: Suite, seed: u64) -> SuiteReport {
    let outcomes = suite.criteria().iter().map(|c| c.run(seed)).collect();
    SuiteReport { suite, seed, outcomes }
}

/// Independent stream per criterion so suites give the same numbers whether
/// run alone or inside `all`.
fn sub_seed(seed: u64, tag: u64) -> u64 {
    seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(tag.wrapping_mul(0xD1B5_4A32_D192_ED03))
}

type Res = Result<(), Error>;

fn orbit(t: &CoefficientTensor, x0: &SimplexPoint, steps: usize) -> Result<SimplexPoint, Error> {
    let mut x = x0.clone();
    for _ in 0..steps {
        x = t.apply(&x)?;
    }
    Ok(x)
}

fn perm(text: &str, n: usize) -> Result<Permutation, Error> {
    Ok(parse_cycles(text, n)?)
}

/// Closed-form interior fixed point of `α·REGULAR + (1−α)·QUASI_STRICT`.
pub fn alpha_fixed_point(m: usize, alpha: f64) -> SimplexPoint {
    let mf = m as f64;
    let last = ((1.0 - alpha) * (mf - 1.0) + alpha) / ((2.0 - alpha) * (mf - 1.0) + alpha);
    let mut x = vec![(1.0 - last) / (mf - 1.0); m];
    x[m - 1] = last;
    SimplexPoint::new(&x).expect("closed form lies in the simplex")
}

/// Permutation used for `V_α` at dimension `m` in the acceptance grid.
pub fn alpha_grid_permutation(m: usize) -> Result<Permutation, Error> {
    match m {
        3 => perm("(1 2)", 2),
        5 => perm("(1 2 3)", 4),
        _ => Err(Error::config(format!("no grid permutation for m={m}"))),
    }
}

pub const ALPHA_GRID: [f64; 5] = [0.1, 0.3, 0.5, 0.7, 0.9];

fn c1(out: &mut Outcome, seed: u64) -> Res {
    for m in [3, 4, 5, 8] {
        let t = make_regular(m)?;
        let c = SimplexPoint::center(m)?;
        let mut rng = Sampler::new(sub_seed(seed, m as u64));
        let mut worst: f64 = 0.0;
        for _ in 0..100 {
            let x = orbit(&t, &rng.interior_point(m), 200)?;
            worst = worst.max(x.sup_distance(&c));
        }
        out.check(worst < 1e-8, format!("m={m}: max |x(200) - c| = {worst:.3e} over 100 starts (limit 1e-8)"));
    }
    Ok(())
}

fn c2(out: &mut Outcome, seed: u64) -> Res {
    for m in [5, 8] {
        let r = psi_bound_check(m, 10_000, sub_seed(seed, m as u64))?;
        out.check(
            r.violations == 0 && r.center_gap < 1e-12,
            format!(
                "m={m}: max psi = {:.6e}, bound (4/m)^m = {:.6e}, violations {}, |psi(c) - bound| = {:.1e}",
                r.max_psi, r.bound, r.violations, r.center_gap
            ),
        );
    }
    let r = max_norm_check(10_000, sub_seed(seed, 4))?;
    out.check(
        r.violations == 0,
        format!("m=4: max-norm decreases at {} samples, violations {}, smallest margin {:.3e}", r.samples, r.violations, r.min_margin),
    );
    Ok(())
}

fn c3(out: &mut Outcome, seed: u64) -> Res {
    let regular = Operator::from_spec(FamilySpec::regular(6)?)?;
    let vpi = Operator::from_spec(FamilySpec::quasi_strict(6, perm("(1 2)(3 4 5)", 5)?)?)?;
    let mut cases: Vec<(String, Operator, LyapunovFn)> = vec![("REGULAR m=6".into(), regular, LyapunovFn::CyclicProduct)];
    for f in [LyapunovFn::CycleProduct(1), LyapunovFn::CycleProduct(2), LyapunovFn::CycleSum(1), LyapunovFn::CycleSum(2)] {
        cases.push(("QUASI_STRICT m=6 pi=(1 2)(3 4 5)".into(), vpi.clone(), f));
    }
    for alpha in [0.3, 0.7] {
        let op = Operator::from_spec(FamilySpec::alpha_combination(4, perm("(1 2)", 3)?, alpha)?)?;
        cases.push((format!("ALPHA_COMBINATION m=4 pi=(1 2) alpha={alpha}"), op, LyapunovFn::LastCoord));
    }
    for (i, (label, op, f)) in cases.iter().enumerate() {
        let r = check_lyapunov(op, f, 100, 100, sub_seed(seed, i as u64))?;
        let mut text = format!(
            "{} on {label}: {} {} violations in {} steps from n={} (slack {LYAPUNOV_SLACK:e})",
            r.function,
            r.direction.as_str(),
            r.violations,
            r.checks,
            r.start_offset
        );
        if r.violations > 0 {
            write!(text, ", worst {:.3e} at step {}", r.worst_violation, r.worst_step.unwrap_or(0)).unwrap();
        }
        out.check(r.violations == 0, text);
    }
    Ok(())
}

fn c4(out: &mut Outcome, seed: u64) -> Res {
    let m = 6;
    let pi = perm("(1 2)(3 4 5)", 5)?;
    let t = make_quasi_strict(m, &pi)?;
    let mut rng = Sampler::new(seed);
    let (mut half_gap, mut periods_ok, mut clusters_ok, mut worst_map): (f64, usize, usize, f64) = (0.0, 0, 0, 0.0);
    let mut periods = Vec::new();
    let mut counts = Vec::new();
    for _ in 0..20 {
        let x0 = rng.interior_point(m);
        let traj = iterate(&t, &x0, 400, 1)?;
        for (n, x) in traj.points() {
            if *n >= 200 {
                half_gap = half_gap.max((x.last() - 0.5).abs());
            }
        }
        let p = detect_period(&traj, 12, DEFAULT_PERIOD_TOL)?;
        if p == Some(6) {
            periods_ok += 1;
        }
        periods.push(p);
        let omega = omega_estimate(&t, &x0, 1000, 60, DEFAULT_CLUSTER_TOL)?;
        counts.push(omega.cluster_points.len());
        let (ok, defect) = cyclic_under_pi(&t, &pi, &omega.cluster_points)?;
        worst_map = worst_map.max(defect);
        if ok && omega.cluster_points.len() == 6 {
            clusters_ok += 1;
        }
    }
    out.check(half_gap < 1e-10, format!("max |x_m(n) - 1/2| for 200 <= n <= 400: {half_gap:.3e} (limit 1e-10)"));
    let odd: Vec<String> = periods.iter().filter(|p| **p != Some(6)).map(|p| format!("{p:?}")).collect();
    out.check(periods_ok == 20, format!("detect_period = 6 for {periods_ok}/20 starts{}", list_suffix(&odd)));
    out.check(
        clusters_ok == 20,
        format!(
            "6 clusters forming one cycle under V, coordinates permuted by pi: {clusters_ok}/20 starts, cluster counts {:?}, worst defect {worst_map:.3e} (limit 1e-8)",
            distinct(&counts)
        ),
    );
    Ok(())
}

/// Whether the cluster points form a single cycle under `t` in which each image
/// equals the point with its first `m − 1` coordinates permuted by `pi`.
fn cyclic_under_pi(t: &CoefficientTensor, pi: &Permutation, pts: &[SimplexPoint]) -> Result<(bool, f64), Error> {
    if pts.is_empty() {
        return Ok((false, f64::INFINITY));
    }
    let m = t.dim();
    let mut defect: f64 = 0.0;
    let mut next = Vec::with_capacity(pts.len());
    for c in pts {
        let img = t.apply(c)?;
        let mut d: f64 = (img.last() - c.last()).abs();
        for k in 1..m {
            d = d.max((img.coords()[k - 1] - c.coords()[pi.apply(k)? - 1]).abs());
        }
        let (j, dj) = pts
            .iter()
            .enumerate()
            .map(|(j, q)| (j, q.sup_distance(&img)))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .expect("nonempty");
        defect = defect.max(d).max(dj);
        next.push(j);
    }
    let mut seen = vec![false; pts.len()];
    let mut j = 0;
    for _ in 0..pts.len() {
        if seen[j] {
            return Ok((false, defect));
        }
        seen[j] = true;
        j = next[j];
    }
    Ok((j == 0 && defect < 1e-8, defect))
}

fn c5(out: &mut Outcome, seed: u64) -> Res {
    let m = 4;
    let pi = perm("(1 2 3)", 3)?;
    let s = pi.order() as usize;
    let t = make_quasi_strict(m, &pi)?;
    let mut rng = Sampler::new(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..50 {
        let head = rng.interior_point(m - 1);
        let mut x: Vec<f64> = head.coords().iter().map(|v| 0.5 * v).collect();
        x.push(0.5);
        let p = SimplexPoint::new(&x)?;
        worst = worst.max(orbit(&t, &p, s)?.sup_distance(&p));
    }
    out.check(worst < 1e-12, format!("s={s}: max |V^s(x) - x| on 50 points with x_m = 1/2: {worst:.3e} (limit 1e-12)"));
    let r = periodic_absence_search(m, &pi, s + 1, 50, 1e-12, sub_seed(seed, 1))?;
    let count = |k: SolutionKind| r.solutions.iter().filter(|p| p.kind == k).count();
    out.check(
        r.counterexamples.is_empty(),
        format!(
            "n=s+1={}: {} starts, {} solutions ({} fixed, {} period dividing s), {} counterexamples",
            s + 1,
            r.starts,
            r.solutions.len(),
            count(SolutionKind::FixedPoint),
            count(SolutionKind::PeriodDividingS),
            r.counterexamples.len()
        ),
    );
    Ok(())
}

fn c6(out: &mut Outcome, seed: u64) -> Res {
    let f = ScalarMap::F;
    let mut rng = Sampler::new(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let x0 = rng.open_uniform();
        worst = worst.max((f.iterate(x0, 100)? - 0.5).abs());
    }
    out.check(worst < 1e-12, format!("max |F^100(x0) - 1/2| over 1000 starts: {worst:.3e} (limit 1e-12)"));

    let roots = low_period_scan(&f, 3, 100_000)?;
    let stray: Vec<String> = roots
        .iter()
        .filter(|r| (**r - 0.5).abs() > 1e-8 && (**r - 1.0).abs() > 1e-8)
        .map(|r| format!("{r:.10}"))
        .collect();
    let shown: Vec<String> = roots.iter().map(|r| format!("{r:.12}")).collect();
    out.check(
        stray.is_empty() && !roots.is_empty(),
        format!("roots of F^3(x) = x on a 1e5 grid: [{}]{}", shown.join(", "), list_suffix(&stray)),
    );

    let mut worst: f64 = 0.0;
    for m in [3, 5, 8] {
        for alpha in [0.1, 0.5, 0.9] {
            let fa = ScalarMap::f_alpha(m, alpha)?;
            for i in 0..1000 {
                let x = i as f64 / 999.0;
                let h = conjugacy_h(m, alpha, x);
                let lhs = conjugacy_h(m, alpha, fa.eval(x)?);
                worst = worst.max((lhs - logistic(h)).abs());
            }
        }
    }
    out.check(
        worst < 1e-12,
        format!("max |h(f_alpha(x)) - 2h(x)(1-h(x))| over m in {{3,5,8}}, alpha in {{0.1,0.5,0.9}}: {worst:.3e} (limit 1e-12)"),
    );
    Ok(())
}

fn c7(out: &mut Outcome, seed: u64) -> Res {
    for m in [3, 5] {
        let pi = alpha_grid_permutation(m)?;
        let bound_s = pi.order() as i32;
        for (ai, alpha) in ALPHA_GRID.into_iter().enumerate() {
            let t = make_alpha_combination(m, &pi, alpha)?;
            let star = alpha_fixed_point(m, alpha);
            let mut rng = Sampler::new(sub_seed(seed, (m * 10 + ai) as u64));
            let (mut dist, mut factor): (f64, f64) = (0.0, 0.0);
            let mut over = 0;
            for _ in 0..50 {
                let x0 = rng.interior_point(m);
                dist = dist.max(orbit(&t, &x0, 500)?.sup_distance(&star));
                let r = contraction_report(m, &pi, alpha, &x0, 1e-9)?;
                factor = factor.max(r.worst_factor);
                if !r.within_bound {
                    over += 1;
                }
            }
            let bound = 1.0 - alpha + alpha.powi(bound_s);
            out.check(
                dist < 1e-8 && over == 0,
                format!(
                    "m={m} pi={pi} alpha={alpha}: max |x(500) - x*| = {dist:.3e} (limit 1e-8), worst block factor {factor:.6} vs bound {bound:.6}"
                ),
            );
        }
    }
    Ok(())
}

fn c8(out: &mut Outcome, seed: u64) -> Res {
    let t = make_regular(4)?;
    let r = classify_fixed_point(&t, &SimplexPoint::center(4)?, DEFAULT_BAND)?;
    let max_mod = r.tangent_eigenvalues.iter().map(|e| e.modulus()).fold(0.0, f64::max);
    out.check(
        r.classification == Classification::Attracting && max_mod < 1e-10,
        format!("REGULAR m=4 center: {}, max |lambda| = {max_mod:.3e} (limit 1e-10)", r.classification),
    );
    let mut labels = Vec::new();
    for i in 1..=4 {
        let r = classify_fixed_point(&t, &SimplexPoint::vertex(4, i)?, DEFAULT_BAND)?;
        labels.push(r.classification);
    }
    out.check(
        labels.iter().all(|c| *c == Classification::NonHyperbolic),
        format!("REGULAR m=4 vertices: {}", labels.iter().map(|c| c.as_str()).collect::<Vec<_>>().join(", ")),
    );

    let mut bad = Vec::new();
    let mut worst_mod: f64 = 0.0;
    for m in [3, 5] {
        let pi = alpha_grid_permutation(m)?;
        for alpha in ALPHA_GRID {
            let t = make_alpha_combination(m, &pi, alpha)?;
            let r = classify_fixed_point(&t, &alpha_fixed_point(m, alpha), DEFAULT_BAND)?;
            worst_mod = worst_mod.max(r.tangent_eigenvalues.iter().map(|e| e.modulus()).fold(0.0, f64::max));
            if r.classification != Classification::Attracting {
                bad.push(format!("m={m} alpha={alpha}: {}", r.classification));
            }
        }
    }
    out.check(
        bad.is_empty(),
        format!("V_alpha interior fixed points ATTRACTING at 10 grid points, largest |lambda| {worst_mod:.6}{}", list_suffix(&bad)),
    );

    let mut rng = Sampler::new(seed);
    let mut worst: f64 = 0.0;
    let h = 1e-6;
    for _ in 0..20 {
        let m = 2 + rng.index(5);
        let t = rng.tensor(m);
        let x = rng.interior_point(m);
        let jac = t.jacobian_raw(x.coords());
        let (mut plus, mut minus) = (vec![0.0; m], vec![0.0; m]);
        for j in 0..m {
            let mut xp = x.coords().to_vec();
            let mut xm = xp.clone();
            xp[j] += h;
            xm[j] -= h;
            t.evaluate_raw(&xp, &mut plus);
            t.evaluate_raw(&xm, &mut minus);
            for k in 0..m {
                let fd = (plus[k] - minus[k]) / (2.0 * h);
                worst = worst.max((fd - jac[(k, j)]).abs());
            }
        }
    }
    out.check(worst < 1e-6, format!("Jacobian vs central differences at 20 random (tensor, point) pairs: {worst:.3e} (limit 1e-6)"));
    Ok(())
}

fn c9(out: &mut Outcome, seed: u64) -> Res {
    let c = SimplexPoint::center(3)?;
    let mut rng = Sampler::new(seed);

    let t = make_s2(Family::VallanderTheta, Some(0.5))?;
    let mut worst: f64 = 0.0;
    for _ in 0..50 {
        worst = worst.max(orbit(&t, &rng.interior_point(3), 10_000)?.sup_distance(&c));
    }
    out.check(worst < 1e-6, format!("VALLANDER_THETA 0.5: max |x(10000) - c| over 50 starts = {worst:.3e} (limit 1e-6)"));

    let t = make_s2(Family::VallanderTheta, Some(0.9))?;
    let e1 = SimplexPoint::vertex(3, 1)?;
    let mut worst: f64 = 0.0;
    for _ in 0..50 {
        let mut x = rng.interior_point(3).into_coords();
        if x[0] < x[2] {
            x.swap(0, 2);
        }
        worst = worst.max(orbit(&t, &SimplexPoint::new(&x)?, 10_000)?.sup_distance(&e1));
    }
    out.check(worst < 1e-6, format!("VALLANDER_THETA 0.9, x1 > x3: max |x(10000) - e1| over 50 starts = {worst:.3e} (limit 1e-6)"));

    let t = make_s2(Family::VallanderTheta, Some(0.75))?;
    let gap = 0.2_f64;
    let root = (1.0 + 3.0 * gap * gap).sqrt();
    let limit = SimplexPoint::new(&[(1.0 + 3.0 * gap + root) / 6.0, (2.0 - root) / 3.0, (1.0 - 3.0 * gap + root) / 6.0])?;
    let mut worst: f64 = 0.0;
    for x3 in [0.1, 0.2, 0.3] {
        let x0 = SimplexPoint::new(&[x3 + gap, 1.0 - 2.0 * x3 - gap, x3])?;
        worst = worst.max(orbit(&t, &x0, 100_000)?.sup_distance(&limit));
    }
    out.check(worst < 1e-6, format!("VALLANDER_THETA 0.75 from x1 - x3 = 0.2: max distance to closed-form limit {worst:.3e} (limit 1e-6)"));

    let t = make_s2(Family::GanikhodjaevLambda, Some(0.8))?;
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        worst = worst.max(orbit(&t, &rng.interior_point(3), 10_000)?.sup_distance(&c));
    }
    out.check(worst < 1e-6, format!("GANIKHODJAEV_LAMBDA 0.8: max |x(10000) - c| over 20 starts = {worst:.3e} (limit 1e-6)"));

    let t = make_s2(Family::GanikhodjaevLambda, Some(0.1))?;
    let omega = omega_estimate(&t, &rng.interior_point(3), 10_000, 1000, DEFAULT_CLUSTER_TOL)?;
    out.check(
        omega.cluster_points.len() > 10 && omega.detected_period.is_none(),
        format!(
            "GANIKHODJAEV_LAMBDA 0.1: {} clusters in a 1000-step window, detected period {:?} (search up to {})",
            omega.cluster_points.len(),
            omega.detected_period,
            omega.period_search_max
        ),
    );

    let t = make_s2(Family::Khukr, None)?;
    let omega = omega_estimate(&t, &SimplexPoint::new(&[0.4, 0.36, 0.24])?, 1000, 100, DEFAULT_CLUSTER_TOL)?;
    let a = SimplexPoint::new(&[0.5, 0.3, 0.2])?;
    let b = SimplexPoint::new(&[0.5, 0.2, 0.3])?;
    let dist = omega
        .cluster_points
        .iter()
        .map(|p| p.sup_distance(&a).min(p.sup_distance(&b)))
        .fold(0.0, f64::max);
    let both = omega.cluster_points.iter().any(|p| p.sup_distance(&a) < 1e-6) && omega.cluster_points.iter().any(|p| p.sup_distance(&b) < 1e-6);
    out.check(
        omega.cluster_points.len() == 2 && omega.detected_period == Some(2) && both && dist < 1e-6,
        format!(
            "KHUKR from (0.4, 0.36, 0.24): {} clusters, period {:?}, distance to {{(1/2,0.3,0.2),(1/2,0.2,0.3)}} {dist:.3e} (limit 1e-6)",
            omega.cluster_points.len(),
            omega.detected_period
        ),
    );

    let t = make_s2(Family::VallanderSpiral, Some(0.5))?;
    let mut worst: f64 = 0.0;
    for _ in 0..50 {
        let x = rng.interior_point(3);
        worst = worst.max(t.apply(&x)?.sup_distance(&x));
    }
    out.check(worst < 1e-12, format!("VALLANDER_SPIRAL 0.5: max |V(x) - x| over 50 points = {worst:.3e} (limit 1e-12)"));
    Ok(())
}

fn c10(out: &mut Outcome) -> Res {
    let t = make_s2(Family::Zakharevich, None)?;
    let r = ergodicity_probe(&t, &SimplexPoint::new(&[0.3, 0.3, 0.4])?, &ERGODIC_CHECKPOINTS)?;
    let smallest = r.pairwise.iter().map(|p| p.2).fold(f64::INFINITY, f64::min);
    let pairs: Vec<String> = r.pairwise.iter().map(|(a, b, d)| format!("|A_{a} - A_{b}| = {d:.3e}")).collect();
    out.check(
        smallest > ZAKHAREVICH_DELTA,
        format!("ZAKHAREVICH from (0.3, 0.3, 0.4): {} (each must exceed {ZAKHAREVICH_DELTA:e})", pairs.join(", ")),
    );
    let t = make_regular(5)?;
    let r = ergodicity_probe(&t, &SimplexPoint::new(&[0.4, 0.3, 0.2, 0.05, 0.05])?, &ERGODIC_CHECKPOINTS)?;
    out.check(
        r.fluctuation < REGULAR_FLUCTUATION,
        format!("REGULAR m=5: Cesaro fluctuation {:.3e} (limit {REGULAR_FLUCTUATION:e})", r.fluctuation),
    );
    Ok(())
}

fn list_suffix(items: &[String]) -> String {
    if items.is_empty() {
        String::new()
    } else {
        format!("; offending: {}", items.join(", "))
    }
}

fn distinct(v: &[usize]) -> Vec<usize> {
    let mut d = v.to_vec();
    d.sort_unstable();
    d.dedup();
    d
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for name in Suite::NAMES {
            assert_eq!(name.parse::<Suite>().unwrap().name(), name);
        }
        assert!("bogus".parse::<Suite>().is_err());
    }

    #[test]
    fn closed_form_fixed_point() {
        let x = alpha_fixed_point(3, 0.5);
        assert!((x.coords()[0] - 2.0 / 7.0).abs() < 1e-15);
        assert!((x.last() - 3.0 / 7.0).abs() < 1e-15);
    }
}
