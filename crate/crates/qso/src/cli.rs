//! The `qso` command line.
//!
//! Exit codes: 0 on success, 1 when an analysis or verification fails, 2 for
//! usage and configuration errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use qso_core::analysis::fixed_points::{DEFAULT_BAND, DEFAULT_SOLVER_TOL};
use qso_core::analysis::lyapunov::{catalog_for, LYAPUNOV_SLACK};
use qso_core::analysis::omega::{DEFAULT_CLUSTER_TOL, DEFAULT_PERIOD_TOL};
use qso_core::analysis::{
    check_lyapunov, classify_fixed_point, ergodicity_probe, find_fixed_points, omega_estimate, FixedPointReport,
    LyapunovFn,
};
use qso_core::sampling::Sampler;
use qso_core::scalar::low_period_scan;
use qso_core::{iterate, parse_cycles, Family, FamilySpec, Operator, ScalarMap, SimplexPoint};

use crate::error::{Error, Result};
use crate::formats::{parse_point, read_tensor_file, trajectory_csv};
use crate::report::{eigenvalues, float, point, to_json_string, Report};
use crate::verify::{run_suite, Suite};

#[derive(Debug, Parser)]
#[command(name = "qso", version, about = "Construct, iterate and analyze quadratic stochastic operators")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the operator families.
    Families {
        #[arg(long)]
        json: bool,
    },
    /// Iterate an operator and write the trajectory as CSV.
    Trajectory {
        #[command(flatten)]
        op: OperatorArgs,
        #[command(flatten)]
        start: StartArgs,
        #[arg(long, default_value_t = 100)]
        steps: usize,
        #[arg(long, default_value_t = 1)]
        stride: usize,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Multistart search for fixed points, with classification.
    FixedPoints {
        #[command(flatten)]
        op: OperatorArgs,
        #[arg(long, default_value_t = 0)]
        random_starts: usize,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = DEFAULT_SOLVER_TOL)]
        tol: f64,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Classify a given fixed point by its tangent spectrum.
    Classify {
        #[command(flatten)]
        op: OperatorArgs,
        #[arg(long)]
        x0: String,
        #[arg(long, default_value_t = DEFAULT_BAND)]
        band: f64,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Check Lyapunov monotonicity along seeded trajectories.
    Lyapunov {
        #[command(flatten)]
        op: OperatorArgs,
        /// Function id, e.g. CYCLE_SUM(2); defaults to every applicable one.
        #[arg(long)]
        function: Option<String>,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 100)]
        horizon: usize,
        #[arg(long)]
        seed: Option<u64>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Estimate the omega-limit set of one trajectory.
    Omega {
        #[command(flatten)]
        op: OperatorArgs,
        #[command(flatten)]
        start: StartArgs,
        #[arg(long, default_value_t = 1000)]
        burn_in: usize,
        #[arg(long, default_value_t = 200)]
        window: usize,
        #[arg(long, default_value_t = DEFAULT_CLUSTER_TOL)]
        cluster_tol: f64,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Cesaro means at checkpoints along one trajectory.
    Ergodic {
        #[command(flatten)]
        op: OperatorArgs,
        #[command(flatten)]
        start: StartArgs,
        #[arg(long, value_delimiter = ',', default_value = "10000,100000,1000000")]
        checkpoints: Vec<usize>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Iterate the scalar maps F and f_alpha, or scan for low-period points.
    Scalar {
        /// F or F_ALPHA.
        #[arg(long, default_value = "F")]
        map: String,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long)]
        x0: Option<f64>,
        #[arg(long, default_value_t = 100)]
        steps: usize,
        /// Find roots of f^n(x) = x for this n.
        #[arg(long)]
        scan_period: Option<usize>,
        #[arg(long, default_value_t = 100_000)]
        grid: usize,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Run a verification suite and print PASS/FAIL lines.
    Verify {
        /// regular, quasi_strict, alpha, s2_theorems, scalar, core_properties or all.
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
}

#[derive(Debug, Clone, Args)]
pub struct OperatorArgs {
    /// Family name as listed by `qso families`.
    #[arg(long)]
    pub family: Option<String>,
    #[arg(long)]
    pub m: Option<usize>,
    /// Permutation of 1..m-1 in cycle notation, e.g. "(1 2)(3 4 5)".
    #[arg(long)]
    pub perm: Option<String>,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub theta: Option<f64>,
    #[arg(long)]
    pub lambda: Option<f64>,
    #[arg(long)]
    pub beta: Option<f64>,
    /// Family parameter under any name.
    #[arg(long)]
    pub param: Option<f64>,
    /// Coefficient tensor in text format, instead of a family.
    #[arg(long)]
    pub tensor_file: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct StartArgs {
    /// Initial point as comma-separated coordinates.
    #[arg(long, conflicts_with = "seed")]
    pub x0: Option<String>,
    /// Draw the initial point at random with this seed.
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Args)]
pub struct OutArgs {
    /// Output file; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

impl OperatorArgs {
    pub fn resolve(&self) -> Result<Operator> {
        if let Some(path) = &self.tensor_file {
            if self.family.is_some() || self.perm.is_some() || self.parameter()?.is_some() {
                return Err(Error::config("--tensor-file cannot be combined with family options"));
            }
            let t = read_tensor_file(path)?;
            if let Some(m) = self.m {
                if m != t.dim() {
                    return Err(Error::config(format!("--m {m} does not match the tensor file (m={})", t.dim())));
                }
            }
            return Ok(Operator::custom(t));
        }
        let name = self.family.as_deref().ok_or_else(|| Error::config("either --family or --tensor-file is required"))?;
        let family: Family = name.parse()?;
        let info = family.info();
        let param = match self.parameter()? {
            Some((flag, value)) => {
                if flag != "param" && info.parameter.is_some_and(|p| p != flag) {
                    return Err(Error::config(format!("{} takes --{}, not --{flag}", info.name, info.parameter.unwrap())));
                }
                Some(value)
            }
            None => None,
        };
        let m = self.m.or(info.fixed_m);
        let perm = match (&self.perm, m) {
            (Some(text), Some(m)) if m >= 2 => Some(parse_cycles(text, m - 1)?),
            (Some(_), _) => return Err(Error::config("--perm needs --m")),
            (None, _) => None,
        };
        Ok(Operator::from_spec(FamilySpec::new(family, self.m, perm, param)?)?)
    }

    fn parameter(&self) -> Result<Option<(&'static str, f64)>> {
        let given: Vec<(&'static str, f64)> = [
            ("alpha", self.alpha),
            ("theta", self.theta),
            ("lambda", self.lambda),
            ("beta", self.beta),
            ("param", self.param),
        ]
        .into_iter()
        .filter_map(|(k, v)| v.map(|v| (k, v)))
        .collect();
        match given.as_slice() {
            [] => Ok(None),
            [one] => Ok(Some(*one)),
            _ => Err(Error::config("give at most one of --alpha, --theta, --lambda, --beta, --param")),
        }
    }
}

impl StartArgs {
    fn resolve(&self, m: usize) -> Result<(SimplexPoint, Option<u64>)> {
        match (&self.x0, self.seed) {
            (Some(text), _) => {
                let x = parse_point(text)?;
                if x.dim() != m {
                    return Err(Error::config(format!("--x0 has {} coordinates, operator has m={m}", x.dim())));
                }
                Ok((x, None))
            }
            (None, Some(seed)) => Ok((Sampler::new(seed).interior_point(m), Some(seed))),
            (None, None) => Err(Error::config("give --x0 or --seed")),
        }
    }
}

/// What a successful command concluded.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    Failed,
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = stderr.write_all(text.as_bytes());
            } else {
                let _ = stdout.write_all(text.as_bytes());
            }
            return e.exit_code();
        }
    };
    match execute(cli.command, stdout) {
        Ok(Status::Ok) => 0,
        Ok(Status::Failed) => 1,
        Err(Error::Write(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            if e.is_usage() {
                2
            } else {
                1
            }
        }
    }
}

fn emit(out: &OutArgs, text: &str, stdout: &mut dyn Write) -> Result<()> {
    match &out.out {
        Some(path) => std::fs::write(path, text).map_err(|source| Error::Io { path: path.clone(), source }),
        None => Ok(stdout.write_all(text.as_bytes())?),
    }
}

fn operator_json(op: &Operator) -> Value {
    match &op.spec {
        Some(spec) => json!({
            "family": spec.family.name(),
            "m": spec.m,
            "permutation": spec.permutation.as_ref().map(|p| p.to_string()),
            "parameter": spec.parameter,
            "label": op.label(),
        }),
        None => json!({ "family": "CUSTOM", "m": op.dim(), "label": op.label() }),
    }
}

fn fixed_point_json(r: &FixedPointReport) -> Value {
    json!({
        "point": point(&r.point),
        "residual": float(r.residual),
        "classification": r.classification.as_str(),
        "tangent_eigenvalues": eigenvalues(&r.tangent_eigenvalues),
        "transversal_eigenvalue": float(r.transversal_eigenvalue),
        "boundary": r.boundary,
    })
}

pub fn execute(command: Command, stdout: &mut dyn Write) -> Result<Status> {
    match command {
        Command::Families { json } => cmd_families(json, stdout),
        Command::Trajectory { op, start, steps, stride, out } => {
            let op = op.resolve()?;
            let (x0, _) = start.resolve(op.dim())?;
            if stride == 0 {
                return Err(Error::config("--stride must be at least 1"));
            }
            let traj = iterate(&op.tensor, &x0, steps, stride)?;
            emit(&out, &trajectory_csv(&traj), stdout)?;
            Ok(Status::Ok)
        }
        Command::FixedPoints { op, random_starts, seed, tol, out } => {
            let op = op.resolve()?;
            if random_starts > 0 && seed.is_none() {
                return Err(Error::config("--random-starts needs --seed"));
            }
            if !(tol > 0.0) {
                return Err(Error::config("--tol must be positive"));
            }
            let search = find_fixed_points(&op.tensor, random_starts, tol, seed.unwrap_or(0))?;
            let mut report = Report::new(operator_json(&op))
                .parameter("random_starts", random_starts)
                .parameter("starts_tried", search.starts_tried)
                .parameter("failed_starts", search.failed_starts)
                .tolerance("solver", tol)
                .tolerance("band", DEFAULT_BAND);
            report.seed = seed;
            report.results = search.reports.iter().map(fixed_point_json).collect();
            emit(&out, &report.to_json(), stdout)?;
            Ok(Status::Ok)
        }
        Command::Classify { op, x0, band, out } => {
            let op = op.resolve()?;
            let x = parse_point(&x0)?;
            if !(band >= 0.0) {
                return Err(Error::config("--band must be nonnegative"));
            }
            let r = classify_fixed_point(&op.tensor, &x, band)?;
            let mut report = Report::new(operator_json(&op)).tolerance("band", band);
            report.results = vec![fixed_point_json(&r)];
            emit(&out, &report.to_json(), stdout)?;
            Ok(Status::Ok)
        }
        Command::Lyapunov { op, function, samples, horizon, seed, out } => {
            let op = op.resolve()?;
            let seed = seed.ok_or_else(|| Error::config("lyapunov needs --seed"))?;
            let functions = match function {
                Some(text) => vec![LyapunovFn::parse(&text)?],
                None => catalog_for(&op),
            };
            if functions.is_empty() {
                return Err(Error::config(format!("no catalogued Lyapunov function applies to {}", op.label())));
            }
            let mut report = Report::new(operator_json(&op))
                .parameter("samples", samples)
                .parameter("horizon", horizon)
                .tolerance("slack", LYAPUNOV_SLACK);
            report.seed = Some(seed);
            let mut status = Status::Ok;
            for f in &functions {
                let r = check_lyapunov(&op, f, samples, horizon, seed)?;
                if r.violations > 0 {
                    status = Status::Failed;
                }
                report.results.push(json!({
                    "function": r.function,
                    "direction": r.direction.as_str(),
                    "start_offset": r.start_offset,
                    "checks": r.checks,
                    "violations": r.violations,
                    "worst_violation": float(r.worst_violation),
                    "worst_start": r.worst_start.as_ref().map(point),
                    "worst_step": r.worst_step,
                }));
            }
            emit(&out, &report.to_json(), stdout)?;
            Ok(status)
        }
        Command::Omega { op, start, burn_in, window, cluster_tol, out } => {
            let op = op.resolve()?;
            let (x0, seed) = start.resolve(op.dim())?;
            let omega = omega_estimate(&op.tensor, &x0, burn_in, window, cluster_tol)?;
            let mut report = Report::new(operator_json(&op))
                .parameter("x0", point(&x0))
                .parameter("burn_in", burn_in)
                .parameter("window", window)
                .parameter("period_search_max", omega.period_search_max)
                .tolerance("cluster", cluster_tol)
                .tolerance("period", DEFAULT_PERIOD_TOL);
            report.seed = seed;
            report.results = vec![json!({
                "clusters": omega.cluster_points.iter().map(point).collect::<Vec<_>>(),
                "cluster_sizes": omega.cluster_sizes,
                "detected_period": omega.detected_period,
                "invariance_defect": float(omega.invariance_defect(&op.tensor)?),
            })];
            emit(&out, &report.to_json(), stdout)?;
            Ok(Status::Ok)
        }
        Command::Ergodic { op, start, checkpoints, out } => {
            let op = op.resolve()?;
            let (x0, seed) = start.resolve(op.dim())?;
            if checkpoints.is_empty() || checkpoints.windows(2).any(|w| w[0] >= w[1]) || checkpoints[0] == 0 {
                return Err(Error::config("--checkpoints must be positive and strictly increasing"));
            }
            let r = ergodicity_probe(&op.tensor, &x0, &checkpoints)?;
            let mut report = Report::new(operator_json(&op)).parameter("x0", point(&x0)).parameter("checkpoints", checkpoints);
            report.seed = seed;
            report.results = r
                .samples
                .iter()
                .map(|s| json!({ "n": s.n, "mean": point(&s.mean), "current": point(&s.current), "running_min": float(s.running_min) }))
                .collect();
            report.results.push(json!({
                "fluctuation": float(r.fluctuation),
                "pairwise": r.pairwise.iter().map(|(a, b, d)| json!({ "a": a, "b": b, "distance": float(*d) })).collect::<Vec<_>>(),
            }));
            emit(&out, &report.to_json(), stdout)?;
            Ok(Status::Ok)
        }
        Command::Scalar { map, m, alpha, x0, steps, scan_period, grid, out } => {
            let f = match map.to_ascii_uppercase().as_str() {
                "F" => {
                    if m.is_some() || alpha.is_some() {
                        return Err(Error::config("map F takes no --m or --alpha"));
                    }
                    ScalarMap::F
                }
                "F_ALPHA" => {
                    let (Some(m), Some(alpha)) = (m, alpha) else {
                        return Err(Error::config("map F_ALPHA needs --m and --alpha"));
                    };
                    ScalarMap::f_alpha(m, alpha)?
                }
                other => return Err(Error::config(format!("unknown scalar map `{other}` (expected F or F_ALPHA)"))),
            };
            if x0.is_none() && scan_period.is_none() {
                return Err(Error::config("give --x0 and/or --scan-period"));
            }
            let name = match f {
                ScalarMap::F => json!({ "map": "F" }),
                ScalarMap::FAlpha { m, alpha } => json!({ "map": "F_ALPHA", "m": m, "alpha": alpha }),
            };
            let mut report = Report::new(name).parameter("fixed_point", float(f.fixed_point()));
            if let Some(x) = x0 {
                let xn = f.iterate(x, steps)?;
                report.results.push(json!({
                    "x0": x,
                    "steps": steps,
                    "x_n": float(xn),
                    "distance_to_fixed_point": float((xn - f.fixed_point()).abs()),
                }));
            }
            if let Some(n) = scan_period {
                let roots = low_period_scan(&f, n, grid)?;
                report.results.push(json!({ "scan_period": n, "grid": grid, "roots": roots }));
                report = report.tolerance("root_accept", 1e-10).tolerance("root_merge", 1e-8);
            }
            emit(&out, &report.to_json(), stdout)?;
            Ok(Status::Ok)
        }
        Command::Verify { suite, seed } => {
            let suite: Suite = suite.parse()?;
            let report = run_suite(suite, seed);
            stdout.write_all(report.render().as_bytes())?;
            Ok(if report.passed() { Status::Ok } else { Status::Failed })
        }
    }
}

fn cmd_families(json: bool, stdout: &mut dyn Write) -> Result<Status> {
    let registry = Family::registry();
    if json {
        let list: Vec<Value> = registry
            .iter()
            .map(|i| {
                json!({
                    "name": i.name,
                    "m": i.fixed_m,
                    "min_m": i.min_m,
                    "parameter": i.parameter,
                    "needs_permutation": i.needs_permutation,
                    "formula": i.formula,
                })
            })
            .collect();
        stdout.write_all(to_json_string(&Value::from(list)).as_bytes())?;
    } else {
        writeln!(stdout, "{:<20} {:<6} {:<10} {:<5} formula", "name", "m", "parameter", "perm")?;
        for i in registry {
            let m = i.fixed_m.map_or(format!(">={}", i.min_m), |m| m.to_string());
            writeln!(
                stdout,
                "{:<20} {:<6} {:<10} {:<5} {}",
                i.name,
                m,
                i.parameter.unwrap_or("-"),
                if i.needs_permutation { "yes" } else { "no" },
                i.formula
            )?;
        }
    }
    Ok(Status::Ok)
}

