//! Command-line surface: problem files in, key=value reports out.
//!
//! Exit status is 0 on success, 2 when a hypothesis is refuted or the
//! iteration does not converge, and 1 for usage, file and parse errors.

pub mod problem;

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use fgcouple::{
    apriori_bound, condition_brute_force, estimate_constants, grid_residual_minimizer, solve,
    solve_checked, verify_condition, BigRational, ClassTag, Error, FixedPointResult, GridSpec,
    ProductPoint, SamplerConfig, Scalar, SolveConfig,
};

pub use problem::{emit_problem, parse_problem, ProblemFile};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_REFUTED: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "fgcouple", version, about = "FG-coupled fixed points of mixed monotone map pairs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Common {
    /// Problem file.
    file: PathBuf,
    /// Run in exact rational arithmetic instead of f64.
    #[arg(long)]
    exact: bool,
}

#[derive(Debug, Args)]
struct Sampling {
    /// RNG seed for every sampled check.
    #[arg(long)]
    seed: u64,
    #[arg(long, default_value_t = fgcouple::sampling::DEFAULT_SAMPLES)]
    samples: usize,
    /// Radius replacing infinite box edges.
    #[arg(long, default_value_t = fgcouple::sampling::DEFAULT_RADIUS)]
    radius: f64,
}

impl Sampling {
    fn config(&self) -> SamplerConfig {
        SamplerConfig::new(self.samples, self.seed).with_radius(self.radius)
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Iterate from the seed point and print the trace.
    Solve {
        #[command(flatten)]
        common: Common,
        /// Sets both the step and the residual tolerance.
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        max_iter: Option<usize>,
        /// With a seed, also run the sampled hypothesis checks.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = fgcouple::sampling::DEFAULT_SAMPLES)]
        samples: usize,
    },
    /// Check the contraction class, mixed monotonicity and the seed point.
    Verify {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// Fit the smallest admissible constants of a class from samples.
    Estimate {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        sampling: Sampling,
        /// Class to fit; defaults to the file's class, else banach.
        #[arg(long)]
        class: Option<String>,
    },
    /// Print the a priori bounds for j = 0..=steps.
    Certify {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 20)]
        steps: usize,
    },
    /// Grid residual minimizer and exhaustive condition check.
    Oracle {
        #[command(flatten)]
        common: Common,
        /// Points per axis for the residual scan.
        #[arg(long, default_value_t = 101)]
        grid: usize,
        /// Points per axis for the condition scan.
        #[arg(long, default_value_t = 21)]
        cond_grid: usize,
        #[arg(long, default_value_t = fgcouple::sampling::DEFAULT_RADIUS)]
        radius: f64,
    },
}

impl Command {
    fn common(&self) -> &Common {
        match self {
            Command::Solve { common, .. }
            | Command::Verify { common, .. }
            | Command::Estimate { common, .. }
            | Command::Certify { common, .. }
            | Command::Oracle { common, .. } => common,
        }
    }
}

/// Failures that end a command before a full report exists.
enum Failure {
    Usage(String),
    Refuted(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Estimation(_) | Error::Divergence { .. } => Failure::Refuted(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type Outcome = std::result::Result<(i32, String), Failure>;

/// Runs one invocation; `argv[0]` is the program name.
pub fn run_command<I, T>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            return (code, e.to_string());
        }
    };
    let common = cli.command.common();
    let text = match std::fs::read_to_string(&common.file) {
        Ok(t) => t,
        Err(e) => return (EXIT_USAGE, format!("error: cannot read {}: {e}\n", common.file.display())),
    };
    let outcome = if common.exact {
        dispatch::<BigRational>(&cli.command, &text, "rational")
    } else {
        dispatch::<f64>(&cli.command, &text, "f64")
    };
    match outcome {
        Ok(done) => done,
        Err(Failure::Usage(msg)) => (EXIT_USAGE, format!("error: {msg}\n")),
        Err(Failure::Refuted(msg)) => (EXIT_REFUTED, format!("error: {msg}\n")),
    }
}

fn f64_literal<S: Scalar>(v: f64, what: &str) -> std::result::Result<S, Failure> {
    S::from_f64(v).ok_or_else(|| Failure::Usage(format!("{what} must be finite")))
}

fn num<S: Scalar>(v: &S) -> String {
    format!("{:.16e}", v.as_f64())
}

fn coords<S: Scalar>(v: &[S]) -> String {
    let parts: Vec<String> = v.iter().map(num).collect();
    format!("[{}]", parts.join(", "))
}

fn header(out: &mut String, key: &str, value: impl std::fmt::Display) {
    let _ = writeln!(out, "{key}={value}");
}

fn require_seed<S: Scalar>(p: &ProblemFile<S>) -> std::result::Result<ProductPoint<S>, Failure> {
    p.seed
        .clone()
        .ok_or_else(|| Failure::Usage("problem file has no seed section".into()))
}

fn dispatch<S: Scalar>(cmd: &Command, text: &str, scalar_name: &str) -> Outcome {
    let problem = parse_problem::<S>(text)?;
    let pair = problem.pair()?;
    let mut out = String::new();
    let name = match cmd {
        Command::Solve { .. } => "solve",
        Command::Verify { .. } => "verify",
        Command::Estimate { .. } => "estimate",
        Command::Certify { .. } => "certify",
        Command::Oracle { .. } => "oracle",
    };
    header(&mut out, "command", name);
    header(&mut out, "scalar", scalar_name);

    match cmd {
        Command::Solve {
            tol,
            max_iter,
            seed,
            samples,
            ..
        } => {
            let p0 = require_seed(&problem)?;
            let mut cfg = problem.solve.clone().unwrap_or_default();
            if let Some(t) = tol {
                let t: S = f64_literal(*t, "--tol")?;
                cfg.tol_step = t.clone();
                cfg.tol_residual = t;
            }
            if let Some(n) = max_iter {
                cfg.max_iter = *n;
            }
            let class = problem.class.as_ref();
            let result = match seed {
                Some(s) => solve_checked(&pair, class, &p0, &cfg, &SamplerConfig::new(*samples, *s))?,
                None => solve(&pair, class, &p0, &cfg)?,
            };
            let ok = write_solve_report(&mut out, &result, &cfg);
            Ok((if ok { EXIT_OK } else { EXIT_REFUTED }, out))
        }
        Command::Verify { sampling, .. } => {
            let class = problem
                .class
                .as_ref()
                .ok_or_else(|| Failure::Usage("problem file has no class section".into()))?;
            let cfg = sampling.config();
            header(&mut out, "seed", cfg.seed);
            header(&mut out, "samples", cfg.samples);
            header(&mut out, "class", class);
            let mut ok = true;
            if let Some(p0) = &problem.seed {
                let seed_ok = pair.check_seed(p0)?;
                ok &= seed_ok;
                header(&mut out, "seed_ok", seed_ok);
            }
            let monotone = pair.check_mixed_monotone(&cfg)?;
            ok &= monotone.is_clean();
            header(&mut out, "monotone_samples", monotone.samples_checked);
            header(&mut out, "monotone_violations", monotone.violations.len());
            for v in monotone.violations.iter().take(5) {
                header(&mut out, "monotone_violation", format!("{} low={} high={} fixed={}", v.clause, v.low, v.high, v.fixed));
            }
            let report = verify_condition(class, &pair, &cfg)?;
            ok &= report.is_clean();
            header(&mut out, "condition_pairs", report.samples_checked);
            header(&mut out, "condition_worst_slack", num(&report.worst_slack));
            header(&mut out, "condition_violations", report.violations.len());
            for v in report.violations.iter().take(5) {
                header(
                    &mut out,
                    "condition_violation",
                    format!("{:?} high={} low={} lhs={} rhs={}", v.side, v.high, v.low, num(&v.lhs), num(&v.rhs)),
                );
            }
            header(&mut out, "status", if ok { "ok" } else { "refuted" });
            Ok((if ok { EXIT_OK } else { EXIT_REFUTED }, out))
        }
        Command::Estimate { sampling, class, .. } => {
            let tag = match class {
                Some(name) => ClassTag::from_name(name)?,
                None => problem.class.as_ref().map_or(ClassTag::Banach, |c| c.tag()),
            };
            let cfg = sampling.config();
            header(&mut out, "seed", cfg.seed);
            header(&mut out, "samples", cfg.samples);
            header(&mut out, "tag", tag);
            let fitted = estimate_constants(tag, &pair, &cfg)?;
            for (name, v) in tag.constant_names().iter().zip(fitted.constants()) {
                header(&mut out, name, num(&v));
            }
            header(&mut out, "class", &fitted);
            Ok((EXIT_OK, out))
        }
        Command::Certify { steps, .. } => {
            let class = problem
                .class
                .as_ref()
                .ok_or_else(|| Failure::Usage("problem file has no class section".into()))?;
            let p0 = require_seed(&problem)?;
            let p1 = pair.iterate_step(&p0)?;
            let cert = fgcouple::Certificate::new(class, &p0, &p1)?;
            write_certificate(&mut out, &cert);
            let _ = writeln!(out);
            let _ = writeln!(out, "{:>6} {:>24} {:>24}", "j", "bound_x", "bound_y");
            for j in 0..=*steps {
                let (bx, by) = apriori_bound(&cert, j);
                let _ = writeln!(out, "{:>6} {:>24} {:>24}", j, num(&bx), num(&by));
            }
            Ok((EXIT_OK, out))
        }
        Command::Oracle {
            grid,
            cond_grid,
            radius,
            ..
        } => {
            let spec = GridSpec::new(*grid).with_radius(*radius);
            let (p, r) = grid_residual_minimizer(&pair, &spec)?;
            header(&mut out, "grid", grid);
            header(&mut out, "clamp_radius", radius);
            header(&mut out, "minimizer_x", coords(p.x.coords()));
            header(&mut out, "minimizer_y", coords(p.y.coords()));
            header(&mut out, "minimizer_residual", num(&r));
            let mut ok = true;
            if let Some(class) = &problem.class {
                let report = condition_brute_force(class, &pair, &GridSpec::new(*cond_grid).with_radius(*radius))?;
                ok = report.is_clean();
                header(&mut out, "cond_grid", cond_grid);
                header(&mut out, "class", class);
                header(&mut out, "condition_pairs", report.samples_checked);
                header(&mut out, "condition_worst_slack", num(&report.worst_slack));
                header(&mut out, "condition_violations", report.violations.len());
            }
            header(&mut out, "status", if ok { "ok" } else { "refuted" });
            Ok((if ok { EXIT_OK } else { EXIT_REFUTED }, out))
        }
    }
}

fn write_certificate<S: Scalar>(out: &mut String, cert: &fgcouple::Certificate<S>) {
    header(out, "class", &cert.class);
    header(out, "delta1", num(&cert.delta1));
    header(out, "delta2", num(&cert.delta2));
    header(out, "disp_x", num(&cert.disp_x));
    header(out, "disp_y", num(&cert.disp_y));
    header(out, "bound_form", cert.bound_form.name());
}

/// Writes the solve report; returns whether the run counts as a success.
fn write_solve_report<S: Scalar>(out: &mut String, r: &FixedPointResult<S>, cfg: &SolveConfig<S>) -> bool {
    let h = &r.hypotheses;
    header(out, "mode", h.mode.name());
    header(out, "tol_step", num(&cfg.tol_step));
    header(out, "tol_residual", num(&cfg.tol_residual));
    header(out, "max_iter", cfg.max_iter);
    header(out, "seed_ok", h.seed_ok);
    if let Some(m) = &h.monotone {
        header(out, "monotone_violations", m.violations.len());
    }
    if let Some(c) = &h.condition {
        header(out, "condition_violations", c.violations.len());
        header(out, "condition_worst_slack", num(&c.worst_slack));
    }
    header(out, "trajectory_checked", h.trajectory_checked);
    header(out, "trajectory_violations", h.trajectory_violations.len());
    header(out, "converged", r.converged);
    header(out, "iterations", r.trace.steps());
    header(out, "point_x", coords(r.point.x.coords()));
    header(out, "point_y", coords(r.point.y.coords()));
    header(out, "residual", num(r.trace.residuals.last().expect("nonempty trace")));
    if let Some(cert) = &r.certificate {
        write_certificate(out, cert);
    }
    let ok = r.converged && h.all_hold();
    header(out, "status", if ok { "ok" } else if r.converged { "hypotheses-failed" } else { "not-converged" });
    let _ = writeln!(out);

    let dx = r.point.x.dim();
    let dy = r.point.y.dim();
    let mut cols = vec![format!("{:>6}", "j")];
    cols.extend((0..dx).map(|i| format!("{:>24}", format!("x[{i}]"))));
    cols.extend((0..dy).map(|i| format!("{:>24}", format!("y[{i}]"))));
    for c in ["step", "residual", "bound_x", "bound_y"] {
        cols.push(format!("{c:>24}"));
    }
    let _ = writeln!(out, "{}", cols.join(" "));
    let dash = || format!("{:>24}", "-");
    for (j, p) in r.trace.iterates.iter().enumerate() {
        let mut row = vec![format!("{j:>6}")];
        row.extend(p.x.coords().iter().chain(p.y.coords()).map(|v| format!("{:>24}", num(v))));
        row.push(r.trace.step_distances.get(j).map_or_else(dash, |s| format!("{:>24}", num(s))));
        row.push(format!("{:>24}", num(&r.trace.residuals[j])));
        match &r.certificate {
            Some(cert) => {
                let (bx, by) = apriori_bound(cert, j);
                row.push(format!("{:>24}", num(&bx)));
                row.push(format!("{:>24}", num(&by)));
            }
            None => {
                row.push(dash());
                row.push(dash());
            }
        }
        let _ = writeln!(out, "{}", row.join(" "));
    }
    ok
}
