//! Argument parsing and command dispatch.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::{json, Value};
use zetadist_core::dist::{validate_double, validate_single, DoubleDistSpec, SingleDistSpec};
use zetadist_core::verify::{self, rasa_bound, ClaimOptions, RasaConstants, ScanReport, CLAIMS};
use zetadist_core::zeta::{
    cal_h, h_kernel, hurwitz_zeta_estimate, phi2_estimate, phi_estimate, zeta2_continued_estimate, zeta2_em_estimate,
    Estimate,
};

use crate::config::{CliConfig, FileConfig, FlagOverrides, Range, CONFIG_ENV};
use crate::output::{fmt17, to_json17, Cell, OutputFormat, Payload};
use crate::{CliError, EXIT_CHECK_FAILED, EXIT_OK, EXIT_REJECTED};

#[derive(Debug, Parser)]
#[command(name = "zetadist", version, about = "Hurwitz-Lerch zeta functions and their distributions")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum)]
    pub format: Option<OutputFormat>,
    /// Relative tolerance of the quadratures.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Seed of the sampler.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Worker threads for `check`.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// TOML config file; flags win over its values.
    #[arg(long, global = true, env = CONFIG_ENV)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a special function.
    Eval(EvalArgs),
    /// Densities, characteristic functions, CDFs, quantiles and samples.
    Dist(DistArgs),
    /// Run verification scans by claim id, or `all`.
    Check(CheckArgs),
    /// List the claim catalog.
    Claims,
    /// Constants and value of the Ramachandra-Sankaranarayanan lower bound.
    Rasa(RasaArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EvalFn {
    /// Phi(s, a, z)
    Phi,
    /// zeta(s, a)
    Hurwitz,
    /// Phi2(s1, s2, a, z1, z2)
    Phi2,
    /// zeta2(s1, s2; a)
    Zeta2,
    /// H(a, x)
    H,
    /// cal_h(a; x, y)
    Calh,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    pub function: EvalFn,
    /// Real part of s.
    #[arg(long, allow_hyphen_values = true)]
    pub s: Option<f64>,
    /// Imaginary part of s.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub t: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub s1: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub s2: Option<f64>,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub t1: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub t2: f64,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub a: f64,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub z: f64,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub z1: f64,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub z2: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub x: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub y: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Quantity {
    Density,
    Cf,
    Cdf,
    Quantile,
    Sample,
    Density2,
    Cf2,
    Sample2,
    /// Density and CDF of the theta-marginal of a 2D spec.
    Marginal,
}

#[derive(Debug, Args)]
pub struct DistArgs {
    pub quantity: Quantity,
    #[arg(long, allow_hyphen_values = true)]
    pub sigma: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub sigma1: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub sigma2: Option<f64>,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub a: f64,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub z: f64,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub z1: f64,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub z2: f64,
    /// Single evaluation point; otherwise the grid is used.
    #[arg(long, allow_hyphen_values = true)]
    pub y: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub t: Option<f64>,
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub eta: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub theta: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub t1: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub t2: Option<f64>,
    /// Number of draws.
    #[arg(short = 'n', default_value_t = 1000)]
    pub n: usize,
    /// `default` or `lo:hi:step` (each axis for 2D quantities).
    #[arg(long, allow_hyphen_values = true)]
    pub grid: Option<String>,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    /// Claim id (see `claims`) or `all`.
    pub claim: String,
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub sigma: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub sigma1: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub sigma2: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub z: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub z1: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub z2: Option<f64>,
    /// Upper end of the exceedance search.
    #[arg(long)]
    pub t_max: Option<f64>,
    /// Only `default`; grid sizes come from the `[grid]` table of the config.
    #[arg(long)]
    pub grid: Option<String>,
}

#[derive(Debug, Args)]
pub struct RasaArgs {
    #[arg(long)]
    pub sigma0: f64,
    #[arg(long, default_value_t = 6)]
    pub l: u32,
    #[arg(long, default_value_t = 0.0)]
    pub theta: f64,
    #[arg(long)]
    pub c1: f64,
    #[arg(long)]
    pub t0: f64,
}

/// Parse `args`, run the command, write to `out` / `err`, and return the
/// exit code.
pub fn run<I, T, O, E>(args: I, out: &mut O, err: &mut E) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
    O: Write,
    E: Write,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_REJECTED } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let body = json!({ "error": e.tag(), "message": e.to_string(), "exit_code": e.exit_code() });
            let _ = writeln!(err, "{body}");
            e.exit_code()
        }
    }
}

fn execute<O: Write>(cli: &Cli, out: &mut O) -> Result<u8, CliError> {
    let file = match &cli.config {
        Some(path) => FileConfig::load(path)?,
        None => FileConfig::default(),
    };
    let flags = FlagOverrides {
        format: cli.format,
        seed: cli.seed,
        jobs: cli.jobs,
        tol: cli.tol,
    };
    let cfg = CliConfig::resolve(file, flags)?;
    match &cli.command {
        Command::Eval(a) => {
            eval(a)?.write(out, cfg.format)?;
            Ok(EXIT_OK)
        }
        Command::Dist(a) => {
            dist(a, &cfg)?.write(out, cfg.format)?;
            Ok(EXIT_OK)
        }
        Command::Check(a) => check(a, &cfg, out),
        Command::Claims => {
            let mut p = Payload::new(&["id", "in_suite", "summary"]);
            for c in CLAIMS {
                p.push(vec![Cell::Text(c.id.into()), Cell::Bool(c.in_suite), Cell::Text(c.summary.into())]);
            }
            p.write(out, cfg.format)?;
            Ok(EXIT_OK)
        }
        Command::Rasa(a) => {
            let k = RasaConstants::new(a.sigma0, a.l, a.theta, a.c1)?;
            let bound = rasa_bound(&k, a.t0)?;
            let mut p = Payload::new(&["sigma0", "l", "theta", "c1", "y0", "c2", "c0", "t0", "bound"]);
            p.push(vec![
                k.sigma0.into(),
                Cell::Int(k.l as u64),
                k.theta.into(),
                k.c1.into(),
                k.y0.into(),
                k.c2.into(),
                k.c0.into(),
                a.t0.into(),
                bound.into(),
            ]);
            p.write(out, cfg.format)?;
            Ok(EXIT_OK)
        }
    }
}

fn need(v: Option<f64>, name: &str) -> Result<f64, CliError> {
    v.ok_or_else(|| CliError::Usage(format!("--{name} is required")))
}

fn eval(args: &EvalArgs) -> Result<Payload, CliError> {
    let c = Complex64::new;
    let (est, regime) = match args.function {
        EvalFn::Phi => {
            let s = c(need(args.s, "s")?, args.t);
            let (e, r) = phi_estimate(s, args.a, args.z).map_err(pole_sigma_one)?;
            (e, format!("{r:?}"))
        }
        EvalFn::Hurwitz => {
            let s = c(need(args.s, "s")?, args.t);
            let e = hurwitz_zeta_estimate(s, args.a).map_err(pole_sigma_one)?;
            (e, if s.re > 1.0 { "SeriesAbs" } else { "ContinuedZ1" }.to_string())
        }
        EvalFn::Phi2 => {
            let (s1, s2) = (c(need(args.s1, "s1")?, args.t1), c(need(args.s2, "s2")?, args.t2));
            let (e, r) = phi2_estimate(s1, s2, args.a, args.z1, args.z2)?;
            (e, format!("{r:?}"))
        }
        EvalFn::Zeta2 => {
            let (s1, s2) = (c(need(args.s1, "s1")?, args.t1), c(need(args.s2, "s2")?, args.t2));
            let (x, y) = (s1.re, s2.re);
            if x > 0.0 && x < 1.0 && y > 1.0 && x + y < 2.0 {
                (zeta2_continued_estimate(s1, s2, args.a)?, "ContinuedStrip".to_string())
            } else {
                (zeta2_em_estimate(s1, s2, args.a)?, "EulerMaclaurin".to_string())
            }
        }
        EvalFn::H => {
            let v = h_kernel(args.a, need(args.x, "x")?)?;
            (closed_form(v), "ClosedForm".to_string())
        }
        EvalFn::Calh => {
            let v = cal_h(args.a, need(args.x, "x")?, need(args.y, "y")?)?;
            (closed_form(v), "ClosedForm".to_string())
        }
    };
    let name = args.function.to_possible_value().expect("no skipped variants").get_name().to_string();
    let mut p = Payload::new(&["function", "re", "im", "err_estimate", "regime"]);
    p.push(vec![
        Cell::Text(name),
        est.value.re.into(),
        est.value.im.into(),
        est.err_estimate.into(),
        Cell::Text(regime),
    ]);
    Ok(p)
}

/// Kernels are closed forms; their error is not estimated.
fn closed_form(v: f64) -> Estimate {
    Estimate {
        value: Complex64::new(v, 0.0),
        err_estimate: f64::NAN,
    }
}

/// Phi and zeta have a single pole, at s = 1 with z = 1.
fn pole_sigma_one(e: zetadist_core::Error) -> CliError {
    match e {
        zetadist_core::Error::Pole(_) => {
            CliError::Core(zetadist_core::Error::InvalidDistribution(zetadist_core::Rejection::PoleSigmaOne))
        }
        other => other.into(),
    }
}

fn axis(point: Option<f64>, grid: &Option<String>, default: Range) -> Result<Vec<f64>, CliError> {
    if let Some(v) = point {
        return Ok(vec![v]);
    }
    match grid.as_deref() {
        None | Some("default") => Ok(default.points()),
        Some(text) => Ok(Range::parse(text)?.points()),
    }
}

fn single_meta(p: Payload, spec: &SingleDistSpec) -> Payload {
    p.meta("spec", to_json17(spec))
}

fn double_meta(p: Payload, spec: &DoubleDistSpec) -> Payload {
    p.meta("spec", to_json17(spec))
}

fn dist(args: &DistArgs, cfg: &CliConfig) -> Result<Payload, CliError> {
    let g = &cfg.plot;
    match args.quantity {
        Quantity::Density | Quantity::Cf | Quantity::Cdf | Quantity::Quantile | Quantity::Sample => {
            let spec = validate_single(need(args.sigma, "sigma")?, args.a, args.z)?;
            let p = match args.quantity {
                Quantity::Density => {
                    let mut p = Payload::new(&["y", "value"]);
                    for y in axis(args.y, &args.grid, g.y)? {
                        p.push(vec![y.into(), spec.density(y).into()]);
                    }
                    p
                }
                Quantity::Cf => {
                    let mut p = Payload::new(&["t", "re", "im"]);
                    for t in axis(args.t, &args.grid, g.t)? {
                        let v = spec.cf_with(t, &cfg.quadrature)?;
                        p.push(vec![t.into(), v.re.into(), v.im.into()]);
                    }
                    p
                }
                Quantity::Cdf => {
                    let table = spec.tabulate()?;
                    let mut p = Payload::new(&["y", "value"]);
                    for y in axis(args.y, &args.grid, g.y)? {
                        p.push(vec![y.into(), table.cdf(y).into()]);
                    }
                    p
                }
                Quantity::Quantile => {
                    let table = spec.tabulate()?;
                    let mut p = Payload::new(&["p", "y"]);
                    for q in axis(args.p, &args.grid, g.p)? {
                        p.push(vec![q.into(), table.quantile(q)?.into()]);
                    }
                    p
                }
                _ => {
                    let batch = spec.tabulate()?.sample(args.n, cfg.seed)?;
                    let mut p = Payload::new(&["draw_index", "y"])
                        .meta("seed", Value::from(batch.seed))
                        .meta("method", to_json17(&batch.method));
                    for (i, y) in batch.draws.iter().enumerate() {
                        p.push(vec![Cell::Int(i as u64), (*y).into()]);
                    }
                    p
                }
            };
            Ok(single_meta(p, &spec))
        }
        Quantity::Density2 | Quantity::Cf2 | Quantity::Sample2 | Quantity::Marginal => {
            let spec = validate_double(need(args.sigma1, "sigma1")?, need(args.sigma2, "sigma2")?, args.a, args.z1, args.z2)?;
            let p = match args.quantity {
                Quantity::Density2 => {
                    let mut p = Payload::new(&["eta", "theta", "value"]);
                    let etas = axis(args.eta, &args.grid, g.plane)?;
                    let thetas = axis(args.theta, &args.grid, g.plane)?;
                    for &e in &etas {
                        for &t in &thetas {
                            p.push(vec![e.into(), t.into(), spec.density2(e, t).into()]);
                        }
                    }
                    p
                }
                Quantity::Cf2 => {
                    let mut p = Payload::new(&["t1", "t2", "re", "im"]);
                    let t1s = axis(args.t1, &args.grid, g.t2)?;
                    let t2s = axis(args.t2, &args.grid, g.t2)?;
                    for &t1 in &t1s {
                        for &t2 in &t2s {
                            let v = spec.cf2_with(t1, t2, &cfg.quadrature)?;
                            p.push(vec![t1.into(), t2.into(), v.re.into(), v.im.into()]);
                        }
                    }
                    p
                }
                Quantity::Marginal => {
                    let table = spec.theta_marginal_cdf()?;
                    let mut p = Payload::new(&["theta", "density", "cdf"]);
                    for t in axis(args.theta, &args.grid, g.plane)? {
                        let d = spec.marginal_theta_with(t, &cfg.quadrature)?;
                        p.push(vec![t.into(), d.into(), table.cdf(t).into()]);
                    }
                    p
                }
                _ => {
                    let batch = spec.sample2(args.n, cfg.seed)?;
                    let mut p = Payload::new(&["draw_index", "eta", "theta"])
                        .meta("seed", Value::from(batch.seed))
                        .meta("method", to_json17(&batch.method));
                    for (i, (e, t)) in batch.draws.iter().enumerate() {
                        p.push(vec![Cell::Int(i as u64), (*e).into(), (*t).into()]);
                    }
                    p
                }
            };
            Ok(double_meta(p, &spec))
        }
    }
}

fn check<O: Write>(args: &CheckArgs, cfg: &CliConfig, out: &mut O) -> Result<u8, CliError> {
    if let Some(g) = args.grid.as_deref() {
        if g != "default" {
            return Err(CliError::Usage(format!(
                "check accepts only `--grid default`; set grid sizes in the [grid] table of {CONFIG_ENV}"
            )));
        }
    }
    let ids: Vec<&str> = if args.claim == "all" {
        CLAIMS.iter().filter(|c| c.in_suite).map(|c| c.id).collect()
    } else if let Some(c) = CLAIMS.iter().find(|c| c.id == args.claim) {
        vec![c.id]
    } else {
        return Err(CliError::Usage(format!("unknown claim `{}`; run `zetadist claims`", args.claim)));
    };
    let opts = ClaimOptions {
        a: args.a,
        sigma: args.sigma,
        sigma1: args.sigma1,
        sigma2: args.sigma2,
        z: args.z,
        z1: args.z1,
        z2: args.z2,
        t_max: args.t_max,
        grid: cfg.grid,
    };
    let reports = run_parallel(&ids, &opts, cfg.jobs)?;
    write_reports(&reports, cfg.format, out)?;
    Ok(if reports.iter().all(|r| r.passed) { EXIT_OK } else { EXIT_CHECK_FAILED })
}

/// Run the claims on `jobs` threads; results keep the order of `ids`.
fn run_parallel(ids: &[&str], opts: &ClaimOptions, jobs: usize) -> Result<Vec<ScanReport>, CliError> {
    let slots: Vec<Mutex<Option<zetadist_core::Result<Vec<ScanReport>>>>> = ids.iter().map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    std::thread::scope(|scope| {
        for _ in 0..jobs.min(ids.len()) {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= ids.len() {
                    break;
                }
                let r = verify::run_claim(ids[i], opts);
                *slots[i].lock().expect("no poisoned slot") = Some(r);
            });
        }
    });
    let mut out = Vec::new();
    for s in slots {
        let r = s.into_inner().expect("no poisoned slot").expect("every slot filled");
        out.extend(r?);
    }
    Ok(out)
}

fn write_reports<O: Write>(reports: &[ScanReport], format: OutputFormat, out: &mut O) -> Result<(), CliError> {
    match format {
        OutputFormat::Json => {
            for r in reports {
                writeln!(out, "{}", to_json17(r))?;
            }
        }
        OutputFormat::Csv => {
            let mut p = Payload::new(&[
                "claim_id",
                "passed",
                "max_slack",
                "violations",
                "witness_input",
                "witness_value",
                "grid",
                "note",
            ]);
            for r in reports {
                let (wi, wv) = match &r.witness {
                    Some(w) => (w.input.iter().map(|x| fmt17(*x)).collect::<Vec<_>>().join(" "), w.value),
                    None => (String::new(), f64::NAN),
                };
                p.push(vec![
                    Cell::Text(r.claim_id.clone()),
                    Cell::Bool(r.passed),
                    r.max_slack.into(),
                    Cell::Int(r.violations.len() as u64),
                    Cell::Text(wi),
                    wv.into(),
                    Cell::Text(r.grid.clone()),
                    Cell::Text(r.note.clone().unwrap_or_default()),
                ]);
            }
            p.write(out, format)?;
        }
    }
    Ok(())
}
