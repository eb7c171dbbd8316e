//! Command-line front end.
//!
//! Subcommands: `solve` (universal profiles), `branch` (frequency/energy
//! sweeps and inversion), `hls` (sharp-bound reports), `oracle` (direct
//! minimization), and `reproduce` (the full constants table with pass/fail
//! gating). Exit codes: 0 success, 1 computational failure, 2 usage error.
//!
//! All numeric output is printed with 17 significant digits through the same
//! format paths, so identical inputs give byte-identical files.

use std::fmt::Write as FmtWrite;
use std::io::Write as IoWrite;
use std::path::{Path, PathBuf};

use clap::{Arg, ArgAction, Command};

use crate::branch::{
    e0_of_lambda, lambdas_of_omega, omega_of_lambda, omega_star, sweep, BranchConstants,
};
use crate::error::Error;
use crate::functionals::{log_moment, particle_number, tail_estimates, virial_report};
use crate::hls::{builtin_profile, dilation_scan, hls_check, ProfileSpec};
use crate::oracle::{gradient_selftest, minimize_energy, GridConfig, OptConfig};
use crate::shooting::{solve_universal, validate_solution, ShootingConfig, UniversalSolution};

/// Entry point; returns the process exit code.
pub fn run(argv: &[String]) -> i32 {
    let matches = match command().try_get_matches_from(argv) {
        Ok(m) => m,
        Err(e)
            if matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            ) =>
        {
            print!("{e}");
            return 0;
        }
        Err(e) => {
            eprint!("{e}");
            return 2;
        }
    };
    let outcome = match matches.subcommand() {
        Some(("solve", sub)) => cmd_solve(sub),
        Some(("branch", sub)) => cmd_branch(sub),
        Some(("hls", sub)) => cmd_hls(sub),
        Some(("oracle", sub)) => cmd_oracle(sub),
        Some(("reproduce", sub)) => cmd_reproduce(sub),
        _ => unreachable!("subcommand required"),
    };
    match outcome {
        Ok(code) => code,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            2
        }
        Err(CliError::Failed(err)) => {
            eprintln!("error: {err}");
            1
        }
    }
}

#[derive(Debug)]
enum CliError {
    /// Bad arguments or malformed specs: exit 2.
    Usage(String),
    /// The computation itself failed: exit 1.
    Failed(Error),
}

impl From<Error> for CliError {
    fn from(err: Error) -> Self {
        CliError::Failed(err)
    }
}

type CliResult = Result<i32, CliError>;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn command() -> Command {
    Command::new("sn2d")
        .about("Bound states of the planar Schrodinger-Newton system")
        .version(env!("CARGO_PKG_VERSION"))
        .subcommand_required(true)
        .arg_required_else_help(true)
        .subcommand(
            Command::new("solve")
                .about("Shoot for a universal radial solution and write it out")
                .arg(
                    Arg::new("m")
                        .long("m")
                        .value_parser(clap::value_parser!(u32))
                        .default_value("0")
                        .help("angular index"),
                )
                .arg(
                    Arg::new("tol")
                        .long("tol")
                        .value_parser(clap::value_parser!(f64))
                        .default_value("1e-12")
                        .help("relative amplitude tolerance of the bisection"),
                )
                .arg(
                    Arg::new("rmax")
                        .long("rmax")
                        .value_parser(clap::value_parser!(f64))
                        .default_value("40")
                        .help("integration range"),
                )
                .arg(
                    Arg::new("out")
                        .long("out")
                        .required(true)
                        .value_parser(clap::value_parser!(PathBuf))
                        .help("solution CSV path; a JSON summary lands next to it"),
                ),
        )
        .subcommand(
            Command::new("branch")
                .about("Sweep or invert the frequency/energy branch formulas")
                .arg(
                    Arg::new("gamma")
                        .long("gamma")
                        .value_parser(clap::value_parser!(f64))
                        .default_value("1")
                        .help("coupling"),
                )
                .arg(
                    Arg::new("lambda-min")
                        .long("lambda-min")
                        .value_parser(clap::value_parser!(f64))
                        .help("sweep start"),
                )
                .arg(
                    Arg::new("lambda-max")
                        .long("lambda-max")
                        .value_parser(clap::value_parser!(f64))
                        .help("sweep end"),
                )
                .arg(
                    Arg::new("points")
                        .long("points")
                        .value_parser(clap::value_parser!(usize))
                        .help("sweep resolution"),
                )
                .arg(
                    Arg::new("invert")
                        .long("invert")
                        .action(ArgAction::SetTrue)
                        .help("find the particle numbers for one frequency"),
                )
                .arg(
                    Arg::new("omega")
                        .long("omega")
                        .value_parser(clap::value_parser!(f64))
                        .help("frequency to invert"),
                )
                .arg(
                    Arg::new("source")
                        .long("source")
                        .value_parser(["computed", "reference"])
                        .default_value("computed")
                        .help("branch constants: live solve or literature values"),
                )
                .arg(
                    Arg::new("out")
                        .long("out")
                        .value_parser(clap::value_parser!(PathBuf))
                        .help("sweep CSV path (stdout if omitted)"),
                ),
        )
        .subcommand(
            Command::new("hls")
                .about("Evaluate the sharp interaction bound on a profile")
                .arg(Arg::new("profile").long("profile").required(true).help(
                    "gaussian:lambda=..,width=.. | exponential:.. | ground:lambda=.. | CSV path",
                ))
                .arg(
                    Arg::new("source")
                        .long("source")
                        .value_parser(["computed", "reference"])
                        .default_value("computed"),
                )
                .arg(
                    Arg::new("out")
                        .long("out")
                        .value_parser(clap::value_parser!(PathBuf))
                        .help("report JSON path (stdout if omitted)"),
                ),
        )
        .subcommand(
            Command::new("oracle")
                .about("Minimize the energy directly at fixed mass")
                .arg(
                    Arg::new("lambda")
                        .long("lambda")
                        .required(true)
                        .value_parser(clap::value_parser!(f64)),
                )
                .arg(
                    Arg::new("gamma")
                        .long("gamma")
                        .value_parser(clap::value_parser!(f64))
                        .default_value("1"),
                )
                .arg(
                    Arg::new("points")
                        .long("points")
                        .value_parser(clap::value_parser!(usize))
                        .default_value("1024"),
                )
                .arg(
                    Arg::new("out")
                        .long("out")
                        .value_parser(clap::value_parser!(PathBuf))
                        .help("summary JSON path (stdout if omitted)"),
                ),
        )
        .subcommand(
            Command::new("reproduce")
                .about("Recompute the constants table, gate it, and write data files")
                .arg(
                    Arg::new("out-dir")
                        .long("out-dir")
                        .value_parser(clap::value_parser!(PathBuf))
                        .default_value("reproduce")
                        .help("where the data files go"),
                ),
        )
}

/// Deterministic JSON assembly: fixed key order, 17-digit floats.
struct Json {
    buf: String,
    first: bool,
}

impl Json {
    fn new() -> Self {
        Json {
            buf: String::from("{"),
            first: true,
        }
    }

    fn key(&mut self, k: &str) {
        if self.first {
            self.first = false;
        } else {
            self.buf.push(',');
        }
        write!(self.buf, "\"{k}\":").unwrap();
    }

    fn str(mut self, k: &str, v: &str) -> Self {
        self.key(k);
        write!(self.buf, "\"{v}\"").unwrap();
        self
    }

    fn num(mut self, k: &str, v: f64) -> Self {
        self.key(k);
        write!(self.buf, "{v:.16e}").unwrap();
        self
    }

    fn int(mut self, k: &str, v: u64) -> Self {
        self.key(k);
        write!(self.buf, "{v}").unwrap();
        self
    }

    fn bool(mut self, k: &str, v: bool) -> Self {
        self.key(k);
        write!(self.buf, "{v}").unwrap();
        self
    }

    fn finish(mut self) -> String {
        self.buf.push_str("}\n");
        self.buf
    }
}

fn emit(out: Option<&PathBuf>, content: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, content).map_err(|e| CliError::Failed(e.into())),
        None => {
            print!("{content}");
            std::io::stdout().flush().ok();
            Ok(())
        }
    }
}

fn shooting_config(tol: f64, rmax: f64) -> Result<ShootingConfig, CliError> {
    if !(tol > 0.0 && tol < 1.0) {
        return Err(usage(format!("--tol must be in (0, 1), got {tol}")));
    }
    if !(rmax > 1.0 && rmax.is_finite()) {
        return Err(usage(format!("--rmax must exceed 1, got {rmax}")));
    }
    let mut config = ShootingConfig {
        alpha_tol: tol,
        ..ShootingConfig::default()
    };
    config.integrator.r_max = rmax;
    config.integrator.rel_tol = (tol * 100.0).clamp(1e-12, 1e-6);
    config.integrator.abs_tol = config.integrator.rel_tol / 100.0;
    Ok(config)
}

fn cmd_solve(args: &clap::ArgMatches) -> CliResult {
    let m = *args.get_one::<u32>("m").unwrap();
    let tol = *args.get_one::<f64>("tol").unwrap();
    let rmax = *args.get_one::<f64>("rmax").unwrap();
    let out = args.get_one::<PathBuf>("out").unwrap();
    let config = shooting_config(tol, rmax)?;

    let sol = solve_universal(m, &config)?;
    let validation = validate_solution(&sol)?;
    write_solution_csv(&sol, out)?;

    let profile = sol.profile()?;
    let n_quad = particle_number(&profile);
    let i_quad = log_moment(&profile);
    let tail = tail_estimates(&sol)?;
    let virial = virial_report(&sol)?;
    let constants = BranchConstants::from_solution(&sol)?;

    let json = Json::new()
        .str("schema_version", "1")
        .int("m", m as u64)
        .num("alpha", sol.alpha)
        .num("n_value", n_quad)
        .num("i_value", i_quad)
        .num("n_tail", tail.n_tail)
        .num("i_tail", tail.i_tail)
        .num("lambda0", constants.lambda0)
        .num("virial_residual", virial.virial_residual)
        .num("poisson_residual", validation.poisson_residual)
        .num("r_max_used", sol.r_max_used)
        .int("samples", sol.samples.len() as u64)
        .bool("validated", validation.all_passed())
        .finish();
    std::fs::write(out.with_extension("json"), json).map_err(Error::from)?;
    if !validation.all_passed() {
        return Err(CliError::Failed(Error::InvalidInput(
            "solution failed validation; see the JSON summary".into(),
        )));
    }
    Ok(0)
}

fn write_solution_csv(sol: &UniversalSolution, path: &Path) -> Result<(), CliError> {
    let mut buf = String::from("r,u,W,Wp\n");
    for s in &sol.samples {
        writeln!(buf, "{:.16e},{:.16e},{:.16e},{:.16e}", s.r, s.u, s.w, s.wp).unwrap();
    }
    std::fs::write(path, buf).map_err(Error::from)?;
    Ok(())
}

/// The constants the branch commands run on, per --source.
fn resolve_constants(args: &clap::ArgMatches) -> Result<BranchConstants, CliError> {
    match args.get_one::<String>("source").unwrap().as_str() {
        "reference" => Ok(BranchConstants::reference()),
        _ => {
            let sol = solve_universal(0, &ShootingConfig::default())?;
            Ok(BranchConstants::from_solution(&sol)?)
        }
    }
}

fn sweep_threads(points: usize) -> Result<usize, CliError> {
    let default = std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1);
    let cap = match std::env::var("SN2D_THREADS") {
        Ok(v) => v.parse::<usize>().ok().filter(|n| *n >= 1).ok_or_else(|| {
            usage(format!(
                "SN2D_THREADS must be a positive integer, got '{v}'"
            ))
        })?,
        Err(_) => default,
    };
    Ok(cap.min(points).max(1))
}

fn cmd_branch(args: &clap::ArgMatches) -> CliResult {
    let gamma = *args.get_one::<f64>("gamma").unwrap();
    let constants = resolve_constants(args)?;

    if args.get_flag("invert") {
        let omega = *args
            .get_one::<f64>("omega")
            .ok_or_else(|| usage("--invert needs --omega"))?;
        let roots = lambdas_of_omega(omega, gamma, &constants)?;
        let mut buf = String::from("lambda\n");
        for root in roots {
            writeln!(buf, "{root:.16e}").unwrap();
        }
        emit(args.get_one::<PathBuf>("out"), &buf)?;
        return Ok(0);
    }

    let lambda_min = *args
        .get_one::<f64>("lambda-min")
        .ok_or_else(|| usage("sweep needs --lambda-min"))?;
    let lambda_max = *args
        .get_one::<f64>("lambda-max")
        .ok_or_else(|| usage("sweep needs --lambda-max"))?;
    let points = *args
        .get_one::<usize>("points")
        .ok_or_else(|| usage("sweep needs --points"))?;
    let threads = sweep_threads(points)?;
    let rows = sweep(gamma, lambda_min, lambda_max, points, threads, &constants)?;
    let mut buf = String::from("gamma,lambda,omega,e0\n");
    for p in rows {
        writeln!(
            buf,
            "{:.16e},{:.16e},{:.16e},{:.16e}",
            p.gamma, p.lambda, p.omega, p.e0
        )
        .unwrap();
    }
    emit(args.get_one::<PathBuf>("out"), &buf)?;
    Ok(0)
}

/// A profile argument: one of the builtin families or a CSV path.
enum ParsedProfile {
    Gaussian { lambda: f64, width: f64 },
    Exponential { lambda: f64, width: f64 },
    Ground { lambda: f64 },
    Table(PathBuf),
}

fn parse_profile_arg(s: &str) -> Result<ParsedProfile, CliError> {
    let Some((kind, params)) = s.split_once(':') else {
        return Ok(ParsedProfile::Table(PathBuf::from(s)));
    };
    let kind_lower = kind.to_ascii_lowercase();
    if !matches!(kind_lower.as_str(), "gaussian" | "exponential" | "ground") {
        // Paths may legitimately contain ':'.
        return Ok(ParsedProfile::Table(PathBuf::from(s)));
    }
    let mut lambda = None;
    let mut width = None;
    for pair in params.split(',').filter(|p| !p.is_empty()) {
        let (key, value) = pair
            .split_once('=')
            .ok_or_else(|| usage(format!("expected key=value in profile spec, got '{pair}'")))?;
        let value: f64 = value
            .trim()
            .parse()
            .map_err(|_| usage(format!("bad number '{value}' in profile spec")))?;
        match key.trim() {
            "lambda" => lambda = Some(value),
            "width" => width = Some(value),
            other => return Err(usage(format!("unknown profile parameter '{other}'"))),
        }
    }
    let lambda = lambda.ok_or_else(|| usage("profile spec needs lambda=<value>"))?;
    match kind_lower.as_str() {
        "gaussian" => Ok(ParsedProfile::Gaussian {
            lambda,
            width: width.ok_or_else(|| usage("gaussian needs width=<value>"))?,
        }),
        "exponential" => Ok(ParsedProfile::Exponential {
            lambda,
            width: width.ok_or_else(|| usage("exponential needs width=<value>"))?,
        }),
        _ => {
            if width.is_some() {
                return Err(usage("ground profiles take no width"));
            }
            Ok(ParsedProfile::Ground { lambda })
        }
    }
}

fn hls_report_json(report: &crate::hls::HlsReport) -> String {
    Json::new()
        .str("schema_version", "1")
        .num("lambda", report.lambda)
        .num("t_value", report.t_value)
        .num("v_value", report.v_value)
        .num("lhs", report.lhs)
        .num("rhs_sharp", report.rhs_sharp)
        .num("rhs_weak", report.rhs_weak)
        .num("slack_sharp", report.slack_sharp)
        .num("slack_weak", report.slack_weak)
        .num("constant_check", report.constant_check)
        .finish()
}

fn cmd_hls(args: &clap::ArgMatches) -> CliResult {
    let parsed = parse_profile_arg(args.get_one::<String>("profile").unwrap())?;
    let constants = resolve_constants(args)?;
    let profile = match parsed {
        ParsedProfile::Gaussian { lambda, width } => {
            builtin_profile(&ProfileSpec::Gaussian { lambda, width })?
        }
        ParsedProfile::Exponential { lambda, width } => {
            builtin_profile(&ProfileSpec::Exponential { lambda, width })?
        }
        ParsedProfile::Ground { lambda } => {
            let sol = solve_universal(0, &ShootingConfig::default())?;
            builtin_profile(&ProfileSpec::GroundState {
                lambda,
                solution: &sol,
            })?
        }
        ParsedProfile::Table(path) => builtin_profile(&ProfileSpec::Table { path: &path })?,
    };
    let report = hls_check(&profile, &constants)?;
    emit(args.get_one::<PathBuf>("out"), &hls_report_json(&report))?;
    Ok(0)
}

fn cmd_oracle(args: &clap::ArgMatches) -> CliResult {
    let lambda = *args.get_one::<f64>("lambda").unwrap();
    let gamma = *args.get_one::<f64>("gamma").unwrap();
    let points = *args.get_one::<usize>("points").unwrap();
    let grid = GridConfig {
        points,
        extent: None,
    };
    let result = minimize_energy(lambda, gamma, &grid, &OptConfig::default())?;
    let reference = e0_of_lambda(lambda, gamma, &BranchConstants::reference())?;
    let json = Json::new()
        .str("schema_version", "1")
        .num("lambda", lambda)
        .num("gamma", gamma)
        .int("points", points as u64)
        .num("energy", result.energy)
        .num("e0_reference", reference)
        .num("grad_norm", result.grad_norm)
        .int("iterations", result.iterations as u64)
        .bool("converged", result.converged)
        .finish();
    emit(args.get_one::<PathBuf>("out"), &json)?;
    Ok(0)
}

struct Gate {
    lines: Vec<String>,
    all_passed: bool,
}

impl Gate {
    fn new() -> Self {
        Gate {
            lines: Vec::new(),
            all_passed: true,
        }
    }

    fn check(&mut self, name: &str, pass: bool, detail: String) {
        let tag = if pass { "[PASS]" } else { "[FAIL]" };
        self.lines.push(format!("{tag} {name}: {detail}"));
        self.all_passed &= pass;
    }

    fn close(&mut self, name: &str, value: f64, want: f64, tol: f64) {
        self.check(
            name,
            (value - want).abs() <= tol,
            format!("{value:.10} vs {want} (tol {tol:.1e})"),
        );
    }
}

fn cmd_reproduce(args: &clap::ArgMatches) -> CliResult {
    let dir = args.get_one::<PathBuf>("out-dir").unwrap();
    std::fs::create_dir_all(dir).map_err(Error::from)?;
    let mut gate = Gate::new();

    // The universal solve and its invariants.
    let sol = solve_universal(0, &ShootingConfig::default())?;
    write_solution_csv(&sol, &dir.join("universal_m0.csv"))?;
    let profile = sol.profile()?;
    let n_quad = particle_number(&profile);
    let i_quad = log_moment(&profile);
    let tail = tail_estimates(&sol)?;
    let virial = virial_report(&sol)?;
    let validation = validate_solution(&sol)?;
    let constants = BranchConstants::from_solution(&sol)?;

    gate.close("particle number N", n_quad, 10.3135, 1e-3);
    gate.close("log moment I", i_quad, 0.2276, 1e-3);
    gate.check(
        "N far-field route",
        ((tail.n_tail - n_quad) / n_quad).abs() <= 1e-4,
        format!("{:.10} vs {n_quad:.10}", tail.n_tail),
    );
    gate.check(
        "I far-field route",
        ((tail.i_tail - i_quad) / i_quad).abs() <= 1e-4,
        format!("{:.10} vs {i_quad:.10}", tail.i_tail),
    );
    gate.close("threshold coupling", constants.lambda0, 46.03, 0.05);
    gate.check(
        "virial identity",
        virial.virial_residual <= 1e-3,
        format!("relative residual {:.3e}", virial.virial_residual),
    );
    gate.check(
        "profile validation",
        validation.all_passed(),
        format!(
            "positive {} monotone {} tail {} poisson {:.3e}",
            validation.positivity,
            validation.monotone,
            validation.tail_decay,
            validation.poisson_residual
        ),
    );

    // Frequency structure.
    let peak = omega_star(&constants);
    gate.close("frequency peak", peak, 1.3475, 2e-3);
    let two = lambdas_of_omega(1.0, 1.0, &constants)?;
    let one_zero = lambdas_of_omega(0.0, 1.0, &constants)?;
    let one_peak = lambdas_of_omega(peak, 1.0, &constants)?;
    let none = lambdas_of_omega(2.0, 1.0, &constants)?;
    let zero_root = one_zero.first().copied().unwrap_or(f64::NAN);
    let counts_ok = two.len() == 2
        && one_zero.len() == 1
        && (zero_root - 46.03).abs() <= 0.05
        && one_peak.len() == 1
        && none.is_empty();
    gate.check(
        "root counts (omega = 1, 0, peak, 2)",
        counts_ok,
        format!(
            "{} / {} at {zero_root:.4} / {} / {}",
            two.len(),
            one_zero.len(),
            one_peak.len(),
            none.len()
        ),
    );
    let mut worst_round_trip: f64 = 0.0;
    for frac in [0.1, 0.4, 0.8, 0.999, 1.2, 2.5] {
        let lambda = frac * constants.lambda0;
        let omega = omega_of_lambda(lambda, 1.0, &constants)?;
        let roots = lambdas_of_omega(omega, 1.0, &constants)?;
        let best = roots
            .iter()
            .map(|r| ((r - lambda) / lambda).abs())
            .fold(f64::INFINITY, f64::min);
        worst_round_trip = worst_round_trip.max(best);
    }
    gate.check(
        "inversion round trip",
        worst_round_trip <= 1e-8,
        format!("worst relative miss {worst_round_trip:.3e}"),
    );

    // Branch sweep file.
    let rows = sweep(
        1.0,
        constants.lambda0 / 10.0,
        2.0 * constants.lambda0,
        101,
        sweep_threads(101)?,
        &constants,
    )?;
    let mut buf = String::from("gamma,lambda,omega,e0\n");
    for p in &rows {
        writeln!(
            buf,
            "{:.16e},{:.16e},{:.16e},{:.16e}",
            p.gamma, p.lambda, p.omega, p.e0
        )
        .unwrap();
    }
    std::fs::write(dir.join("branch_sweep.csv"), &buf).map_err(Error::from)?;

    // The sharp bound: constant with literature constants, near-equality on
    // the ground family with computed ones.
    let reference = BranchConstants::reference();
    let gaussian = builtin_profile(&ProfileSpec::Gaussian {
        lambda: 1.0,
        width: 1.0,
    })?;
    let constant_check = hls_check(&gaussian, &reference)?.constant_check;
    gate.close("weak-bound offset constant", constant_check, -0.0084, 2e-4);

    let ground = builtin_profile(&ProfileSpec::GroundState {
        lambda: constants.lambda0,
        solution: &sol,
    })?;
    let sigmas: Vec<f64> = (0..11).map(|k| 0.5 + 0.15 * k as f64).collect();
    let scan = dilation_scan(&ground, &sigmas, &constants)?;
    let lam2 = scan.report.lambda * scan.report.lambda;
    gate.check(
        "ground state saturates the sharp bound",
        scan.report.slack_sharp >= -1e-6 * lam2 && scan.report.slack_sharp <= 1e-3 * lam2,
        format!("slack / lambda^2 = {:.3e}", scan.report.slack_sharp / lam2),
    );
    std::fs::write(dir.join("hls_ground.json"), hls_report_json(&scan.report))
        .map_err(Error::from)?;

    // Oracle cross-checks.
    let oracle = minimize_energy(
        constants.lambda0,
        1.0,
        &GridConfig::default(),
        &OptConfig::default(),
    )?;
    let formula = e0_of_lambda(constants.lambda0, 1.0, &constants)?;
    gate.check(
        "direct minimization energy",
        ((oracle.energy - formula) / formula).abs() <= 1e-2,
        format!("{:.6} vs {formula:.6}", oracle.energy),
    );
    let worst_grad = gradient_selftest(&GridConfig::default())?;
    gate.check(
        "energy gradient selftest",
        worst_grad <= 1e-5,
        format!("worst relative error {worst_grad:.3e}"),
    );

    // Constants summary file.
    let json = Json::new()
        .str("schema_version", "1")
        .num("alpha", sol.alpha)
        .num("n_value", n_quad)
        .num("i_value", i_quad)
        .num("n_tail", tail.n_tail)
        .num("i_tail", tail.i_tail)
        .num("lambda0", constants.lambda0)
        .num("omega_star", peak)
        .num("virial_residual", virial.virial_residual)
        .num("constant_check", constant_check)
        .num("oracle_energy", oracle.energy)
        .num("e0_formula", formula)
        .finish();
    std::fs::write(dir.join("constants.json"), json).map_err(Error::from)?;

    for line in &gate.lines {
        println!("{line}");
    }
    if gate.all_passed {
        println!("all checks passed");
        Ok(0)
    } else {
        println!("some checks failed");
        Ok(1)
    }
}
