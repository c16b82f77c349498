//! Command-line front end. [`run`] takes argv and explicit output streams so
//! the whole surface is testable in-process.
//!
//! Exit codes: 0 success / CP, 1 usage or input error, 2 numeric or I/O
//! failure, 3 channel not CP.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use crate::channels::{AffineChannelQubit, AffineChannelQutrit};
use crate::choi::{choi_from_channel, jamiolkowski_state, kraus_from_choi};
use crate::cp::{cp_analytic_diagonal, cp_minors, cp_numeric, CpVerdict, DEFAULT_TOL};
use crate::dynamics::{
    cp_first_violation, evolve_qubit, evolve_three_level, trajectory_csv, DampingRates,
    QubitBlochParams, ThreeLevelParams, QUBIT_COLUMNS, THREE_LEVEL_COLUMNS,
};
use crate::error::Error;
use crate::gellmann::{BlochVector3, CoherentVector};
use crate::scan::{parse_bindings, preset, run_scan, Preset, ScanGrid, ScanMethod, ScanSpec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_FAILURE: i32 = 2;
pub const EXIT_NOT_CP: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "qutrit-cp",
    version,
    about = "Complete-positivity tools for affine qutrit channels"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide complete positivity of one channel; prints the verdict as JSON.
    Check(CheckArgs),
    /// Sweep a two-parameter slice and write CSV (and optionally PGM).
    Scan(ScanArgs),
    /// Extract Kraus operators of a CP channel into a JSON file.
    Kraus(KrausArgs),
    /// Follow an exponential damping path and report the first CP violation.
    Evolve(EvolveArgs),
    /// Integrate the three-level (or two-level) Bloch equations.
    Blochsim(BlochsimArgs),
    /// Render all eight preset slices into a directory.
    Figures(FiguresArgs),
}

#[derive(Args, Debug)]
struct CheckArgs {
    /// Eight diagonal damping parameters.
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<String>,
    /// Eight translation components (default zeros).
    #[arg(long, allow_hyphen_values = true)]
    t: Option<String>,
    /// numeric, analytic or minors.
    #[arg(long, default_value = "numeric")]
    method: String,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
    /// Qubit channel instead: l1,l2,l3 or l1,l2,l3,t1,t2,t3.
    #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["lambda", "t"])]
    qubit: Option<String>,
}

#[derive(Args, Debug)]
struct ScanArgs {
    /// fig1 .. fig8.
    #[arg(long, conflicts_with_all = ["bind", "spec"])]
    preset: Option<String>,
    /// Binding list such as "L3=X;L8=Y;L1=X*Y".
    #[arg(long, conflicts_with = "spec")]
    bind: Option<String>,
    /// Spec file with bindings and xrange/yrange/res/method clauses.
    #[arg(long)]
    spec: Option<PathBuf>,
    #[arg(long, allow_hyphen_values = true)]
    xrange: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    yrange: Option<String>,
    /// nx,ny
    #[arg(long)]
    res: Option<String>,
    /// numeric or analytic.
    #[arg(long)]
    method: Option<String>,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    pgm: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct KrausArgs {
    #[arg(long, allow_hyphen_values = true)]
    lambda: String,
    #[arg(long, allow_hyphen_values = true)]
    t: Option<String>,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args, Debug)]
struct EvolveArgs {
    /// Eight rates; Lambda_i(t) = exp(gamma_i t).
    #[arg(long, allow_hyphen_values = true)]
    gamma: String,
    #[arg(long, allow_hyphen_values = true)]
    tmax: f64,
    #[arg(long, default_value_t = 1001)]
    steps: usize,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
}

#[derive(Args, Debug)]
struct BlochsimArgs {
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    alpha: f64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    beta: f64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    delta: f64,
    /// Initial coherent vector (8 values), or u,v,w with --two-level.
    #[arg(long, allow_hyphen_values = true)]
    s0: String,
    #[arg(long, allow_hyphen_values = true)]
    tmax: f64,
    #[arg(long, allow_hyphen_values = true)]
    dt: f64,
    #[arg(long)]
    out: PathBuf,
    /// Two-level atom: uses --delta, --omega, --decay and --w-eq.
    #[arg(long)]
    two_level: bool,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    omega: f64,
    /// Decay times tu,tv,tw (default: no damping).
    #[arg(long)]
    decay: Option<String>,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    w_eq: f64,
}

#[derive(Args, Debug)]
struct FiguresArgs {
    #[arg(long)]
    outdir: PathBuf,
    /// Square resolution per figure.
    #[arg(long, default_value_t = 512)]
    res: usize,
    /// Use the analytic conditions for the translation-free presets.
    #[arg(long)]
    analytic: bool,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
}

/// A failure carrying its exit code.
struct Fail(i32, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NotCompletelyPositive { .. } => EXIT_NOT_CP,
            Error::NotHermitian(_)
            | Error::WrongTrace(_)
            | Error::ComplexRoots(_)
            | Error::SingularParameter { .. }
            | Error::Io(_)
            | Error::Json(_) => EXIT_FAILURE,
            _ => EXIT_USAGE,
        };
        Fail(code, e.to_string())
    }
}

fn usage(msg: impl Into<String>) -> Fail {
    Fail(EXIT_USAGE, msg.into())
}

type CliResult = std::result::Result<i32, Fail>;

/// Runs one invocation. `args` includes the program name.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    EXIT_USAGE
                }
            };
        }
    };
    let result = match cli.command {
        Command::Check(a) => check(a, out, err),
        Command::Scan(a) => scan(a, out, err),
        Command::Kraus(a) => kraus(a, out, err),
        Command::Evolve(a) => evolve(a, out),
        Command::Blochsim(a) => blochsim(a, out),
        Command::Figures(a) => figures(a, out, err),
    };
    match result {
        Ok(code) => code,
        Err(Fail(code, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}

fn parse_list(text: &str, what: &str, allowed: &[usize]) -> std::result::Result<Vec<f64>, Fail> {
    let values = text
        .split(',')
        .map(|s| {
            let s = s.trim();
            s.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| usage(format!("--{what}: '{s}' is not a finite number")))
        })
        .collect::<std::result::Result<Vec<_>, _>>()?;
    if !allowed.contains(&values.len()) {
        let want: Vec<String> = allowed.iter().map(|n| n.to_string()).collect();
        return Err(usage(format!(
            "--{what}: expected {} values, got {}",
            want.join(" or "),
            values.len()
        )));
    }
    Ok(values)
}

fn array8(text: &str, what: &str) -> std::result::Result<[f64; 8], Fail> {
    let v = parse_list(text, what, &[8])?;
    Ok(v.try_into().expect("length checked"))
}

fn pair(text: &str, what: &str) -> std::result::Result<(f64, f64), Fail> {
    let v = parse_list(text, what, &[2])?;
    Ok((v[0], v[1]))
}

fn io<T>(r: std::io::Result<T>) -> std::result::Result<T, Fail> {
    r.map_err(|e| Fail::from(Error::from(e)))
}

fn verdict_exit(v: &CpVerdict) -> i32 {
    if v.is_cp {
        EXIT_OK
    } else {
        EXIT_NOT_CP
    }
}

fn check(a: CheckArgs, out: &mut dyn Write, err: &mut dyn Write) -> CliResult {
    if a.tol.is_nan() || a.tol < 0.0 {
        return Err(usage("--tol must be non-negative"));
    }
    let verdict = if let Some(q) = &a.qubit {
        let v = parse_list(q, "qubit", &[3, 6])?;
        let lambda = [v[0], v[1], v[2]];
        let t = if v.len() == 6 {
            [v[3], v[4], v[5]]
        } else {
            [0.0; 3]
        };
        let ch = AffineChannelQubit::new(lambda, t);
        match a.method.as_str() {
            "numeric" => cp_numeric(&ch, a.tol),
            "minors" => cp_minors(&ch, a.tol).0,
            "analytic" => return Err(usage("the analytic method is for qutrit channels")),
            m => return Err(usage(format!("unknown method '{m}'"))),
        }
    } else {
        let Some(l) = &a.lambda else {
            return Err(usage("--lambda (or --qubit) is required"));
        };
        let lambda = array8(l, "lambda")?;
        let t = match &a.t {
            Some(t) => array8(t, "t")?,
            None => [0.0; 8],
        };
        let ch = AffineChannelQutrit::from_components(lambda, t);
        let verdict = match a.method.as_str() {
            "numeric" => cp_numeric(&ch, a.tol),
            "analytic" => cp_analytic_diagonal(&ch, a.tol)?,
            "minors" => cp_minors(&ch, a.tol).0,
            m => return Err(usage(format!("unknown method '{m}'"))),
        };
        let j = jamiolkowski_state(&ch, a.tol);
        let _ = writeln!(
            err,
            "jamiolkowski state D/3: {} (min eigenvalue {:e})",
            if j.is_state {
                "valid two-qutrit state"
            } else {
                "not a state"
            },
            j.min_eigenvalue
        );
        verdict
    };
    if !verdict.min_eigenvalue.is_finite() {
        return Err(Fail(
            EXIT_FAILURE,
            "eigenvalue computation produced a non-finite value".into(),
        ));
    }
    io(writeln!(out, "{}", verdict.to_json()))?;
    Ok(verdict_exit(&verdict))
}

fn scan_spec(a: &ScanArgs, err: &mut dyn Write) -> std::result::Result<ScanSpec, Fail> {
    let mut spec = if let Some(name) = &a.preset {
        preset(name.parse::<Preset>()?)
    } else if let Some(text) = &a.bind {
        let parsed = parse_bindings(text)?;
        for w in &parsed.warnings {
            let _ = writeln!(err, "warning: {w}");
        }
        ScanSpec::new(parsed.bindings)
    } else if let Some(path) = &a.spec {
        let text = io(std::fs::read_to_string(path))?;
        let (spec, warnings) = ScanSpec::from_text(&text)?;
        for w in &warnings {
            let _ = writeln!(err, "warning: {w}");
        }
        spec
    } else {
        return Err(usage("one of --preset, --bind or --spec is required"));
    };
    if let Some(r) = &a.xrange {
        spec.x_range = pair(r, "xrange")?;
    }
    if let Some(r) = &a.yrange {
        spec.y_range = pair(r, "yrange")?;
    }
    if let Some(r) = &a.res {
        let parts: Vec<&str> = r.split(',').collect();
        let parsed: Option<Vec<usize>> = parts.iter().map(|p| p.trim().parse().ok()).collect();
        match parsed.as_deref() {
            Some(&[nx, ny]) => spec.resolution = (nx, ny),
            _ => return Err(usage(format!("--res: expected nx,ny, got '{r}'"))),
        }
    }
    if let Some(m) = &a.method {
        spec.method = m.parse::<ScanMethod>()?;
    }
    if let Some(t) = a.tol {
        spec.tol = t;
    }
    Ok(spec)
}

fn metadata_path(out: &Path) -> PathBuf {
    out.with_extension("meta.json")
}

fn write_grid(grid: &ScanGrid, csv: &Path, pgm: Option<&Path>) -> std::result::Result<(), Fail> {
    io(std::fs::write(csv, grid.to_csv()))?;
    if let Some(p) = pgm {
        io(std::fs::write(p, grid.to_pgm()))?;
    }
    io(std::fs::write(
        metadata_path(csv),
        grid.metadata_json() + "\n",
    ))?;
    Ok(())
}

fn scan(a: ScanArgs, out: &mut dyn Write, err: &mut dyn Write) -> CliResult {
    let spec = scan_spec(&a, err)?;
    let grid = run_scan(&spec)?;
    write_grid(&grid, &a.out, a.pgm.as_deref())?;
    let summary = json!({
        "csv": a.out,
        "pgm": a.pgm,
        "cells": grid.cells.len(),
        "cp_cells": grid.cp_count(),
    });
    io(writeln!(out, "{summary}"))?;
    Ok(EXIT_OK)
}

fn kraus(a: KrausArgs, out: &mut dyn Write, err: &mut dyn Write) -> CliResult {
    let lambda = array8(&a.lambda, "lambda")?;
    let t = match &a.t {
        Some(t) => array8(t, "t")?,
        None => [0.0; 8],
    };
    let ch = AffineChannelQutrit::from_components(lambda, t);
    let set = match kraus_from_choi(&choi_from_channel(&ch), a.tol) {
        Ok(s) => s,
        Err(Error::NotCompletelyPositive { min_eigenvalue }) => {
            let _ = writeln!(
                err,
                "error: channel is not completely positive (minimum Choi eigenvalue {min_eigenvalue:e})"
            );
            return Ok(EXIT_NOT_CP);
        }
        Err(e) => return Err(e.into()),
    };
    let doc = set.to_document();
    let text = serde_json::to_string_pretty(&doc).map_err(Error::from)?;
    io(std::fs::write(&a.out, text + "\n"))?;
    io(writeln!(
        out,
        "{}",
        json!({ "operators": set.len(), "completeness_residual": doc.completeness_residual })
    ))?;
    Ok(EXIT_OK)
}

fn evolve(a: EvolveArgs, out: &mut dyn Write) -> CliResult {
    let rates = DampingRates(array8(&a.gamma, "gamma")?);
    let t = cp_first_violation(&rates, a.tmax, a.steps, a.tol)?;
    io(writeln!(out, "{}", json!({ "first_violation": t })))?;
    Ok(EXIT_OK)
}

fn blochsim(a: BlochsimArgs, out: &mut dyn Write) -> CliResult {
    let (csv, norms) = if a.two_level {
        let s = parse_list(&a.s0, "s0", &[3])?;
        let (t_u, t_v, t_w) = match &a.decay {
            Some(d) => {
                let d = parse_list(d, "decay", &[3])?;
                (d[0], d[1], d[2])
            }
            None => (f64::INFINITY, f64::INFINITY, f64::INFINITY),
        };
        let p = QubitBlochParams {
            t_u,
            t_v,
            t_w,
            delta: a.delta,
            omega: a.omega,
            w_eq: a.w_eq,
        };
        let traj = evolve_qubit(&BlochVector3([s[0], s[1], s[2]]), &p, a.tmax, a.dt)?;
        let norms: Vec<f64> = traj.iter().map(|(_, b)| b.norm()).collect();
        let rows: Vec<(f64, [f64; 3])> = traj.into_iter().map(|(t, b)| (t, b.0)).collect();
        (trajectory_csv(&rows, &QUBIT_COLUMNS), norms)
    } else {
        let s0 = CoherentVector::from_array(array8(&a.s0, "s0")?);
        let p = ThreeLevelParams {
            alpha: a.alpha,
            beta: a.beta,
            delta: a.delta,
        };
        let traj = evolve_three_level(&s0, &p, a.tmax, a.dt)?;
        let norms: Vec<f64> = traj.iter().map(|(_, s)| s.norm()).collect();
        let rows: Vec<(f64, [f64; 8])> = traj.into_iter().map(|(t, s)| (t, s.to_array())).collect();
        (trajectory_csv(&rows, &THREE_LEVEL_COLUMNS), norms)
    };
    io(std::fs::write(&a.out, csv))?;
    let drift = norms
        .iter()
        .map(|n| (n - norms[0]).abs())
        .fold(0.0, f64::max);
    io(writeln!(
        out,
        "{}",
        json!({ "rows": norms.len(), "max_norm_drift": drift })
    ))?;
    Ok(EXIT_OK)
}

fn figures(a: FiguresArgs, out: &mut dyn Write, err: &mut dyn Write) -> CliResult {
    io(std::fs::create_dir_all(&a.outdir))?;
    let mut summary = Vec::new();
    for p in Preset::ALL {
        let mut spec = preset(p);
        spec.resolution = (a.res, a.res);
        spec.tol = a.tol;
        if a.analytic && !p.has_translation() {
            spec.method = ScanMethod::Analytic;
        }
        let grid = run_scan(&spec)?;
        let csv = a.outdir.join(format!("{p}.csv"));
        let pgm = a.outdir.join(format!("{p}.pgm"));
        write_grid(&grid, &csv, Some(&pgm))?;
        let _ = writeln!(
            err,
            "{p}: {} of {} cells CP",
            grid.cp_count(),
            grid.cells.len()
        );
        summary.push(json!({ "preset": p.to_string(), "cp_cells": grid.cp_count() }));
    }
    io(writeln!(out, "{}", serde_json::Value::Array(summary)))?;
    Ok(EXIT_OK)
}
