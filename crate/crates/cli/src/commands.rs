use std::fs;
use std::path::PathBuf;

use catalan_ops::linalg::CMatrix;
use catalan_ops::opcalc::{catalan_of_matrix_quadrature, catalan_of_matrix_series, quadratic_residual};
use catalan_ops::qme::{solve_qbd, solve_qme, Method, Precision, SolverConfig, SylvesterForm};
use catalan_ops::seq::{boundary_csv, omega_boundary_samples, sigma_boundary_samples, DEFAULT_SAMPLES};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::output::{OutDir, RunManifest, Sci, TraceJson};
use crate::verify::{run_suites, Suite};
use crate::CliError;

#[derive(Parser, Debug)]
#[command(name = "catalan-ops", version, about = "Catalan matrix functions and quadratic matrix equation solvers")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Residual table for the diagonal QBD example.
    Table1(Table1Args),
    /// Solve T Y^2 - Y + I = 0 for a matrix read from a file.
    Solve(SolveArgs),
    /// Boundary curves of sigma(c) and Omega as CSV.
    Boundary(BoundaryArgs),
    /// Run the identity and oracle suites.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
struct Table1Args {
    #[arg(long, default_value_t = 100)]
    n: usize,
    #[arg(long, default_value = "double")]
    precision: String,
    #[arg(long, default_value = "newton,catalan4")]
    methods: String,
    #[arg(long, default_value = "derived")]
    form: String,
    #[arg(long, default_value = ".")]
    out: PathBuf,
    /// Write zero step times so repeated runs are byte-identical.
    #[arg(long)]
    no_timings: bool,
}

#[derive(Args, Debug)]
struct SolveArgs {
    #[arg(long)]
    matrix: PathBuf,
    /// newton | catalan:<k> | catalan4 | series | quadrature
    #[arg(long, default_value = "newton")]
    method: String,
    #[arg(long, default_value = "derived")]
    form: String,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long, default_value = "double")]
    precision: String,
    /// Starting matrix; defaults to T.
    #[arg(long)]
    y0: Option<PathBuf>,
    #[arg(long, default_value_t = 50)]
    max_iters: usize,
    #[arg(long, default_value = ".")]
    out: PathBuf,
    #[arg(long)]
    no_timings: bool,
}

#[derive(Args, Debug)]
struct BoundaryArgs {
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    samples: usize,
    #[arg(long, default_value = "sigma,omega")]
    curves: String,
    #[arg(long, default_value = ".")]
    out: PathBuf,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, default_value = "all")]
    suite: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Also write the report and a manifest here.
    #[arg(long)]
    out: Option<PathBuf>,
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Table1(a) => table1(a),
        Command::Solve(a) => solve(a),
        Command::Boundary(a) => boundary(a),
        Command::Verify(a) => verify(a),
    }
}

fn usage<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, CliError> {
    r.map_err(|e| CliError::Usage(e.to_string()))
}

fn column_label(m: Method) -> String {
    m.to_string().replace(':', "")
}

fn table1(a: Table1Args) -> Result<(), CliError> {
    if a.n < 10 {
        return Err(CliError::Usage(format!("--n must be at least 10, got {}", a.n)));
    }
    let precision: Precision = usage(a.precision.parse())?;
    let form: SylvesterForm = usage(a.form.parse())?;
    let methods: Vec<Method> = usage(a.methods.split(',').map(|s| s.trim().parse()).collect())?;
    if methods.is_empty() {
        return Err(CliError::Usage("no methods given".into()));
    }
    let mut m = RunManifest::new("table1");
    m.flag("n", a.n)
        .flag("precision", precision)
        .flag("methods", &a.methods)
        .flag("form", form)
        .flag("no_timings", a.no_timings);
    let mut out = OutDir::create(&a.out, m)?;
    let mut columns = Vec::new();
    for &method in &methods {
        let cfg = SolverConfig::new(method, precision).with_form(form);
        let mut trace = solve_qbd(a.n, &cfg)?;
        if a.no_timings {
            trace.clear_timings();
        }
        out.write_json(&format!("table1_{}.json", column_label(method)), &TraceJson::from(&trace))?;
        columns.push(trace.residuals());
    }
    let rows = columns.iter().map(Vec::len).max().unwrap_or(0);
    let mut csv = String::from("k");
    for &method in &methods {
        csv.push_str(&format!(",{}_res", column_label(method)));
    }
    csv.push('\n');
    for k in 0..rows {
        csv.push_str(&(k + 1).to_string());
        for col in &columns {
            match col.get(k) {
                Some(r) => csv.push_str(&format!(",{r:.17e}")),
                None => csv.push(','),
            }
        }
        csv.push('\n');
    }
    out.write("table1.csv", &csv)?;
    print!("{csv}");
    out.finish()
}

fn read_matrix(path: &PathBuf) -> Result<CMatrix, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    CMatrix::parse_text(&text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

#[derive(Serialize)]
struct DirectJson {
    method: String,
    n: usize,
    tol: Sci,
    residual: Sci,
}

fn solve(a: SolveArgs) -> Result<(), CliError> {
    let t = read_matrix(&a.matrix)?;
    if !t.is_square() {
        return Err(CliError::Usage(format!("T must be square, got {}x{}", t.rows(), t.cols())));
    }
    let precision: Precision = usage(a.precision.parse())?;
    let form: SylvesterForm = usage(a.form.parse())?;
    if let Some(tol) = a.tol {
        if !(tol > 0.0) {
            return Err(CliError::Usage(format!("--tol must be positive, got {tol}")));
        }
    }
    let mut m = RunManifest::new("solve");
    m.flag("method", &a.method)
        .flag("form", form)
        .flag("precision", precision)
        .flag("max_iters", a.max_iters)
        .flag("no_timings", a.no_timings);
    if let Some(tol) = a.tol {
        m.flag("tol", tol);
    }
    m.inputs.push(a.matrix.display().to_string());
    let direct = match a.method.as_str() {
        "series" => Some(a.tol.unwrap_or(1e-14)),
        "quadrature" => Some(a.tol.unwrap_or(1e-11)),
        _ => None,
    };
    if let Some(tol) = direct {
        let y = if a.method == "series" {
            catalan_of_matrix_series(&t, tol)?
        } else {
            catalan_of_matrix_quadrature(&t, tol)?
        };
        let residual = quadratic_residual(&t, &y)?;
        let mut out = OutDir::create(&a.out, m)?;
        out.write("solution.txt", &y.to_text())?;
        out.write_json(
            "solve.json",
            &DirectJson {
                method: a.method.clone(),
                n: t.rows(),
                tol: Sci(tol),
                residual: Sci(residual),
            },
        )?;
        println!("{} residual {residual:.3e}", a.method);
        return out.finish();
    }
    let method: Method = usage(a.method.parse())?;
    let mut cfg = SolverConfig::new(method, precision)
        .with_form(form)
        .with_max_iters(a.max_iters);
    if let Some(tol) = a.tol {
        cfg = cfg.with_tol(tol);
    }
    usage(cfg.validate())?;
    let y0 = a.y0.as_ref().map(read_matrix).transpose()?;
    if let Some(p) = &a.y0 {
        m.inputs.push(p.display().to_string());
    }
    let mut trace = solve_qme(&t, y0.as_ref(), &cfg)?;
    if a.no_timings {
        trace.clear_timings();
    }
    let mut out = OutDir::create(&a.out, m)?;
    out.write("solution.txt", &trace.final_y.to_text())?;
    out.write_json("solve.json", &TraceJson::from(&trace))?;
    out.finish()?;
    for s in &trace.steps {
        println!("k={} res={:.6e}", s.k, s.res);
    }
    if trace.converged {
        Ok(())
    } else {
        Err(CliError::Numerical(format!(
            "{} did not reach {:e} in {} steps (last residual {:e})",
            trace.method,
            cfg.res_tol,
            trace.steps.len(),
            trace.last_res()
        )))
    }
}

fn boundary(a: BoundaryArgs) -> Result<(), CliError> {
    if a.samples == 0 {
        return Err(CliError::Usage("--samples must be positive".into()));
    }
    let mut points = Vec::new();
    for c in a.curves.split(',').map(str::trim) {
        match c {
            "sigma" => points.extend(sigma_boundary_samples(a.samples)),
            "omega" => points.extend(omega_boundary_samples(a.samples)),
            other => return Err(CliError::Usage(format!("unknown curve '{other}'"))),
        }
    }
    let mut m = RunManifest::new("boundary");
    m.flag("samples", a.samples).flag("curves", &a.curves);
    let mut out = OutDir::create(&a.out, m)?;
    out.write("boundary.csv", &boundary_csv(&points))?;
    out.finish()
}

fn verify(a: VerifyArgs) -> Result<(), CliError> {
    let suites: Vec<Suite> = match a.suite.as_str() {
        "all" => Suite::ALL.to_vec(),
        s => vec![usage(s.parse::<Suite>())?],
    };
    let report = run_suites(&suites, a.seed);
    let text = report.render();
    print!("{text}");
    if let Some(dir) = &a.out {
        let mut m = RunManifest::new("verify");
        m.flag("suite", &a.suite);
        m.seed = Some(a.seed);
        let mut out = OutDir::create(dir, m)?;
        out.write("verify_report.txt", &text)?;
        out.finish()?;
    }
    let failed = report.failures();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Verify(failed.join(", ")))
    }
}
