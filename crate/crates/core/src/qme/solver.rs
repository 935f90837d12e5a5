use std::time::Instant;

use num_complex::Complex64;
use serde::Serialize;

use super::config::{Precision, SolverConfig};
use super::steps::{q_of, step};
use crate::error::{Error, Result};
use crate::linalg::{CMatrix, ExtComplex, Matrix, PrecisionGuard, Scalar};
use crate::opcalc::{catalan_of_matrix_series, power_bound_probe, quadratic_residual};

#[derive(Clone, Debug, Serialize)]
pub struct StepRecord {
    pub k: usize,
    pub res: f64,
    pub seconds: f64,
}

/// Double-precision checks on the final iterate.
#[derive(Clone, Debug, Serialize)]
pub struct Validation {
    pub residual: f64,
    /// `max |Y - C(T)|` when `rho(4T) < 1`.
    pub series_distance: Option<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct IterationTrace {
    pub method: String,
    pub form: String,
    pub precision: String,
    pub n: usize,
    pub initial_res: f64,
    pub steps: Vec<StepRecord>,
    pub converged: bool,
    pub validation: Option<Validation>,
    #[serde(skip)]
    pub final_y: CMatrix,
}

impl IterationTrace {
    pub fn residuals(&self) -> Vec<f64> {
        self.steps.iter().map(|s| s.res).collect()
    }

    pub fn last_res(&self) -> f64 {
        self.steps.last().map_or(self.initial_res, |s| s.res)
    }

    pub fn clear_timings(&mut self) {
        for s in &mut self.steps {
            s.seconds = 0.0;
        }
    }
}

/// Iterate in the scalar field `S`; the caller owns any precision guard.
pub fn solve_qme_in<S: Scalar + 'static>(
    t: &Matrix<S>,
    y0: &Matrix<S>,
    cfg: &SolverConfig,
) -> Result<(IterationTrace, Matrix<S>)> {
    cfg.validate()?;
    if !t.is_square() || !y0.is_square() || t.rows() != y0.rows() {
        return Err(Error::Dimension(format!(
            "T is {}x{}, Y0 is {}x{}",
            t.rows(),
            t.cols(),
            y0.rows(),
            y0.cols()
        )));
    }
    let mut y = y0.clone();
    let initial_res = q_of(t, &y).norm_inf();
    let mut steps = Vec::new();
    let mut converged = initial_res < cfg.res_tol;
    for k in 1..=cfg.max_iters {
        if converged {
            break;
        }
        let start = Instant::now();
        y = step(cfg.method, t, &y, cfg.form).map_err(|e| Error::StepFailure {
            step: k,
            source: Box::new(e),
        })?;
        let res = q_of(t, &y).norm_inf();
        steps.push(StepRecord {
            k,
            res,
            seconds: start.elapsed().as_secs_f64(),
        });
        if !res.is_finite() {
            break;
        }
        converged = res < cfg.res_tol;
    }
    let final_c = y.to_c64();
    let validation = if converged { Some(validate(&t.to_c64(), &final_c)?) } else { None };
    let trace = IterationTrace {
        method: cfg.method.to_string(),
        form: cfg.form.to_string(),
        precision: cfg.precision.to_string(),
        n: t.rows(),
        initial_res,
        steps,
        converged,
        validation,
        final_y: final_c,
    };
    Ok((trace, y))
}

fn validate(t: &CMatrix, y: &CMatrix) -> Result<Validation> {
    let residual = quadratic_residual(t, y)?;
    let series_distance = if power_bound_probe(t, 16)?.spectral_radius_est < 1.0 - 1e-10 {
        catalan_of_matrix_series(t, 1e-14)
            .ok()
            .map(|c| (&c - y).max_abs())
    } else {
        None
    };
    Ok(Validation { residual, series_distance })
}

/// Run the configured method from `Y0` (default `T`).
pub fn solve_qme(t: &CMatrix, y0: Option<&CMatrix>, cfg: &SolverConfig) -> Result<IterationTrace> {
    let y0 = y0.unwrap_or(t);
    match cfg.precision {
        Precision::Double => solve_qme_in(t, y0, cfg).map(|(tr, _)| tr),
        Precision::Extended { digits } => {
            let _guard = PrecisionGuard::digits(digits);
            let te = Matrix::<ExtComplex>::from_c64(t);
            let ye = Matrix::<ExtComplex>::from_c64(y0);
            solve_qme_in(&te, &ye, cfg).map(|(tr, _)| tr)
        }
    }
}

/// Diagonal test matrix: `0.1` everywhere except `t_{10,10} = 1e-10`.
pub fn qbd_example(n: usize) -> Result<CMatrix> {
    qbd_in::<Complex64>(n, Complex64::new(0.1, 0.0), Complex64::new(1e-10, 0.0))
}

/// [`qbd_example`] with exact decimal entries at the current extended precision.
pub fn qbd_example_ext(n: usize) -> Result<Matrix<ExtComplex>> {
    qbd_in(n, ExtComplex::ratio(1, 10), ExtComplex::ratio(1, 10_000_000_000))
}

fn qbd_in<S: Scalar>(n: usize, big: S, small: S) -> Result<Matrix<S>> {
    if n < 10 {
        return Err(Error::Size(format!("QBD example needs n >= 10, got {n}")));
    }
    let d: Vec<S> = (0..n).map(|i| if i == 9 { small.clone() } else { big.clone() }).collect();
    Ok(Matrix::from_diag(&d))
}

/// Table run on the QBD example with exact entries in extended mode.
pub fn solve_qbd(n: usize, cfg: &SolverConfig) -> Result<IterationTrace> {
    match cfg.precision {
        Precision::Double => {
            let t = qbd_example(n)?;
            solve_qme(&t, None, cfg)
        }
        Precision::Extended { digits } => {
            let _guard = PrecisionGuard::digits(digits);
            let t = qbd_example_ext(n)?;
            solve_qme_in(&t, &t, cfg).map(|(tr, _)| tr)
        }
    }
}

/// Least-squares slope of `log r_{k+1}` against `log r_k`, over residuals
/// above `floor`. Needs at least two consecutive pairs.
pub fn estimate_order(residuals: &[f64], floor: f64) -> Option<f64> {
    let logs: Vec<f64> = residuals
        .iter()
        .take_while(|&&r| r > floor && r.is_finite())
        .map(|r| r.ln())
        .collect();
    if logs.len() < 3 {
        return None;
    }
    let pairs: Vec<(f64, f64)> = logs.windows(2).map(|w| (w[0], w[1])).collect();
    let m = pairs.len() as f64;
    let mx = pairs.iter().map(|p| p.0).sum::<f64>() / m;
    let my = pairs.iter().map(|p| p.1).sum::<f64>() / m;
    let sxy: f64 = pairs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pairs.iter().map(|p| (p.0 - mx).powi(2)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}
