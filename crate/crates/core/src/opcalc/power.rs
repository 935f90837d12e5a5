use num_complex::Complex64;

use crate::catalan::tail_bound;
use crate::error::{Error, Result};
use crate::linalg::{spectral_radius, CMatrix};

pub const DEFAULT_PROBE: usize = 64;
/// Hard cap on series length.
pub const MAX_TERMS: usize = 100_000;

#[derive(Clone, Debug)]
pub struct PowerBoundReport {
    /// `max_{n <= N_probe} ||(4T)^n||_inf`.
    pub m: f64,
    pub n_probe: usize,
    /// Spectral radius of `4T`.
    pub spectral_radius_est: f64,
    /// `||(4T)^{N_probe}||^{1/N_probe}`, an upper estimate of the radius.
    pub power_root: f64,
    /// Radius of `4T` at or beyond `1 - 1e-10`.
    pub warning: bool,
}

pub fn power_bound_probe(t: &CMatrix, n_probe: usize) -> Result<PowerBoundReport> {
    if !t.is_square() {
        return Err(Error::Dimension("power probe needs a square matrix".into()));
    }
    let n_probe = n_probe.max(8);
    let t4 = t.scale_re(4.0);
    let mut p = CMatrix::identity(t.rows());
    let mut m = 1.0f64;
    for _ in 0..n_probe {
        p = &p * &t4;
        m = m.max(p.norm_inf());
    }
    let power_root = p.norm_inf().powf(1.0 / n_probe as f64);
    let radius = spectral_radius(&t4).unwrap_or(power_root);
    Ok(PowerBoundReport {
        m,
        n_probe,
        spectral_radius_est: radius,
        power_root,
        warning: radius >= 1.0 - 1e-10,
    })
}

/// Number of terms `N` of `sum_n a_n (4T)^n` so the neglected tail is below
/// `tol`, given `|a_n|` nonincreasing from `N` on.
///
/// With `r = rho(4T) < 1` the powers are bounded by `K r'^n`, `r' = (1+r)/2`,
/// `K` fitted over a probe, which makes the tail geometric. Otherwise the
/// power bound `M` times the coefficient tail `tail(N)` is used.
pub(crate) fn choose_terms(
    t: &CMatrix,
    coeff_abs: impl Fn(usize) -> f64,
    coeff_tail: impl Fn(usize) -> f64,
    tol: f64,
) -> Result<usize> {
    let report = power_bound_probe(t, DEFAULT_PROBE)?;
    let r = report.spectral_radius_est;
    if r < 1.0 - 1e-10 {
        let rp = if r == 0.0 { 0.5 } else { 0.5 * (1.0 + r) };
        let t4 = t.scale_re(4.0);
        let mut p = CMatrix::identity(t.rows());
        let mut k = 1.0f64;
        let mut scale = 1.0f64;
        for _ in 0..DEFAULT_PROBE {
            p = &p * &t4;
            scale *= rp;
            k = k.max(p.norm_inf() / scale);
        }
        let mut rpn = 1.0f64;
        for n in 0..MAX_TERMS {
            if k * coeff_abs(n) * rpn / (1.0 - rp) <= tol {
                return Ok(n.max(1));
            }
            rpn *= rp;
        }
    } else {
        let mut n = 1usize;
        while n <= MAX_TERMS {
            if report.m * coeff_tail(n) <= tol {
                return Ok(n);
            }
            n *= 2;
        }
    }
    Err(Error::Convergence(format!(
        "no truncation below {MAX_TERMS} terms reaches {tol:e} (radius of 4T = {r})"
    )))
}

/// `sum_{n<N} a_n (4T)^n` by Horner's rule.
pub(crate) fn horner_4t(t: &CMatrix, coeffs: &[f64]) -> CMatrix {
    let n = t.rows();
    let t4 = t.scale_re(4.0);
    let mut acc = CMatrix::identity(n).scale_re(*coeffs.last().unwrap_or(&0.0));
    for &a in coeffs.iter().rev().skip(1) {
        acc = (&acc * &t4).add_identity(&Complex64::new(a, 0.0));
    }
    acc
}

pub(crate) fn catalan_tail(n: usize) -> f64 {
    tail_bound(n)
}
