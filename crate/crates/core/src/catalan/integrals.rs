use std::f64::consts::PI;

use num_complex::Complex64;

use super::numbers::{tail_bound, weighted_catalan};
use crate::error::{Error, Result};
use crate::quadrature::{integrate_half_line, QuadOptions};

pub const MAX_J: usize = 40;
/// Below this `|w|` the right-hand side is summed as a series instead of the
/// closed form, which cancels badly near `z = 1`.
const SERIES_RADIUS: f64 = 1.0 / 16.0;

#[derive(Clone, Copy, Debug)]
pub struct IntegralIdentity {
    pub lhs: Complex64,
    pub lhs_error: f64,
    pub rhs: Complex64,
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// `w = (z - 1) / (4z)`.
fn w_of(z: Complex64) -> Complex64 {
    (z - 1.0) / (4.0 * z)
}

/// `sum_{m>=0} C_{j+m} 4^{-(j+m)} (4w)^m`, weighted to stay in range.
fn shifted_series(j: usize, w: Complex64) -> Complex64 {
    let q = 4.0 * w;
    let terms = 200;
    let wc = weighted_catalan(j + terms);
    let mut acc = c(0.0);
    let mut pow = c(1.0);
    for m in 0..terms {
        let t = pow * wc[j + m];
        acc += t;
        if t.norm() < 1e-18 * acc.norm() {
            break;
        }
        pow *= q;
    }
    acc
}

/// Closed form of `int_0^inf sqrt(t) / ((t+1)(t+z)^{j+1}) dt`.
pub fn integral_rhs(z: Complex64, j: usize) -> Complex64 {
    let w = w_of(z);
    let sz = z.sqrt();
    if w.norm() <= SERIES_RADIUS {
        // pi/(2 sqrt z) (4z)^{-j} sum_m C_{j+m} w^m; the 4^{-j} is inside the weighting
        return PI / (2.0 * sz) * z.powi(-(j as i32)) * shifted_series(j, w);
    }
    let zm1 = z - 1.0;
    if j == 0 {
        return PI * (sz - 1.0) / zm1;
    }
    let wc = weighted_catalan(j);
    let mut partial = c(0.0);
    let mut pow = c(1.0);
    for wk in wc.iter().take(j) {
        partial += pow * *wk;
        pow *= 4.0 * w;
    }
    PI / zm1.powi(j as i32 + 1) * (sz - 1.0 - zm1 / (2.0 * sz) * partial)
}

pub fn integral_identity(z: Complex64, j: usize) -> Result<IntegralIdentity> {
    if j > MAX_J {
        return Err(Error::Domain(format!("j = {j} exceeds {MAX_J}")));
    }
    if !(z.re > 0.0) {
        return Err(Error::Domain(format!("Re(z) must be positive, got {z}")));
    }
    let e = j as i32 + 1;
    let r = integrate_half_line(
        |t| vec![c(t.sqrt()) / ((t + 1.0) * (c(t) + z).powi(e))],
        QuadOptions {
            abs_tol: 1e-10,
            ..QuadOptions::default()
        },
    )?;
    Ok(IntegralIdentity {
        lhs: r.value[0],
        lhs_error: r.error,
        rhs: integral_rhs(z, j),
    })
}

#[derive(Clone, Copy, Debug)]
pub struct TailSeries {
    pub sum: Complex64,
    /// Bound on the neglected terms `k > N`.
    pub error_bound: f64,
}

/// `sum_{k=j}^{N} C_k w^k` with `w = (z-1)/(4z)`.
pub fn catalan_tail_series(z: Complex64, j: usize, n: usize) -> Result<TailSeries> {
    if n < j {
        return Err(Error::Domain(format!("N = {n} is below j = {j}")));
    }
    if z.norm() == 0.0 || !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::Domain(format!("z = {z} is not admissible")));
    }
    let w = w_of(z);
    let r = 4.0 * w.norm();
    if r > 1.0 + 1e-14 {
        return Err(Error::Domain(format!("|(z-1)/(4z)| = {} exceeds 1/4", w.norm())));
    }
    let wc = weighted_catalan(n + 1);
    let q = 4.0 * w;
    let mut pow = q.powi(j as i32);
    let mut sum = c(0.0);
    for wk in &wc[j..=n] {
        sum += pow * *wk;
        pow *= q;
    }
    let error_bound = tail_bound(n + 1) * r.min(1.0).powi(n as i32 + 1);
    Ok(TailSeries { sum, error_bound })
}
