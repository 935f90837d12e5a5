use num_complex::Complex64;

use super::functions::catalan_of_matrix_series;
use super::power::power_bound_probe;
use crate::catalan::catalan_gf;
use crate::error::{Error, Result};
use crate::linalg::{eigenvectors, inverse, multiset_eq, schur, CMatrix, Lu};

/// Condition number above which a matrix counts as singular.
const SINGULAR_COND: f64 = 1e14;
const DIAGONALIZABLE_COND: f64 = 1e6;

fn square_pair(t: &CMatrix, y: &CMatrix) -> Result<()> {
    if !t.is_square() || !y.is_square() || t.rows() != y.rows() {
        return Err(Error::Dimension(format!(
            "T is {}x{}, Y is {}x{}",
            t.rows(),
            t.cols(),
            y.rows(),
            y.cols()
        )));
    }
    Ok(())
}

/// `Q(Y) = T Y^2 - Y + I`.
pub fn quadratic_map(t: &CMatrix, y: &CMatrix) -> Result<CMatrix> {
    square_pair(t, y)?;
    Ok((&(t * &(y * y)) - y).add_identity(&Complex64::new(1.0, 0.0)))
}

/// `||T Y^2 - Y + I||_inf`.
pub fn quadratic_residual(t: &CMatrix, y: &CMatrix) -> Result<f64> {
    Ok(quadratic_map(t, y)?.norm_inf())
}

/// `||(I - T Y) Y - I||_inf`.
pub fn left_inverse_check(t: &CMatrix, y: &CMatrix) -> Result<f64> {
    square_pair(t, y)?;
    let left = (-&(t * y)).add_identity(&Complex64::new(1.0, 0.0));
    Ok((&left * y).add_identity(&Complex64::new(-1.0, 0.0)).norm_inf())
}

/// Inverse with a condition gate; `None` when numerically singular.
fn guarded_inverse(a: &CMatrix) -> Option<(CMatrix, f64)> {
    let lu = Lu::factor(a).ok()?;
    let inv = lu.inverse().ok()?;
    let cond = a.norm_inf() * inv.norm_inf();
    (cond.is_finite() && cond < SINGULAR_COND).then_some((inv, cond))
}

#[derive(Clone, Debug)]
pub struct InveReport {
    /// `0` in the resolvent set of `Y`.
    pub invertible: bool,
    pub condition: f64,
    /// `T = Y^{-1} - Y^{-2}`.
    pub t_from_inverse: bool,
    pub commute: bool,
    /// `T Y^2 = Y T Y`.
    pub tyy: bool,
    pub residuals: [f64; 3],
}

impl InveReport {
    pub fn all_equal(&self) -> bool {
        let v = [self.invertible, self.t_from_inverse, self.commute, self.tyy];
        v.iter().all(|&b| b == v[0])
    }

    pub fn all_true(&self) -> bool {
        self.invertible && self.t_from_inverse && self.commute && self.tyy
    }
}

/// The four equivalent conditions for a solution `Y` of the quadratic.
pub fn inve_equivalences(t: &CMatrix, y: &CMatrix, tol: f64) -> Result<InveReport> {
    square_pair(t, y)?;
    let ny = y.norm_inf();
    let nt = t.norm_inf();
    let scale = (1.0 + nt) * (1.0 + ny) * (1.0 + ny);
    let (invertible, condition, t_res) = match guarded_inverse(y) {
        Some((yi, cond)) => {
            let yi2 = &yi * &yi;
            let r = (&(&yi - &yi2) - t).norm_inf();
            let s = (1.0 + nt) * (1.0 + yi.norm_inf()).powi(2);
            (true, cond, r / s)
        }
        None => (false, f64::INFINITY, f64::INFINITY),
    };
    let ty = t * y;
    let yt = y * t;
    let comm = (&ty - &yt).norm_inf() / scale;
    let tyy = (&(&ty * y) - &(&yt * y)).norm_inf() / scale;
    Ok(InveReport {
        invertible,
        condition,
        t_from_inverse: t_res <= tol,
        commute: comm <= tol,
        tyy: tyy <= tol,
        residuals: [t_res, comm, tyy],
    })
}

fn spectrum_hit(what: &str, lambda: Complex64) -> Error {
    Error::SpectrumHit(format!("{what} is not invertible at lambda = {lambda}"))
}

/// `(lambda - Y)^{-1}` from the resolvent of `T` at `mu = (lambda-1)/lambda^2`:
/// `1/lambda + R/lambda^3 + Y/lambda^2 - (lambda-1)/lambda^4 Y R`.
pub fn resolvent_of_y(lambda: Complex64, t: &CMatrix, y: &CMatrix) -> Result<CMatrix> {
    square_pair(t, y)?;
    if lambda.norm() == 0.0 {
        return Err(Error::Domain("lambda = 0".into()));
    }
    let mu = (lambda - 1.0) / (lambda * lambda);
    let (r, _) = guarded_inverse(&(-t).add_identity(&mu))
        .ok_or_else(|| spectrum_hit("(lambda-1)/lambda^2 - T", lambda))?;
    let l2 = lambda * lambda;
    let l3 = l2 * lambda;
    let l4 = l2 * l2;
    let out = &(&r.scale(&(1.0 / l3)) + &y.scale(&(1.0 / l2)))
        - &(y * &r).scale(&((lambda - 1.0) / l4));
    Ok(out.add_identity(&(1.0 / lambda)))
}

/// `((lambda-1)/lambda^2 - T)^{-1}` from resolvents of `Y` alone.
pub fn resolvent_of_t_from_y(lambda: Complex64, t: &CMatrix, y: &CMatrix) -> Result<CMatrix> {
    square_pair(t, y)?;
    if lambda.norm() == 0.0 || (lambda - 1.0).norm() == 0.0 {
        return Err(Error::Domain(format!("lambda = {lambda} excluded")));
    }
    let lm1 = lambda - 1.0;
    let (a, _) = guarded_inverse(&(-y).add_identity(&(lambda / lm1)))
        .ok_or_else(|| spectrum_hit("lambda/(lambda-1) - Y", lambda))?;
    let (b, _) = guarded_inverse(&(-y).add_identity(&lambda))
        .ok_or_else(|| spectrum_hit("lambda - Y", lambda))?;
    let l2 = lambda * lambda;
    let inner = &b - &y.add_identity(&lambda).scale(&(1.0 / l2));
    Ok((&a * &inner).scale(&(l2 * l2 / lm1)))
}

#[derive(Clone, Debug, PartialEq)]
pub enum SpectralMapOutcome {
    Holds,
    Fails { max_mismatch: f64 },
    Unchecked(String),
}

/// `sigma(C(T)) = C(sigma(T))` as multisets.
pub fn spectral_map_check(t: &CMatrix, tol: f64) -> Result<SpectralMapOutcome> {
    let probe = power_bound_probe(t, 64)?;
    if probe.spectral_radius_est > 1.0 + 1e-12 {
        return Ok(SpectralMapOutcome::Unchecked(format!(
            "radius of 4T is {}",
            probe.spectral_radius_est
        )));
    }
    let f = schur(t)?;
    let v = eigenvectors(&f);
    let cond = inverse(&v)
        .map(|vi| vi.norm_inf() * v.norm_inf())
        .unwrap_or(f64::INFINITY);
    if !(cond <= DIAGONALIZABLE_COND) {
        return Ok(SpectralMapOutcome::Unchecked(format!(
            "eigenvector condition {cond:.3e}"
        )));
    }
    let ct = catalan_of_matrix_series(t, 1e-14)?;
    let lhs = schur(&ct)?.eigenvalues();
    let rhs = f
        .eigenvalues()
        .into_iter()
        .map(catalan_gf)
        .collect::<Result<Vec<_>>>()?;
    if multiset_eq(&lhs, &rhs, tol) {
        return Ok(SpectralMapOutcome::Holds);
    }
    let max_mismatch = lhs
        .iter()
        .map(|x| rhs.iter().map(|y| (x - y).norm()).fold(f64::INFINITY, f64::min))
        .fold(0.0, f64::max);
    Ok(SpectralMapOutcome::Fails { max_mismatch })
}
