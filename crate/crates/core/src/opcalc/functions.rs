use std::f64::consts::PI;

use num_complex::Complex64;

use super::power::{catalan_tail, choose_terms, horner_4t, MAX_TERMS};
use crate::catalan::weighted_catalan;
use crate::error::{Error, Result};
use crate::linalg::{inverse, spectral_radius, CMatrix};
use crate::quadrature::{integrate_half_line, QuadOptions};

/// `C(T) = sum C_n T^n`, truncated by [`choose_terms`].
pub fn catalan_of_matrix_series(t: &CMatrix, tol: f64) -> Result<CMatrix> {
    let w = weighted_catalan(MAX_TERMS + 1);
    let n = choose_terms(t, |k| w[k], catalan_tail, tol)?;
    Ok(horner_4t(t, &w[..n]))
}

/// `(1/pi) int_{1/4}^inf sqrt(lambda - 1/4)/lambda (lambda - T)^{-1} d lambda`,
/// one adaptive node set for all entries.
pub fn catalan_of_matrix_quadrature(t: &CMatrix, tol: f64) -> Result<CMatrix> {
    if !t.is_square() {
        return Err(Error::Dimension("C(T) needs a square matrix".into()));
    }
    let radius = spectral_radius(t)?;
    if radius >= 0.25 - 1e-8 {
        return Err(Error::NearSingularIntegrand(format!(
            "spectral radius {radius} too close to 1/4"
        )));
    }
    let n = t.rows();
    let mut failure = None;
    let r = integrate_half_line(
        |s| {
            let lambda = 0.25 + s;
            let shifted = (-t).add_identity(&Complex64::new(lambda, 0.0));
            match inverse(&shifted) {
                Ok(inv) => {
                    let w = s.sqrt() / (lambda * PI);
                    inv.as_slice().iter().map(|z| z * w).collect()
                }
                Err(e) => {
                    failure = Some(e);
                    vec![Complex64::new(f64::NAN, 0.0); n * n]
                }
            }
        },
        QuadOptions {
            abs_tol: tol,
            ..QuadOptions::default()
        },
    );
    if let Some(e) = failure {
        return Err(Error::NearSingularIntegrand(e.to_string()));
    }
    CMatrix::new(n, n, r?.value)
}

/// `(-1)^n binom(1/2, n)` for `n < len`.
fn binomial_half(len: usize) -> Vec<f64> {
    let mut b = Vec::with_capacity(len);
    let mut cur = 1.0f64;
    for k in 0..len {
        b.push(cur);
        // binom(1/2, k+1) = binom(1/2, k) (1/2 - k)/(k+1), with the sign flipped
        cur *= -(0.5 - k as f64) / (k as f64 + 1.0);
    }
    b
}

/// `sqrt(I - 4T) = sum (-4)^n binom(1/2, n) T^n`.
pub fn sqrt_one_minus_4t(t: &CMatrix, tol: f64) -> Result<CMatrix> {
    let b = binomial_half(MAX_TERMS + 1);
    // |b_k| = C_{k-1} 4^{-(k-1)} / 2 for k >= 1, so the tail is half a Catalan tail
    let tail = |n: usize| if n == 0 { 2.0 } else { 0.5 * catalan_tail(n - 1) };
    let n = choose_terms(t, |k| b[k].abs(), tail, tol)?;
    Ok(horner_4t(t, &b[..n]))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn scalar_multiple_of_identity() {
        let t = CMatrix::identity(2).scale_re(0.1);
        let y = catalan_of_matrix_series(&t, 1e-14).unwrap();
        let cz = crate::catalan::catalan_gf(c(0.1)).unwrap();
        assert!((y[(0, 0)] - cz).norm() < 1e-13);
        assert!(y[(0, 1)].norm() < 1e-15);
    }

    #[test]
    fn quadrature_zero_matrix_is_identity() {
        let y = catalan_of_matrix_quadrature(&CMatrix::zeros(2, 2), 1e-11).unwrap();
        assert!((&y - &CMatrix::identity(2)).norm_inf() < 1e-9);
    }

    #[test]
    fn quadrature_rejects_edge_spectrum() {
        let t = CMatrix::identity(2).scale_re(0.25);
        assert!(matches!(
            catalan_of_matrix_quadrature(&t, 1e-9),
            Err(Error::NearSingularIntegrand(_))
        ));
    }

    #[test]
    fn binomial_square_root() {
        let lam = 0.15;
        let t = CMatrix::identity(2).scale_re(lam);
        let s = sqrt_one_minus_4t(&t, 1e-14).unwrap();
        assert!((s[(0, 0)].re - (1.0f64 - 4.0 * lam).sqrt()).abs() < 1e-13);
        assert_eq!(sqrt_one_minus_4t(&CMatrix::zeros(3, 3), 1e-14).unwrap(), CMatrix::identity(3));
    }

    #[test]
    fn binomial_coefficients() {
        let b = binomial_half(4);
        assert_eq!(b, vec![1.0, -0.5, -0.125, -0.0625]);
    }
}
