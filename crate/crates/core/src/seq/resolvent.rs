use std::f64::consts::PI;

use num_complex::Complex64;

use super::weighted::{convolve, WeightedSeq};
use crate::error::{Error, Result};
use crate::quadrature::{integrate_half_line, QuadOptions};

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// `p_lambda(n) = lambda^-n`, truncated at `len`.
pub fn geometric_seq(lambda: Complex64, len: usize) -> Result<WeightedSeq> {
    if len == 0 {
        return Err(Error::Size("geometric sequence needs len >= 1".into()));
    }
    if !(lambda.norm() > 0.25) {
        return Err(Error::NotInAlgebra(format!("p_lambda for |lambda| = {}", lambda.norm())));
    }
    let ratio = 1.0 / (4.0 * lambda);
    let mut w = Vec::with_capacity(len);
    let mut cur = c(1.0);
    for _ in 0..len {
        w.push(cur);
        cur *= ratio;
    }
    let q = ratio.norm();
    Ok(WeightedSeq::from_weighted(w, q.powi(len as i32) / (1.0 - q)))
}

/// `|lambda - 1| / |lambda|^2 > 1/4`.
pub fn in_omega(lambda: Complex64) -> Result<bool> {
    if lambda.norm() == 0.0 {
        return Err(Error::Domain("lambda = 0".into()));
    }
    Ok((lambda - 1.0).norm() / lambda.norm_sqr() > 0.25)
}

/// `(lambda - c)^{-1}` through the geometric sequence with parameter
/// `mu = (lambda - 1) / lambda^2`, valid on `Omega`.
pub fn resolvent_catalan(lambda: Complex64, len: usize) -> Result<WeightedSeq> {
    if !in_omega(lambda)? {
        return Err(Error::OutsideOmega(format!("{lambda}")));
    }
    let mu = (lambda - 1.0) / (lambda * lambda);
    let p = geometric_seq(mu, len)?;
    let cat = WeightedSeq::catalan(len);
    let l2 = lambda * lambda;
    let r = WeightedSeq::delta(0)
        .scale(1.0 / lambda)
        .add(&p.scale(1.0 / (lambda * (lambda - 1.0))))
        .add(&cat.scale(1.0 / l2))
        .sub(&convolve(&cat, &p).scale(1.0 / l2));
    Ok(r)
}

/// `c^{-1} = delta_0 - delta_1 * c`.
pub fn catalan_inverse(len: usize) -> WeightedSeq {
    WeightedSeq::delta(0).sub(&convolve(&WeightedSeq::delta(1), &WeightedSeq::catalan(len)))
}

/// `C_n = (1/pi) int_{1/4}^inf sqrt(lambda - 1/4) lambda^{-2-n} d lambda` for
/// `n = 0..=max_n`, all moments from one vector-valued quadrature.
pub fn catalan_moments(max_n: usize) -> Result<(Vec<f64>, f64)> {
    let r = integrate_half_line(
        |t| {
            let lambda = 0.25 + t;
            let base = t.sqrt() / (lambda * lambda);
            let mut out = Vec::with_capacity(max_n + 1);
            let mut pw = base;
            for _ in 0..=max_n {
                out.push(c(pw / PI));
                pw /= lambda;
            }
            out
        },
        QuadOptions {
            abs_tol: 1e-11,
            ..QuadOptions::default()
        },
    )?;
    Ok((r.value.iter().map(|z| z.re).collect(), r.error))
}
