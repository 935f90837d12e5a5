use num_complex::Complex64;

use super::weighted::{convolve, WeightedSeq};
use crate::catalan::weighted_catalan;
use crate::error::{Error, Result};

/// Coefficients of `C(a/8)` for the backward difference `a = delta_1 - delta_0`.
#[derive(Clone, Debug)]
pub struct BackwardDifference {
    /// `2 sqrt 6 - 4`, then `(sqrt 6 / 3) sum_{k>=j} C_k / 12^k`.
    pub closed_form: Vec<f64>,
    /// `sum_n C_n (a/8)^{*n}` summed until the terms are negligible.
    pub direct: Vec<f64>,
    pub max_discrepancy: f64,
}

fn closed_form(j_max: usize) -> Vec<f64> {
    let s6 = 6f64.sqrt();
    // C_k / 12^k = w_k 3^-k; the term ratio tends to 1/3
    let n = 200;
    let w = weighted_catalan(n);
    let terms: Vec<f64> = w
        .iter()
        .scan(1.0f64, |p, wk| {
            let t = wk * *p;
            *p /= 3.0;
            Some(t)
        })
        .collect();
    let mut suffix = vec![0.0; n + 1];
    for k in (0..n).rev() {
        suffix[k] = suffix[k + 1] + terms[k];
    }
    (0..j_max)
        .map(|j| {
            if j == 0 {
                2.0 * s6 - 4.0
            } else {
                s6 / 3.0 * suffix[j]
            }
        })
        .collect()
}

fn direct(j_max: usize) -> Result<Vec<f64>> {
    let a8 = WeightedSeq::delta(1)
        .sub(&WeightedSeq::delta(0))
        .scale(Complex64::new(0.125, 0.0));
    let n_max = 400;
    let w = weighted_catalan(n_max);
    let mut acc = vec![Complex64::new(0.0, 0.0); j_max];
    let mut power = WeightedSeq::delta(0);
    for (n, wn) in w.iter().enumerate() {
        // C_n = w_n 4^n
        let cn = wn * 4f64.powi(n as i32);
        let mut biggest = 0.0f64;
        for (j, slot) in acc.iter_mut().enumerate() {
            let t = power.coeff(j) * cn;
            biggest = biggest.max(t.norm());
            *slot += t;
        }
        if n > j_max && biggest < 1e-20 {
            return Ok(acc.into_iter().map(|z| z.re).collect());
        }
        power = convolve(&power, &a8);
    }
    Err(Error::Convergence(format!(
        "backward-difference series not settled after {n_max} terms"
    )))
}

pub fn backward_difference_catalan(j_max: usize) -> Result<BackwardDifference> {
    if j_max == 0 {
        return Err(Error::Size("need at least one coefficient".into()));
    }
    let closed_form = closed_form(j_max);
    let direct = direct(j_max)?;
    let max_discrepancy = closed_form
        .iter()
        .zip(&direct)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    Ok(BackwardDifference {
        closed_form,
        direct,
        max_discrepancy,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn leading_coefficient() {
        let b = backward_difference_catalan(3).unwrap();
        assert!((b.closed_form[0] - 0.898_979_485_566_356_2).abs() < 1e-15);
        assert!((b.direct[0] - b.closed_form[0]).abs() < 1e-12);
    }

    #[test]
    fn agreement_and_monotone_decay() {
        let b = backward_difference_catalan(12).unwrap();
        assert!(b.max_discrepancy <= 1e-10, "{}", b.max_discrepancy);
        assert!(b.closed_form[1..].windows(2).all(|w| w[1] < w[0] && w[1] > 0.0));
    }
}
