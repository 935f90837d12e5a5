use num_complex::Complex64;

use crate::error::{Error, Result};

const TAYLOR_RADIUS: f64 = 1e-8;
/// Slack on the `|z| <= 1/4` domain test so the boundary circle survives rounding.
const DOMAIN_SLACK: f64 = 1e-14;
const C: [f64; 9] = [1.0, 1.0, 2.0, 5.0, 14.0, 42.0, 132.0, 429.0, 1430.0];

fn check_domain(z: Complex64) -> Result<()> {
    if !(z.norm() <= 0.25 * (1.0 + DOMAIN_SLACK)) {
        return Err(Error::Domain(format!("|z| = {} exceeds 1/4", z.norm())));
    }
    Ok(())
}

fn taylor(z: Complex64, parity: Option<usize>) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for k in (0..C.len()).rev() {
        let c = match parity {
            Some(p) if k % 2 != p => 0.0,
            _ => C[k],
        };
        acc = acc * z + c;
    }
    acc
}

fn one() -> Complex64 {
    Complex64::new(1.0, 0.0)
}

/// `C(z) = (1 - sqrt(1 - 4z)) / (2z)` on the closed disc `|z| <= 1/4`.
pub fn catalan_gf(z: Complex64) -> Result<Complex64> {
    check_domain(z)?;
    if z.norm() < TAYLOR_RADIUS {
        return Ok(taylor(z, None));
    }
    let s = (one() - 4.0 * z).sqrt();
    // 2 / (1 + sqrt(1-4z)) avoids the cancellation of the textbook form
    Ok(2.0 / (one() + s))
}

/// Even part `sum C_{2n} z^{2n}`.
pub fn catalan_gf_even(z: Complex64) -> Result<Complex64> {
    check_domain(z)?;
    if z.norm() < TAYLOR_RADIUS {
        return Ok(taylor(z, Some(0)));
    }
    let p = (one() + 4.0 * z).sqrt();
    let m = (one() - 4.0 * z).sqrt();
    Ok(2.0 / (p + m))
}

/// Odd part `sum C_{2n+1} z^{2n+1}`.
pub fn catalan_gf_odd(z: Complex64) -> Result<Complex64> {
    check_domain(z)?;
    if z.norm() < TAYLOR_RADIUS {
        return Ok(taylor(z, Some(1)));
    }
    let p = (one() + 4.0 * z).sqrt();
    let m = (one() - 4.0 * z).sqrt();
    Ok(8.0 * z / ((one() + p) * (one() + m) * (p + m)))
}

/// `|4x^2 w^4 - w^2 + 1|` for `w` the mean of the roots of `xy^2 - y + 1`
/// and `-xz^2 - z + 1` that are analytic at the origin.
pub fn biquadratic_residual(x: Complex64) -> Result<Complex64> {
    if x.norm() == 0.0 {
        return Err(Error::Domain("x must be nonzero".into()));
    }
    let y = catalan_gf(x)?;
    // (-1 + sqrt(1+4x)) / (2x) is C(-x)
    let z = catalan_gf(-x)?;
    let w = (y + z) * 0.5;
    let w2 = w * w;
    Ok(4.0 * x * x * w2 * w2 - w2 + 1.0)
}

pub fn biquadratic_mean_check(x: Complex64, tol: f64) -> Result<bool> {
    Ok(biquadratic_residual(x)?.norm() <= tol)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn endpoint_values() {
        assert_eq!(catalan_gf(r(0.0)).unwrap(), r(1.0));
        assert!((catalan_gf(r(0.25)).unwrap() - r(2.0)).norm() < 1e-15);
        let expect = 2.0 * (2f64.sqrt() - 1.0);
        assert!((catalan_gf(r(-0.25)).unwrap() - r(expect)).norm() < 1e-15);
    }

    #[test]
    fn parts_at_quarter_and_origin() {
        let s2 = 2f64.sqrt();
        assert!((catalan_gf_even(r(0.25)).unwrap() - r(s2)).norm() < 1e-15);
        assert!((catalan_gf_odd(r(0.25)).unwrap() - r(2.0 - s2)).norm() < 1e-15);
        assert_eq!(catalan_gf_even(r(0.0)).unwrap(), r(1.0));
        assert_eq!(catalan_gf_odd(r(0.0)).unwrap(), r(0.0));
    }

    #[test]
    fn taylor_guard_is_continuous() {
        let z = Complex64::new(0.7e-8, 0.3e-8);
        let t = taylor(z, None);
        let direct = 2.0 / (one() + (one() - 4.0 * z).sqrt());
        assert!((t - direct).norm() < 1e-15);
    }

    #[test]
    fn outside_disc_rejected() {
        assert!(matches!(catalan_gf(r(0.26)), Err(Error::Domain(_))));
        assert!(catalan_gf_even(Complex64::new(0.0, 0.3)).is_err());
    }

    #[test]
    fn biquadratic_examples() {
        assert!(biquadratic_mean_check(r(0.1), 1e-12).unwrap());
        assert!(biquadratic_mean_check(r(-0.2), 1e-12).unwrap());
        assert!(biquadratic_mean_check(r(0.25), 1e-10).unwrap());
    }
}
