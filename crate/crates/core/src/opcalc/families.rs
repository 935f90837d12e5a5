//! Closed-form solutions of `T Y^2 - Y + I = 0` for three 2x2 families.

use num_complex::Complex64;

use crate::catalan::{catalan_gf, catalan_gf_even, catalan_gf_odd};
use crate::error::{Error, Result};
use crate::linalg::CMatrix;

fn m2(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> CMatrix {
    CMatrix::from_rows(&[vec![a, b], vec![c, d]]).expect("finite 2x2 entries")
}

fn nonzero(lambda: Complex64) -> Result<()> {
    if lambda.norm() == 0.0 {
        return Err(Error::Domain("lambda must be nonzero".into()));
    }
    Ok(())
}

pub fn scalar_t(lambda: Complex64) -> CMatrix {
    CMatrix::identity(2).scale(&lambda)
}

pub fn swap_t(lambda: Complex64) -> CMatrix {
    let z = Complex64::new(0.0, 0.0);
    m2(z, lambda, lambda, z)
}

pub fn nilpotent_t(lambda: Complex64) -> CMatrix {
    let z = Complex64::new(0.0, 0.0);
    m2(z, lambda, z, z)
}

/// `T = lambda I`: `Y = [[(1 +- s)/(2 lambda), b], [c, (1 -+ s)/(2 lambda)]]`
/// with `s = sqrt(1 - 4 lambda (1 + lambda b c))`; `plus_first` picks `(+, -)`.
pub fn scalar_family_y(lambda: Complex64, b: Complex64, c: Complex64, plus_first: bool) -> Result<CMatrix> {
    nonzero(lambda)?;
    let s = (1.0 - 4.0 * lambda * (1.0 + lambda * b * c)).sqrt();
    let sg = if plus_first { 1.0 } else { -1.0 };
    let two_l = 2.0 * lambda;
    Ok(m2((1.0 + sg * s) / two_l, b, c, (1.0 - sg * s) / two_l))
}

/// Diagonal solutions for `b = c = 0`, any sign pair.
pub fn scalar_family_diag(lambda: Complex64, signs: (bool, bool)) -> Result<CMatrix> {
    nonzero(lambda)?;
    let s = (1.0 - 4.0 * lambda).sqrt();
    let pick = |p: bool| (1.0 + if p { s } else { -s }) / (2.0 * lambda);
    let z = Complex64::new(0.0, 0.0);
    Ok(m2(pick(signs.0), z, z, pick(signs.1)))
}

/// The four roots `a` of `4 lambda^2 a^4 - a^2 + 1 = 0`.
pub fn biquadratic_roots(lambda: Complex64) -> Result<[Complex64; 4]> {
    nonzero(lambda)?;
    // a^2 = (1 +- sqrt(1 - 16 lambda^2)) / (8 lambda^2); the smaller root
    // from the product 1/(4 lambda^2) avoids cancellation
    let d = (1.0 - 16.0 * lambda * lambda).sqrt();
    let big = if (1.0 + d).norm() >= (1.0 - d).norm() { 1.0 + d } else { 1.0 - d };
    let u1 = big / (8.0 * lambda * lambda);
    let u2 = 1.0 / (4.0 * lambda * lambda * u1);
    let q1 = u1.sqrt();
    let q2 = u2.sqrt();
    Ok([q1, -q1, q2, -q2])
}

/// `T = lambda swap`: `Y = [[a, (a-1)/(2 lambda a)], [same, a]]`.
pub fn swap_family_y(lambda: Complex64, a: Complex64) -> Result<CMatrix> {
    nonzero(lambda)?;
    let off = (a - 1.0) / (2.0 * lambda * a);
    Ok(m2(a, off, off, a))
}

/// `T = lambda [[0,1],[0,0]]`: the unique solution `I + T`.
pub fn nilpotent_family_y(lambda: Complex64) -> CMatrix {
    let one = Complex64::new(1.0, 0.0);
    m2(one, lambda, Complex64::new(0.0, 0.0), one)
}

/// `C(lambda I) = C(lambda) I`.
pub fn scalar_family_c(lambda: Complex64) -> Result<CMatrix> {
    Ok(CMatrix::identity(2).scale(&catalan_gf(lambda)?))
}

/// `C(lambda swap) = [[C_e, C_o], [C_o, C_e]]` at `lambda`.
pub fn swap_family_c(lambda: Complex64) -> Result<CMatrix> {
    let e = catalan_gf_even(lambda)?;
    let o = catalan_gf_odd(lambda)?;
    Ok(m2(e, o, o, e))
}
