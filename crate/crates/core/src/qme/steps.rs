use std::any::TypeId;

use num_complex::Complex64;

use super::config::{Method, SylvesterForm};
use crate::error::Result;
use crate::linalg::{GenSylvester, Matrix, Scalar, SylvesterSolver};

/// `Q(Y) = T Y^2 - Y + I`.
pub fn q_of<S: Scalar>(t: &Matrix<S>, y: &Matrix<S>) -> Matrix<S> {
    (&(t * &(y * y)) - y).add_identity(&S::one())
}

/// `Q'(Y) E = T E Y + (T Y - I) E`.
pub fn q_prime_apply<S: Scalar>(t: &Matrix<S>, y: &Matrix<S>, e: &Matrix<S>) -> Matrix<S> {
    let tey = &(t * e) * y;
    let ty_i = (t * y).add_identity(&-S::one());
    &tey + &(&ty_i * e)
}

/// `Q''(Y)(E1, E2) = T (E1 E2 + E2 E1)`.
pub fn q_second_apply<S: Scalar>(t: &Matrix<S>, e1: &Matrix<S>, e2: &Matrix<S>) -> Matrix<S> {
    t * &(&(e1 * e2) + &(e2 * e1))
}

/// `C_j / (2 C_{j-1}) = (2j - 1)/(j + 1)`.
pub fn catalan_weight<S: Scalar>(j: usize) -> S {
    S::from_f64((2 * j - 1) as f64) / S::from_f64((j + 1) as f64)
}

fn is_double<S: 'static>() -> bool {
    TypeId::of::<S>() == TypeId::of::<Complex64>()
}

/// The correction operator at one iterate, factored once.
enum Correction<S> {
    General(GenSylvester<S>),
    Schur(SylvesterSolver),
}

impl<S: Scalar + 'static> Correction<S> {
    fn new(t: &Matrix<S>, y: &Matrix<S>, form: SylvesterForm) -> Result<Self> {
        let ty = t * y;
        let ty_i = ty.add_identity(&-S::one());
        match form {
            SylvesterForm::Derived => Ok(Self::General(GenSylvester::new(t, y, &ty_i)?)),
            SylvesterForm::Paper if is_double::<S>() && !ty.is_diagonal() => Ok(Self::Schur(
                SylvesterSolver::new(&ty_i.to_c64(), &ty.to_c64())?,
            )),
            SylvesterForm::Paper => {
                let id = Matrix::identity(t.rows());
                Ok(Self::General(GenSylvester::new(&id, &ty, &ty_i)?))
            }
        }
    }

    fn solve(&self, d: &Matrix<S>) -> Result<Matrix<S>> {
        match self {
            Self::General(g) => g.solve(d),
            Self::Schur(s) => Ok(Matrix::from_c64(&s.solve(&d.to_c64())?)),
        }
    }
}

pub fn newton_step<S: Scalar + 'static>(
    t: &Matrix<S>,
    y: &Matrix<S>,
    form: SylvesterForm,
) -> Result<Matrix<S>> {
    let op = Correction::new(t, y, form)?;
    let ty2 = t * &(y * y);
    let rhs = match form {
        SylvesterForm::Paper => ty2,
        SylvesterForm::Derived => ty2.add_identity(&-S::one()),
    };
    op.solve(&rhs)
}

/// `H_0, ..., H_k` from the recursive Sylvester form.
pub fn catalan_corrections<S: Scalar + 'static>(
    t: &Matrix<S>,
    y: &Matrix<S>,
    k: usize,
    form: SylvesterForm,
) -> Result<Vec<Matrix<S>>> {
    let op = Correction::new(t, y, form)?;
    let h0 = op.solve(&-&q_of(t, y))?;
    let mut hs = vec![h0];
    for j in 1..=k {
        let prev = &hs[j - 1];
        let h0 = &hs[0];
        let rhs = q_second_apply(t, h0, prev).scale(&-catalan_weight::<S>(j));
        hs.push(op.solve(&rhs)?);
    }
    Ok(hs)
}

pub fn catalan_step<S: Scalar + 'static>(
    t: &Matrix<S>,
    y: &Matrix<S>,
    k: usize,
    form: SylvesterForm,
) -> Result<Matrix<S>> {
    let hs = catalan_corrections(t, y, k, form)?;
    Ok(hs.iter().fold(y.clone(), |acc, h| &acc + h))
}

/// Three solves with one operator: `H_0`, `S = H_0 + H_1`, then `W` with
/// `L(W) = -T (H_0 S + S H_0)/2`; returns `Y + H_0 + W`.
pub fn catalan4_step<S: Scalar + 'static>(
    t: &Matrix<S>,
    y: &Matrix<S>,
    form: SylvesterForm,
) -> Result<Matrix<S>> {
    let op = Correction::new(t, y, form)?;
    let q = q_of(t, y);
    let h0 = op.solve(&-&q)?;
    let s = op.solve(&(&-&q - &(t * &(&h0 * &h0))))?;
    let half = S::one() / S::from_f64(2.0);
    let w = op.solve(&q_second_apply(t, &h0, &s).scale(&-half))?;
    Ok(&(y + &h0) + &w)
}

pub fn step<S: Scalar + 'static>(
    method: Method,
    t: &Matrix<S>,
    y: &Matrix<S>,
    form: SylvesterForm,
) -> Result<Matrix<S>> {
    match method {
        Method::Newton => newton_step(t, y, form),
        Method::CatalanK(k) => catalan_step(t, y, k, form),
        Method::Catalan4 => catalan4_step(t, y, form),
    }
}

/// `H_j = -(C_j / 2^j) F^j G` with `G = Q'(Y)^{-1} Q(Y)` and
/// `F(X) = Q'(Y)^{-1} Q''(X, G)`, always with the Frechet derivative.
pub fn catalan_corrections_direct<S: Scalar + 'static>(
    t: &Matrix<S>,
    y: &Matrix<S>,
    k: usize,
) -> Result<Vec<Matrix<S>>> {
    let op = Correction::new(t, y, SylvesterForm::Derived)?;
    let g = op.solve(&q_of(t, y))?;
    let mut out = Vec::with_capacity(k + 1);
    let mut fg = g.clone();
    // C_j / 2^j
    let mut coeff = S::one();
    for j in 0..=k {
        if j > 0 {
            fg = op.solve(&q_second_apply(t, &fg, &g))?;
            coeff = coeff * catalan_weight::<S>(j);
        }
        out.push(fg.scale(&-coeff.clone()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::CMatrix;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn weights() {
        assert_eq!(catalan_weight::<Complex64>(1), c(0.5));
        assert_eq!(catalan_weight::<Complex64>(2), c(1.0));
        assert_eq!(catalan_weight::<Complex64>(3), c(1.25));
    }

    #[test]
    fn zero_t_newton_gives_identity() {
        let t = CMatrix::zeros(3, 3);
        let y0 = CMatrix::from_real_rows(&[&[2.0, 1.0, 0.0], &[0.0, 3.0, 0.5], &[1.0, 0.0, 1.0]]).unwrap();
        let y1 = newton_step(&t, &y0, SylvesterForm::Derived).unwrap();
        assert!((&y1 - &CMatrix::identity(3)).max_abs() < 1e-15);
    }

    #[test]
    fn scalar_newton_matches() {
        let t = CMatrix::from_diag(&[c(0.1), c(0.2)]);
        let y = CMatrix::from_diag(&[c(0.7), c(1.5)]);
        let y1 = newton_step(&t, &y, SylvesterForm::Derived).unwrap();
        for (i, (tt, yy)) in [(0.1, 0.7), (0.2, 1.5)].into_iter().enumerate() {
            let want = yy - (tt * yy * yy - yy + 1.0) / (2.0 * tt * yy - 1.0);
            assert!((y1[(i, i)].re - want).abs() < 1e-15);
        }
    }

    #[test]
    fn direct_matches_recursive_on_dense() {
        let t = CMatrix::from_real_rows(&[&[0.05, 0.02], &[-0.03, 0.08]]).unwrap();
        let y = CMatrix::from_real_rows(&[&[1.05, 0.01], &[0.0, 1.1]]).unwrap();
        let a = catalan_corrections(&t, &y, 4, SylvesterForm::Derived).unwrap();
        let b = catalan_corrections_direct(&t, &y, 4).unwrap();
        for (x, z) in a.iter().zip(&b) {
            assert!((x - z).max_abs() <= 1e-14);
        }
    }

    #[test]
    fn catalan4_is_between_k1_and_k2() {
        let t = CMatrix::from_diag(&[c(0.1), c(0.05)]);
        let y = CMatrix::from_diag(&[c(1.2), c(1.0)]);
        let hs = catalan_corrections(&t, &y, 2, SylvesterForm::Derived).unwrap();
        let want = &(&(&y + &hs[0]) + &hs[1]) + &hs[2].scale(&c(0.5));
        let got = catalan4_step(&t, &y, SylvesterForm::Derived).unwrap();
        assert!((&got - &want).max_abs() < 1e-15);
    }

    #[test]
    fn frechet_finite_difference() {
        let t = CMatrix::from_real_rows(&[&[0.1, 0.03], &[0.02, -0.05]]).unwrap();
        let y = CMatrix::from_real_rows(&[&[1.0, 0.2], &[0.1, 0.9]]).unwrap();
        let e = CMatrix::from_real_rows(&[&[0.3, -0.1], &[0.5, 0.2]]).unwrap();
        let h = 1e-5;
        let fd = (&q_of(&t, &(&y + &e.scale_re(h))) - &q_of(&t, &(&y - &e.scale_re(h)))).scale_re(0.5 / h);
        let d = &fd - &q_prime_apply(&t, &y, &e);
        assert!(d.norm_inf() <= 1e-8 * (1.0 + e.norm_inf()));
        assert_eq!(q_second_apply(&t, &e, &y), q_second_apply(&t, &y, &e));
    }
}
