//! Sylvester solvers: `A*X + X*B = D` and the generalized form
//! `A1*X*B1 + A2*X = D`.

use num_complex::Complex64;

use super::lu::Lu;
use super::matrix::{CMatrix, Matrix};
use super::scalar::Scalar;
use super::schur::{schur, SchurForm};
use crate::error::{Error, Result};

/// Largest `m*n` for which an explicit Kronecker system is assembled.
pub const KRON_CAP: usize = 4096;
const ILL_POSED_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    BartelsStewart,
    Kronecker,
}

impl Strategy {
    /// Kronecker for tiny systems, Bartels-Stewart beyond 8x8.
    pub fn auto(m: usize, n: usize) -> Self {
        if m <= 8 && n <= 8 {
            Strategy::Kronecker
        } else {
            Strategy::BartelsStewart
        }
    }
}

#[derive(Clone, Debug)]
pub struct SylvesterProblem {
    pub a: CMatrix,
    pub b: CMatrix,
    pub d: CMatrix,
    pub strategy: Strategy,
}

impl SylvesterProblem {
    pub fn new(a: CMatrix, b: CMatrix, d: CMatrix, strategy: Strategy) -> Result<Self> {
        check_dims(&a, &b, &d)?;
        Ok(Self { a, b, d, strategy })
    }

    pub fn residual(&self, x: &CMatrix) -> f64 {
        (&(&(&self.a * x) + &(x * &self.b)) - &self.d).norm_inf()
    }
}

fn check_dims<S: Scalar>(a: &Matrix<S>, b: &Matrix<S>, d: &Matrix<S>) -> Result<()> {
    if !a.is_square() || !b.is_square() || d.rows() != a.rows() || d.cols() != b.rows() {
        return Err(Error::Dimension(format!(
            "Sylvester shapes A {}x{}, B {}x{}, D {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols(),
            d.rows(),
            d.cols()
        )));
    }
    Ok(())
}

fn separation_check(ea: &[Complex64], eb: &[Complex64], scale: f64) -> Result<()> {
    let tol = ILL_POSED_TOL * scale.max(1.0);
    for x in ea {
        for y in eb {
            let gap = (x + y).norm();
            if gap <= tol {
                return Err(Error::IllPosed(format!(
                    "eigenvalues {x} of A and {} of -B are {gap:.3e} apart",
                    -y
                )));
            }
        }
    }
    Ok(())
}

pub fn sylvester_solve(p: &SylvesterProblem) -> Result<CMatrix> {
    check_dims(&p.a, &p.b, &p.d)?;
    match p.strategy {
        Strategy::BartelsStewart => SylvesterSolver::new(&p.a, &p.b)?.solve(&p.d),
        Strategy::Kronecker => {
            let (m, n) = (p.a.rows(), p.b.rows());
            if m * n > KRON_CAP {
                return Err(Error::Strategy(format!(
                    "Kronecker system of size {} exceeds cap {KRON_CAP}",
                    m * n
                )));
            }
            let ea = schur(&p.a)?.eigenvalues();
            let eb = schur(&p.b)?.eigenvalues();
            separation_check(&ea, &eb, p.a.norm_inf() + p.b.norm_inf())?;
            let id_m = CMatrix::identity(m);
            GenSylvester::new(&id_m, &p.b, &p.a)?.solve(&p.d)
        }
    }
}

/// Bartels-Stewart with the Schur factors of `A` and `B` computed once and
/// shared across right-hand sides.
#[derive(Clone, Debug)]
pub struct SylvesterSolver {
    sa: SchurForm,
    sb: SchurForm,
}

impl SylvesterSolver {
    pub fn new(a: &CMatrix, b: &CMatrix) -> Result<Self> {
        if !a.is_square() || !b.is_square() {
            return Err(Error::Dimension("Sylvester coefficients must be square".into()));
        }
        let sa = schur(a)?;
        let sb = schur(b)?;
        separation_check(
            &sa.eigenvalues(),
            &sb.eigenvalues(),
            a.norm_inf() + b.norm_inf(),
        )?;
        Ok(Self { sa, sb })
    }

    pub fn solve(&self, d: &CMatrix) -> Result<CMatrix> {
        let (m, n) = (self.sa.u.rows(), self.sb.u.rows());
        if d.rows() != m || d.cols() != n {
            return Err(Error::Dimension(format!(
                "right-hand side is {}x{}, expected {m}x{n}",
                d.rows(),
                d.cols()
            )));
        }
        let ua = &self.sa.u;
        let ub = &self.sb.u;
        // Ua*Y + Y*Ub = F with F = Qa^H D Qb
        let f = &(&self.sa.q.adjoint() * d) * &self.sb.q;
        let mut y = CMatrix::zeros(m, n);
        for j in 0..n {
            let mut rhs: Vec<Complex64> = (0..m).map(|i| f[(i, j)]).collect();
            for k in 0..j {
                let bkj = ub[(k, j)];
                if bkj.norm() != 0.0 {
                    for (i, r) in rhs.iter_mut().enumerate() {
                        *r -= y[(i, k)] * bkj;
                    }
                }
            }
            let shift = ub[(j, j)];
            for i in (0..m).rev() {
                let mut acc = rhs[i];
                for k in i + 1..m {
                    acc -= ua[(i, k)] * y[(k, j)];
                }
                y[(i, j)] = acc / (ua[(i, i)] + shift);
            }
        }
        let x = &(&self.sa.q * &y) * &self.sb.q.adjoint();
        if !x.is_finite() {
            return Err(Error::IllPosed("non-finite solution".into()));
        }
        Ok(x)
    }
}

/// Reusable solver for `A1*X*B1 + A2*X = D`, generic over the scalar field.
///
/// All-diagonal coefficients use the entrywise formula
/// `x_ij = d_ij / (a1_i * b1_j + a2_i)`; otherwise the column-major Kronecker
/// system `(B1^T (x) A1 + I (x) A2) vec X = vec D` is LU-factored once.
#[derive(Clone, Debug)]
pub enum GenSylvester<S> {
    Diagonal { den: Matrix<S> },
    Dense { lu: Lu<S>, m: usize, n: usize },
}

impl<S: Scalar> GenSylvester<S> {
    pub fn new(a1: &Matrix<S>, b1: &Matrix<S>, a2: &Matrix<S>) -> Result<Self> {
        let m = a1.rows();
        let n = b1.rows();
        if !a1.is_square() || !b1.is_square() || !a2.is_square() || a2.rows() != m {
            return Err(Error::Dimension(
                "generalized Sylvester coefficients must be square and conforming".into(),
            ));
        }
        if a1.is_diagonal() && b1.is_diagonal() && a2.is_diagonal() {
            let den = Matrix::from_fn(m, n, |i, j| {
                a1[(i, i)].clone() * b1[(j, j)].clone() + a2[(i, i)].clone()
            });
            if let Some(pos) = den.as_slice().iter().position(Scalar::is_zero) {
                return Err(Error::IllPosed(format!(
                    "diagonal operator vanishes at ({}, {})",
                    pos / n,
                    pos % n
                )));
            }
            return Ok(Self::Diagonal { den });
        }
        if m * n > KRON_CAP {
            return Err(Error::Strategy(format!(
                "Kronecker system of size {} exceeds cap {KRON_CAP}",
                m * n
            )));
        }
        let mn = m * n;
        let mut k = Matrix::<S>::zeros(mn, mn);
        for j in 0..n {
            for l in 0..n {
                let b = &b1[(l, j)];
                if b.is_zero() {
                    continue;
                }
                for i in 0..m {
                    for kk in 0..m {
                        let a = &a1[(i, kk)];
                        if !a.is_zero() {
                            let cur = k[(i + j * m, kk + l * m)].clone();
                            k[(i + j * m, kk + l * m)] = cur + a.clone() * b.clone();
                        }
                    }
                }
            }
            for i in 0..m {
                for kk in 0..m {
                    let a = &a2[(i, kk)];
                    if !a.is_zero() {
                        let cur = k[(i + j * m, kk + j * m)].clone();
                        k[(i + j * m, kk + j * m)] = cur + a.clone();
                    }
                }
            }
        }
        let lu = Lu::factor(&k).map_err(|e| match e {
            Error::Singular { col } => {
                Error::IllPosed(format!("assembled Kronecker system singular at column {col}"))
            }
            other => other,
        })?;
        Ok(Self::Dense { lu, m, n })
    }

    pub fn solve(&self, d: &Matrix<S>) -> Result<Matrix<S>> {
        match self {
            Self::Diagonal { den } => {
                if d.rows() != den.rows() || d.cols() != den.cols() {
                    return Err(Error::Dimension("right-hand side shape".into()));
                }
                Ok(Matrix::from_fn(d.rows(), d.cols(), |i, j| {
                    d[(i, j)].clone() / den[(i, j)].clone()
                }))
            }
            Self::Dense { lu, m, n } => {
                let (m, n) = (*m, *n);
                if d.rows() != m || d.cols() != n {
                    return Err(Error::Dimension("right-hand side shape".into()));
                }
                let rhs = Matrix::from_fn(m * n, 1, |r, _| d[(r % m, r / m)].clone());
                let v = lu.solve(&rhs)?;
                Ok(Matrix::from_fn(m, n, |i, j| v[(i + j * m, 0)].clone()))
            }
        }
    }
}

/// One-shot solve of `A1*X*B1 + A2*X = D`.
pub fn generalized_sylvester_kron<S: Scalar>(
    a1: &Matrix<S>,
    b1: &Matrix<S>,
    a2: &Matrix<S>,
    d: &Matrix<S>,
) -> Result<Matrix<S>> {
    GenSylvester::new(a1, b1, a2)?.solve(d)
}
