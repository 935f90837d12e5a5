use super::matrix::Matrix;
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// LU factorization with partial (row) pivoting, `P*A = L*U`.
#[derive(Clone, Debug)]
pub struct Lu<S> {
    n: usize,
    // L strictly below the diagonal (unit diagonal implied), U on and above
    packed: Matrix<S>,
    perm: Vec<usize>,
    min_pivot: f64,
    max_pivot: f64,
}

impl<S: Scalar> Lu<S> {
    pub fn factor(a: &Matrix<S>) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::Dimension(format!(
                "LU needs a square matrix, got {}x{}",
                a.rows(),
                a.cols()
            )));
        }
        let n = a.rows();
        let mut lu = a.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut min_pivot = f64::INFINITY;
        let mut max_pivot = 0.0f64;
        for k in 0..n {
            let (p, best) = (k..n)
                .map(|i| (i, lu[(i, k)].modulus()))
                .fold((k, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
            if best == 0.0 || lu[(p, k)].is_zero() {
                return Err(Error::Singular { col: k });
            }
            min_pivot = min_pivot.min(best);
            max_pivot = max_pivot.max(best);
            if p != k {
                for j in 0..n {
                    let tmp = lu[(k, j)].clone();
                    lu[(k, j)] = lu[(p, j)].clone();
                    lu[(p, j)] = tmp;
                }
                perm.swap(k, p);
            }
            let pivot = lu[(k, k)].clone();
            for i in k + 1..n {
                if lu[(i, k)].is_zero() {
                    continue;
                }
                let factor = lu[(i, k)].clone() / pivot.clone();
                for j in k + 1..n {
                    if lu[(k, j)].is_zero() {
                        continue;
                    }
                    lu[(i, j)] = lu[(i, j)].clone() - factor.clone() * lu[(k, j)].clone();
                }
                lu[(i, k)] = factor;
            }
        }
        Ok(Self {
            n,
            packed: lu,
            perm,
            min_pivot,
            max_pivot,
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Ratio of smallest to largest pivot modulus; a cheap singularity gauge.
    pub fn pivot_ratio(&self) -> f64 {
        if self.max_pivot == 0.0 {
            0.0
        } else {
            self.min_pivot / self.max_pivot
        }
    }

    pub fn solve(&self, b: &Matrix<S>) -> Result<Matrix<S>> {
        if b.rows() != self.n {
            return Err(Error::Dimension(format!(
                "right-hand side has {} rows, system has {}",
                b.rows(),
                self.n
            )));
        }
        let n = self.n;
        let m = b.cols();
        let mut x = Matrix::from_fn(n, m, |i, j| b[(self.perm[i], j)].clone());
        for c in 0..m {
            for i in 0..n {
                let mut acc = x[(i, c)].clone();
                for k in 0..i {
                    let l = &self.packed[(i, k)];
                    if !l.is_zero() {
                        acc = acc - l.clone() * x[(k, c)].clone();
                    }
                }
                x[(i, c)] = acc;
            }
            for i in (0..n).rev() {
                let mut acc = x[(i, c)].clone();
                for k in i + 1..n {
                    let u = &self.packed[(i, k)];
                    if !u.is_zero() {
                        acc = acc - u.clone() * x[(k, c)].clone();
                    }
                }
                x[(i, c)] = acc / self.packed[(i, i)].clone();
            }
        }
        Ok(x)
    }

    pub fn inverse(&self) -> Result<Matrix<S>> {
        self.solve(&Matrix::identity(self.n))
    }
}

/// Solve `A*X = B` by partial-pivoting LU.
pub fn lu_solve<S: Scalar>(a: &Matrix<S>, b: &Matrix<S>) -> Result<Matrix<S>> {
    Lu::factor(a)?.solve(b)
}

pub fn inverse<S: Scalar>(a: &Matrix<S>) -> Result<Matrix<S>> {
    Lu::factor(a)?.inverse()
}
