//! Complex Schur decomposition `A = Q*U*Q^H`.
//!
//! Householder reduction to upper Hessenberg form followed by single-shift
//! QR sweeps (Wilkinson shift, Givens rotations) with deflation when a
//! subdiagonal entry drops below `1e-14 * ||H||_inf`.

use num_complex::Complex64;

use super::matrix::CMatrix;
use crate::error::{Error, Result};

pub const DEFAULT_MAX_DIM: usize = 512;
const DEFLATION_TOL: f64 = 1e-14;
const SWEEPS_PER_DIM: usize = 30;

#[derive(Clone, Debug)]
pub struct SchurForm {
    /// Unitary factor.
    pub q: CMatrix,
    /// Upper-triangular factor; its diagonal carries the eigenvalues.
    pub u: CMatrix,
    pub source_dim: usize,
}

impl SchurForm {
    pub fn eigenvalues(&self) -> Vec<Complex64> {
        self.u.diag()
    }

    pub fn reconstruct(&self) -> CMatrix {
        &(&self.q * &self.u) * &self.q.adjoint()
    }
}

pub fn schur(a: &CMatrix) -> Result<SchurForm> {
    schur_with_limit(a, DEFAULT_MAX_DIM)
}

pub fn schur_with_limit(a: &CMatrix, max_dim: usize) -> Result<SchurForm> {
    if !a.is_square() {
        return Err(Error::Dimension(format!(
            "Schur needs a square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    let n = a.rows();
    if n > max_dim {
        return Err(Error::Size(format!("dimension {n} exceeds Schur limit {max_dim}")));
    }
    let (mut h, mut q) = hessenberg(a);
    qr_iterate(&mut h, &mut q)?;
    Ok(SchurForm {
        q,
        u: h,
        source_dim: n,
    })
}

/// Householder reduction; returns `(H, Q)` with `A = Q*H*Q^H`.
fn hessenberg(a: &CMatrix) -> (CMatrix, CMatrix) {
    let n = a.rows();
    let mut h = a.clone();
    let mut q = CMatrix::identity(n);
    if n < 3 {
        return (h, q);
    }
    for k in 0..n - 2 {
        let norm_x = (k + 1..n).map(|i| h[(i, k)].norm_sqr()).sum::<f64>().sqrt();
        if norm_x == 0.0 {
            continue;
        }
        let x0 = h[(k + 1, k)];
        let phase = if x0.norm() == 0.0 {
            Complex64::new(1.0, 0.0)
        } else {
            x0 / x0.norm()
        };
        let alpha = -phase * norm_x;
        let mut v: Vec<Complex64> = (k + 1..n).map(|i| h[(i, k)]).collect();
        v[0] -= alpha;
        let vnorm = v.iter().map(Complex64::norm_sqr).sum::<f64>().sqrt();
        if vnorm == 0.0 {
            continue;
        }
        for z in &mut v {
            *z /= vnorm;
        }
        // H <- P H with P = I - 2 v v^H acting on rows k+1..n
        for j in 0..n {
            let dot: Complex64 = (k + 1..n).map(|i| v[i - k - 1].conj() * h[(i, j)]).sum();
            for i in k + 1..n {
                h[(i, j)] -= 2.0 * v[i - k - 1] * dot;
            }
        }
        // H <- H P, Q <- Q P
        for m in [&mut h, &mut q] {
            for i in 0..n {
                let dot: Complex64 = (k + 1..n).map(|j| m[(i, j)] * v[j - k - 1]).sum();
                for j in k + 1..n {
                    m[(i, j)] -= 2.0 * dot * v[j - k - 1].conj();
                }
            }
        }
        h[(k + 1, k)] = alpha;
        for i in k + 2..n {
            h[(i, k)] = Complex64::new(0.0, 0.0);
        }
    }
    (h, q)
}

/// Rotation `G = [[c, s], [-conj(s), c]]` with `G * [x; y] = [r; 0]`.
fn givens(x: Complex64, y: Complex64) -> (f64, Complex64) {
    let ny = y.norm();
    if ny == 0.0 {
        return (1.0, Complex64::new(0.0, 0.0));
    }
    let nx = x.norm();
    if nx == 0.0 {
        return (0.0, y.conj() / ny);
    }
    let r = nx.hypot(ny);
    (nx / r, (x / nx) * y.conj() / r)
}

fn qr_iterate(h: &mut CMatrix, q: &mut CMatrix) -> Result<()> {
    let n = h.rows();
    if n < 2 {
        return Ok(());
    }
    let max_sweeps = SWEEPS_PER_DIM * n;
    let mut total = 0usize;
    let mut since_deflation = 0usize;
    let mut hi = n - 1;
    while hi > 0 {
        let scale = h.norm_inf().max(f64::MIN_POSITIVE);
        // locate the start of the active unreduced block
        let mut lo = hi;
        while lo > 0 {
            let sub = h[(lo, lo - 1)].norm();
            let local = h[(lo, lo)].norm() + h[(lo - 1, lo - 1)].norm();
            if sub <= DEFLATION_TOL * scale || sub <= f64::EPSILON * local {
                h[(lo, lo - 1)] = Complex64::new(0.0, 0.0);
                break;
            }
            lo -= 1;
        }
        if lo == hi {
            hi -= 1;
            since_deflation = 0;
            continue;
        }
        total += 1;
        since_deflation += 1;
        if total > max_sweeps {
            return Err(Error::NoConvergence { sweeps: total - 1 });
        }

        let mu = if since_deflation % 10 == 0 {
            // exceptional shift to break cycles
            h[(hi, hi)] + Complex64::new(0.75 * h[(hi, hi - 1)].norm(), 0.0)
        } else {
            wilkinson_shift(
                h[(hi - 1, hi - 1)],
                h[(hi - 1, hi)],
                h[(hi, hi - 1)],
                h[(hi, hi)],
            )
        };

        let mut x = h[(lo, lo)] - mu;
        let mut y = h[(lo + 1, lo)];
        for k in lo..hi {
            let (c, s) = givens(x, y);
            // rows k, k+1 from the left
            let col_start = if k > lo { k - 1 } else { lo };
            for j in col_start..n {
                let a = h[(k, j)];
                let b = h[(k + 1, j)];
                h[(k, j)] = c * a + s * b;
                h[(k + 1, j)] = -s.conj() * a + c * b;
            }
            // columns k, k+1 from the right with G^H
            let row_end = (k + 2).min(hi);
            for i in 0..=row_end {
                let a = h[(i, k)];
                let b = h[(i, k + 1)];
                h[(i, k)] = c * a + s.conj() * b;
                h[(i, k + 1)] = -s * a + c * b;
            }
            for i in 0..n {
                let a = q[(i, k)];
                let b = q[(i, k + 1)];
                q[(i, k)] = c * a + s.conj() * b;
                q[(i, k + 1)] = -s * a + c * b;
            }
            if k > lo {
                h[(k + 1, k - 1)] = Complex64::new(0.0, 0.0);
            }
            if k + 1 < hi {
                x = h[(k + 1, k)];
                y = h[(k + 2, k)];
            }
        }
    }
    Ok(())
}

/// Eigenvalue of the trailing 2x2 block closest to its last diagonal entry.
fn wilkinson_shift(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Complex64 {
    let half_tr = (a + d) * 0.5;
    let diff = (a - d) * 0.5;
    let disc = (diff * diff + b * c).sqrt();
    let l1 = half_tr + disc;
    let l2 = half_tr - disc;
    if (l1 - d).norm() <= (l2 - d).norm() {
        l1
    } else {
        l2
    }
}

/// Eigenvalues as the diagonal of the Schur factor.
pub fn eigenvalues(a: &CMatrix) -> Result<Vec<Complex64>> {
    Ok(schur(a)?.eigenvalues())
}

pub fn spectral_radius(a: &CMatrix) -> Result<f64> {
    Ok(eigenvalues(a)?.iter().map(|z| z.norm()).fold(0.0, f64::max))
}

/// Order-insensitive comparison: greedily pair each element of `a` with the
/// nearest unused element of `b` and require every pair within `tol`.
pub fn multiset_eq(a: &[Complex64], b: &[Complex64], tol: f64) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut used = vec![false; b.len()];
    for x in a {
        let best = b
            .iter()
            .enumerate()
            .filter(|(j, _)| !used[*j])
            .map(|(j, y)| (j, (x - y).norm()))
            .min_by(|p, q| p.1.total_cmp(&q.1));
        match best {
            Some((j, d)) if d <= tol => used[j] = true,
            _ => return false,
        }
    }
    true
}

/// Eigenvector matrix from the Schur form, columns normalized to unit
/// 2-norm. Near-defective eigenvalues produce nearly parallel columns.
pub fn eigenvectors(form: &SchurForm) -> CMatrix {
    let u = &form.u;
    let n = u.rows();
    let smin = (f64::EPSILON * u.norm_inf()).max(f64::MIN_POSITIVE);
    let mut w = CMatrix::zeros(n, n);
    for k in 0..n {
        let lambda = u[(k, k)];
        w[(k, k)] = Complex64::new(1.0, 0.0);
        for i in (0..k).rev() {
            let rhs: Complex64 = (i + 1..=k).map(|j| u[(i, j)] * w[(j, k)]).sum();
            let mut den = u[(i, i)] - lambda;
            if den.norm() < smin {
                den = Complex64::new(smin, 0.0);
            }
            w[(i, k)] = -rhs / den;
        }
    }
    let mut v = &form.q * &w;
    for k in 0..n {
        let nrm = (0..n).map(|i| v[(i, k)].norm_sqr()).sum::<f64>().sqrt();
        if nrm > 0.0 {
            for i in 0..n {
                v[(i, k)] /= nrm;
            }
        }
    }
    v
}
