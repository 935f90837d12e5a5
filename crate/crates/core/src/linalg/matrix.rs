use std::fmt::Write as _;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;

use super::scalar::Scalar;
use crate::error::{Error, Result};

/// Dense row-major matrix over a [`Scalar`] field.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

/// Double-precision complex matrix, the carrier of T, Y and resolvents.
pub type CMatrix = Matrix<Complex64>;

impl<S: Scalar> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![S::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = S::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_diag(d: &[S]) -> Self {
        let mut m = Self::zeros(d.len(), d.len());
        for (i, v) in d.iter().enumerate() {
            m[(i, i)] = v.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[S] {
        &self.data
    }

    pub fn diag(&self) -> Vec<S> {
        (0..self.rows.min(self.cols))
            .map(|i| self[(i, i)].clone())
            .collect()
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self[(i, j)].is_zero()))
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Matrix<T> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn scale(&self, s: &S) -> Self {
        self.map(|x| x.clone() * s.clone())
    }

    /// Checked product. Zero entries of `self` are skipped, which makes
    /// products with diagonal factors O(n^2).
    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::Dimension(format!(
                "matmul {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs.data[k * rhs.cols + j];
                    if b.is_zero() {
                        continue;
                    }
                    let cell = &mut out.data[i * rhs.cols + j];
                    *cell = cell.clone() + a.clone() * b.clone();
                }
            }
        }
        Ok(out)
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, "add", |a, b| a.clone() + b.clone())
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, "sub", |a, b| a.clone() - b.clone())
    }

    fn zip_with(&self, rhs: &Self, what: &str, f: impl Fn(&S, &S) -> S) -> Result<Self> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::Dimension(format!(
                "{what} {}x{} and {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| f(a, b)).collect(),
        })
    }

    /// `self + s*I`.
    pub fn add_identity(&self, s: &S) -> Self {
        let mut out = self.clone();
        for i in 0..self.rows.min(self.cols) {
            out[(i, i)] = out[(i, i)].clone() + s.clone();
        }
        out
    }

    /// Maximum absolute row sum.
    pub fn norm_inf(&self) -> f64 {
        (0..self.rows)
            .map(|i| {
                self.data[i * self.cols..(i + 1) * self.cols]
                    .iter()
                    .map(Scalar::modulus)
                    .sum::<f64>()
            })
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(Scalar::modulus).fold(0.0, f64::max)
    }

    pub fn to_c64(&self) -> CMatrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(Scalar::to_c64).collect(),
        }
    }

    pub fn from_c64(m: &CMatrix) -> Self {
        Matrix {
            rows: m.rows,
            cols: m.cols,
            data: m.data.iter().map(|z| S::from_c64(*z)).collect(),
        }
    }
}

impl CMatrix {
    /// Validating constructor: `entries` is row-major and must be finite.
    pub fn new(rows: usize, cols: usize, entries: Vec<Complex64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Dimension(format!("empty shape {rows}x{cols}")));
        }
        if entries.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        if let Some(pos) = entries.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite {
                row: pos / cols,
                col: pos % cols,
            });
        }
        Ok(Self {
            rows,
            cols,
            data: entries,
        })
    }

    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Self::new(
            r,
            c,
            rows.iter()
                .flat_map(|row| row.iter().map(|&x| Complex64::new(x, 0.0)))
                .collect(),
        )
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Self::new(r, c, rows.concat())
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn scale_re(&self, s: f64) -> Self {
        self.map(|z| z * s)
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Parse the shared text format: a `rows cols` header, then rows of
    /// whitespace-separated entries written `re` or `re+imi`.
    pub fn parse_text(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hline, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            msg: "missing header".into(),
        })?;
        let dims: Vec<usize> = header
            .split_whitespace()
            .map(str::parse)
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::Parse {
                line: hline,
                msg: format!("bad header: {e}"),
            })?;
        let [rows, cols] = dims[..] else {
            return Err(Error::Parse {
                line: hline,
                msg: "header must be `rows cols`".into(),
            });
        };
        let mut entries = Vec::with_capacity(rows * cols);
        let mut seen_rows = 0;
        for (ln, line) in lines {
            let row: Vec<Complex64> = line
                .split_whitespace()
                .map(|tok| {
                    parse_complex(tok).ok_or_else(|| Error::Parse {
                        line: ln,
                        msg: format!("bad complex literal `{tok}`"),
                    })
                })
                .collect::<Result<_>>()?;
            if row.len() != cols {
                return Err(Error::Parse {
                    line: ln,
                    msg: format!("expected {cols} entries, found {}", row.len()),
                });
            }
            entries.extend(row);
            seen_rows += 1;
        }
        if seen_rows != rows {
            return Err(Error::Parse {
                line: hline,
                msg: format!("expected {rows} rows, found {seen_rows}"),
            });
        }
        Self::new(rows, cols, entries)
    }

    /// Inverse of [`CMatrix::parse_text`], 17 significant digits per part.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.rows, self.cols);
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| format_complex(self[(i, j)])).collect();
            let _ = writeln!(out, "{}", row.join(" "));
        }
        out
    }
}

/// Format a complex scalar as `re` or `re+imi` with 17 significant digits.
pub fn format_complex(z: Complex64) -> String {
    if z.im == 0.0 {
        format!("{:.16e}", z.re)
    } else {
        let sign = if z.im.is_sign_negative() { '-' } else { '+' };
        format!("{:.16e}{}{:.16e}i", z.re, sign, z.im.abs())
    }
}

/// Parse `re`, `imi`, `re+imi` or `re-imi`.
pub fn parse_complex(tok: &str) -> Option<Complex64> {
    let tok = tok.trim();
    let Some(body) = tok.strip_suffix('i') else {
        return tok.parse::<f64>().ok().map(|re| Complex64::new(re, 0.0));
    };
    // split point: last sign that is not leading and not an exponent sign
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    match split {
        Some(k) => {
            let re = body[..k].parse::<f64>().ok()?;
            let im_str = &body[k..];
            let im = match im_str {
                "+" => 1.0,
                "-" => -1.0,
                s => s.parse::<f64>().ok()?,
            };
            Some(Complex64::new(re, im))
        }
        None => {
            let im = match body {
                "" | "+" => 1.0,
                "-" => -1.0,
                s => s.parse::<f64>().ok()?,
            };
            Some(Complex64::new(0.0, im))
        }
    }
}

impl<S> Index<(usize, usize)> for Matrix<S> {
    type Output = S;
    fn index(&self, (i, j): (usize, usize)) -> &S {
        &self.data[i * self.cols + j]
    }
}

impl<S> IndexMut<(usize, usize)> for Matrix<S> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut S {
        &mut self.data[i * self.cols + j]
    }
}

// Operator forms panic on shape mismatch; use the `try_*`/`matmul` methods
// when shapes are not already known to agree.
impl<S: Scalar> Mul for &Matrix<S> {
    type Output = Matrix<S>;
    fn mul(self, rhs: Self) -> Matrix<S> {
        self.matmul(rhs).expect("matrix product shape mismatch")
    }
}

impl<S: Scalar> Add for &Matrix<S> {
    type Output = Matrix<S>;
    fn add(self, rhs: Self) -> Matrix<S> {
        self.try_add(rhs).expect("matrix sum shape mismatch")
    }
}

impl<S: Scalar> Sub for &Matrix<S> {
    type Output = Matrix<S>;
    fn sub(self, rhs: Self) -> Matrix<S> {
        self.try_sub(rhs).expect("matrix difference shape mismatch")
    }
}

impl<S: Scalar> Neg for &Matrix<S> {
    type Output = Matrix<S>;
    fn neg(self) -> Matrix<S> {
        self.map(|x| -x.clone())
    }
}

/// Checked matrix product.
pub fn matmul<S: Scalar>(a: &Matrix<S>, b: &Matrix<S>) -> Result<Matrix<S>> {
    a.matmul(b)
}
