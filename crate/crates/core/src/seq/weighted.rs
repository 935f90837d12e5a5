use num_complex::Complex64;

use crate::catalan::{tail_bound, weighted_catalan};
use crate::error::{Error, Result};

pub const DEFAULT_LEN: usize = 256;

/// Truncated element of the weighted algebra `l1(N0, 4^-n)`.
///
/// Coefficients are stored pre-weighted, `w_n = a_n 4^-n`, so long Catalan
/// sequences stay representable. `trunc_err` bounds the weighted norm of
/// the difference between the represented element and the stored prefix.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightedSeq {
    w: Vec<Complex64>,
    trunc_err: f64,
}

fn zero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

impl WeightedSeq {
    pub fn from_weighted(w: Vec<Complex64>, trunc_err: f64) -> Self {
        assert!(!w.is_empty(), "sequence needs at least one stored coefficient");
        assert!(trunc_err >= 0.0, "negative truncation bound");
        Self { w, trunc_err }
    }

    /// From plain coefficients `a_n`.
    pub fn from_coeffs(a: &[Complex64], trunc_err: f64) -> Self {
        let mut scale = 1.0;
        let w = a
            .iter()
            .map(|z| {
                let v = z * scale;
                scale *= 0.25;
                v
            })
            .collect();
        Self::from_weighted(w, trunc_err)
    }

    pub fn delta(n: usize) -> Self {
        let mut w = vec![zero(); n + 1];
        w[n] = Complex64::new(0.25f64.powi(n as i32), 0.0);
        Self::from_weighted(w, 0.0)
    }

    /// `c = (C_n)` truncated at `len`.
    pub fn catalan(len: usize) -> Self {
        let w = weighted_catalan(len)
            .into_iter()
            .map(|x| Complex64::new(x, 0.0))
            .collect();
        Self::from_weighted(w, tail_bound(len))
    }

    pub fn len(&self) -> usize {
        self.w.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_exact(&self) -> bool {
        self.trunc_err == 0.0
    }

    pub fn trunc_err(&self) -> f64 {
        self.trunc_err
    }

    pub fn weighted(&self, n: usize) -> Complex64 {
        self.w.get(n).copied().unwrap_or_else(zero)
    }

    pub fn weighted_coeffs(&self) -> &[Complex64] {
        &self.w
    }

    /// `a_n`; may overflow to infinity for long, fast-growing sequences.
    pub fn coeff(&self, n: usize) -> Complex64 {
        self.weighted(n) * 4f64.powi(n as i32)
    }

    pub fn norm_w(&self) -> f64 {
        self.w.iter().map(|z| z.norm()).sum()
    }

    /// `sum a_n z^n` on `|z| <= 1/4`.
    pub fn z_transform(&self, z: Complex64) -> Result<Complex64> {
        if z.norm() > 0.25 * (1.0 + 1e-14) {
            return Err(Error::Domain(format!("|z| = {} exceeds 1/4", z.norm())));
        }
        let q = 4.0 * z;
        Ok(self.w.iter().rev().fold(zero(), |acc, w| acc * q + w))
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self::from_weighted(
            self.w.iter().map(|z| z * s).collect(),
            self.trunc_err * s.norm(),
        )
    }

    fn combine(&self, other: &Self, sign: f64) -> Self {
        let n = self.len().max(other.len());
        let w = (0..n)
            .map(|k| self.weighted(k) + other.weighted(k) * sign)
            .collect();
        Self::from_weighted(w, self.trunc_err + other.trunc_err)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, 1.0)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, -1.0)
    }

    /// Drop indices `>= len`, moving their weighted norm into `trunc_err`.
    pub fn truncate(&self, len: usize) -> Self {
        if len >= self.len() {
            return self.clone();
        }
        let dropped: f64 = self.w[len..].iter().map(|z| z.norm()).sum();
        Self::from_weighted(self.w[..len].to_vec(), self.trunc_err + dropped)
    }

    /// Weighted norm of the stored difference, ignoring truncation bounds.
    pub fn distance(&self, other: &Self) -> f64 {
        let n = self.len().max(other.len());
        (0..n)
            .map(|k| (self.weighted(k) - other.weighted(k)).norm())
            .sum()
    }
}

/// Convolution product.
///
/// Exact operands give the full product. Otherwise the result keeps only
/// indices below the shortest inexact operand's length, where every term of
/// the sum is known; the dropped known products join the error bound.
pub fn convolve(a: &WeightedSeq, b: &WeightedSeq) -> WeightedSeq {
    let full = a.len() + b.len() - 1;
    let keep = match (a.is_exact(), b.is_exact()) {
        (true, true) => full,
        (true, false) => b.len(),
        (false, true) => a.len(),
        (false, false) => a.len().min(b.len()),
    };
    let mut w = vec![zero(); full];
    for (i, x) in a.w.iter().enumerate() {
        if x.norm() == 0.0 {
            continue;
        }
        for (j, y) in b.w.iter().enumerate() {
            w[i + j] += x * y;
        }
    }
    let dropped: f64 = w[keep.min(full)..].iter().map(|z| z.norm()).sum();
    w.truncate(keep.min(full));
    let (na, nb) = (a.norm_w(), b.norm_w());
    let (ea, eb) = (a.trunc_err, b.trunc_err);
    WeightedSeq::from_weighted(w, na * eb + nb * ea + ea * eb + dropped)
}
