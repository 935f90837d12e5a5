use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub const MAX_N: usize = 100_000;
/// Indices below this are produced by the quadratic convolution recursion.
const SEGNER_LIMIT: usize = 512;
/// Exact integers are cached up to this index; larger ones are rebuilt on demand.
const EXACT_CACHE: usize = 4096;

/// `C_0 .. C_{N-1}` as exact integers and as weighted doubles `C_n 4^-n`.
#[derive(Clone, Debug)]
pub struct CatalanCoefficients {
    n: usize,
    exact: Vec<BigUint>,
    weighted: Vec<f64>,
}

impl CatalanCoefficients {
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Exact `C_k` for `k < N`.
    pub fn exact(&self, k: usize) -> BigUint {
        assert!(k < self.n, "index {k} out of range {}", self.n);
        if k < self.exact.len() {
            return self.exact[k].clone();
        }
        let mut c = self.exact.last().cloned().unwrap_or_else(BigUint::one);
        for m in self.exact.len() - 1..k {
            c = c * BigUint::from(4 * m as u64 + 2) / BigUint::from(m as u64 + 2);
        }
        c
    }

    /// `C_k 4^-k`, always representable.
    pub fn weighted(&self, k: usize) -> f64 {
        self.weighted[k]
    }

    pub fn weighted_all(&self) -> &[f64] {
        &self.weighted
    }

    /// `C_k` as `(m, e)` with `C_k ~= m * 4^e`, `1 <= m < 4`.
    pub fn mantissa_exp4(&self, k: usize) -> (f64, i64) {
        let w = self.weighted[k];
        let shift = (w.log2() / 2.0).floor() as i64;
        let m = w * 4f64.powi(-shift as i32);
        // guard against rounding at the boundaries
        let (m, shift) = if m >= 4.0 {
            (m / 4.0, shift + 1)
        } else if m < 1.0 {
            (m * 4.0, shift - 1)
        } else {
            (m, shift)
        };
        (m, k as i64 + shift)
    }

    /// `C_k` as a double, or `None` once it overflows.
    pub fn as_f64(&self, k: usize) -> Option<f64> {
        let v = if k < self.exact.len() {
            self.exact[k].to_f64()?
        } else {
            self.weighted[k] * 4f64.powi(k as i32)
        };
        v.is_finite().then_some(v)
    }

    pub fn tail_bound(&self) -> f64 {
        tail_bound(self.n)
    }
}

pub fn catalan_numbers(n: usize) -> Result<CatalanCoefficients> {
    if n == 0 || n > MAX_N {
        return Err(Error::Size(format!("coefficient count {n} outside 1..={MAX_N}")));
    }
    let segner = n.min(SEGNER_LIMIT);
    let mut exact: Vec<BigUint> = Vec::with_capacity(n.min(EXACT_CACHE));
    exact.push(BigUint::one());
    for m in 1..segner {
        let mut s = BigUint::zero();
        for i in 0..m {
            s += &exact[i] * &exact[m - 1 - i];
        }
        exact.push(s);
    }
    for m in segner..n.min(EXACT_CACHE) {
        let prev = &exact[m - 1];
        let next = prev * BigUint::from(4 * (m as u64 - 1) + 2) / BigUint::from(m as u64 + 1);
        exact.push(next);
    }
    Ok(CatalanCoefficients {
        n,
        exact,
        weighted: weighted_catalan(n),
    })
}

/// `C_k 4^-k` for `k < n` via `w_{k+1} = w_k (2k+1) / (2(k+2))`.
pub fn weighted_catalan(n: usize) -> Vec<f64> {
    let mut w = Vec::with_capacity(n);
    let mut cur = 1.0f64;
    for k in 0..n {
        w.push(cur);
        cur *= (2 * k + 1) as f64 / (2 * (k + 2)) as f64;
    }
    w
}

/// `binom(2n, n) / (n + 1)`.
pub fn catalan_closed_form(n: usize) -> BigUint {
    let mut b = BigUint::one();
    for i in 0..n {
        b = b * BigUint::from((2 * n - i) as u64) / BigUint::from(i as u64 + 1);
    }
    b / BigUint::from(n as u64 + 1)
}

/// Upper bound on `sum_{n >= N} C_n 4^-n`.
///
/// The tail telescopes to `2 (N+1) C_N 4^-N` exactly; the factor covers
/// rounding in the weighted recurrence.
pub fn tail_bound(n: usize) -> f64 {
    let w = *weighted_catalan(n + 1).last().unwrap_or(&1.0);
    2.0 * (n as f64 + 1.0) * w * (1.0 + 1e-12)
}

/// Upper bound on `sum_{n >= N} C_{2n} 4^{-2n}`.
pub fn even_tail_bound(n: usize) -> f64 {
    tail_bound(2 * n)
}

/// Richardson extrapolation of `values[k]` sampled at `h_k = h_0 / ratio^k`,
/// assuming the error expands in `h^p` for `p` in `exponents`.
pub fn richardson(values: &[f64], ratio: f64, exponents: &[f64]) -> f64 {
    let mut row = values.to_vec();
    for &p in exponents.iter().take(values.len().saturating_sub(1)) {
        let f = ratio.powf(p);
        row = row.windows(2).map(|w| (f * w[1] - w[0]) / (f - 1.0)).collect();
    }
    row[row.len() - 1]
}

/// Sum of `C_n 4^-n` extrapolated from partial sums at `n0 * 2^k`, `k < levels`.
pub fn weighted_sum_extrapolated(n0: usize, levels: usize) -> f64 {
    extrapolate(n0, levels, 1)
}

/// Sum of `C_{2n} 4^{-2n}` extrapolated the same way.
pub fn even_weighted_sum_extrapolated(n0: usize, levels: usize) -> f64 {
    extrapolate(n0, levels, 2)
}

fn extrapolate(n0: usize, levels: usize, stride: usize) -> f64 {
    let top = n0 << (levels - 1);
    let w = weighted_catalan(stride * top);
    let mut sums = Vec::with_capacity(levels);
    let mut acc = 0.0;
    let mut next = n0;
    for n in 0..top {
        acc += w[stride * n];
        if n + 1 == next {
            sums.push(acc);
            next *= 2;
        }
    }
    // partial-sum error ~ N^{-1/2} (a0 + a1/N + ...), so h = 1/N, p = 1/2, 3/2, ...
    let exps: Vec<f64> = (0..levels).map(|k| 0.5 + k as f64).collect();
    richardson(&sums, 2.0, &exps)
}

/// Plain partial sums `sum_{n<N} C_n 4^-n` and `sum_{n<N} C_{2n} 4^{-2n}`.
pub fn weighted_partial_sums(n: usize) -> (f64, f64) {
    let w = weighted_catalan(2 * n);
    let full = w[..n].iter().sum();
    let even = (0..n).map(|k| w[2 * k]).sum();
    (full, even)
}
