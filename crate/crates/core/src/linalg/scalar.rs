//! Scalar fields the dense kernels are generic over.
//!
//! Two implementations exist: IEEE double complex ([`Complex64`]) and a
//! software extended-precision complex ([`ExtComplex`]) whose working
//! precision is a per-thread setting controlled by [`PrecisionGuard`].

use std::cell::Cell;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use astro_float::{BigFloat, RoundingMode, Sign};
use num_complex::Complex64;

/// Field operations needed by LU, Kronecker assembly and the QME iterations.
pub trait Scalar:
    Clone
    + fmt::Debug
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_f64(x: f64) -> Self;
    fn from_c64(z: Complex64) -> Self;
    fn to_c64(&self) -> Complex64;
    /// |z| rounded to a double.
    fn modulus(&self) -> f64;
    fn is_zero(&self) -> bool;
    /// Unit roundoff of the current arithmetic.
    fn epsilon() -> f64;
}

impl Scalar for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn from_f64(x: f64) -> Self {
        Complex64::new(x, 0.0)
    }
    fn from_c64(z: Complex64) -> Self {
        z
    }
    fn to_c64(&self) -> Complex64 {
        *self
    }
    fn modulus(&self) -> f64 {
        self.norm()
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn epsilon() -> f64 {
        f64::EPSILON / 2.0
    }
}

const RM: RoundingMode = RoundingMode::ToEven;
const DEFAULT_EXT_BITS: usize = 192;

thread_local! {
    static EXT_BITS: Cell<usize> = const { Cell::new(DEFAULT_EXT_BITS) };
}

/// Mantissa bits needed for `digits` significant decimal digits.
pub fn bits_for_digits(digits: u32) -> usize {
    (f64::from(digits) * std::f64::consts::LOG2_10).ceil() as usize
}

fn ext_bits() -> usize {
    EXT_BITS.with(Cell::get)
}

/// Sets the extended working precision for the current thread until dropped.
pub struct PrecisionGuard {
    previous: usize,
}

impl PrecisionGuard {
    pub fn digits(digits: u32) -> Self {
        Self::bits(bits_for_digits(digits))
    }

    pub fn bits(bits: usize) -> Self {
        let previous = EXT_BITS.with(|c| c.replace(bits.max(64)));
        Self { previous }
    }
}

impl Drop for PrecisionGuard {
    fn drop(&mut self) {
        EXT_BITS.with(|c| c.set(self.previous));
    }
}

/// Convert a finite `BigFloat` to the nearest-ish double.
fn big_to_f64(x: &BigFloat) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    if x.is_nan() {
        return f64::NAN;
    }
    if x.is_inf_pos() {
        return f64::INFINITY;
    }
    if x.is_inf_neg() {
        return f64::NEG_INFINITY;
    }
    let Some((words, _bits, sign, exponent, _)) = x.as_raw_parts() else {
        return f64::NAN;
    };
    // mantissa is normalized: value = 0.m * 2^exponent, most significant word last
    let mut acc = 0.0f64;
    let mut scale = 1.0f64;
    for w in words.iter().rev().take(2) {
        scale /= 18446744073709551616.0; // 2^64
        acc += (*w as f64) * scale;
    }
    let v = acc * 2f64.powi(exponent);
    if sign == Sign::Neg {
        -v
    } else {
        v
    }
}

/// Complex number with software floating-point parts.
#[derive(Clone)]
pub struct ExtComplex {
    pub re: BigFloat,
    pub im: BigFloat,
}

impl ExtComplex {
    pub fn new(re: BigFloat, im: BigFloat) -> Self {
        Self { re, im }
    }

    pub fn from_parts_f64(re: f64, im: f64) -> Self {
        let p = ext_bits();
        Self::new(BigFloat::from_f64(re, p), BigFloat::from_f64(im, p))
    }

    /// Exact rational `num / den` at the working precision.
    pub fn ratio(num: i64, den: i64) -> Self {
        let p = ext_bits();
        let re = BigFloat::from_i64(num, p).div(&BigFloat::from_i64(den, p), p, RM);
        Self::new(re, BigFloat::from_i64(0, p))
    }

    pub fn re_f64(&self) -> f64 {
        big_to_f64(&self.re)
    }

    pub fn im_f64(&self) -> f64 {
        big_to_f64(&self.im)
    }
}

impl fmt::Debug for ExtComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ext({:e}, {:e})", self.re_f64(), self.im_f64())
    }
}

impl Add for ExtComplex {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let p = ext_bits();
        Self::new(self.re.add(&rhs.re, p, RM), self.im.add(&rhs.im, p, RM))
    }
}

impl Sub for ExtComplex {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        let p = ext_bits();
        Self::new(self.re.sub(&rhs.re, p, RM), self.im.sub(&rhs.im, p, RM))
    }
}

impl Mul for ExtComplex {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let p = ext_bits();
        if self.im.is_zero() && rhs.im.is_zero() {
            return Self::new(self.re.mul(&rhs.re, p, RM), BigFloat::from_i64(0, p));
        }
        let ac = self.re.mul(&rhs.re, p, RM);
        let bd = self.im.mul(&rhs.im, p, RM);
        let ad = self.re.mul(&rhs.im, p, RM);
        let bc = self.im.mul(&rhs.re, p, RM);
        Self::new(ac.sub(&bd, p, RM), ad.add(&bc, p, RM))
    }
}

impl Div for ExtComplex {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        let p = ext_bits();
        if self.im.is_zero() && rhs.im.is_zero() {
            return Self::new(self.re.div(&rhs.re, p, RM), BigFloat::from_i64(0, p));
        }
        let (a, b, c, d) = (&self.re, &self.im, &rhs.re, &rhs.im);
        let den = c.mul(c, p, RM).add(&d.mul(d, p, RM), p, RM);
        let re = a.mul(c, p, RM).add(&b.mul(d, p, RM), p, RM);
        let im = b.mul(c, p, RM).sub(&a.mul(d, p, RM), p, RM);
        Self::new(re.div(&den, p, RM), im.div(&den, p, RM))
    }
}

impl Neg for ExtComplex {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(self.re.neg(), self.im.neg())
    }
}

impl Scalar for ExtComplex {
    fn zero() -> Self {
        Self::from_parts_f64(0.0, 0.0)
    }
    fn one() -> Self {
        Self::from_parts_f64(1.0, 0.0)
    }
    fn from_f64(x: f64) -> Self {
        Self::from_parts_f64(x, 0.0)
    }
    fn from_c64(z: Complex64) -> Self {
        Self::from_parts_f64(z.re, z.im)
    }
    fn to_c64(&self) -> Complex64 {
        Complex64::new(self.re_f64(), self.im_f64())
    }
    fn modulus(&self) -> f64 {
        self.re_f64().hypot(self.im_f64())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn epsilon() -> f64 {
        2f64.powi(-(ext_bits() as i32))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ext_roundtrip_to_double() {
        let _g = PrecisionGuard::digits(40);
        for x in [1.0, -0.1, 3.5e-30, 1.127_016_653_792_583, -7.25e12] {
            let e = ExtComplex::from_f64(x);
            assert_eq!(e.re_f64(), x, "{x}");
        }
    }

    #[test]
    fn ext_arithmetic_beats_double() {
        let _g = PrecisionGuard::digits(40);
        let third = ExtComplex::ratio(1, 3);
        let back = third.clone() * ExtComplex::from_f64(3.0) - ExtComplex::one();
        assert!(back.modulus() < 1e-38);
        // (1 + 1e-20) - 1 survives in extended arithmetic
        let tiny = ExtComplex::from_f64(1e-20);
        let d = (ExtComplex::one() + tiny) - ExtComplex::one();
        assert!((d.re_f64() - 1e-20).abs() < 1e-35);
    }

    #[test]
    fn ext_complex_division() {
        let _g = PrecisionGuard::digits(30);
        let a = ExtComplex::from_c64(Complex64::new(1.0, 2.0));
        let b = ExtComplex::from_c64(Complex64::new(-3.0, 0.5));
        let q = (a.clone() / b.clone()).to_c64();
        let expect = Complex64::new(1.0, 2.0) / Complex64::new(-3.0, 0.5);
        assert!((q - expect).norm() < 1e-15);
    }

    #[test]
    fn guard_restores_precision() {
        let before = ext_bits();
        {
            let _g = PrecisionGuard::bits(512);
            assert_eq!(ext_bits(), 512);
        }
        assert_eq!(ext_bits(), before);
    }
}
