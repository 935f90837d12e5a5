//! Adaptive Gauss-Kronrod (G7/K15) quadrature for vector-valued integrands.

use num_complex::Complex64;

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];
// Gauss weights for XGK[1], XGK[3], XGK[5], XGK[7]
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

#[derive(Clone, Copy, Debug)]
pub struct QuadOptions {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_intervals: usize,
}

impl Default for QuadOptions {
    fn default() -> Self {
        Self {
            abs_tol: 1e-10,
            rel_tol: 0.0,
            max_intervals: 4000,
        }
    }
}

#[derive(Clone, Debug)]
pub struct QuadResult {
    pub value: Vec<Complex64>,
    /// Sum of per-interval |K15 - G7| estimates (max over components).
    pub error: f64,
    pub evaluations: usize,
}

struct Panel {
    a: f64,
    b: f64,
    value: Vec<Complex64>,
    error: f64,
}

fn gk15<F>(f: &mut F, a: f64, b: f64, evals: &mut usize) -> Result<Panel>
where
    F: FnMut(f64) -> Vec<Complex64>,
{
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut kron: Vec<Complex64> = Vec::new();
    let mut gauss: Vec<Complex64> = Vec::new();
    let mut accumulate = |x: f64, wk: f64, wg: Option<f64>, evals: &mut usize| -> Result<()> {
        let v = f(x);
        *evals += 1;
        if v.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::Integration(format!("non-finite integrand at {x}")));
        }
        if kron.is_empty() {
            kron = vec![Complex64::new(0.0, 0.0); v.len()];
            gauss = kron.clone();
        }
        for (i, z) in v.iter().enumerate() {
            kron[i] += z * wk;
            if let Some(w) = wg {
                gauss[i] += z * w;
            }
        }
        Ok(())
    };
    accumulate(c, WGK[7], Some(WG[3]), evals)?;
    for k in 0..7 {
        let wg = if k % 2 == 1 { Some(WG[k / 2]) } else { None };
        accumulate(c - h * XGK[k], WGK[k], wg, evals)?;
        accumulate(c + h * XGK[k], WGK[k], wg, evals)?;
    }
    let error = kron
        .iter()
        .zip(&gauss)
        .map(|(k, g)| ((k - g) * h).norm())
        .fold(0.0, f64::max);
    let value = kron.into_iter().map(|z| z * h).collect();
    Ok(Panel { a, b, value, error })
}

/// Integrate `f` over `[a, b]` by global adaptive bisection.
pub fn integrate<F>(mut f: F, a: f64, b: f64, opts: QuadOptions) -> Result<QuadResult>
where
    F: FnMut(f64) -> Vec<Complex64>,
{
    let mut evals = 0;
    let mut panels = vec![gk15(&mut f, a, b, &mut evals)?];
    loop {
        let total_err: f64 = panels.iter().map(|p| p.error).sum();
        let dim = panels[0].value.len();
        let mut value = vec![Complex64::new(0.0, 0.0); dim];
        for p in &panels {
            for (v, z) in value.iter_mut().zip(&p.value) {
                *v += z;
            }
        }
        let magnitude = value.iter().map(|z| z.norm()).fold(0.0, f64::max);
        if total_err <= opts.abs_tol.max(opts.rel_tol * magnitude) {
            return Ok(QuadResult {
                value,
                error: total_err,
                evaluations: evals,
            });
        }
        if panels.len() >= opts.max_intervals {
            return Err(Error::Integration(format!(
                "error estimate {total_err:.3e} after {} intervals",
                panels.len()
            )));
        }
        let worst = panels
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.error.total_cmp(&y.1.error))
            .map(|(i, _)| i)
            .unwrap_or(0);
        let p = panels.swap_remove(worst);
        let mid = 0.5 * (p.a + p.b);
        if mid <= p.a || mid >= p.b {
            return Err(Error::Integration(format!(
                "interval [{}, {}] cannot be split further",
                p.a, p.b
            )));
        }
        panels.push(gk15(&mut f, p.a, mid, &mut evals)?);
        panels.push(gk15(&mut f, mid, p.b, &mut evals)?);
    }
}

/// Integrate over `[0, inf)` through `t = u^2/(1-u)^2`, `dt = 2u/(1-u)^3 du`.
/// The callback receives `t`.
pub fn integrate_half_line<F>(mut f: F, opts: QuadOptions) -> Result<QuadResult>
where
    F: FnMut(f64) -> Vec<Complex64>,
{
    integrate(
        |u| {
            let s = 1.0 - u;
            let t = (u / s) * (u / s);
            let jac = 2.0 * u / (s * s * s);
            let mut v = f(t);
            if jac == 0.0 {
                v.iter_mut().for_each(|z| *z = Complex64::new(0.0, 0.0));
            } else {
                v.iter_mut().for_each(|z| *z *= jac);
            }
            v
        },
        0.0,
        1.0,
        opts,
    )
}

/// Scalar convenience wrapper around [`integrate`].
pub fn integrate_scalar<F>(mut f: F, a: f64, b: f64, opts: QuadOptions) -> Result<(Complex64, f64)>
where
    F: FnMut(f64) -> Complex64,
{
    let r = integrate(|x| vec![f(x)], a, b, opts)?;
    Ok((r.value[0], r.error))
}
