use std::f64::consts::PI;
use std::fmt::Write as _;

use num_complex::Complex64;

pub const DEFAULT_SAMPLES: usize = 2048;
const OUTER_SCAN_MAX: f64 = 5.0;

/// Point of the spectrum boundary of `c`: `C(e^{i theta}/4)`, i.e.
/// `2 e^{-i theta} (1 - sqrt(2|sin(theta/2)|) e^{i(theta - sgn(theta) pi)/4})`.
pub fn sigma_boundary(theta: f64) -> Complex64 {
    let rad = (2.0 * (theta / 2.0).sin().abs()).sqrt();
    let phase = (theta - theta.signum() * PI) / 4.0;
    let root = Complex64::from_polar(rad, phase);
    2.0 * Complex64::from_polar(1.0, -theta) * (1.0 - root)
}

/// The same curve with the phase written as `e^{i(pi - theta)/4}`. Kept for
/// comparison; it is the conjugate branch and leaves `C(e^{i theta}/4)` for
/// `theta > 0`.
pub fn sigma_boundary_as_printed(theta: f64) -> Complex64 {
    let rad = (2.0 * (theta / 2.0).sin().abs()).sqrt();
    let root = Complex64::from_polar(rad, (PI - theta) / 4.0);
    2.0 * Complex64::from_polar(1.0, -theta) * (1.0 - root)
}

/// `|lambda - 1| / |lambda|^2`; equals 1/4 on the boundary of `Omega`.
pub fn omega_ratio(lambda: Complex64) -> f64 {
    (lambda - 1.0).norm() / lambda.norm_sqr()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Curve {
    SigmaC,
    Omega,
}

impl Curve {
    pub fn label(self) -> &'static str {
        match self {
            Curve::SigmaC => "sigma_c",
            Curve::Omega => "omega",
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct BoundaryPoint {
    /// Curve parameter: `theta` for `sigma_c`, polar angle for `omega`.
    pub theta: f64,
    pub z: Complex64,
    pub curve: Curve,
}

/// Invert a cumulative-length table at fraction `s` in `[0, 1]`.
fn invert_arc(params: &[f64], cum: &[f64], s: f64) -> f64 {
    let target = s * cum[cum.len() - 1];
    let k = cum.partition_point(|&x| x < target).clamp(1, cum.len() - 1);
    let (c0, c1) = (cum[k - 1], cum[k]);
    let f = if c1 > c0 { (target - c0) / (c1 - c0) } else { 0.0 };
    params[k - 1] + f * (params[k] - params[k - 1])
}

fn cumulative(points: &[Complex64]) -> Vec<f64> {
    let mut cum = Vec::with_capacity(points.len());
    let mut acc = 0.0;
    cum.push(0.0);
    for w in points.windows(2) {
        acc += (w[1] - w[0]).norm();
        cum.push(acc);
    }
    cum
}

/// `m` points on the `sigma(c)` boundary, equidistributed in arc length,
/// symmetric about the real axis with `theta = 0` and `theta = -pi` included.
pub fn sigma_boundary_samples(m: usize) -> Vec<BoundaryPoint> {
    let fine = 16 * m.max(16);
    let params: Vec<f64> = (0..=fine).map(|k| PI * k as f64 / fine as f64).collect();
    let pts: Vec<Complex64> = params.iter().map(|&t| sigma_boundary(t)).collect();
    let cum = cumulative(&pts);
    (0..m)
        .map(|k| {
            let s = -1.0 + 2.0 * k as f64 / m as f64;
            let theta = s.signum() * invert_arc(&params, &cum, s.abs());
            BoundaryPoint {
                theta,
                z: sigma_boundary(theta),
                curve: Curve::SigmaC,
            }
        })
        .collect()
}

/// `r^4/16 - r^2 + 2 r cos(phi) - 1`, zero where `|r e^{i phi} - 1| = r^2/4`.
fn radial(r: f64, cos_phi: f64) -> f64 {
    let r2 = r * r;
    r2 * r2 / 16.0 - r2 + 2.0 * r * cos_phi - 1.0
}

/// Outermost radius on the ray at angle `phi` where the ratio equals 1/4.
///
/// On `[2, 5]` the quartic is convex with `radial(2) = 4(cos phi - 1) <= 0`
/// and `radial(5) > 0`, so the outer root is the only one there.
pub fn omega_radius(phi: f64) -> f64 {
    let cp = phi.cos();
    let (mut lo, mut hi) = (2.0, OUTER_SCAN_MAX);
    if radial(lo, cp) >= 0.0 {
        return lo;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if radial(mid, cp) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

/// `m` points on the outer boundary of `Omega`, solved radially per angle and
/// spread evenly in arc length.
pub fn omega_boundary_samples(m: usize) -> Vec<BoundaryPoint> {
    let fine = 8 * m.max(16);
    let params: Vec<f64> = (0..=fine)
        .map(|k| -PI + 2.0 * PI * k as f64 / fine as f64)
        .collect();
    let pts: Vec<Complex64> = params
        .iter()
        .map(|&p| Complex64::from_polar(omega_radius(p), p))
        .collect();
    let cum = cumulative(&pts);
    (0..m)
        .map(|k| {
            let phi = invert_arc(&params, &cum, k as f64 / m as f64);
            BoundaryPoint {
                theta: phi,
                z: Complex64::from_polar(omega_radius(phi), phi),
                curve: Curve::Omega,
            }
        })
        .collect()
}

/// CSV with header `theta,re,im,curve`.
pub fn boundary_csv(points: &[BoundaryPoint]) -> String {
    let mut out = String::from("theta,re,im,curve\n");
    for p in points {
        let _ = writeln!(
            out,
            "{:.17e},{:.17e},{:.17e},{}",
            p.theta,
            p.z.re,
            p.z.im,
            p.curve.label()
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sigma_at_zero_is_two() {
        assert!((sigma_boundary(0.0) - Complex64::new(2.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn printed_phase_differs_off_axis() {
        let t = 0.5;
        let z = Complex64::from_polar(0.25, t);
        let cz = crate::catalan::catalan_gf(z).unwrap();
        assert!((sigma_boundary(t) - cz).norm() < 1e-12);
        assert!((sigma_boundary_as_printed(t) - cz).norm() > 1e-2);
    }

    #[test]
    fn omega_radius_on_real_axis() {
        // phi = pi: |{-r} - 1| = r^2/4 gives r = 2 + 2 sqrt 2
        let r = omega_radius(PI);
        assert!((r - (2.0 + 2.0 * 2f64.sqrt())).abs() < 1e-10);
        assert!((omega_radius(0.0) - 2.0).abs() < 1e-6);
    }

    #[test]
    fn samples_are_symmetric_and_sized() {
        let s = sigma_boundary_samples(64);
        assert_eq!(s.len(), 64);
        assert_eq!(s[32].theta, 0.0);
        assert!((s[0].theta + PI).abs() < 1e-15);
        assert!((s[10].theta + s[54].theta).abs() < 1e-14);
        let o = omega_boundary_samples(64);
        assert_eq!(o.len(), 64);
        let csv = boundary_csv(&o);
        assert!(csv.starts_with("theta,re,im,curve\n"));
        assert_eq!(csv.lines().count(), 65);
    }
}
