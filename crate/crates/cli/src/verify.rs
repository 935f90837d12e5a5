use std::f64::consts::PI;
use std::str::FromStr;
use std::thread;

use catalan_ops::catalan::{
    biquadratic_mean_check, catalan_closed_form, catalan_gf, catalan_gf_even, catalan_gf_odd,
    catalan_numbers, even_weighted_sum_extrapolated, integral_identity, tail_bound, weighted_catalan,
    weighted_sum_extrapolated,
};
use catalan_ops::linalg::{spectral_radius, CMatrix};
use catalan_ops::opcalc::families::*;
use catalan_ops::opcalc::*;
use catalan_ops::qme::{
    estimate_order, solve_qbd, solve_qme, Method, Precision, SolverConfig,
};
use catalan_ops::seq::*;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Scalar,
    Sequence,
    Operator,
    Solver,
}

impl Suite {
    pub const ALL: [Suite; 4] = [Suite::Scalar, Suite::Sequence, Suite::Operator, Suite::Solver];

    fn name(self) -> &'static str {
        match self {
            Suite::Scalar => "scalar",
            Suite::Sequence => "sequence",
            Suite::Operator => "operator",
            Suite::Solver => "solver",
        }
    }

    fn properties(self) -> &'static [(&'static str, Check)] {
        match self {
            Suite::Scalar => SCALAR,
            Suite::Sequence => SEQUENCE,
            Suite::Operator => OPERATOR,
            Suite::Solver => SOLVER,
        }
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| format!("unknown suite '{s}' (all|scalar|sequence|operator|solver)"))
    }
}

/// `Ok(detail)` on success, `Err(detail)` on failure.
type Check = fn(&mut ChaCha8Rng) -> Result<String, String>;

pub struct Outcome {
    suite: &'static str,
    name: &'static str,
    result: Result<String, String>,
}

pub struct Report(Vec<Outcome>);

impl Report {
    pub fn render(&self) -> String {
        let mut s = String::new();
        for o in &self.0 {
            let (tag, detail) = match &o.result {
                Ok(d) => ("PASS", d),
                Err(d) => ("FAIL", d),
            };
            s.push_str(&format!("{tag} {}/{} {detail}\n", o.suite, o.name));
        }
        let failed = self.failures().len();
        s.push_str(&format!("{} properties, {failed} failed\n", self.0.len()));
        s
    }

    pub fn failures(&self) -> Vec<String> {
        self.0
            .iter()
            .filter(|o| o.result.is_err())
            .map(|o| format!("{}/{}", o.suite, o.name))
            .collect()
    }
}

/// Each suite runs on its own thread with a stream derived from `seed`.
pub fn run_suites(suites: &[Suite], seed: u64) -> Report {
    let results: Vec<Vec<Outcome>> = thread::scope(|scope| {
        let handles: Vec<_> = suites
            .iter()
            .map(|&suite| {
                scope.spawn(move || {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    rng.set_stream(suite as u64 + 1);
                    suite
                        .properties()
                        .iter()
                        .map(|(name, check)| Outcome {
                            suite: suite.name(),
                            name,
                            result: check(&mut rng),
                        })
                        .collect()
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("suite thread panicked"))
            .collect()
    });
    Report(results.into_iter().flatten().collect())
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn within(name: &str, err: f64, tol: f64) -> Result<String, String> {
    let d = format!("{name}={err:.3e} (tol {tol:.0e})");
    if err <= tol {
        Ok(d)
    } else {
        Err(d)
    }
}

fn lib<T>(r: catalan_ops::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn disc_point(rng: &mut ChaCha8Rng, radius: f64) -> Complex64 {
    let r = radius * rng.gen::<f64>().sqrt();
    Complex64::from_polar(r, rng.gen_range(-PI..PI))
}

fn random_t(rng: &mut ChaCha8Rng, max_rho: f64) -> CMatrix {
    let n = rng.gen_range(2..=6);
    let a = CMatrix::from_fn(n, n, |_, _| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
    let r = spectral_radius(&a).unwrap_or(1.0).max(1e-12);
    a.scale_re(rng.gen_range(0.01..max_rho) / r)
}

const SCALAR: &[(&str, Check)] = &[
    ("weighted_sum_is_two", |_| {
        within("|S-2|", (weighted_sum_extrapolated(256, 6) - 2.0).abs(), 1e-10)
    }),
    ("even_weighted_sum_is_sqrt2", |_| {
        within("|S-sqrt2|", (even_weighted_sum_extrapolated(256, 6) - 2f64.sqrt()).abs(), 1e-10)
    }),
    ("exact_tail", |_| {
        let w = weighted_catalan(1025);
        let mut worst = 0.0f64;
        for n in [1usize, 16, 256, 1024] {
            let partial: f64 = w[..n].iter().sum();
            worst = worst.max((2.0 - partial - tail_bound(n)).abs());
        }
        within("tail gap", worst, 1e-11)
    }),
    ("closed_form_matches_recursion", |_| {
        let cc = lib(catalan_numbers(600))?;
        match (0..600).find(|&k| cc.exact(k) != catalan_closed_form(k)) {
            None => Ok("n < 600".into()),
            Some(k) => Err(format!("mismatch at n = {k}")),
        }
    }),
    ("gf_solves_quadratic", |rng| {
        let mut worst = 0.0f64;
        for _ in 0..200 {
            let z = disc_point(rng, 0.25);
            let y = lib(catalan_gf(z))?;
            worst = worst.max((z * y * y - y + 1.0).norm());
        }
        within("max |zC^2-C+1|", worst, 1e-12)
    }),
    ("even_odd_split", |rng| {
        let mut worst = 0.0f64;
        for _ in 0..200 {
            let z = disc_point(rng, 0.25);
            let (e, o) = (lib(catalan_gf_even(z))?, lib(catalan_gf_odd(z))?);
            worst = worst
                .max((e + o - lib(catalan_gf(z))?).norm())
                .max((e - o - lib(catalan_gf(-z))?).norm());
        }
        within("max split gap", worst, 1e-12)
    }),
    ("biquadratic_mean", |rng| {
        for _ in 0..100 {
            let x = disc_point(rng, 0.25);
            if !lib(biquadratic_mean_check(x, 1e-11))? {
                return Err(format!("fails at {x}"));
            }
        }
        Ok("100 points".into())
    }),
    ("integral_identities", |_| {
        let mut worst = 0.0f64;
        for z in [c(1.0, 0.0), c(1.5, 0.0), c(2.0, 1.0)] {
            for j in [0, 1, 2, 5] {
                let id = lib(integral_identity(z, j))?;
                worst = worst.max((id.lhs - id.rhs).norm());
            }
        }
        within("max |lhs-rhs|", worst, 1e-8)
    }),
    ("moments_recover_catalan", |_| {
        let (m, _) = lib(catalan_moments(5))?;
        let want = [1.0, 1.0, 2.0, 5.0, 14.0, 42.0];
        let worst = m.iter().zip(want).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        within("max moment error", worst, 1e-8)
    }),
];

const SEQUENCE: &[(&str, Check)] = &[
    ("quadratic_relation", |_| {
        let cat = WeightedSeq::catalan(DEFAULT_LEN);
        let r = convolve(&WeightedSeq::delta(1), &convolve(&cat, &cat))
            .sub(&cat)
            .add(&WeightedSeq::delta(0));
        within("norm", r.norm_w(), 1e-13)
    }),
    ("z_transform_is_gf", |rng| {
        let cat = WeightedSeq::catalan(2048);
        let mut worst = 0.0f64;
        for _ in 0..50 {
            let z = disc_point(rng, 0.2);
            worst = worst.max((lib(cat.z_transform(z))? - lib(catalan_gf(z))?).norm());
        }
        within("max gap", worst, 1e-12)
    }),
    ("resolvent_multiply_back", |rng| {
        let cat = WeightedSeq::catalan(DEFAULT_LEN);
        let mut worst = 0.0f64;
        let mut count = 0;
        while count < 20 {
            let l = disc_point(rng, 2.0);
            if !lib(in_omega(l))? || omega_ratio(l) < 0.3 {
                continue;
            }
            count += 1;
            let r = lib(resolvent_catalan(l, DEFAULT_LEN))?;
            let lhs = convolve(&WeightedSeq::delta(0).scale(l).sub(&cat), &r);
            let gap = lhs.sub(&WeightedSeq::delta(0));
            worst = worst.max(gap.norm_w() - gap.trunc_err() - lhs.trunc_err());
        }
        within("max excess", worst.max(0.0), 1e-10)
    }),
    ("catalan_inverse", |_| {
        let cat = WeightedSeq::catalan(DEFAULT_LEN);
        let p = convolve(&cat, &catalan_inverse(DEFAULT_LEN)).sub(&WeightedSeq::delta(0));
        within("norm", p.norm_w(), 1e-13)
    }),
    ("backward_difference", |_| {
        let b = lib(backward_difference_catalan(12))?;
        let c0 = (b.closed_form[0] - (2.0 * 6f64.sqrt() - 4.0)).abs();
        within("coef0", c0, 1e-12)?;
        within("series vs closed form", b.max_discrepancy, 1e-10)
    }),
    ("sigma_boundary", |_| {
        let pts = sigma_boundary_samples(DEFAULT_SAMPLES);
        let mut gf = 0.0f64;
        let mut ratio = 0.0f64;
        for p in &pts {
            gf = gf.max((p.z - lib(catalan_gf(Complex64::from_polar(0.25, p.theta)))?).norm());
            ratio = ratio.max(omega_ratio(p.z) - 0.25);
        }
        within("gf gap", gf, 1e-12)?;
        within("ratio excess", ratio.max(0.0), 1e-9)
    }),
];

const OPERATOR: &[(&str, Check)] = &[
    ("quadratic_residual", |rng| {
        let mut worst = 0.0f64;
        for _ in 0..10 {
            let t = random_t(rng, 0.2);
            worst = worst.max(lib(quadratic_residual(&t, &lib(catalan_of_matrix_series(&t, 1e-14))?))?);
        }
        within("max ||Q(C(T))||", worst, 1e-10)
    }),
    ("sqrt_identity", |rng| {
        let mut worst = 0.0f64;
        for _ in 0..10 {
            let t = random_t(rng, 0.2);
            let y = lib(catalan_of_matrix_series(&t, 1e-14))?;
            let s = lib(sqrt_one_minus_4t(&t, 1e-14))?;
            let gap = (&(&t * &y) + &s.scale_re(0.5)).add_identity(&c(-0.5, 0.0));
            worst = worst.max(gap.norm_inf());
        }
        within("max ||TC(T) - I/2 + sqrt(I-4T)/2||", worst, 1e-9)
    }),
    ("series_vs_quadrature", |rng| {
        let mut worst = 0.0f64;
        for _ in 0..5 {
            let t = random_t(rng, 0.2);
            let a = lib(catalan_of_matrix_series(&t, 1e-14))?;
            let b = lib(catalan_of_matrix_quadrature(&t, 1e-11))?;
            worst = worst.max((&a - &b).max_abs());
        }
        within("max gap", worst, 1e-7)
    }),
    ("four_conditions", |rng| {
        for _ in 0..10 {
            let t = random_t(rng, 0.2);
            let y = lib(catalan_of_matrix_series(&t, 1e-14))?;
            let rep = lib(inve_equivalences(&t, &y, 1e-9))?;
            if !rep.all_true() {
                return Err(format!("{rep:?}"));
            }
        }
        Ok("10 matrices".into())
    }),
    ("resolvent_of_y", |rng| {
        let mut worst = 0.0f64;
        for _ in 0..5 {
            let t = random_t(rng, 0.2);
            let y = lib(catalan_of_matrix_series(&t, 1e-14))?;
            for _ in 0..4 {
                let l = Complex64::from_polar(rng.gen_range(1.5..3.0), rng.gen_range(-PI..PI));
                let r = lib(resolvent_of_y(l, &t, &y))?;
                let back = &(-&y).add_identity(&l) * &r;
                worst = worst.max((&back - &CMatrix::identity(t.rows())).norm_inf());
            }
        }
        within("max multiply-back", worst, 1e-9)
    }),
    ("closed_form_families", |rng| {
        let mut worst = 0.0f64;
        for _ in 0..20 {
            let l = disc_point(rng, 0.25);
            if l.norm() < 0.02 {
                continue;
            }
            let b = disc_point(rng, 1.0);
            let cc = disc_point(rng, 1.0);
            for pf in [true, false] {
                let y = lib(scalar_family_y(l, b, cc, pf))?;
                worst = worst.max(lib(quadratic_residual(&scalar_t(l), &y))?);
            }
            let s = lib(catalan_of_matrix_series(&swap_t(l), 1e-15))?;
            worst = worst.max((&s - &lib(swap_family_c(l))?).max_abs());
            let s = lib(catalan_of_matrix_series(&scalar_t(l), 1e-15))?;
            worst = worst.max((&s - &lib(scalar_family_c(l))?).max_abs());
            let s = lib(catalan_of_matrix_series(&nilpotent_t(l), 1e-15))?;
            if s != nilpotent_family_y(l) {
                return Err(format!("nilpotent C(T) != I + T at {l}"));
            }
        }
        within("max deviation", worst, 1e-11)
    }),
    ("spectral_mapping", |rng| {
        for _ in 0..10 {
            let t = random_t(rng, 0.2);
            if let SpectralMapOutcome::Fails { max_mismatch } = lib(spectral_map_check(&t, 1e-8))? {
                return Err(format!("mismatch {max_mismatch:.3e}"));
            }
        }
        Ok("10 matrices".into())
    }),
];

const SOLVER: &[(&str, Check)] = &[
    ("newton_table_double", |_| {
        let tr = lib(solve_qbd(10, &SolverConfig::new(Method::Newton, Precision::Double)))?;
        table_match(&tr.residuals(), &[8.45274e-2, 1.12729e-3, 2.11638e-7], 3)
    }),
    ("catalan4_table_double", |_| {
        let tr = lib(solve_qbd(10, &SolverConfig::new(Method::Catalan4, Precision::Double)))?;
        table_match(&tr.residuals(), &[1.03079e-2, 3.01635e-8], 3)
    }),
    ("table_extended", |_| {
        let p = Precision::Extended { digits: 40 };
        let n = lib(solve_qbd(10, &SolverConfig::new(Method::Newton, p)))?;
        table_match(
            &n.residuals(),
            &[8.45274e-2, 1.12729e-3, 2.11638e-7, 7.46507e-15, 9.28789e-30],
            2,
        )?;
        let c4 = lib(solve_qbd(10, &SolverConfig::new(Method::Catalan4, p)))?;
        table_match(&c4.residuals(), &[1.03079e-2, 3.01635e-8, 7.62333e-25], 2)
    }),
    ("convergence_orders", |_| {
        let p = Precision::Extended { digits: 100 };
        let floor = 1e-98;
        let n = lib(solve_qbd(10, &SolverConfig::new(Method::Newton, p).with_tol(floor)))?;
        let c = lib(solve_qbd(10, &SolverConfig::new(Method::CatalanK(2), p).with_tol(floor)))?;
        let on = estimate_order(&n.residuals(), floor).ok_or("too few Newton residuals")?;
        let oc = estimate_order(&c.residuals(), floor).ok_or("too few Catalan residuals")?;
        let d = format!("newton {on:.3}, catalan:2 {oc:.3}");
        if (on - 2.0).abs() <= 0.3 && (oc - 4.0).abs() <= 0.6 {
            Ok(d)
        } else {
            Err(d)
        }
    }),
    ("random_t_converges_to_c", |rng| {
        let mut worst = 0.0f64;
        for _ in 0..5 {
            let t = random_t(rng, 0.2);
            let want = lib(catalan_of_matrix_series(&t, 1e-15))?;
            let id = CMatrix::identity(t.rows());
            for m in [Method::Newton, Method::CatalanK(2), Method::Catalan4] {
                let tr = lib(solve_qme(&t, Some(&id), &SolverConfig::new(m, Precision::Double)))?;
                if !tr.converged {
                    return Err(format!("{m} did not converge"));
                }
                worst = worst.max((&tr.final_y - &want).max_abs());
            }
        }
        within("max |Y - C(T)|", worst, 1e-10)
    }),
];

fn table_match(got: &[f64], want: &[f64], digits: i32) -> Result<String, String> {
    if got.len() < want.len() {
        return Err(format!("only {} residuals", got.len()));
    }
    let rel = 0.5 * 10f64.powi(1 - digits);
    for (k, (g, w)) in got.iter().zip(want).enumerate() {
        if (g - w).abs() > rel * w {
            return Err(format!("k={}: {g:.5e} vs {w:.5e}", k + 1));
        }
    }
    Ok(format!("{} values to {digits} digits", want.len()))
}
