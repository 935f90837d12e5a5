use catalan_ops::catalan::{catalan_gf, catalan_numbers, tail_bound};
use catalan_ops::seq::*;
use num_bigint::BigInt;
use num_complex::Complex64;
use proptest::prelude::*;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// `(lambda delta_0 - a)^{-1}` by forward substitution on stored coefficients.
fn triangular_inverse(lambda: Complex64, a: &WeightedSeq) -> Vec<Complex64> {
    let n = a.len();
    let mut r = vec![c(0.0); n];
    let d0 = lambda - a.weighted(0);
    r[0] = 1.0 / d0;
    for k in 1..n {
        let s: Complex64 = (1..=k).map(|j| a.weighted(j) * r[k - j]).sum();
        r[k] = s / d0;
    }
    r
}

#[test]
fn quadratic_relation_exact_integers() {
    // delta_1 * c*c - c + delta_0 = 0 coefficientwise
    let n = 60;
    let cc = catalan_numbers(n).unwrap();
    let v: Vec<BigInt> = (0..n).map(|k| BigInt::from(cc.exact(k))).collect();
    for k in 0..n {
        let conv: BigInt = if k == 0 {
            BigInt::from(0)
        } else {
            (0..k).map(|i| &v[i] * &v[k - 1 - i]).sum()
        };
        let delta0 = BigInt::from(u8::from(k == 0));
        assert_eq!(conv - &v[k] + delta0, BigInt::from(0), "k = {k}");
    }
}

#[test]
fn quadratic_relation_in_doubles() {
    let cat = WeightedSeq::catalan(DEFAULT_LEN);
    let lhs = convolve(&WeightedSeq::delta(1), &convolve(&cat, &cat))
        .sub(&cat)
        .add(&WeightedSeq::delta(0));
    assert!(lhs.norm_w() <= 1e-12 + lhs.trunc_err());
    // the stored prefix cancels to rounding
    assert!(lhs.norm_w() <= 1e-13);
}

#[test]
fn catalan_norm_and_transform() {
    let n = 256;
    let cat = WeightedSeq::catalan(n);
    assert!((cat.norm_w() - 2.0).abs() <= tail_bound(n));
    let z = c(0.2);
    let v = cat.z_transform(z).unwrap();
    let want = catalan_gf(z).unwrap();
    // tail at |4z| = 0.8 is geometric after index n
    assert!((v - want).norm() <= cat.trunc_err() * 0.8f64.powi(n as i32) + 1e-13);
}

#[test]
fn geometric_resolvent_of_shift() {
    let lambda = c(0.3);
    let p = geometric_seq(lambda, 400).unwrap();
    let lhs = WeightedSeq::delta(0)
        .scale(lambda)
        .sub(&WeightedSeq::delta(1));
    let prod = convolve(&lhs, &p.scale(1.0 / lambda));
    let dist = prod.distance(&WeightedSeq::delta(0));
    assert!(dist <= 1e-12 + prod.trunc_err(), "{dist} {}", prod.trunc_err());
}

#[test]
fn inverse_of_catalan() {
    let len = 256;
    let inv = catalan_inverse(len);
    let prod = convolve(&WeightedSeq::catalan(len), &inv);
    assert!(prod.distance(&WeightedSeq::delta(0)) <= 1e-13);
}

#[test]
fn resolvent_multiply_back_and_transform() {
    let len = 256;
    for lambda in [c(-1.0), Complex64::new(0.0, 3.0), c(0.5), Complex64::new(1.5, 1.5)] {
        let r = resolvent_catalan(lambda, len).unwrap();
        let back = convolve(
            &WeightedSeq::delta(0).scale(lambda).sub(&WeightedSeq::catalan(len)),
            &r,
        );
        let d = back.distance(&WeightedSeq::delta(0));
        assert!(d <= 1e-10, "lambda = {lambda}: {d}");
        let z = c(0.1);
        let want = 1.0 / (lambda - catalan_gf(z).unwrap());
        let got = r.z_transform(z).unwrap();
        assert!((got - want).norm() <= 1e-10 + r.trunc_err() * 0.4f64.powi(len as i32 - 1));
    }
}

#[test]
fn lambda_three_needs_another_route() {
    // outside Omega the geometric parameter leaves the algebra
    assert!(resolvent_catalan(c(3.0), 64).is_err());
    let cat = WeightedSeq::catalan(256);
    let r = WeightedSeq::from_weighted(triangular_inverse(c(3.0), &cat), 0.0);
    let z = c(0.1);
    let want = 1.0 / (3.0 - catalan_gf(z).unwrap());
    assert!((r.z_transform(z).unwrap() - want).norm() < 1e-12);
}

#[test]
fn formula_agrees_with_triangular_inverse() {
    let lambda = Complex64::new(-0.5, 1.0);
    let cat = WeightedSeq::catalan(128);
    let r = resolvent_catalan(lambda, 128).unwrap();
    let tri = triangular_inverse(lambda, &cat);
    for k in 0..128 {
        assert!((r.weighted(k) - tri[k]).norm() <= 1e-12 * (1.0 + tri[k].norm()));
    }
}

#[test]
fn sigma_boundary_matches_gf_and_lies_on_omega_boundary() {
    for p in sigma_boundary_samples(256) {
        let z = Complex64::from_polar(0.25, p.theta);
        assert!((p.z - catalan_gf(z).unwrap()).norm() <= 1e-12);
        assert!(omega_ratio(p.z) <= 0.25 + 1e-9);
    }
    for p in omega_boundary_samples(256) {
        assert!((omega_ratio(p.z) - 0.25).abs() <= 1e-12);
    }
}

#[test]
fn moments_recover_catalans() {
    let (m, _) = catalan_moments(5).unwrap();
    for (got, want) in m.iter().zip([1.0, 1.0, 2.0, 5.0, 14.0, 42.0]) {
        assert!((got - want).abs() <= 1e-8);
    }
}

fn finite_seq(coeffs: Vec<(f64, f64)>) -> WeightedSeq {
    let v: Vec<Complex64> = coeffs.into_iter().map(|(a, b)| Complex64::new(a, b)).collect();
    WeightedSeq::from_coeffs(&v, 0.0)
}

fn omega_point() -> impl Strategy<Value = Complex64> {
    (-3.0f64..3.0, -3.0f64..3.0)
        .prop_map(|(a, b)| Complex64::new(a, b))
        .prop_filter("in Omega, away from its edge", |l| {
            l.norm() > 1e-3 && (l - 1.0).norm() / l.norm_sqr() > 0.3
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn submultiplicative(a in prop::collection::vec((-2.0f64..2.0, -2.0f64..2.0), 1..12),
                         b in prop::collection::vec((-2.0f64..2.0, -2.0f64..2.0), 1..12)) {
        let (a, b) = (finite_seq(a), finite_seq(b));
        let p = convolve(&a, &b);
        prop_assert!(p.norm_w() <= a.norm_w() * b.norm_w() * (1.0 + 1e-14) + 1e-300);
    }

    #[test]
    fn gelfand_morphism(a in prop::collection::vec((-2.0f64..2.0, -2.0f64..2.0), 1..12),
                        b in prop::collection::vec((-2.0f64..2.0, -2.0f64..2.0), 1..12),
                        r in 0.0f64..=0.25, t in -3.14f64..3.14) {
        let (a, b) = (finite_seq(a), finite_seq(b));
        let z = Complex64::from_polar(r, t);
        let lhs = convolve(&a, &b).z_transform(z).unwrap();
        let rhs = a.z_transform(z).unwrap() * b.z_transform(z).unwrap();
        prop_assert!((lhs - rhs).norm() <= 1e-11);
    }

    #[test]
    fn first_resolvent_equation(l in omega_point(), m in omega_point()) {
        let len = 256;
        let rl = resolvent_catalan(l, len).unwrap();
        let rm = resolvent_catalan(m, len).unwrap();
        let lhs = rl.sub(&rm);
        let rhs = convolve(&rl, &rm).scale(m - l);
        let scale = 1.0 + rl.norm_w() * rm.norm_w() * (m - l).norm();
        prop_assert!(lhs.distance(&rhs) <= 1e-10 * scale);
    }
}
