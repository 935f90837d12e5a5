use catalan_ops::linalg::{spectral_radius, CMatrix, ExtComplex, Matrix, PrecisionGuard};
use catalan_ops::opcalc::catalan_of_matrix_series;
use catalan_ops::qme::*;
use num_complex::Complex64;
use proptest::prelude::*;

fn cz(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn arb_t() -> impl Strategy<Value = CMatrix> {
    (2usize..=6, 0.01f64..0.2).prop_flat_map(|(n, rho)| {
        prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), n * n).prop_map(move |e| {
            let a = CMatrix::new(n, n, e.iter().map(|&(r, i)| cz(r, i)).collect()).unwrap();
            let r = spectral_radius(&a).unwrap().max(1e-12);
            a.scale_re(rho / r)
        })
    })
}

fn sig_match(got: f64, want: f64, digits: i32) -> bool {
    (got - want).abs() <= 0.5 * 10f64.powi(1 - digits) * want.abs()
}

/// Scalar Newton and Catalan corrections for `t y^2 - y + 1`.
fn scalar_q(t: f64, y: f64) -> f64 {
    t * y * y - y + 1.0
}

fn scalar_catalan(t: f64, y: f64, k: usize) -> f64 {
    let dq = 2.0 * t * y - 1.0;
    let h0 = -scalar_q(t, y) / dq;
    let mut h = h0;
    let mut sum = h0;
    for j in 1..=k {
        let w = (2 * j - 1) as f64 / (j + 1) as f64;
        h = -w * 2.0 * t * h0 * h / dq;
        sum += h;
    }
    y + sum
}

#[test]
fn double_table_prefix() {
    let newton = solve_qbd(100, &SolverConfig::new(Method::Newton, Precision::Double)).unwrap();
    let r = newton.residuals();
    for (got, want) in r.iter().zip([8.45274e-2, 1.12729e-3, 2.11638e-7]) {
        assert!(sig_match(*got, want, 3), "{got:e} vs {want:e}");
    }
    assert!(newton.converged);
    let c4 = solve_qbd(100, &SolverConfig::new(Method::Catalan4, Precision::Double)).unwrap();
    let r = c4.residuals();
    for (got, want) in r.iter().zip([1.03079e-2, 3.01635e-8]) {
        assert!(sig_match(*got, want, 3), "{got:e} vs {want:e}");
    }
}

#[test]
fn extended_table() {
    let p = Precision::Extended { digits: 40 };
    let n = solve_qbd(100, &SolverConfig::new(Method::Newton, p)).unwrap();
    let want = [8.45274e-2, 1.12729e-3, 2.11638e-7, 7.46507e-15, 9.28789e-30];
    assert_eq!(n.steps.len(), want.len());
    for (got, w) in n.residuals().iter().zip(want) {
        assert!(sig_match(*got, w, 5), "{got:e} vs {w:e}");
    }
    let c = solve_qbd(100, &SolverConfig::new(Method::Catalan4, p)).unwrap();
    let want = [1.03079e-2, 3.01635e-8, 7.62333e-25];
    assert_eq!(c.steps.len(), want.len());
    for (got, w) in c.residuals().iter().zip(want) {
        assert!(sig_match(*got, w, 5), "{got:e} vs {w:e}");
    }
}

#[test]
fn orders_in_extended_precision() {
    let p = Precision::Extended { digits: 100 };
    let floor = 1e-98;
    let n = solve_qbd(10, &SolverConfig::new(Method::Newton, p).with_tol(floor)).unwrap();
    let on = estimate_order(&n.residuals(), floor).unwrap();
    assert!((on - 2.0).abs() <= 0.3, "newton {on}");
    let c = solve_qbd(10, &SolverConfig::new(Method::CatalanK(2), p).with_tol(floor)).unwrap();
    let oc = estimate_order(&c.residuals(), floor).unwrap();
    assert!((oc - 4.0).abs() <= 0.6, "catalan {oc}");
}

#[test]
fn monotone_after_first_step() {
    for m in [Method::Newton, Method::Catalan4, Method::CatalanK(2)] {
        let tr = solve_qbd(10, &SolverConfig::new(m, Precision::Extended { digits: 40 })).unwrap();
        let r = tr.residuals();
        assert!(r.windows(2).all(|w| w[1] < w[0]), "{m}: {r:?}");
    }
}

#[test]
fn diagonal_matches_scalar_oracles() {
    let ts = [0.1, 0.03, 1e-10, 0.2];
    let ys = [0.5, 1.2, 0.9, 1.4];
    let t = CMatrix::from_diag(&ts.map(|x| cz(x, 0.0)));
    let y = CMatrix::from_diag(&ys.map(|x| cz(x, 0.0)));
    let newton = newton_step(&t, &y, SylvesterForm::Derived).unwrap();
    let paper = newton_step(&t, &y, SylvesterForm::Paper).unwrap();
    for k in 1..=3 {
        let ck = catalan_step(&t, &y, k, SylvesterForm::Derived).unwrap();
        let cp = catalan_step(&t, &y, k, SylvesterForm::Paper).unwrap();
        for i in 0..4 {
            let want = scalar_catalan(ts[i], ys[i], k);
            assert!((ck[(i, i)].re - want).abs() <= 1e-14 * want.abs().max(1.0));
            assert_eq!(ck[(i, i)], cp[(i, i)]);
        }
    }
    for i in 0..4 {
        let (tt, yy) = (ts[i], ys[i]);
        let dq = 2.0 * tt * yy - 1.0;
        assert!((newton[(i, i)].re - (yy - scalar_q(tt, yy) / dq)).abs() <= 1e-14);
        // the printed Newton line: (2ty - 1) y' = t y^2
        assert!((paper[(i, i)].re - tt * yy * yy / dq).abs() <= 1e-14);
    }
}

#[test]
fn printed_newton_line_has_spurious_fixed_points() {
    // y = t y^2 / (2ty - 1) holds at y = 0 and y = 1/t, neither a root
    let t = 0.1;
    for y in [0.0, 1.0 / t] {
        let d = CMatrix::from_diag(&[cz(y, 0.0)]);
        let tm = CMatrix::from_diag(&[cz(t, 0.0)]);
        let next = newton_step(&tm, &d, SylvesterForm::Paper).unwrap();
        assert!((next[(0, 0)].re - y).abs() <= 1e-12);
        assert!(scalar_q(t, y).abs() >= 0.5);
    }
}

#[test]
fn one_step_improves_with_k() {
    let t = CMatrix::from_real_rows(&[&[0.1, 0.04, 0.0], &[0.0, 0.05, 0.03], &[0.02, 0.0, -0.08]]).unwrap();
    let c = catalan_of_matrix_series(&t, 1e-15).unwrap();
    let y0 = &c + &CMatrix::from_fn(3, 3, |i, j| cz(0.01 * (1.0 + i as f64 - j as f64), 0.0));
    let _g = PrecisionGuard::digits(60);
    let te = Matrix::<ExtComplex>::from_c64(&t);
    let ye = Matrix::from_c64(&y0);
    let res: Vec<f64> = (1..=4)
        .map(|k| q_of(&te, &catalan_step(&te, &ye, k, SylvesterForm::Derived).unwrap()).norm_inf())
        .collect();
    assert!(res.windows(2).all(|w| w[1] < w[0]), "{res:?}");
}

#[test]
fn non_convergence_is_a_trace() {
    let cfg = SolverConfig::new(Method::Newton, Precision::Double).with_max_iters(2);
    let tr = solve_qbd(10, &cfg).unwrap();
    assert!(!tr.converged);
    assert_eq!(tr.steps.len(), 2);
    assert!(tr.validation.is_none());
}

#[test]
fn trivial_t_is_one_step() {
    let t = CMatrix::zeros(3, 3);
    let y0 = CMatrix::from_real_rows(&[&[3.0, 1.0, 0.0], &[0.0, 2.0, 0.0], &[1.0, 1.0, 1.0]]).unwrap();
    let tr = solve_qme(&t, Some(&y0), &SolverConfig::default()).unwrap();
    assert!(tr.converged);
    assert_eq!(tr.steps.len(), 1);
    assert_eq!(tr.final_y, CMatrix::identity(3));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn fixed_point_at_c_of_t(t in arb_t()) {
        let c = catalan_of_matrix_series(&t, 1e-15).unwrap();
        for m in [Method::Newton, Method::CatalanK(2), Method::Catalan4] {
            let next = step(m, &t, &c, SylvesterForm::Derived).unwrap();
            prop_assert!((&next - &c).max_abs() <= 1e-11);
        }
        let hs = catalan_corrections(&t, &c, 2, SylvesterForm::Paper).unwrap();
        prop_assert!(hs.iter().all(|h| h.max_abs() <= 1e-11));
    }

    #[test]
    fn iterations_reach_c_of_t(t in arb_t()) {
        let c = catalan_of_matrix_series(&t, 1e-15).unwrap();
        let id = CMatrix::identity(t.rows());
        for m in [Method::Newton, Method::CatalanK(2), Method::Catalan4] {
            let tr = solve_qme(&t, Some(&id), &SolverConfig::new(m, Precision::Double)).unwrap();
            prop_assert!(tr.converged, "{m}: {:?}", tr.residuals());
            prop_assert!((&tr.final_y - &c).max_abs() <= 1e-10);
            let v = tr.validation.unwrap();
            prop_assert!(v.residual <= 1e-13);
        }
    }

    #[test]
    fn direct_corrections_agree(t in arb_t(), eps in 0.001f64..0.05) {
        let c = catalan_of_matrix_series(&t, 1e-15).unwrap();
        let y = c.add_identity(&cz(eps, 0.0));
        let a = catalan_corrections(&t, &y, 3, SylvesterForm::Derived).unwrap();
        let b = catalan_corrections_direct(&t, &y, 3).unwrap();
        for (x, z) in a.iter().zip(&b) {
            prop_assert!((x - z).max_abs() <= 1e-12 * (1.0 + x.max_abs()));
        }
    }

    #[test]
    fn frechet_derivative_matches_finite_difference(
        t in arb_t(),
        seed in prop::collection::vec(-1.0f64..1.0, 72),
    ) {
        let n = t.rows();
        let y = CMatrix::from_fn(n, n, |i, j| cz(seed[i * n + j], 0.0)).add_identity(&cz(1.0, 0.0));
        let e = CMatrix::from_fn(n, n, |i, j| cz(seed[36 + i * n + j], 0.0));
        let h = 1e-5;
        let fd = (&q_of(&t, &(&y + &e.scale_re(h))) - &q_of(&t, &(&y - &e.scale_re(h)))).scale_re(0.5 / h);
        let scale = 1.0 + t.norm_inf() * y.norm_inf() * e.norm_inf();
        prop_assert!((&fd - &q_prime_apply(&t, &y, &e)).norm_inf() <= 1e-8 * scale);
    }
}
