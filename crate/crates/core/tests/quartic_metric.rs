use ants_core::algebra::{int, rat, to_f64, Rational};
use ants_core::models::build_affine_model;
use ants_core::quartic_metric::*;
use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Real roots of `Σ c_k x^{4−k}` (`c0 ≠ 0`) by Weierstrass iteration in
/// floating point. The companion-matrix Schur route in nalgebra can stall on
/// palindromic inputs, so the oracle stays self-contained.
fn float_real_roots(c: &[i64; 5]) -> usize {
    let monic: Vec<f64> = c.iter().map(|&v| v as f64 / c[0] as f64).collect();
    let eval = |z: Complex64| monic.iter().fold(Complex64::new(0.0, 0.0), |acc, &a| acc * z + a);
    let seed = Complex64::new(0.4, 0.9);
    let mut roots: Vec<Complex64> = (0..4).map(|k| seed.powu(k as u32)).collect();
    for _ in 0..2000 {
        let prev = roots.clone();
        for i in 0..4 {
            let denom = (0..4).filter(|&j| j != i).fold(Complex64::new(1.0, 0.0), |acc, j| acc * (roots[i] - roots[j]));
            let step = eval(roots[i]) / denom;
            roots[i] -= step;
        }
        if roots.iter().zip(&prev).all(|(a, b)| (a - b).norm() < 1e-15 * (1.0 + a.norm())) {
            break;
        }
    }
    roots.iter().filter(|z| z.im.abs() < 1e-7 * (1.0 + z.norm())).count()
}

#[test]
fn classification_matches_float_roots() {
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    let mut compared = 0;
    while compared < 1000 {
        let c: [i64; 5] = std::array::from_fn(|_| rng.gen_range(-9..=9));
        if c[0] == 0 {
            continue;
        }
        let report = classify_quartic(&BinaryQuartic::from_ints(c)).unwrap();
        if report.square_free_factors.iter().any(|f| f.multiplicity > 1) {
            continue;
        }
        assert_eq!(report.sturm_root_count, float_real_roots(&c), "{c:?}");
        assert_ne!(report.sturm_root_count, 3);
        compared += 1;
    }
}

#[test]
fn cartan_quartic_has_no_real_roots() {
    for c in [int(1), int(-1), rat(7, 3), rat(-7, 3), rat(1, 1000), int(-12)] {
        let r = classify_quartic(&cartan_quartic(&c)).unwrap();
        assert_eq!(r.root_type.tag, QuarticTag::NoReal);
        assert_eq!(r.root_type.complex_multiplicities.iter().sum::<u32>(), 4);
    }
    let json = classify_quartic(&cartan_quartic(&int(1))).unwrap().to_json();
    assert!(json.contains("\"tag\": \"no_real\""));
    assert!(json.contains("\"square_free_factors\""));
}

#[test]
fn root_at_infinity() {
    // u2 (u1³ − u1 u2²): roots u2 = 0, u1 = 0, u1 = ±u2
    let r = classify_quartic(&BinaryQuartic::from_ints([0, 1, 0, -1, 0])).unwrap();
    assert_eq!(r.root_type.infinity_multiplicity, 1);
    assert_eq!(r.root_type.tag, QuarticTag::FourDistinctReal);
    let r = classify_quartic(&BinaryQuartic::from_ints([0, 0, 1, 0, 1])).unwrap();
    assert_eq!(r.root_type.infinity_multiplicity, 2);
    assert_eq!(r.root_type.tag, QuarticTag::DoubleRealTwoComplex);
}

#[test]
fn equilateral_triangle_gives_the_unit_circle() {
    // rational approximation of the regular triangle inscribed in the unit circle
    let s = rat(866_025_403_784_439, 1_000_000_000_000_000);
    let t: Triangle = [[int(1), int(0)], [rat(-1, 2), s.clone()], [rat(-1, 2), -s]];
    let e = steiner_circumellipse(&t).unwrap();
    for (i, row) in e.gram.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            let target = if i == j { 1.0 } else { 0.0 };
            assert!((to_f64(v) - target).abs() < 1e-12);
        }
    }
    for i in 0..3 {
        assert_eq!(e.level(&t[i]), int(1));
        assert_eq!(e.tangent_residual(&t, i), int(0));
    }
}

#[test]
fn equilateral_speed_constant() {
    let s = rat(866_025_403_784_439, 1_000_000_000_000_000);
    let t: Triangle = [[int(1), int(0)], [rat(-1, 2), s.clone()], [rat(-1, 2), -s]];
    let v = subriemannian_speed(&t, [1.0, -1.0, 0.0]).unwrap();
    assert!((v / 2.0 - 3.0).abs() < 1e-12);
}

#[test]
fn metric_signature_on_the_leaf() {
    let m = build_affine_model(int(1)).unwrap();
    let d = m.square_root_distribution().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let identity = m.leaf_point(&[int(1), int(0), int(0), int(0), int(0)]).unwrap();
    let reference = metric_signature(&m.coordinate_metric_at(&identity).unwrap()).unwrap();
    assert!(reference.matches_unordered(2, 3));
    for _ in 0..100 {
        let p = d.sample_point(&mut rng).unwrap();
        let g = m.coordinate_metric_at(&p).unwrap();
        assert_eq!(metric_signature(&g).unwrap(), reference);
    }
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=5).prop_map(|(n, d)| rat(n, d))
}

fn triangle() -> impl Strategy<Value = Triangle> {
    proptest::array::uniform3(proptest::array::uniform2(small_rational()))
        .prop_filter("non-degenerate", |t| steiner_circumellipse(t).is_ok())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn steiner_ellipse_vertex_and_tangency(t in triangle()) {
        let e = steiner_circumellipse(&t).unwrap();
        prop_assert!(e.is_valid());
        for i in 0..3 {
            prop_assert_eq!(e.level(&t[i]), int(1));
            prop_assert_eq!(e.tangent_residual(&t, i), int(0));
        }
        prop_assert_eq!(e.conic_coefficients(), conic_through_constraints(&t).unwrap());
    }

    #[test]
    fn steiner_ellipse_commutes_with_affine_maps(
        t in triangle(),
        a in proptest::array::uniform2(proptest::array::uniform2(small_rational())),
        b in proptest::array::uniform2(small_rational()),
    ) {
        let det = &a[0][0] * &a[1][1] - &a[0][1] * &a[1][0];
        prop_assume!(det != int(0));
        let image = steiner_circumellipse(&affine_image(&t, &a, &b)).unwrap();
        prop_assert_eq!(image, steiner_circumellipse(&t).unwrap().transformed(&a, &b).unwrap());
    }

    #[test]
    fn speed_is_proportional_to_sum_of_squares(t in triangle(), u1 in -3.0f64..3.0, u2 in -3.0f64..3.0) {
        prop_assume!(u1.abs() + u2.abs() > 1e-3);
        let u = [u1, u2, -u1 - u2];
        let sq: f64 = u.iter().map(|v| v * v).sum();
        let speed = subriemannian_speed(&t, u).unwrap();
        prop_assert!((speed / sq - 3.0).abs() < 1e-9 * 3.0);
    }

    #[test]
    fn ellipse_norm_is_homogeneous(t in triangle(), x in -5.0f64..5.0, y in -5.0f64..5.0, s in -4.0f64..4.0) {
        let e = steiner_circumellipse(&t).unwrap();
        let lhs = ellipse_norm(&e, [s * x, s * y]);
        let rhs = s.abs() * ellipse_norm(&e, [x, y]);
        prop_assert!((lhs - rhs).abs() <= 1e-9 * (1.0 + rhs));
    }
}
