//! Seeded properties of the distributions, the extremal flow and the quartic.

use ants_core::algebra::{int, rat};
use ants_core::distribution::{derived_flag, growth_vector, is_symmetry, rational_rank, solve_symmetries, Distribution};
use ants_core::extremals::*;
use ants_core::models::{build_rule_a, build_rule_b, projective_symmetries, Rule};
use ants_core::quartic_metric::{cartan_quartic, classify_quartic, QuarticTag};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn distributions() -> Vec<(&'static str, Distribution)> {
    vec![
        ("rule A", build_rule_a().distribution()),
        ("rule B", build_rule_b().distribution()),
        ("sqrt", build_rule_b().square_root_distribution(int(1)).unwrap()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn generic_rank_matches_pointwise_rank(seed in any::<u64>()) {
        for (name, d) in distributions() {
            let flag = derived_flag(&d, 4, seed, 3).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let fresh = d.sample_point(&mut rng).unwrap();
            for p in flag.witness_points.iter().chain(std::iter::once(&fresh)) {
                prop_assert_eq!(&growth_vector(&d, p, 4).unwrap(), &flag.ranks, "{}", name);
            }
        }
    }

    #[test]
    fn rule_b_extremals_keep_the_sum_zero(a in -4i64..=4, b in -4i64..=4) {
        prop_assume!(a != 0 || b != 0);
        let u0 = [rat(a, 16), rat(b, 16), rat(-a - b, 16)];
        let m = build_rule_b();
        let lift = hamiltonian_lift(&m.z).unwrap();
        let q0 = [0, 0, 1, 0, 0, 1].map(int);
        let l0 = initial_covector(&m, &lift, &q0, &u0).unwrap();
        let tr = integrate_extremal(Rule::B, &lift, &q0, &l0, 1.0, 1e-3, &MonitorTolerances::default()).unwrap();
        prop_assert!(tr.drift.inv_sum < 1e-12);
        prop_assert!(!tr.drift.sign_change);
        // pointwise residual of the u-system the flow actually carries
        prop_assert!(tr.drift.lifted_residual < 10.0 * 1e-3f64.powi(4));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn system_b_preserves_signs(u1 in -0.4f64..0.4, u2 in -0.4f64..0.4) {
        let u0 = [u1, u2, -u1 - u2];
        for rhs in [integrate_control, integrate_lifted_control] {
            let traj = rhs(Rule::B, u0, 1.0, 1e-3).unwrap();
            for u in &traj {
                for i in 0..3 {
                    prop_assert!(u[i] * u0[i] >= 0.0, "{:?} -> {:?}", u0, u);
                }
            }
        }
    }

    #[test]
    fn system_b_is_cyclically_equivariant(u1 in -0.4f64..0.4, u2 in -0.4f64..0.4) {
        let u0 = [u1, u2, -u1 - u2];
        let cycle = |u: [f64; 3]| [u[1], u[2], u[0]];
        let base = integrate_control(Rule::B, u0, 1.0, 1e-3).unwrap();
        let rotated = integrate_control(Rule::B, cycle(u0), 1.0, 1e-3).unwrap();
        for (a, b) in base.iter().zip(&rotated) {
            let a = cycle(*a);
            for i in 0..3 {
                prop_assert!((a[i] - b[i]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn cartan_quartic_never_has_real_roots(n in -50i64..=50, d in 1i64..=20) {
        prop_assume!(n != 0);
        let r = classify_quartic(&cartan_quartic(&rat(n, d))).unwrap();
        prop_assert_eq!(r.root_type.tag, QuarticTag::NoReal);
    }
}

#[test]
fn solved_symmetries_pass_the_exact_test() {
    for (name, d) in distributions() {
        for x in solve_symmetries(&d, 2).unwrap() {
            assert!(is_symmetry(&x, &d).unwrap().holds, "{name}: {x}");
        }
    }
}

#[test]
fn rule_a_symmetries_are_the_projective_fields() {
    let d = build_rule_a().distribution();
    let solved = solve_symmetries(&d, 2).unwrap();
    let xs = projective_symmetries();
    let union: Vec<_> = solved.iter().chain(&xs).cloned().collect();
    assert_eq!(rational_rank(&solved).unwrap(), 8);
    assert_eq!(rational_rank(&xs).unwrap(), 8);
    assert_eq!(rational_rank(&union).unwrap(), 8);
}

#[test]
fn rule_b_flag_stops_at_five() {
    let flag = derived_flag(&build_rule_b().distribution(), 6, 3, 3).unwrap();
    assert_eq!(flag.ranks, vec![3, 5, 5]);
    assert!(flag.stabilized);
}
