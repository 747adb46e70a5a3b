use ants_core::algebra::{
    int, lie_bracket, top_wedge_determinant, DifferentialForm, Multivector, MultiPoly, RationalFn, VectorField,
};
use ants_core::distribution::{derived_flag, growth_vector, is_symmetry, rational_rank, solve_symmetries, structure_constants};
use ants_core::models::*;

#[test]
fn rule_a_fields_and_brackets() {
    let m = build_rule_a();
    let c = &m.chart;
    let n = |s: &str| MultiPoly::named(c, s).unwrap();
    let z1 = VectorField::from_named(
        c,
        &[
            ("x1", &n("x2") - &n("x1")),
            ("y1", &n("y2") - &n("y1")),
        ],
    )
    .unwrap();
    assert_eq!(m.z[0], z1);
    let br = m.brackets();
    for i in 0..3 {
        assert_eq!(br[i], m.rule_a_bracket_formula(i));
        assert!(m.omega[i].apply(&m.z[i]).unwrap().is_zero());
    }
}

#[test]
fn top_wedges() {
    for (m, expect_zero) in [(build_rule_a(), false), (build_rule_b(), true)] {
        let [z12, z23, z31] = m.brackets();
        let det = top_wedge_determinant(&[&m.z[0], &m.z[1], &m.z[2], &z12, &z31, &z23]).unwrap();
        if expect_zero {
            assert!(det.is_zero());
        } else {
            let cube: RationalFn = m.area32.pow(3).into();
            assert!(det == cube || det == -&cube, "det = {det}");
        }
    }
}

#[test]
fn rule_b_relation_and_area_form() {
    let m = build_rule_b();
    assert!(m.relation_sum(&int(-1)).is_zero());
    assert!(!m.relation_sum(&int(1)).is_zero());
    let df = DifferentialForm::function(m.area32.clone().into()).exterior_derivative();
    // d(32A) = −(ω1 + ω2 + ω3) with the forms oriented as ω_i(Z_i) = 0
    assert!(df.add(&m.omega_sum()).is_zero());
    assert!(m.omega_sum().exterior_derivative().is_zero());
    assert!(m.distribution().check_first_integral(&m.area32.clone().into()).unwrap());
    assert!(!build_rule_a().distribution().check_first_integral(&m.area32.clone().into()).unwrap());
}

#[test]
fn square_root_identities() {
    let m = build_rule_b();
    let a = m.z[0].sub(&m.z[1]);
    let b = m.z[2].sub(&m.z[0]);
    let br = lie_bracket(&a, &b).unwrap();
    // [Z1 − Z2, Z3 − Z1] = −(Z1 + Z2 + Z3) with [v, w] = v(w) − w(v)
    assert_eq!(br, m.z[0].add(&m.z[1]).add(&m.z[2]).scale(&int(-1)));
    let br_rev = lie_bracket(&a, &m.z[0].sub(&m.z[2])).unwrap();
    let lhs = Multivector::wedge_all(&[&br_rev, &a, &b]).unwrap();
    let rhs = Multivector::wedge_all(&[&m.z[2], &m.z[1], &m.z[0]]).unwrap().scale(&int(3));
    assert!(lhs.sub(&rhs).is_zero());
    assert!(build_rule_a().square_root_distribution(int(1)).is_err());
    let d = m.square_root_distribution(int(1)).unwrap();
    assert!(!d.is_integrable());
}

#[test]
fn growth_vectors() {
    let ra = build_rule_a().distribution();
    assert_eq!(derived_flag(&ra, 4, 7, 3).unwrap().ranks, vec![3, 6]);
    let rb = build_rule_b();
    let f = derived_flag(&rb.distribution(), 4, 7, 3).unwrap();
    assert_eq!(f.ranks, vec![3, 5, 5]);
    assert!(f.stabilized);
    let [z12, z23, z31] = rb.brackets();
    let mut d1 = rb.z.to_vec();
    d1.extend([z12, z23, z31]);
    assert!(ants_core::distribution::Distribution::new(d1).unwrap().is_integrable());
    let sq = rb.square_root_distribution(int(1)).unwrap();
    assert_eq!(derived_flag(&sq, 4, 7, 3).unwrap().ranks, vec![2, 3, 5]);
    assert_eq!(derived_flag(&build_flat36(), 4, 7, 3).unwrap().ranks, vec![3, 6]);
    assert_eq!(derived_flag(&build_quadric235().unwrap(), 4, 7, 3).unwrap().ranks, vec![2, 3, 5]);

    let p = |v: [i64; 6]| v.map(int).to_vec();
    assert_eq!(growth_vector(&ra, &p([0, 0, 1, 0, 0, 1]), 4).unwrap(), vec![3, 6]);
    assert_eq!(growth_vector(&ra, &p([0, 0, 1, 0, 2, 0]), 4).unwrap(), vec![3, 3]);
    assert_eq!(growth_vector(&build_flat36(), &p([1, 2, 3, -1, 0, 2]), 4).unwrap(), vec![3, 6]);
}

#[test]
fn flat_forms_annihilate() {
    let fields = reference::flat_fields();
    for l in reference::flat_forms() {
        for q in &fields {
            assert!(l.apply(q).unwrap().is_zero());
        }
    }
}

#[test]
fn rule_a_symmetries() {
    let m = build_rule_a();
    let d = m.distribution();
    let xs = projective_symmetries();
    for x in &xs {
        assert!(is_symmetry(x, &d).unwrap().holds);
    }
    let sols = solve_symmetries(&d, 2).unwrap();
    assert_eq!(sols.len(), 8);
    for s in &sols {
        assert!(is_symmetry(s, &d).unwrap().holds);
    }
    let mut all = xs.clone();
    all.extend(sols.iter().cloned());
    assert_eq!(rational_rank(&xs).unwrap(), 8);
    assert_eq!(rational_rank(&all).unwrap(), 8);
    let t = structure_constants(&xs).unwrap();
    assert!(t.is_consistent());
    assert_eq!((t.killing_signature.positive, t.killing_signature.negative), (5, 3));
    let deg0 = solve_symmetries(&d, 0).unwrap();
    assert_eq!(deg0.len(), 2);
}

#[test]
fn s_fields() {
    let m = build_rule_b();
    let d = m.square_root_distribution(int(1)).unwrap();
    for s in area_preserving_symmetries() {
        let chk = is_symmetry(&s, &d).unwrap();
        assert!(chk.holds);
        assert!(chk.tangency.unwrap().is_zero());
    }
    let t = structure_constants(&area_preserving_symmetries()).unwrap();
    assert!(t.is_ideal(&[0, 1]) && t.is_abelian(&[0, 1]));
    let dx1 = VectorField::coordinate(&m.chart, 0);
    assert!(!is_symmetry(&dx1, &m.distribution()).unwrap().holds);
}

#[test]
fn affine_identities() {
    let m = build_affine_model(int(1)).unwrap();
    for v in &m.moves {
        assert!(v.apply_poly(&m.det).is_zero());
        for r in m.parallelism_residuals(v) {
            assert!(r.is_zero(), "{r}");
        }
    }
    for r in m.maurer_cartan_residual() {
        assert!(r.is_zero(), "{r}");
    }
    assert!(m.tau[5].substitute(&m.leaf_substitution()).unwrap().is_zero());
    let leaf = m.leaf_coframe().unwrap();
    for f in m.square_root_fields() {
        for th in &leaf[..3] {
            let v = th.apply(&f).unwrap().substitute(&m.leaf_substitution()).unwrap();
            assert!(v.is_zero(), "{v}");
        }
    }
    let report = m.verify_structure_equations(&StructureTable::default()).unwrap();
    for e in &report.equations {
        assert!(e.ideal_membership(), "eq {} ambient {}", e.index, e.ideal_residual);
        assert!(e.leaf_vanishes(), "eq {} leaf {}", e.index, e.leaf_residual);
    }
    let mut bad = StructureTable::default();
    bad.perturb(3, 4, 5, int(2));
    let r = m.verify_structure_equations(&bad).unwrap();
    assert!(!r.all_hold() && r.routes_agree());
    assert_eq!(derived_flag(&m.square_root_distribution().unwrap(), 4, 3, 3).unwrap().ranks, vec![2, 3, 5]);
}

#[test]
fn model_dumps_match_golden_files() {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    for name in MODEL_NAMES {
        let json = model_dump(name).unwrap().to_json();
        let path = dir.join(format!("{name}.json"));
        if std::env::var_os("ANTS_BLESS").is_some() {
            std::fs::create_dir_all(&dir).unwrap();
            std::fs::write(&path, &json).unwrap();
        }
        let golden = std::fs::read_to_string(&path).unwrap();
        assert_eq!(json, golden, "{name}");
    }
    assert!(model_dump("nope").is_err());
}
