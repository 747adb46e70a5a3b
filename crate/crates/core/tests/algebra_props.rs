//! Algebraic laws on randomized polynomial data.

use ants_core::algebra::{int, lie_bracket, wedge, Chart, DifferentialForm, Monomial, MultiPoly, Rational, RationalFn, VectorField};
use proptest::prelude::*;

fn chart() -> Chart {
    Chart::new(["x", "y", "z"]).unwrap()
}

/// Up to `terms` terms of total degree ≤ `degree`.
fn poly_of(degree: u32, terms: usize) -> impl Strategy<Value = MultiPoly> {
    let term = (0..=degree, 0..=degree, 0..=degree, -5i64..=5).prop_filter_map("degree bound", move |(a, b, c, k)| {
        (a + b + c <= degree).then(|| (Monomial(vec![a, b, c]), int(k)))
    });
    proptest::collection::vec(term, 0..=terms).prop_map(|ts| MultiPoly::from_terms(&chart(), ts))
}

fn poly() -> impl Strategy<Value = MultiPoly> {
    poly_of(3, 4)
}

fn field() -> impl Strategy<Value = VectorField> {
    proptest::collection::vec(poly(), 3).prop_map(|c| VectorField::from_polys(&chart(), c).unwrap())
}

fn form(degree: usize) -> impl Strategy<Value = DifferentialForm> {
    let idx: Vec<Vec<usize>> = match degree {
        0 => vec![vec![]],
        1 => vec![vec![0], vec![1], vec![2]],
        2 => vec![vec![0, 1], vec![0, 2], vec![1, 2]],
        _ => vec![vec![0, 1, 2]],
    };
    proptest::collection::vec(poly(), idx.len()).prop_map(move |cs| {
        let mut w = DifferentialForm::zero(&chart(), degree);
        for (i, c) in idx.iter().zip(cs) {
            w.add_term(i.clone(), c.into());
        }
        w
    })
}

fn point() -> impl Strategy<Value = Vec<Rational>> {
    proptest::collection::vec((-6i64..=6, 1i64..=4).prop_map(|(n, d)| Rational::new(n.into(), d.into())), 3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn bracket_is_antisymmetric(v in field(), w in field()) {
        let a = lie_bracket(&v, &w).unwrap();
        let b = lie_bracket(&w, &v).unwrap();
        prop_assert!(a.add(&b).is_zero());
    }

    #[test]
    fn jacobi_identity(u in field(), v in field(), w in field()) {
        let t1 = lie_bracket(&u, &lie_bracket(&v, &w).unwrap()).unwrap();
        let t2 = lie_bracket(&v, &lie_bracket(&w, &u).unwrap()).unwrap();
        let t3 = lie_bracket(&w, &lie_bracket(&u, &v).unwrap()).unwrap();
        prop_assert!(t1.add(&t2).add(&t3).is_zero());
    }

    #[test]
    fn d_squared_vanishes(w0 in form(0), w1 in form(1), w2 in form(2)) {
        for w in [w0, w1, w2] {
            prop_assert!(w.exterior_derivative().exterior_derivative().is_zero());
        }
    }

    #[test]
    fn leibniz_rule(a0 in form(0), a1 in form(1), b1 in form(1), b2 in form(2)) {
        for (a, b) in [(&a0, &b1), (&a1, &b1), (&a1, &b2), (&a0, &b2)] {
            let lhs = wedge(a, b).unwrap().exterior_derivative();
            let first = wedge(&a.exterior_derivative(), b).unwrap();
            let second = wedge(a, &b.exterior_derivative()).unwrap();
            let rhs = if a.degree() % 2 == 0 { first.add(&second) } else { first.sub(&second) };
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn evaluation_commutes_with_substitution(
        f in poly_of(2, 3), g in poly_of(2, 3),
        n0 in poly_of(1, 3), d0 in poly_of(1, 3), n1 in poly_of(2, 3),
        p in point(),
    ) {
        prop_assume!(!g.is_zero() && !d0.is_zero());
        let c = chart();
        let func = RationalFn::new(f, g).unwrap();
        let values = vec![Some(RationalFn::new(n0, d0).unwrap()), Some(n1.into()), None];
        let image: Option<Vec<Rational>> = values
            .iter()
            .enumerate()
            .map(|(i, v)| match v {
                Some(v) => v.eval(&p).ok(),
                None => Some(p[i].clone()),
            })
            .collect();
        let Some(image) = image else { return Ok(()) };
        let Ok(direct) = func.eval(&image) else { return Ok(()) };
        let substituted = func.substitute(&values).unwrap();
        // a pole cancelled by the substitution still evaluates
        if let Ok(v) = substituted.eval(&p) {
            prop_assert_eq!(v, direct);
        }
        prop_assert_eq!(substituted.chart(), &c);
    }

    #[test]
    fn canonical_forms_are_unique(f in poly(), g in poly(), r in poly()) {
        prop_assume!(!g.is_zero() && !r.is_zero());
        let plain = RationalFn::new(f.clone(), g.clone()).unwrap();
        let padded = RationalFn::new(&f * &r, &g * &r).unwrap();
        prop_assert_eq!(plain.to_string(), padded.to_string());
        prop_assert_eq!(&plain, &padded);
        let back = &(&plain + &RationalFn::from(r.clone())) - &RationalFn::from(r);
        prop_assert_eq!(back.to_string(), plain.to_string());
    }
}
