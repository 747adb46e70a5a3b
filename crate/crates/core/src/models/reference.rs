//! Reference models on the chart `(q1,q2,q3,p1,p2,p3)`: the flat `(3,6)`
//! distribution `λ_i = dp_i + ε_ijk q^j dq^k = 0` and its rank-2
//! restriction to the quadric `p_i q^i = 1`.

use super::ModelError;
use crate::algebra::{int, Chart, DifferentialForm, MultiPoly, VectorField};
use crate::distribution::Distribution;

pub fn flat_chart() -> Chart {
    Chart::new(["q1", "q2", "q3", "p1", "p2", "p3"]).expect("distinct names")
}

fn levi_civita(i: usize, j: usize, k: usize) -> i64 {
    match (i, j, k) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1,
        _ => 0,
    }
}

/// The three 1-forms `λ_i`.
pub fn flat_forms() -> [DifferentialForm; 3] {
    let c = flat_chart();
    let mk = |i: usize| {
        let mut w = DifferentialForm::coordinate(&c, 3 + i);
        for j in 0..3 {
            for k in 0..3 {
                let e = levi_civita(i, j, k);
                if e != 0 {
                    w.add_term(vec![k], MultiPoly::var(&c, j).scale(&int(e)).into());
                }
            }
        }
        w
    };
    [mk(0), mk(1), mk(2)]
}

/// `Q_k = ∂q_k − Σ ε_ijk q^j ∂p_i`, the annihilator of the `λ_i`.
pub fn flat_fields() -> [VectorField; 3] {
    let c = flat_chart();
    let mk = |k: usize| {
        let mut comps = vec![MultiPoly::zero(&c); 6];
        comps[k] = MultiPoly::one(&c);
        for i in 0..3 {
            for j in 0..3 {
                let e = levi_civita(i, j, k);
                if e != 0 {
                    comps[3 + i] = &comps[3 + i] - &MultiPoly::var(&c, j).scale(&int(e));
                }
            }
        }
        VectorField::from_polys(&c, comps).unwrap()
    };
    [mk(0), mk(1), mk(2)]
}

pub fn build_flat36() -> Distribution {
    Distribution::new(flat_fields().to_vec()).expect("nonempty")
}

/// `Σ p_i q^i`.
pub fn quadric_function() -> MultiPoly {
    let c = flat_chart();
    (0..3).fold(MultiPoly::zero(&c), |acc, i| {
        &acc + &(&MultiPoly::var(&c, i) * &MultiPoly::var(&c, 3 + i))
    })
}

/// `W_m = Σ ε_mkl p_k Q_l`: the part of the flat distribution tangent to
/// the quadrics `p_i q^i = const`, restricted to level 1.
pub fn build_quadric235() -> Result<Distribution, ModelError> {
    let c = flat_chart();
    let q = flat_fields();
    let mut fields = Vec::new();
    for m in 0..3 {
        let mut w = VectorField::zero(&c);
        for k in 0..3 {
            for l in 0..3 {
                let e = levi_civita(m, k, l);
                if e != 0 {
                    let pk = MultiPoly::var(&c, 3 + k).scale(&int(e));
                    w = w.add(&q[l].mul_fn(&pk.into()));
                }
            }
        }
        fields.push(w);
    }
    Ok(Distribution::new(fields)?
        .with_leaf(quadric_function(), int(1))?
        .with_singular_locus(MultiPoly::var(&c, 3)))
}
