//! The two ant rules on the configuration chart `(x1,y1,x2,y2,x3,y3)`.

use serde::Serialize;

use super::ModelError;
use crate::algebra::{int, lie_bracket, Chart, DifferentialForm, MultiPoly, Rational, VectorField};
use crate::distribution::Distribution;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Rule {
    /// Each ant heads towards the next one.
    A,
    /// Each ant moves parallel to the line through the other two.
    B,
}

/// Fields, Pfaffian forms and the area polynomial of one rule.
#[derive(Clone, Debug)]
pub struct AntModel {
    pub rule: Rule,
    pub chart: Chart,
    pub z: [VectorField; 3],
    pub omega: [DifferentialForm; 3],
    /// The area polynomial `32A = Σ (y_i x_{i+1} − x_i y_{i+1})`; it vanishes
    /// exactly on collinear configurations.
    pub area32: MultiPoly,
}

pub fn ant_chart() -> Chart {
    Chart::new(["x1", "y1", "x2", "y2", "x3", "y3"]).expect("distinct names")
}

fn xi(c: &Chart, i: usize) -> MultiPoly {
    MultiPoly::var(c, 2 * (i % 3))
}

fn yi(c: &Chart, i: usize) -> MultiPoly {
    MultiPoly::var(c, 2 * (i % 3) + 1)
}

pub fn area32(c: &Chart) -> MultiPoly {
    (0..3).fold(MultiPoly::zero(c), |acc, i| {
        &acc + &(&(&yi(c, i) * &xi(c, i + 1)) - &(&xi(c, i) * &yi(c, i + 1)))
    })
}

fn build(rule: Rule) -> AntModel {
    let c = ant_chart();
    let mk = |i: usize| -> (VectorField, DifferentialForm) {
        // direction the i-th ant is allowed to move along
        let (dx, dy) = match rule {
            Rule::A => (&xi(&c, i + 1) - &xi(&c, i), &yi(&c, i + 1) - &yi(&c, i)),
            Rule::B => (&xi(&c, i + 1) - &xi(&c, i + 2), &yi(&c, i + 1) - &yi(&c, i + 2)),
        };
        let mut comps = vec![MultiPoly::zero(&c); 6];
        comps[2 * i] = dx.clone();
        comps[2 * i + 1] = dy.clone();
        let z = VectorField::from_polys(&c, comps).expect("six components");
        let mut w = DifferentialForm::zero(&c, 1);
        w.add_term(vec![2 * i], dy.into());
        w.add_term(vec![2 * i + 1], (-dx).into());
        (z, w)
    };
    let (z1, w1) = mk(0);
    let (z2, w2) = mk(1);
    let (z3, w3) = mk(2);
    AntModel {
        rule,
        area32: area32(&c),
        chart: c,
        z: [z1, z2, z3],
        omega: [w1, w2, w3],
    }
}

pub fn build_rule_a() -> AntModel {
    build(Rule::A)
}

pub fn build_rule_b() -> AntModel {
    build(Rule::B)
}

impl AntModel {
    /// `(Z12, Z23, Z31)` with `Z_{i,i+1} = [Z_i, Z_{i+1}]`.
    pub fn brackets(&self) -> [VectorField; 3] {
        let b = |i: usize, j: usize| lie_bracket(&self.z[i], &self.z[j]).expect("shared chart");
        [b(0, 1), b(1, 2), b(2, 0)]
    }

    /// Predicted bracket `Z_{i,i+1}` for rule A:
    /// `(x_{i+1} − x_{i+2}) ∂x_i + (y_{i+1} − y_{i+2}) ∂y_i`.
    pub fn rule_a_bracket_formula(&self, i: usize) -> VectorField {
        let c = &self.chart;
        let mut comps = vec![MultiPoly::zero(c); 6];
        comps[2 * i] = &xi(c, i + 1) - &xi(c, i + 2);
        comps[2 * i + 1] = &yi(c, i + 1) - &yi(c, i + 2);
        VectorField::from_polys(c, comps).unwrap()
    }

    pub fn distribution(&self) -> Distribution {
        Distribution::new(self.z.to_vec())
            .expect("nonempty")
            .with_singular_locus(self.area32.clone())
    }

    /// Sum of the three Pfaffian forms.
    pub fn omega_sum(&self) -> DifferentialForm {
        self.omega[0].add(&self.omega[1]).add(&self.omega[2])
    }

    /// `Z1 + Z2 + Z3 + σ (Z12 + Z31 + Z23)`. For rule B this vanishes for
    /// `σ = −1` under the bracket convention `[v, w] = v(w) − w(v)`.
    pub fn relation_sum(&self, sigma: &Rational) -> VectorField {
        let [z12, z23, z31] = self.brackets();
        let brackets = z12.add(&z23).add(&z31).scale(sigma);
        self.z[0].add(&self.z[1]).add(&self.z[2]).add(&brackets)
    }

    /// `span(Z1 − Z2, Z3 − Z1)` on the leaf `32A = level`.
    pub fn square_root_distribution(&self, level: Rational) -> Result<Distribution, ModelError> {
        if self.rule != Rule::B {
            return Err(ModelError::Unsupported("square root exists for rule B only".into()));
        }
        let d = Distribution::new(vec![self.z[0].sub(&self.z[1]), self.z[2].sub(&self.z[0])])?
            .with_leaf(self.area32.clone(), level)?
            .with_singular_locus(self.area32.clone());
        Ok(d)
    }
}

/// The eight fields `X1..X8` spanning the projective symmetries of rule A.
pub fn projective_symmetries() -> Vec<VectorField> {
    let c = ant_chart();
    let per_ant = |fx: &dyn Fn(&MultiPoly, &MultiPoly) -> MultiPoly, fy: &dyn Fn(&MultiPoly, &MultiPoly) -> MultiPoly| {
        let mut comps = Vec::with_capacity(6);
        for i in 0..3 {
            let (x, y) = (xi(&c, i), yi(&c, i));
            comps.push(fx(&x, &y));
            comps.push(fy(&x, &y));
        }
        VectorField::from_polys(&c, comps).unwrap()
    };
    let one = MultiPoly::one(&c);
    let zero = MultiPoly::zero(&c);
    vec![
        per_ant(&|_, _| one.clone(), &|_, _| zero.clone()),
        per_ant(&|_, _| zero.clone(), &|_, _| one.clone()),
        per_ant(&|_, y| y.clone(), &|_, _| zero.clone()),
        per_ant(&|_, _| zero.clone(), &|x, _| x.clone()),
        per_ant(&|x, _| x.clone(), &|_, _| zero.clone()),
        per_ant(&|_, _| zero.clone(), &|_, y| y.clone()),
        per_ant(&|x, y| x * y, &|_, y| y * y),
        per_ant(&|x, _| x * x, &|x, y| x * y),
    ]
}

/// `X1, X2, X3, X4, X5 − X6`: the area-preserving affine motions.
pub fn area_preserving_symmetries() -> Vec<VectorField> {
    let x = projective_symmetries();
    vec![x[0].clone(), x[1].clone(), x[2].clone(), x[3].clone(), x[4].sub(&x[5])]
}

/// Leaf level used by default for the rule-B square root.
pub fn default_area_level() -> Rational {
    int(1)
}
