//! The affine-group picture: triangles as images `h · (standard triangle)`
//! with `h = [[a, b, x], [p, q, y], [0, 0, 1]]`, the three primitive moves,
//! Maurer–Cartan forms and the `θ` coframe on the leaves `Det(h) = s`.

use super::ModelError;
use crate::algebra::{
    int, rat, wedge, AlgebraError, Chart, DifferentialForm, MultiPoly, Rational, RationalFn, VectorField,
};
use crate::distribution::Distribution;

pub type Matrix3 = [[Rational; 3]; 3];

/// Model on the chart `(a, b, p, q, x, y)` at leaf level `s`.
#[derive(Clone, Debug)]
pub struct AffineModel {
    pub chart: Chart,
    pub level: Rational,
    pub det: MultiPoly,
    /// The primitive moves `V1, V2, V3`.
    pub moves: [VectorField; 3],
    /// Maurer–Cartan forms `τ1..τ6`.
    pub tau: [DifferentialForm; 6],
    /// Lie-algebra basis `E1..E6`.
    pub basis: [Matrix3; 6],
    /// Coframe `θ1..θ5` as combinations of the `τ` forms (ambient).
    pub theta: [DifferentialForm; 5],
    /// Polynomial representatives `sθ1, sθ2, 2sθ3, sθ4, sθ5` with `s` kept
    /// as `Det(h)`.
    pub theta_poly: [DifferentialForm; 5],
    /// `theta_poly[i] = theta_scale[i] · s · θ_i` on the leaf.
    pub theta_scale: [Rational; 5],
}

/// Coefficients `c` of `dθ_i = Σ c · θ_j ∧ θ_k` (1-based `j < k`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureTable {
    pub equations: Vec<Vec<(usize, usize, Rational)>>,
}

impl Default for StructureTable {
    fn default() -> Self {
        let e = |j, k, c: i64| (j, k, int(c));
        Self {
            equations: vec![
                vec![e(1, 3, 1), e(1, 4, 1), e(1, 5, 1), e(2, 4, 1), e(3, 4, 1)],
                vec![e(1, 3, -2), e(1, 5, -1), e(2, 3, -1), e(2, 4, -1), e(2, 5, -1), e(3, 5, 1)],
                vec![e(3, 4, -4), e(3, 5, -2), e(4, 5, 3)],
                vec![e(3, 4, -2), e(4, 5, 2)],
                vec![e(3, 4, 4), e(3, 5, 2), e(4, 5, -4)],
            ],
        }
    }
}

impl StructureTable {
    /// Changes one coefficient; used as a mutation control.
    pub fn perturb(&mut self, equation: usize, j: usize, k: usize, value: Rational) {
        let row = &mut self.equations[equation - 1];
        match row.iter_mut().find(|(a, b, _)| *a == j && *b == k) {
            Some(entry) => entry.2 = value,
            None => row.push((j, k, value)),
        }
    }
}

#[derive(Clone, Debug)]
pub struct EquationResidual {
    /// 1-based equation index.
    pub index: usize,
    /// `dθ_i − RHS` on the ambient chart.
    pub ambient: DifferentialForm,
    /// `(dθ_i − RHS) ∧ τ6`.
    pub ideal_residual: DifferentialForm,
    /// `dθ_i − RHS` pulled back to the leaf through `q = (s + bp)/a`.
    pub leaf_residual: DifferentialForm,
}

impl EquationResidual {
    pub fn ideal_membership(&self) -> bool {
        self.ideal_residual.is_zero()
    }

    pub fn leaf_vanishes(&self) -> bool {
        self.leaf_residual.is_zero()
    }

    pub fn holds(&self) -> bool {
        self.ideal_membership() && self.leaf_vanishes()
    }
}

#[derive(Clone, Debug)]
pub struct CoframeReport {
    pub equations: Vec<EquationResidual>,
}

impl CoframeReport {
    pub fn all_hold(&self) -> bool {
        self.equations.iter().all(EquationResidual::holds)
    }

    /// Both certification routes give the same verdict for every equation.
    pub fn routes_agree(&self) -> bool {
        self.equations
            .iter()
            .all(|e| e.ideal_membership() == e.leaf_vanishes())
    }
}

pub fn affine_chart() -> Chart {
    Chart::new(["a", "b", "p", "q", "x", "y"]).expect("distinct names")
}

const A: usize = 0;
const B: usize = 1;
const P: usize = 2;
const Q: usize = 3;
const X: usize = 4;
const Y: usize = 5;

fn unit(i: usize, j: usize, v: i64) -> Matrix3 {
    let mut m: Matrix3 = Default::default();
    for row in m.iter_mut() {
        for e in row.iter_mut() {
            *e = int(0);
        }
    }
    m[i][j] = int(v);
    m
}

fn mat_add(a: &Matrix3, b: &Matrix3) -> Matrix3 {
    let mut m = a.clone();
    for i in 0..3 {
        for j in 0..3 {
            m[i][j] += &b[i][j];
        }
    }
    m
}

/// 1-form `Σ coef · d(var)` with polynomial coefficients.
fn form(c: &Chart, parts: &[(usize, MultiPoly)]) -> DifferentialForm {
    let mut w = DifferentialForm::zero(c, 1);
    for (i, p) in parts {
        w.add_term(vec![*i], p.clone().into());
    }
    w
}

pub fn build_affine_model(level: Rational) -> Result<AffineModel, ModelError> {
    if num_traits::Zero::is_zero(&level) {
        return Err(ModelError::InvalidParameter("leaf level s must be nonzero".into()));
    }
    let c = affine_chart();
    let v = |i| MultiPoly::var(&c, i);
    let (a, b, p, q) = (v(A), v(B), v(P), v(Q));
    let det = &(&a * &q) - &(&b * &p);
    let zero = || MultiPoly::zero(&c);

    let amb = &a - &b;
    let pmq = &p - &q;
    let v1 = VectorField::from_polys(&c, vec![-&amb, -&amb, -&pmq, -&pmq, amb.clone(), pmq.clone()])?;
    let v2 = VectorField::from_polys(&c, vec![b.clone(), zero(), q.clone(), zero(), zero(), zero()])?;
    let v3 = VectorField::from_polys(&c, vec![zero(), -&a, zero(), -&p, zero(), zero()])?;

    let over_det = |w: DifferentialForm, k: i64| -> DifferentialForm {
        let f = RationalFn::new(MultiPoly::one(&c), det.scale(&int(k))).expect("nonzero");
        w.mul_fn(&f)
    };
    let tau = [
        over_det(form(&c, &[(B, q.clone()), (Q, -&b)]), 1),
        over_det(form(&c, &[(P, a.clone()), (A, -&p)]), 1),
        over_det(form(&c, &[(A, q.clone()), (Q, -&a), (B, p.clone()), (P, -&b)]), 2),
        over_det(form(&c, &[(X, q.clone()), (Y, -&b)]), 1),
        over_det(form(&c, &[(Y, a.clone()), (X, -&p)]), 1),
        over_det(DifferentialForm::function(det.clone().into()).exterior_derivative(), 2),
    ];
    let basis = [
        unit(0, 1, 1),
        unit(1, 0, 1),
        mat_add(&unit(0, 0, 1), &unit(1, 1, -1)),
        unit(0, 2, 1),
        unit(1, 2, 1),
        mat_add(&unit(0, 0, 1), &unit(1, 1, 1)),
    ];
    let theta = [
        tau[2].sub(&tau[4]),
        tau[3].add(&tau[4]),
        tau[0].sub(&tau[1]).sub(&tau[2]),
        tau[1].scale(&int(-1)),
        tau[1].sub(&tau[0]),
    ];
    let half = |m: MultiPoly| m.scale(&rat(1, 2));
    let two = |m: &MultiPoly| m.scale(&int(2));
    let theta_poly = [
        form(
            &c,
            &[
                (X, p.clone()),
                (Y, -&a),
                (A, half(q.clone())),
                (B, half(p.clone())),
                (P, half(-&b)),
                (Q, half(-&a)),
            ],
        ),
        form(&c, &[(X, -&pmq), (Y, amb.clone())]),
        form(
            &c,
            &[
                (A, &two(&p) - &q),
                (B, &two(&q) - &p),
                (P, -&(&two(&a) - &b)),
                (Q, -&(&two(&b) - &a)),
            ],
        ),
        form(&c, &[(A, p.clone()), (P, -&a)]),
        form(&c, &[(A, -&p), (B, -&q), (P, a.clone()), (Q, b.clone())]),
    ];
    Ok(AffineModel {
        chart: c,
        level,
        det,
        moves: [v1, v2, v3],
        tau,
        basis,
        theta,
        theta_poly,
        theta_scale: [int(1), int(1), int(2), int(1), int(1)],
    })
}

impl AffineModel {
    /// Bindings for the leaf substitution `q ↦ (s + b p)/a`.
    pub fn leaf_substitution(&self) -> Vec<Option<RationalFn>> {
        let c = &self.chart;
        let num = &MultiPoly::constant(c, self.level.clone()) + &(&MultiPoly::var(c, B) * &MultiPoly::var(c, P));
        let qv = RationalFn::new(num, MultiPoly::var(c, A)).expect("a is nonzero");
        let mut bind = vec![None; 6];
        bind[Q] = Some(qv);
        bind
    }

    /// Leaf coordinates `(a, b, p, x, y)` as chart indices.
    pub fn leaf_coordinates(&self) -> [usize; 5] {
        [A, B, P, X, Y]
    }

    /// Completes `(a, b, p, x, y)` to a chart point on the leaf.
    pub fn leaf_point(&self, coords: &[Rational; 5]) -> Result<Vec<Rational>, ModelError> {
        let [a, b, p, x, y] = coords.clone();
        if num_traits::Zero::is_zero(&a) {
            return Err(AlgebraError::Pole {
                denominator: "a".into(),
            }
            .into());
        }
        let q = (&self.level + &b * &p) / &a;
        Ok(vec![a, b, p, q, x, y])
    }

    /// `V1 − V3` and `V2 − V1`.
    pub fn square_root_fields(&self) -> [VectorField; 2] {
        [self.moves[0].sub(&self.moves[2]), self.moves[1].sub(&self.moves[0])]
    }

    pub fn rank3_distribution(&self) -> Distribution {
        Distribution::new(self.moves.to_vec())
            .expect("nonempty")
            .with_singular_locus(&self.det * &MultiPoly::var(&self.chart, A))
    }

    pub fn square_root_distribution(&self) -> Result<Distribution, ModelError> {
        Ok(Distribution::new(self.square_root_fields().to_vec())?
            .with_leaf(self.det.clone(), self.level.clone())?
            .with_singular_locus(MultiPoly::var(&self.chart, A)))
    }

    /// `h⁻¹ dh − Σ τ_i E_i`, entry by entry; all zero when the Maurer–Cartan
    /// decomposition is exact.
    pub fn maurer_cartan_residual(&self) -> Vec<DifferentialForm> {
        let c = &self.chart;
        let v = |i| MultiPoly::var(c, i);
        let f = |p: MultiPoly| RationalFn::new(p, self.det.clone()).expect("nonzero");
        let zero = || RationalFn::zero(c);
        let one = || RationalFn::one(c);
        let hinv: [[RationalFn; 3]; 3] = [
            [f(v(Q)), f(-&v(B)), f(&(&v(B) * &v(Y)) - &(&v(Q) * &v(X)))],
            [f(-&v(P)), f(v(A)), f(&(&v(P) * &v(X)) - &(&v(A) * &v(Y)))],
            [zero(), zero(), one()],
        ];
        let d = |i| DifferentialForm::coordinate(c, i);
        let z = || DifferentialForm::zero(c, 1);
        let dh: [[DifferentialForm; 3]; 3] = [[d(A), d(B), d(X)], [d(P), d(Q), d(Y)], [z(), z(), z()]];
        let mut out = Vec::with_capacity(9);
        for i in 0..3 {
            for j in 0..3 {
                let mut lhs = DifferentialForm::zero(c, 1);
                for k in 0..3 {
                    lhs = lhs.add(&dh[k][j].mul_fn(&hinv[i][k]));
                }
                let mut rhs = DifferentialForm::zero(c, 1);
                for (t, e) in self.tau.iter().zip(&self.basis) {
                    if !num_traits::Zero::is_zero(&e[i][j]) {
                        rhs = rhs.add(&t.scale(&e[i][j]));
                    }
                }
                out.push(lhs.sub(&rhs));
            }
        }
        out
    }

    /// Cross products of vertex velocities with the sides they must stay
    /// parallel to, for one move. Vertices: `R1 = (x, y)`, `R2 = (a+x, p+y)`,
    /// `R3 = (b+x, q+y)`.
    pub fn parallelism_residuals(&self, m: &VectorField) -> [RationalFn; 3] {
        let c = &self.chart;
        let comp = |i: usize| m.component(i).clone();
        let v = |i| RationalFn::var(c, i);
        let r1 = (comp(X), comp(Y));
        let r2 = (&comp(A) + &comp(X), &comp(P) + &comp(Y));
        let r3 = (&comp(B) + &comp(X), &comp(Q) + &comp(Y));
        let cross = |u: &(RationalFn, RationalFn), w: (RationalFn, RationalFn)| &(&u.0 * &w.1) - &(&u.1 * &w.0);
        [
            cross(&r1, (&v(A) - &v(B), &v(P) - &v(Q))),
            cross(&r2, (v(B), v(Q))),
            cross(&r3, (-&v(A), -&v(P))),
        ]
    }

    /// Right-hand side `Σ c θ_j ∧ θ_k` of one structure equation.
    fn rhs(&self, coframe: &[DifferentialForm; 5], row: &[(usize, usize, Rational)]) -> DifferentialForm {
        let mut out = DifferentialForm::zero(&self.chart, 2);
        for (j, k, coef) in row {
            let w = wedge(&coframe[j - 1], &coframe[k - 1]).expect("shared chart");
            out = out.add(&w.scale(coef));
        }
        out
    }

    /// The coframe on the leaf: polynomial representatives divided by their
    /// constants and pulled back through `q = (s + bp)/a`.
    pub fn leaf_coframe(&self) -> Result<[DifferentialForm; 5], ModelError> {
        let bind = self.leaf_substitution();
        let mut out: Vec<DifferentialForm> = Vec::with_capacity(5);
        for (w, k) in self.theta_poly.iter().zip(&self.theta_scale) {
            let scale = (k * &self.level).recip();
            out.push(w.scale(&scale).substitute(&bind)?);
        }
        Ok(out.try_into().expect("five forms"))
    }

    /// Checks `dθ_i = Σ c θ_j ∧ θ_k` for every row of `table` in two ways:
    /// on the ambient chart modulo `τ6`, and pulled back to the leaf.
    pub fn verify_structure_equations(&self, table: &StructureTable) -> Result<CoframeReport, ModelError> {
        let leaf = self.leaf_coframe()?;
        let mut equations = Vec::with_capacity(5);
        for (i, row) in table.equations.iter().enumerate() {
            let ambient = self.theta[i].exterior_derivative().sub(&self.rhs(&self.theta, row));
            let ideal_residual = wedge(&ambient, &self.tau[5])?;
            let leaf_residual = leaf[i].exterior_derivative().sub(&self.rhs(&leaf, row));
            equations.push(EquationResidual {
                index: i + 1,
                ambient,
                ideal_residual,
                leaf_residual,
            });
        }
        Ok(CoframeReport { equations })
    }

    /// Coefficient matrix of the conformal metric in the `θ` coframe.
    pub fn metric_coefficients(&self) -> [[Rational; 5]; 5] {
        let mut m: [[Rational; 5]; 5] = Default::default();
        for row in m.iter_mut() {
            for e in row.iter_mut() {
                *e = int(0);
            }
        }
        let mut set = |i: usize, j: usize, v: Rational| {
            m[i - 1][j - 1] = v.clone();
            m[j - 1][i - 1] = v;
        };
        set(1, 1, int(27));
        set(1, 2, rat(27, 2));
        set(1, 3, int(30));
        set(1, 5, rat(45, 2));
        set(2, 2, int(27));
        set(2, 3, int(15));
        set(2, 4, rat(-45, 2));
        set(3, 3, int(10));
        m
    }

    /// The metric as a bilinear form in the leaf coordinates `(a,b,p,x,y)`
    /// evaluated at a leaf point: `Θᵀ M Θ` where `Θ[i][j] = θ_i(∂_j)`.
    pub fn coordinate_metric_at(&self, point: &[Rational]) -> Result<Vec<Vec<Rational>>, ModelError> {
        let theta = self.coframe_matrix_at(point)?;
        let m = self.metric_coefficients();
        let mut g = vec![vec![int(0); 5]; 5];
        for a in 0..5 {
            for b in 0..5 {
                let mut s = int(0);
                for i in 0..5 {
                    for j in 0..5 {
                        if !num_traits::Zero::is_zero(&m[i][j]) {
                            s += &m[i][j] * &theta[i][a] * &theta[j][b];
                        }
                    }
                }
                g[a][b] = s;
            }
        }
        Ok(g)
    }

    /// `Θ[i][j] = θ_i(∂_{leaf coordinate j})` at a leaf point.
    pub fn coframe_matrix_at(&self, point: &[Rational]) -> Result<Vec<Vec<Rational>>, ModelError> {
        let leaf = self.leaf_coframe()?;
        let cols = self.leaf_coordinates();
        let mut out = vec![vec![int(0); 5]; 5];
        for (i, w) in leaf.iter().enumerate() {
            for (j, &col) in cols.iter().enumerate() {
                out[i][j] = w.coefficient(&[col]).eval(point)?;
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_point_values() {
        let m = build_affine_model(int(1)).unwrap();
        // τ1 at a = q = 1, b = p = 0 on ∂b
        let pt = vec![int(1), int(0), int(0), int(1), int(0), int(0)];
        let db = VectorField::coordinate(&m.chart, B);
        assert_eq!(m.tau[0].apply(&db).unwrap().eval(&pt).unwrap(), int(1));
        assert!(build_affine_model(int(0)).is_err());
    }
}
