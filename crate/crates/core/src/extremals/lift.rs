//! Hamiltonian lifts `h_i(λ) = ⟨λ, Z_i(q)⟩` and their Poisson brackets.

use super::ExtremalError;
use crate::algebra::{lie_bracket, to_f64, Chart, MultiPoly, VectorField};

/// A polynomial with float coefficients, for fast repeated evaluation.
#[derive(Clone, Debug, Default)]
pub struct CompiledPoly {
    terms: Vec<(f64, Vec<(usize, i32)>)>,
}

impl CompiledPoly {
    pub fn new(p: &MultiPoly) -> Self {
        let terms = p
            .terms()
            .map(|(m, c)| {
                let powers = m.0.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, &e)| (i, e as i32)).collect();
                (to_f64(c), powers)
            })
            .collect();
        Self { terms }
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(c, pw)| pw.iter().fold(*c, |t, &(i, e)| t * x[i].powi(e)))
            .sum()
    }
}

/// Lift of three fields to the cotangent chart `(q, λ)`.
#[derive(Clone, Debug)]
pub struct HamiltonianLift {
    pub base: Chart,
    /// Base variables followed by `l1..ln`.
    pub chart: Chart,
    pub fields: [VectorField; 3],
    pub h: [MultiPoly; 3],
    /// `(h23, h31, h12)` computed as Poisson brackets.
    pub h_brackets: [MultiPoly; 3],
}

pub fn hamiltonian_lift(fields: &[VectorField; 3]) -> Result<HamiltonianLift, ExtremalError> {
    let base = fields[0].chart().clone();
    for f in fields {
        base.ensure_same(f.chart())?;
        if !f.is_polynomial() {
            return Err(ExtremalError::InvalidParameter("lift needs polynomial fields".into()));
        }
    }
    let n = base.dim();
    let names: Vec<String> = base.names().iter().cloned().chain((1..=n).map(|k| format!("l{k}"))).collect();
    let chart = Chart::new(names)?;
    let h: Vec<MultiPoly> = fields.iter().map(|f| pairing(&base, &chart, f)).collect::<Result<_, _>>()?;
    let h: [MultiPoly; 3] = h.try_into().expect("three");
    let h_brackets = [
        poisson(&chart, n, &h[1], &h[2]),
        poisson(&chart, n, &h[2], &h[0]),
        poisson(&chart, n, &h[0], &h[1]),
    ];
    Ok(HamiltonianLift {
        base,
        chart,
        fields: fields.clone(),
        h,
        h_brackets,
    })
}

fn pairing(base: &Chart, chart: &Chart, x: &VectorField) -> Result<MultiPoly, ExtremalError> {
    base.ensure_same(x.chart())?;
    let n = base.dim();
    let mut out = MultiPoly::zero(chart);
    for k in 0..n {
        let c = x
            .component(k)
            .as_poly()
            .ok_or_else(|| ExtremalError::InvalidParameter("non-polynomial field".into()))?
            .embed(chart)?;
        out = &out + &(&c * &MultiPoly::var(chart, n + k));
    }
    Ok(out)
}

fn poisson(chart: &Chart, n: usize, f: &MultiPoly, g: &MultiPoly) -> MultiPoly {
    let mut out = MultiPoly::zero(chart);
    for k in 0..n {
        out = &out + &(&f.derivative(n + k) * &g.derivative(k));
        out = &out - &(&f.derivative(k) * &g.derivative(n + k));
    }
    out
}

impl HamiltonianLift {
    pub fn base_dim(&self) -> usize {
        self.base.dim()
    }

    /// `⟨λ, X(q)⟩` for a polynomial field on the base chart.
    pub fn pairing(&self, x: &VectorField) -> Result<MultiPoly, ExtremalError> {
        pairing(&self.base, &self.chart, x)
    }

    /// `{f, g} = Σ_k ∂f/∂λ_k ∂g/∂q_k − ∂f/∂q_k ∂g/∂λ_k`, so that
    /// `{h_X, h_Y} = h_[X,Y]`.
    pub fn poisson(&self, f: &MultiPoly, g: &MultiPoly) -> MultiPoly {
        poisson(&self.chart, self.base_dim(), f, g)
    }

    /// `h_ij − ⟨λ, [Z_i, Z_j]⟩` for the three pairs `(2,3), (3,1), (1,2)`.
    pub fn bracket_residuals(&self) -> Result<[MultiPoly; 3], ExtremalError> {
        let pairs = [(1, 2), (2, 0), (0, 1)];
        let mut out: Vec<MultiPoly> = Vec::with_capacity(3);
        for (k, (i, j)) in pairs.into_iter().enumerate() {
            let br = lie_bracket(&self.fields[i], &self.fields[j])?;
            out.push(&self.h_brackets[k] - &self.pairing(&br)?);
        }
        Ok(out.try_into().expect("three"))
    }

    /// Along `q̇ = ∂H/∂λ, λ̇ = −∂H/∂q` with `H = Σ u_i h_i` every function
    /// obeys `ḟ = Σ_i u_i {h_i, f}`; this is the table `{h_i, h_a}` (row `a`)
    /// with `h_a` running over `(h23, h31, h12)`.
    pub fn control_derivative_table(&self) -> [[MultiPoly; 3]; 3] {
        std::array::from_fn(|a| std::array::from_fn(|i| self.poisson(&self.h[i], &self.h_brackets[a])))
    }

    pub fn compile(&self) -> CompiledLift {
        let n = self.base_dim();
        let embed = |p: &MultiPoly| CompiledPoly::new(&p.embed(&self.chart).expect("base chart embeds"));
        CompiledLift {
            n,
            z: std::array::from_fn(|i| {
                (0..n)
                    .map(|k| embed(self.fields[i].component(k).as_poly().expect("polynomial")))
                    .collect()
            }),
            dh_dq: std::array::from_fn(|i| (0..n).map(|k| CompiledPoly::new(&self.h[i].derivative(k))).collect()),
            h: std::array::from_fn(|i| CompiledPoly::new(&self.h[i])),
            h_brackets: std::array::from_fn(|i| CompiledPoly::new(&self.h_brackets[i])),
            u_dot: {
                let t = self.control_derivative_table();
                std::array::from_fn(|a| std::array::from_fn(|i| CompiledPoly::new(&t[a][i])))
            },
        }
    }
}

/// Float evaluation of a lift.
#[derive(Clone, Debug)]
pub struct CompiledLift {
    n: usize,
    z: [Vec<CompiledPoly>; 3],
    dh_dq: [Vec<CompiledPoly>; 3],
    h: [CompiledPoly; 3],
    h_brackets: [CompiledPoly; 3],
    u_dot: [[CompiledPoly; 3]; 3],
}

impl CompiledLift {
    pub fn h(&self, s: &[f64]) -> [f64; 3] {
        std::array::from_fn(|i| self.h[i].eval(s))
    }

    /// `u = (h23, h31, h12)`.
    pub fn controls(&self, s: &[f64]) -> [f64; 3] {
        std::array::from_fn(|i| self.h_brackets[i].eval(s))
    }

    /// `d/dt u` along the extremal flow, from the Poisson table.
    pub fn control_derivative(&self, s: &[f64]) -> [f64; 3] {
        let u = self.controls(s);
        std::array::from_fn(|a| (0..3).map(|i| u[i] * self.u_dot[a][i].eval(s)).sum())
    }

    /// `q̇ = Σ u_i Z_i(q)`, `λ̇ = −Σ u_i ∂h_i/∂q`.
    pub fn rhs(&self, s: &[f64]) -> Vec<f64> {
        let n = self.n;
        let u = self.controls(s);
        let mut out = vec![0.0; 2 * n];
        for i in 0..3 {
            for k in 0..n {
                out[k] += u[i] * self.z[i][k].eval(s);
                out[n + k] -= u[i] * self.dh_dq[i][k].eval(s);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::build_rule_b;

    #[test]
    fn rule_b_lift() {
        let m = build_rule_b();
        let lift = hamiltonian_lift(&m.z).unwrap();
        let n = |s: &str| MultiPoly::named(&lift.chart, s).unwrap();
        let h1 = &(&(&n("x2") - &n("x3")) * &n("l1")) + &(&(&n("y2") - &n("y3")) * &n("l2"));
        assert_eq!(lift.h[0], h1);
        for r in lift.bracket_residuals().unwrap() {
            assert!(r.is_zero());
        }
        assert!(lift.poisson(&lift.h[0], &lift.h[0]).is_zero());
    }
}
