//! Differential forms with rational-function coefficients.

use std::fmt;

use super::alternating::Alternating;
use super::rational::Rational;
use super::{AlgebraError, Chart, MultiPoly, RationalFn, VectorField};

/// A `k`-form `Σ f_I dx_I` over strictly increasing index tuples `I`.
#[derive(Clone, PartialEq, Eq)]
pub struct DifferentialForm {
    inner: Alternating,
}

impl DifferentialForm {
    pub fn zero(chart: &Chart, degree: usize) -> Self {
        Self {
            inner: Alternating::zero(chart, degree),
        }
    }

    /// The 0-form `f`.
    pub fn function(f: RationalFn) -> Self {
        let mut inner = Alternating::zero(f.chart(), 0);
        inner.add_term(Vec::new(), f);
        Self { inner }
    }

    /// The basis 1-form `dx_i`.
    pub fn coordinate(chart: &Chart, i: usize) -> Self {
        let mut inner = Alternating::zero(chart, 1);
        inner.add_term(vec![i], RationalFn::one(chart));
        Self { inner }
    }

    /// `Σ c_i dx_i`.
    pub fn one_form(chart: &Chart, components: Vec<RationalFn>) -> Result<Self, AlgebraError> {
        if components.len() != chart.dim() {
            return Err(AlgebraError::ArityMismatch {
                expected: chart.dim(),
                found: components.len(),
            });
        }
        let mut inner = Alternating::zero(chart, 1);
        for (i, c) in components.into_iter().enumerate() {
            chart.ensure_same(c.chart())?;
            inner.add_term(vec![i], c);
        }
        Ok(Self { inner })
    }

    /// 1-form from `(variable name, polynomial coefficient)` pairs.
    pub fn from_named(chart: &Chart, parts: &[(&str, MultiPoly)]) -> Result<Self, AlgebraError> {
        let mut inner = Alternating::zero(chart, 1);
        for (name, p) in parts {
            let i = chart.require(name)?;
            chart.ensure_same(p.chart())?;
            inner.add_term(vec![i], RationalFn::from_poly(p.clone()));
        }
        Ok(Self { inner })
    }

    /// Adds `coef · dx_{idx[0]} ∧ … ∧ dx_{idx[k-1]}` (indices in any order).
    pub fn add_term(&mut self, idx: Vec<usize>, coef: RationalFn) {
        assert!(coef.chart() == &self.inner.chart, "chart mismatch");
        self.inner.add_term(idx, coef);
    }

    pub fn chart(&self) -> &Chart {
        &self.inner.chart
    }

    pub fn degree(&self) -> usize {
        self.inner.degree
    }

    pub fn is_zero(&self) -> bool {
        self.inner.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[usize], &RationalFn)> {
        self.inner.terms.iter().map(|(k, v)| (k.as_slice(), v))
    }

    pub fn coefficient(&self, idx: &[usize]) -> RationalFn {
        let mut k = idx.to_vec();
        match super::alternating::sort_with_sign(&mut k) {
            None => RationalFn::zero(self.chart()),
            Some(sign) => {
                let c = self
                    .inner
                    .terms
                    .get(&k)
                    .cloned()
                    .unwrap_or_else(|| RationalFn::zero(self.chart()));
                if sign < 0 {
                    -c
                } else {
                    c
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            inner: self.inner.add(&other.inner),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&Rational::from_integer((-1).into())))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let f = RationalFn::constant(self.chart(), c.clone());
        self.mul_fn(&f)
    }

    pub fn mul_fn(&self, f: &RationalFn) -> Self {
        Self {
            inner: self.inner.scale(f),
        }
    }

    /// Exterior derivative.
    pub fn exterior_derivative(&self) -> Self {
        let chart = self.chart().clone();
        let mut out = Alternating::zero(&chart, self.degree() + 1);
        for (idx, c) in &self.inner.terms {
            for j in 0..chart.dim() {
                if idx.contains(&j) {
                    continue;
                }
                let dc = c.derivative(j);
                if dc.is_zero() {
                    continue;
                }
                let mut k = Vec::with_capacity(idx.len() + 1);
                k.push(j);
                k.extend_from_slice(idx);
                out.add_term(k, dc);
            }
        }
        Self { inner: out }
    }

    /// Interior product `ι_X ω`, contracting the first slot.
    pub fn contract(&self, x: &VectorField) -> Result<Self, AlgebraError> {
        self.chart().ensure_same(x.chart())?;
        if self.degree() == 0 {
            return Err(AlgebraError::ArityMismatch {
                expected: 1,
                found: 0,
            });
        }
        let mut out = Alternating::zero(self.chart(), self.degree() - 1);
        for (idx, c) in &self.inner.terms {
            for (pos, &i) in idx.iter().enumerate() {
                let xi = x.component(i);
                if xi.is_zero() {
                    continue;
                }
                let mut rest = idx.clone();
                rest.remove(pos);
                let term = c * xi;
                out.add_term(rest, if pos % 2 == 1 { -term } else { term });
            }
        }
        Ok(Self { inner: out })
    }

    /// Evaluates a 1-form on a vector field: `ω(X)`.
    pub fn apply(&self, x: &VectorField) -> Result<RationalFn, AlgebraError> {
        if self.degree() != 1 {
            return Err(AlgebraError::ArityMismatch {
                expected: 1,
                found: self.degree(),
            });
        }
        let c = self.contract(x)?;
        Ok(c.coefficient(&[]))
    }

    /// Full evaluation `ω(X_1, …, X_k)`.
    pub fn evaluate_on(&self, fields: &[&VectorField]) -> Result<RationalFn, AlgebraError> {
        if fields.len() != self.degree() {
            return Err(AlgebraError::ArityMismatch {
                expected: self.degree(),
                found: fields.len(),
            });
        }
        let mut cur = self.clone();
        for x in fields {
            cur = cur.contract(x)?;
        }
        Ok(cur.coefficient(&[]))
    }

    /// Coefficients evaluated at an exact point, keyed by index tuple.
    pub fn eval(&self, point: &[Rational]) -> Result<Vec<(Vec<usize>, Rational)>, AlgebraError> {
        self.inner
            .terms
            .iter()
            .map(|(k, c)| Ok((k.clone(), c.eval(point)?)))
            .collect()
    }

    pub fn eval_f64(&self, point: &[f64]) -> Result<Vec<(Vec<usize>, f64)>, AlgebraError> {
        self.inner
            .terms
            .iter()
            .map(|(k, c)| Ok((k.clone(), c.eval_f64(point)?)))
            .collect()
    }

    /// Pullback under `x_i ↦ values[i]` (chain rule on the basis forms).
    /// Unbound variables are kept; all values live on the form's chart.
    pub fn substitute(&self, values: &[Option<RationalFn>]) -> Result<Self, AlgebraError> {
        let chart = self.chart().clone();
        if values.len() != chart.dim() {
            return Err(AlgebraError::ArityMismatch {
                expected: chart.dim(),
                found: values.len(),
            });
        }
        for v in values.iter().flatten() {
            chart.ensure_same(v.chart())?;
        }
        let images: Vec<Alternating> = (0..chart.dim())
            .map(|i| match &values[i] {
                Some(f) => DifferentialForm::function(f.clone()).exterior_derivative().inner,
                None => DifferentialForm::coordinate(&chart, i).inner,
            })
            .collect();
        let mut out = Alternating::zero(&chart, self.degree());
        for (idx, c) in &self.inner.terms {
            let mut acc = Alternating::zero(&chart, 0);
            acc.add_term(Vec::new(), c.substitute(values)?);
            for &i in idx {
                acc = acc.wedge(&images[i]);
            }
            out = out.add(&acc);
        }
        Ok(Self { inner: out })
    }
}

/// Graded-antisymmetric product.
pub fn wedge(a: &DifferentialForm, b: &DifferentialForm) -> Result<DifferentialForm, AlgebraError> {
    a.chart().ensure_same(b.chart())?;
    Ok(DifferentialForm {
        inner: a.inner.wedge(&b.inner),
    })
}

impl fmt::Display for DifferentialForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.inner.fmt_with("d"))
    }
}

impl fmt::Debug for DifferentialForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::super::rational::int;
    use super::*;

    #[test]
    fn d_of_x_dy() {
        let c = Chart::new(["x", "y"]).unwrap();
        let w = DifferentialForm::from_named(&c, &[("y", MultiPoly::var(&c, 0))]).unwrap();
        assert_eq!(w.exterior_derivative().to_string(), "(1) dx∧dy");
    }

    #[test]
    fn wedge_is_antisymmetric() {
        let c = Chart::new(["x", "y"]).unwrap();
        let dx = DifferentialForm::coordinate(&c, 0);
        let dy = DifferentialForm::coordinate(&c, 1);
        assert!(wedge(&dx, &dx).unwrap().is_zero());
        let s = wedge(&dx, &dy).unwrap().add(&wedge(&dy, &dx).unwrap());
        assert!(s.is_zero());
    }

    #[test]
    fn pullback_applies_chain_rule() {
        let c = Chart::new(["a", "b", "p", "q"]).unwrap();
        let v = |i| MultiPoly::var(&c, i);
        let det = &(&v(0) * &v(3)) - &(&v(1) * &v(2));
        let ddet = DifferentialForm::function(det.clone().into()).exterior_derivative();
        let q = RationalFn::new(&MultiPoly::one(&c) + &(&v(1) * &v(2)), v(0)).unwrap();
        let bind = vec![None, None, None, Some(q)];
        assert!(ddet.substitute(&bind).unwrap().is_zero());
        let det_on_leaf = RationalFn::from_poly(det).substitute(&bind).unwrap();
        assert_eq!(det_on_leaf, RationalFn::constant(&c, int(1)));
    }

    #[test]
    fn contraction_signs() {
        let c = Chart::new(["x", "y"]).unwrap();
        let dxdy = wedge(&DifferentialForm::coordinate(&c, 0), &DifferentialForm::coordinate(&c, 1)).unwrap();
        let ey = VectorField::coordinate(&c, 1);
        let ex = VectorField::coordinate(&c, 0);
        assert_eq!(dxdy.evaluate_on(&[&ex, &ey]).unwrap(), RationalFn::one(&c));
        assert_eq!(dxdy.contract(&ey).unwrap(), DifferentialForm::coordinate(&c, 0).scale(&int(-1)));
    }
}
