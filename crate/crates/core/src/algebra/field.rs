//! Vector fields with rational-function components.

use std::fmt;

use super::rational::Rational;
use super::{AlgebraError, Chart, MultiPoly, RationalFn};

#[derive(Clone, PartialEq, Eq)]
pub struct VectorField {
    chart: Chart,
    components: Vec<RationalFn>,
}

impl VectorField {
    pub fn new(chart: &Chart, components: Vec<RationalFn>) -> Result<Self, AlgebraError> {
        if components.len() != chart.dim() {
            return Err(AlgebraError::ArityMismatch {
                expected: chart.dim(),
                found: components.len(),
            });
        }
        for c in &components {
            chart.ensure_same(c.chart())?;
        }
        Ok(Self {
            chart: chart.clone(),
            components,
        })
    }

    pub fn from_polys(chart: &Chart, components: Vec<MultiPoly>) -> Result<Self, AlgebraError> {
        Self::new(chart, components.into_iter().map(RationalFn::from_poly).collect())
    }

    /// Builds a field from `(variable name, coefficient)` pairs.
    pub fn from_named(chart: &Chart, parts: &[(&str, MultiPoly)]) -> Result<Self, AlgebraError> {
        let mut comps = vec![RationalFn::zero(chart); chart.dim()];
        for (name, p) in parts {
            let i = chart.require(name)?;
            chart.ensure_same(p.chart())?;
            comps[i] = &comps[i] + &RationalFn::from_poly(p.clone());
        }
        Ok(Self {
            chart: chart.clone(),
            components: comps,
        })
    }

    pub fn zero(chart: &Chart) -> Self {
        Self {
            chart: chart.clone(),
            components: vec![RationalFn::zero(chart); chart.dim()],
        }
    }

    /// The coordinate field `∂/∂x_i`.
    pub fn coordinate(chart: &Chart, i: usize) -> Self {
        let mut f = Self::zero(chart);
        f.components[i] = RationalFn::one(chart);
        f
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn components(&self) -> &[RationalFn] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &RationalFn {
        &self.components[i]
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(RationalFn::is_zero)
    }

    pub fn is_polynomial(&self) -> bool {
        self.components.iter().all(RationalFn::is_polynomial)
    }

    /// Directional derivative `X(f)`.
    pub fn apply(&self, f: &RationalFn) -> RationalFn {
        assert!(f.chart() == &self.chart, "chart mismatch in X(f)");
        let mut acc = RationalFn::zero(&self.chart);
        for (i, c) in self.components.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let d = f.derivative(i);
            if !d.is_zero() {
                acc = &acc + &(c * &d);
            }
        }
        acc
    }

    pub fn apply_poly(&self, f: &MultiPoly) -> RationalFn {
        self.apply(&RationalFn::from_poly(f.clone()))
    }

    pub fn add(&self, other: &VectorField) -> VectorField {
        assert!(self.chart == other.chart, "chart mismatch");
        VectorField {
            chart: self.chart.clone(),
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &VectorField) -> VectorField {
        self.add(&other.scale(&Rational::from_integer((-1).into())))
    }

    pub fn scale(&self, c: &Rational) -> VectorField {
        VectorField {
            chart: self.chart.clone(),
            components: self.components.iter().map(|x| x.scale(c)).collect(),
        }
    }

    pub fn mul_fn(&self, f: &RationalFn) -> VectorField {
        VectorField {
            chart: self.chart.clone(),
            components: self.components.iter().map(|x| x * f).collect(),
        }
    }

    /// `Σ c_i X_i` with rational constants.
    pub fn linear_combination(chart: &Chart, terms: &[(Rational, &VectorField)]) -> VectorField {
        terms
            .iter()
            .fold(VectorField::zero(chart), |acc, (c, x)| acc.add(&x.scale(c)))
    }

    pub fn eval(&self, point: &[Rational]) -> Result<Vec<Rational>, AlgebraError> {
        self.components.iter().map(|c| c.eval(point)).collect()
    }

    pub fn eval_f64(&self, point: &[f64]) -> Result<Vec<f64>, AlgebraError> {
        self.components.iter().map(|c| c.eval_f64(point)).collect()
    }

    /// Composition of the components with the given bindings (no chain rule;
    /// components are functions, the basis `∂/∂x_i` is kept).
    pub fn substitute(&self, values: &[Option<RationalFn>]) -> Result<VectorField, AlgebraError> {
        let components = self
            .components
            .iter()
            .map(|c| c.substitute(values))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(VectorField {
            chart: components
                .first()
                .map(|c| c.chart().clone())
                .unwrap_or_else(|| self.chart.clone()),
            components,
        })
    }

    pub fn embed(&self, target: &Chart) -> Result<VectorField, AlgebraError> {
        let mut comps = vec![RationalFn::zero(target); target.dim()];
        for (i, c) in self.components.iter().enumerate() {
            let j = target.require(self.chart.name(i))?;
            comps[j] = c.embed(target)?;
        }
        VectorField::new(target, comps)
    }
}

/// `[v, w]` with components `v(w^k) − w(v^k)`.
pub fn lie_bracket(v: &VectorField, w: &VectorField) -> Result<VectorField, AlgebraError> {
    v.chart.ensure_same(&w.chart)?;
    let components = (0..v.chart.dim())
        .map(|k| &v.apply(&w.components[k]) - &w.apply(&v.components[k]))
        .collect();
    Ok(VectorField {
        chart: v.chart.clone(),
        components,
    })
}

impl fmt::Display for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .components
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("({}) d/d{}", c, self.chart.name(i)))
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl fmt::Debug for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn affine_line_bracket() {
        let c = Chart::new(["x"]).unwrap();
        let dx = VectorField::coordinate(&c, 0);
        let xdx = VectorField::from_polys(&c, vec![MultiPoly::var(&c, 0)]).unwrap();
        assert_eq!(lie_bracket(&dx, &xdx).unwrap(), dx);
        assert_eq!(lie_bracket(&xdx, &dx).unwrap(), dx.scale(&Rational::from_integer((-1).into())));
    }

    #[test]
    fn cross_chart_bracket_is_rejected() {
        let c1 = Chart::new(["x"]).unwrap();
        let c2 = Chart::new(["y"]).unwrap();
        let e = lie_bracket(&VectorField::coordinate(&c1, 0), &VectorField::coordinate(&c2, 0));
        assert!(matches!(e, Err(AlgebraError::ChartMismatch { .. })));
    }
}
