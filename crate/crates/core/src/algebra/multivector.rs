//! Multivector fields (wedge products of vector fields).

use std::fmt;

use super::alternating::Alternating;
use super::linalg::function_det;
use super::rational::Rational;
use super::{AlgebraError, Chart, RationalFn, VectorField};

#[derive(Clone, PartialEq, Eq)]
pub struct Multivector {
    inner: Alternating,
}

impl Multivector {
    pub fn from_field(x: &VectorField) -> Self {
        let mut inner = Alternating::zero(x.chart(), 1);
        for (i, c) in x.components().iter().enumerate() {
            inner.add_term(vec![i], c.clone());
        }
        Self { inner }
    }

    /// `X_1 ∧ … ∧ X_k`.
    pub fn wedge_all(fields: &[&VectorField]) -> Result<Self, AlgebraError> {
        let (first, rest) = fields.split_first().ok_or(AlgebraError::ArityMismatch {
            expected: 1,
            found: 0,
        })?;
        let mut acc = Self::from_field(first);
        for x in rest {
            acc = acc.wedge(&Self::from_field(x))?;
        }
        Ok(acc)
    }

    pub fn wedge(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.inner.chart.ensure_same(&other.inner.chart)?;
        Ok(Self {
            inner: self.inner.wedge(&other.inner),
        })
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

    pub fn scale(&self, c: &Rational) -> Self {
        Self {
            inner: self.inner.scale(&RationalFn::constant(self.chart(), c.clone())),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self {
            inner: self
                .inner
                .add(&other.inner.scale(&RationalFn::constant(self.chart(), Rational::from_integer((-1).into())))),
        }
    }
}

impl fmt::Display for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.inner.fmt_with("∂"))
    }
}

impl fmt::Debug for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Coefficient of `∂_1 ∧ … ∧ ∂_n` in `X_1 ∧ … ∧ X_n`: the determinant of the
/// matrix whose row `i` holds the components of `X_i` in chart order.
pub fn top_wedge_determinant(fields: &[&VectorField]) -> Result<RationalFn, AlgebraError> {
    let chart = fields
        .first()
        .map(|x| x.chart().clone())
        .ok_or(AlgebraError::ArityMismatch {
            expected: 1,
            found: 0,
        })?;
    if fields.len() != chart.dim() {
        return Err(AlgebraError::ArityMismatch {
            expected: chart.dim(),
            found: fields.len(),
        });
    }
    for x in fields {
        chart.ensure_same(x.chart())?;
    }
    let rows: Vec<Vec<RationalFn>> = fields.iter().map(|x| x.components().to_vec()).collect();
    Ok(function_det(&rows))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coordinate_frame_has_unit_determinant() {
        let c = Chart::new(["x", "y", "z"]).unwrap();
        let e: Vec<VectorField> = (0..3).map(|i| VectorField::coordinate(&c, i)).collect();
        let refs: Vec<&VectorField> = e.iter().collect();
        assert_eq!(top_wedge_determinant(&refs).unwrap(), RationalFn::one(&c));
        let m = Multivector::wedge_all(&refs).unwrap();
        assert_eq!(m.to_string(), "(1) ∂x∧∂y∧∂z");
        let swapped = Multivector::wedge_all(&[&e[1], &e[0], &e[2]]).unwrap();
        assert_eq!(swapped, m.scale(&Rational::from_integer((-1).into())));
    }
}
