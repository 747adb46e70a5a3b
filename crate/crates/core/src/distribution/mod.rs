//! Distributions spanned by polynomial vector fields: derived flags, growth
//! vectors, integrability, first integrals, infinitesimal symmetries and
//! the Lie algebras they span.

mod flag;
mod lie;
mod span;
mod symmetry;

pub use flag::{derived_flag, growth_vector, DerivedFlag};
pub use lie::{rational_rank, signature, structure_constants, KillingSignature, LieAlgebraTable};
pub use span::{generic_rank, SpanTest};
pub use symmetry::{is_symmetry, solve_symmetries, SymmetryCheck, MAX_ANSATZ_DEGREE};

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{lie_bracket, AlgebraError, Chart, MultiPoly, Rational, RationalFn, VectorField};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DistributionError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("no nonsingular sample point after {attempts} attempts: {reason}")]
    SamplingFailed { attempts: usize, reason: String },
    #[error("pointwise rank {pointwise} exceeds generic rank {generic} at {point}")]
    RankMismatch {
        generic: usize,
        pointwise: usize,
        point: String,
    },
    #[error("ansatz degree {degree} exceeds the limit {max}")]
    AnsatzTooLarge { degree: u32, max: u32 },
    #[error("fields are linearly dependent over the rationals")]
    Dependent,
    #[error("bracket of basis fields {0} and {1} leaves the span: {2}")]
    NotClosed(usize, usize, String),
    #[error("field {0} is not polynomial")]
    NotPolynomial(usize),
    #[error("generator {index} does not annihilate the leaf constraint: {value}")]
    NotTangent { index: usize, value: String },
    #[error("empty distribution")]
    Empty,
}

/// A hypersurface `function = level`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeafConstraint {
    pub function: MultiPoly,
    pub level: Rational,
}

/// A list of generators on a chart, optionally restricted to a leaf.
#[derive(Clone, Debug)]
pub struct Distribution {
    chart: Chart,
    generators: Vec<VectorField>,
    leaf: Option<LeafConstraint>,
    singular_locus: Option<MultiPoly>,
}

impl Distribution {
    pub fn new(generators: Vec<VectorField>) -> Result<Self, DistributionError> {
        let chart = generators.first().ok_or(DistributionError::Empty)?.chart().clone();
        for g in &generators {
            chart.ensure_same(g.chart())?;
        }
        Ok(Self {
            chart,
            generators,
            leaf: None,
            singular_locus: None,
        })
    }

    /// Restricts to `function = level`; every generator must annihilate
    /// `function` exactly.
    pub fn with_leaf(mut self, function: MultiPoly, level: Rational) -> Result<Self, DistributionError> {
        self.chart.ensure_same(function.chart())?;
        for (index, g) in self.generators.iter().enumerate() {
            let v = g.apply_poly(&function);
            if !v.is_zero() {
                return Err(DistributionError::NotTangent {
                    index,
                    value: v.to_string(),
                });
            }
        }
        self.leaf = Some(LeafConstraint { function, level });
        Ok(self)
    }

    /// Points where `locus` vanishes are avoided when sampling.
    pub fn with_singular_locus(mut self, locus: MultiPoly) -> Self {
        self.singular_locus = Some(locus);
        self
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn generators(&self) -> &[VectorField] {
        &self.generators
    }

    pub fn leaf(&self) -> Option<&LeafConstraint> {
        self.leaf.as_ref()
    }

    pub fn singular_locus(&self) -> Option<&MultiPoly> {
        self.singular_locus.as_ref()
    }

    /// Dimension of the manifold carrying the distribution.
    pub fn manifold_dim(&self) -> usize {
        self.chart.dim() - usize::from(self.leaf.is_some())
    }

    pub fn span(&self) -> SpanTest {
        SpanTest::new(&self.generators)
    }

    /// A random rational point with coordinates in `[-10, 10]`, on the leaf
    /// when one is set, and off the singular locus.
    pub fn sample_point(&self, rng: &mut ChaCha8Rng) -> Result<Vec<Rational>, DistributionError> {
        const ATTEMPTS: usize = 200;
        let mut reason = String::from("no attempt made");
        for _ in 0..ATTEMPTS {
            let mut point: Vec<Rational> = (0..self.chart.dim()).map(|_| random_rational(rng)).collect();
            if let Some(leaf) = &self.leaf {
                match solve_leaf(leaf, &mut point) {
                    Ok(()) => {}
                    Err(r) => {
                        reason = r;
                        continue;
                    }
                }
                if point.iter().any(|x| num_traits::Signed::abs(x) > crate::algebra::int(10)) {
                    reason = "leaf coordinate outside [-10, 10]".into();
                    continue;
                }
            }
            if let Some(locus) = &self.singular_locus {
                if num_traits::Zero::is_zero(&locus.eval(&point)) {
                    reason = format!("point on the singular locus {}", locus);
                    continue;
                }
            }
            if let Err(e) = self.generators.iter().try_for_each(|g| g.eval(&point).map(|_| ())) {
                reason = e.to_string();
                continue;
            }
            return Ok(point);
        }
        Err(DistributionError::SamplingFailed {
            attempts: ATTEMPTS,
            reason,
        })
    }

    /// `f` is a first integral when every generator annihilates it.
    pub fn check_first_integral(&self, f: &RationalFn) -> Result<bool, DistributionError> {
        self.chart.ensure_same(f.chart())?;
        Ok(self.generators.iter().all(|g| g.apply(f).is_zero()))
    }

    /// Every pairwise bracket of generators lies in their span.
    pub fn is_integrable(&self) -> bool {
        let span = self.span();
        for (i, a) in self.generators.iter().enumerate() {
            for b in &self.generators[i + 1..] {
                let br = lie_bracket(a, b).expect("shared chart");
                if !span.contains(&br) {
                    return false;
                }
            }
        }
        true
    }
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    let d: i64 = rng.gen_range(1..=7);
    let n: i64 = rng.gen_range(-10 * d..=10 * d);
    crate::algebra::rat(n, d)
}

/// Overwrites the last variable in which the constraint is linear with the
/// value that puts `point` on the leaf.
fn solve_leaf(leaf: &LeafConstraint, point: &mut [Rational]) -> Result<(), String> {
    let f = &leaf.function;
    let chart = f.chart();
    let v = (0..chart.dim())
        .rev()
        .find(|&i| f.degree_in(i) == 1)
        .ok_or_else(|| format!("constraint {} is not linear in any variable", f))?;
    let coeffs = f.coeffs_in(v);
    let zero = MultiPoly::zero(chart);
    let lin = coeffs.get(&1).unwrap_or(&zero).eval(point);
    let rest = coeffs.get(&0).unwrap_or(&zero).eval(point);
    if num_traits::Zero::is_zero(&lin) {
        return Err(format!("coefficient of {} vanishes", chart.name(v)));
    }
    point[v] = (&leaf.level - rest) / lin;
    Ok(())
}

/// JSON record for a single distribution-level check.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CheckRecord {
    pub object: String,
    pub check: String,
    pub expected: String,
    pub computed: String,
    pub witness_points: Vec<Vec<String>>,
    pub status: String,
}

impl CheckRecord {
    pub fn new(object: &str, check: &str, expected: String, computed: String, witness_points: &[Vec<Rational>]) -> Self {
        let status = if expected == computed { "pass" } else { "fail" };
        Self {
            object: object.into(),
            check: check.into(),
            expected,
            computed,
            witness_points: witness_points
                .iter()
                .map(|p| p.iter().map(crate::algebra::fmt_rational).collect())
                .collect(),
            status: status.into(),
        }
    }
}

/// Formats a rank list as `(3,5,5)`.
pub fn fmt_ranks(ranks: &[usize]) -> String {
    format!(
        "({})",
        ranks.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
    )
}
