//! Binary quartics `c0 u1⁴ + c1 u1³u2 + c2 u1²u2² + c3 u1u2³ + c4 u2⁴` and
//! their real-root pattern on the projective line.

use num_traits::Zero;
use serde::Serialize;

use super::upoly::{self, UPoly};
use super::QuarticMetricError;
use crate::algebra::{fmt_rational, int, Chart, Monomial, MultiPoly, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryQuartic {
    pub coefficients: [Rational; 5],
}

impl BinaryQuartic {
    pub fn new(coefficients: [Rational; 5]) -> Self {
        Self { coefficients }
    }

    pub fn from_ints(c: [i64; 5]) -> Self {
        Self::new(c.map(int))
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.iter().all(Zero::is_zero)
    }

    pub fn eval(&self, u1: &Rational, u2: &Rational) -> Rational {
        (0..5).fold(Rational::zero(), |acc, k| {
            acc + &self.coefficients[k] * num_traits::pow(u1.clone(), 4 - k) * num_traits::pow(u2.clone(), k)
        })
    }

    /// `q(x, 1)` in ascending powers of `x = u1/u2`.
    fn dehomogenized(&self) -> UPoly {
        upoly::trim(self.coefficients.iter().rev().cloned().collect())
    }

    pub fn as_poly(&self) -> MultiPoly {
        homogenize(&self.coefficients.iter().rev().cloned().collect::<Vec<_>>(), 4)
    }
}

fn binary_chart() -> Chart {
    Chart::new(["u1", "u2"]).expect("distinct names")
}

/// `Σ a_k x^k` of degree `≤ d` as the form `Σ a_k u1^k u2^{d−k}`.
fn homogenize(p: &[Rational], d: u32) -> MultiPoly {
    let c = binary_chart();
    MultiPoly::from_terms(
        &c,
        p.iter()
            .enumerate()
            .map(|(k, a)| (Monomial(vec![k as u32, d - k as u32]), a.clone())),
    )
}

/// `c (u1² + u2² + u3²)²` on `u3 = −u1 − u2`, i.e. `4c (u1² + u1u2 + u2²)²`.
pub fn cartan_quartic(c: &Rational) -> BinaryQuartic {
    BinaryQuartic::new([4, 8, 12, 8, 4].map(|k| int(k) * c))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum QuarticTag {
    FourDistinctReal,
    TwoRealTwoComplex,
    NoReal,
    DoubleRealTwoSimpleReal,
    DoubleRealTwoComplex,
    TwoDoubleReal,
    TripleRealSimpleReal,
    QuadrupleReal,
}

impl QuarticTag {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::FourDistinctReal => "four_distinct_real",
            Self::TwoRealTwoComplex => "two_real_two_complex",
            Self::NoReal => "no_real",
            Self::DoubleRealTwoSimpleReal => "double_real_two_simple_real",
            Self::DoubleRealTwoComplex => "double_real_two_complex",
            Self::TwoDoubleReal => "two_double_real",
            Self::TripleRealSimpleReal => "triple_real_simple_real",
            Self::QuadrupleReal => "quadruple_real",
        }
    }
}

/// Root pattern with its certificate: the multiplicity of every real and
/// every complex root on the projective line (four in total).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RootType {
    pub tag: QuarticTag,
    /// Multiplicities of the distinct real roots, largest first; includes
    /// the root at infinity `u2 = 0` when present.
    pub real_multiplicities: Vec<u32>,
    /// Multiplicities of the distinct non-real roots, largest first.
    pub complex_multiplicities: Vec<u32>,
    pub infinity_multiplicity: u32,
}

impl RootType {
    pub fn real_root_count(&self) -> u32 {
        self.real_multiplicities.iter().sum()
    }

    pub fn distinct_real(&self) -> usize {
        self.real_multiplicities.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SquareFreeFactor {
    pub multiplicity: u32,
    /// Homogeneous factor in `u1, u2`.
    pub factor: String,
    pub degree: usize,
    /// Distinct real roots of the factor (Sturm count; `u2` itself counts 1).
    pub real_roots: usize,
}

/// JSON classification record.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuarticReport {
    pub coefficients: Vec<String>,
    pub square_free_factors: Vec<SquareFreeFactor>,
    /// Distinct real roots, the root at infinity included.
    pub sturm_root_count: usize,
    pub root_type: RootType,
    pub tag: String,
}

impl QuarticReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data")
    }
}

/// Exact classification: square-free decomposition of `q(x, 1)`, Sturm
/// counts per factor, and the root `u2 = 0` read off the degree drop.
pub fn classify_quartic(q: &BinaryQuartic) -> Result<QuarticReport, QuarticMetricError> {
    if q.is_zero() {
        return Err(QuarticMetricError::ZeroQuartic);
    }
    let p = q.dehomogenized();
    let infinity = 4 - upoly::degree(&p).expect("nonzero") as u32;
    let mut real = Vec::new();
    let mut complex = Vec::new();
    let mut factors = Vec::new();
    if infinity > 0 {
        real.push(infinity);
        factors.push(SquareFreeFactor {
            multiplicity: infinity,
            factor: "u2".into(),
            degree: 1,
            real_roots: 1,
        });
    }
    for (mult, f) in upoly::square_free(&p) {
        let deg = upoly::degree(&f).expect("nonconstant");
        let n_real = upoly::sturm_count(&f);
        real.extend(std::iter::repeat(mult).take(n_real));
        complex.extend(std::iter::repeat(mult).take(deg - n_real));
        factors.push(SquareFreeFactor {
            multiplicity: mult,
            factor: homogenize(&f, deg as u32).to_string(),
            degree: deg,
            real_roots: n_real,
        });
    }
    real.sort_unstable_by(|a, b| b.cmp(a));
    complex.sort_unstable_by(|a, b| b.cmp(a));
    debug_assert_eq!(real.iter().chain(&complex).sum::<u32>(), 4);
    let tag = match (real.as_slice(), complex.is_empty()) {
        ([], _) => QuarticTag::NoReal,
        ([1, 1, 1, 1], _) => QuarticTag::FourDistinctReal,
        ([1, 1], false) => QuarticTag::TwoRealTwoComplex,
        ([2, 1, 1], _) => QuarticTag::DoubleRealTwoSimpleReal,
        ([2], false) => QuarticTag::DoubleRealTwoComplex,
        ([2, 2], _) => QuarticTag::TwoDoubleReal,
        ([3, 1], _) => QuarticTag::TripleRealSimpleReal,
        ([4], _) => QuarticTag::QuadrupleReal,
        // complex roots come in conjugate pairs of equal multiplicity
        (other, _) => unreachable!("impossible real root pattern {other:?}"),
    };
    let root_type = RootType {
        tag,
        real_multiplicities: real,
        complex_multiplicities: complex,
        infinity_multiplicity: infinity,
    };
    Ok(QuarticReport {
        coefficients: q.coefficients.iter().map(fmt_rational).collect(),
        square_free_factors: factors,
        sturm_root_count: root_type.distinct_real(),
        tag: tag.as_str().into(),
        root_type,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn tag(c: [i64; 5]) -> QuarticTag {
        classify_quartic(&BinaryQuartic::from_ints(c)).unwrap().root_type.tag
    }

    #[test]
    fn examples() {
        assert_eq!(cartan_quartic(&int(1)).coefficients, [4, 8, 12, 8, 4].map(int));
        assert_eq!(cartan_quartic(&int(-1)).coefficients, [-4, -8, -12, -8, -4].map(int));
        for c in [int(1), int(-1), rat(7, 3), rat(-7, 3)] {
            let r = classify_quartic(&cartan_quartic(&c)).unwrap();
            assert_eq!(r.tag, "no_real");
            assert_eq!(r.root_type.complex_multiplicities, vec![2, 2]);
        }
        // u1⁴: the root u1 = 0 with multiplicity 4
        let r = classify_quartic(&BinaryQuartic::from_ints([1, 0, 0, 0, 0])).unwrap();
        assert_eq!(r.root_type.real_multiplicities, vec![4]);
        assert_eq!(r.root_type.infinity_multiplicity, 0);
        // u1 u2 (u1 − u2)(u1 + u2) = u1³u2 − u1u2³
        assert_eq!(tag([0, 1, 0, -1, 0]), QuarticTag::FourDistinctReal);
        assert_eq!(tag([0, 0, 0, 0, 1]), QuarticTag::QuadrupleReal);
        assert_eq!(tag([0, 1, 0, 0, 0]), QuarticTag::TripleRealSimpleReal);
        assert_eq!(tag([1, 0, 1, 0, 0]), QuarticTag::DoubleRealTwoComplex);
        assert_eq!(tag([1, 0, -1, 0, 0]), QuarticTag::DoubleRealTwoSimpleReal);
        assert_eq!(tag([1, 0, -2, 0, 1]), QuarticTag::TwoDoubleReal);
        assert_eq!(tag([1, 0, 0, 0, -1]), QuarticTag::TwoRealTwoComplex);
        assert_eq!(classify_quartic(&BinaryQuartic::from_ints([0; 5])), Err(QuarticMetricError::ZeroQuartic));
    }

    #[test]
    fn cyclic_substitution_on_the_constraint_line() {
        // (u1, u2) ↦ (u2, u3) = (u2, −u1 − u2) preserves the quartic
        let q = cartan_quartic(&int(1));
        for (a, b) in [(1, 2), (-3, 5), (7, 0)] {
            let (u1, u2) = (int(a), int(b));
            assert_eq!(q.eval(&u1, &u2), q.eval(&u2, &(-&u1 - &u2)));
        }
    }
}
