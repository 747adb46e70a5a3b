//! Exact symbolic calculus over the rationals: polynomials, rational
//! functions, vector fields, differential forms and multivector fields on a
//! named coordinate chart.

mod alternating;
mod chart;
mod field;
mod form;
pub mod linalg;
mod multivector;
mod poly;
mod rational;
mod ratfn;

pub use chart::Chart;
pub use field::{lie_bracket, VectorField};
pub use form::{wedge, DifferentialForm};
pub use multivector::{top_wedge_determinant, Multivector};
pub use poly::{Monomial, MultiPoly};
pub use ratfn::RationalFn;
pub use rational::{fmt_rational, int, parse_rational, rat, to_f64, Rational};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("charts differ: {left} vs {right}")]
    ChartMismatch { left: String, right: String },
    #[error("duplicate variable `{0}` in chart")]
    DuplicateVariable(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("singular point: denominator `{denominator}` vanishes")]
    Pole { denominator: String },
    #[error("singular substitution: denominator `{denominator}` becomes zero")]
    SingularSubstitution { denominator: String },
    #[error("division by the zero rational function")]
    DivisionByZero,
    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },
}
