//! Affine-invariant planar constructions (Steiner circumellipse, the norm it
//! induces, the sub-Riemannian speed of a rule-B move) and exact root
//! classification of binary quartics.

mod ellipse;
mod metric;
mod quartic;
mod upoly;

pub use ellipse::{
    affine_image, conic_through_constraints, ellipse_norm, steiner_circumellipse, subriemannian_speed, Ellipse, Point,
    Triangle,
};
pub use metric::{metric_signature, MetricSignature};
pub use quartic::{cartan_quartic, classify_quartic, BinaryQuartic, QuarticReport, QuarticTag, RootType, SquareFreeFactor};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuarticMetricError {
    #[error("degenerate triangle (zero area)")]
    DegenerateTriangle,
    #[error("affine map is not invertible")]
    SingularMap,
    #[error("controls must sum to zero, got {0}")]
    ConstraintViolation(String),
    #[error("the zero quartic has no root type")]
    ZeroQuartic,
    #[error("bilinear form is degenerate: rank {rank} of {dim}")]
    DegenerateForm { rank: usize, dim: usize },
    #[error("bilinear form is not square and symmetric")]
    NotSymmetric,
}
