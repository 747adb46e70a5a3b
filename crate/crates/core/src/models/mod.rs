//! Concrete distributions: the two ant rules, the affine-group model with its
//! coframe, and the flat `(3,6)` / quadric `(2,3,5)` reference models.

pub mod affine;
pub mod ants;
pub mod dump;
pub mod reference;

pub use affine::{build_affine_model, AffineModel, CoframeReport, EquationResidual, StructureTable};
pub use ants::{
    area_preserving_symmetries, build_rule_a, build_rule_b, projective_symmetries, AntModel, Rule,
};
pub use dump::{model_dump, ModelDump, MODEL_NAMES};
pub use reference::{build_flat36, build_quadric235};

use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::distribution::DistributionError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Distribution(#[from] DistributionError),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
