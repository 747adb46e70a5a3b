//! Singular extremals of the rule-A/B distributions and their reductions:
//! Hamiltonian lifts, the extremal flow on the cotangent bundle, the control
//! systems for `u`, the reduced triangle system, elliptic quadratures, the
//! symmetric-function and Fuchsian reductions, and the fixed-vertex case.

mod fuchsian;
mod lift;
mod output;
mod quadrature;
mod reduced;
mod rk4;
mod trajectory;
mod vertex;

pub use fuchsian::{
    fuchsian_matrices, fuchsian_rhs, integrate_fuchsian, symmetric_reduction_rhs, FuchsianState, SubstitutionChain,
};
pub use lift::{hamiltonian_lift, CompiledLift, CompiledPoly, HamiltonianLift};
pub use output::{trajectory_csv, RunManifest, CSV_HEADER};
pub use quadrature::{elliptic_time, gauss_kronrod, QUADRATURE_TOL};
pub use reduced::{integrate_reduced, zeta_closed_form, ReducedState, ReducedTrajectory};
pub use rk4::{rk4_step, Rk4};
pub use trajectory::{check_annihilator, DriftSummary, 
    control_rhs, initial_covector, integrate_control, integrate_extremal, integrate_lifted_control, lifted_control_rhs, ExtremalState, ExtremalTrajectory,
    MonitorTolerances,
};
pub use vertex::{fixed_vertex_trajectory, FixedVertexReport};

use thiserror::Error;

use crate::algebra::AlgebraError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ExtremalError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("initial covector is not in the annihilator: {0}")]
    NotAnnihilator(String),
    #[error("no covector in the annihilator realizes u = {0}")]
    Unreachable(String),
    #[error("division by vanishing {0}; use the fixed-vertex integrator for this branch")]
    Singular(String),
    #[error("integrand vanishes at v = {root} inside the integration range")]
    SingularIntegrand { root: f64 },
    #[error("integration interval [{from}, {to}] crosses the pole at {pole}")]
    PoleCrossing { from: f64, to: f64, pole: f64 },
    #[error("quadrature did not reach tolerance {tol} (estimate {estimate})")]
    QuadratureFailed { tol: f64, estimate: f64 },
    #[error("controls blow up near t = {t}: |u| = {magnitude:e} is no longer resolved by the step")]
    BlowUp { t: f64, magnitude: f64 },
}
