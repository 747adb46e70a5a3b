//! Exact symbolic and numerical tools for the three-ants nonholonomic
//! distributions: vector-field algebra, growth vectors and symmetries,
//! Maurer–Cartan coframes, singular extremals and the Cartan quartic.

pub mod algebra;
pub mod analysis;
pub mod distribution;
pub mod extremals;
pub mod models;
pub mod quartic_metric;
pub mod verify;
