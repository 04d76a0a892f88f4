//! Guided and radiation modes of a step-index optical nanofiber, atom–field
//! coupling, spontaneous-emission rates and the axial torques exerted by
//! guided light on a two-level atom outside the fiber.
//!
//! Units are SI throughout.

pub mod angular_momentum;
pub mod atom_dynamics;
pub mod bessel;
pub mod constants;
pub mod coupling;
pub mod error;
pub mod fiber_modes;
pub mod fields;
pub mod quadrature;
pub mod radiation_modes;
pub mod roots;
pub mod torques;

pub use error::{Error, Result};
