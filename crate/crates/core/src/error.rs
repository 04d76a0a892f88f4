use thiserror::Error;

use crate::fiber_modes::ModeKind;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid fiber: {0}")]
    InvalidFiber(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("mode {kind} is not guided at V = {v:.6}")]
    NoGuidedMode { kind: ModeKind, v: f64 },
    #[error("mode {0} carries no forward power")]
    DegenerateMode(ModeKind),
    #[error("radiation-mode propagation constant {beta:e} outside (-k n2, k n2) = ±{limit:e}")]
    InvalidBeta { beta: f64, limit: f64 },
    #[error("atom at r = {r:e} m is not outside the fiber (a = {a:e} m)")]
    AtomInsideFiber { r: f64, a: f64 },
    #[error("{what} did not converge (estimated relative error {achieved:e})")]
    QuadratureNotConverged { what: &'static str, achieved: f64 },
    #[error("Bloch step too large: dt * max(Γ, |Ω|, |Δ|) = {0:.3} > 0.1")]
    StepTooLarge(f64),
    #[error("orbital/spin torque ratio undefined for q = 0")]
    UndefinedRatio,
    #[error("energy density vanishes at r = {0:e} m")]
    DegeneratePoint(f64),
}

pub type Result<T> = std::result::Result<T, Error>;
