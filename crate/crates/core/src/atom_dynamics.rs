//! Internal-state dynamics of the driven two-level atom.
//!
//! The optical Bloch equations used here are
//!
//! ```text
//! ρ̇_ee = −Im(Ω ρ_ge) − Γ ρ_ee
//! ρ̇_ge = (iΔ − Γ/2) ρ_ge + (iΩ*/2)(ρ_ee − ρ_gg)
//! ```
//!
//! whose fixed point is `ρ_ee = |Ω|² / (4Δ² + Γ² + 2|Ω|²)`. The detuning Δ
//! is an input; surface-induced level shifts are not computed, so Δ does
//! not vary with the atom position.

use num_complex::Complex64;

use crate::coupling::{rabi_frequency, AtomSpec};
use crate::error::{Error, Result};
use crate::fiber_modes::{mode_profile, power_amplitude, FiberSpec, GuidedMode, GuidedModeId};
use crate::fields::I;

/// Largest accepted `dt · max(Γ, |Ω|, |Δ|)` for one integration step.
pub const MAX_STEP_PRODUCT: f64 = 0.1;

/// Internal state: excited population, coherence `ρ_ge = ⟨g|ρ|e⟩` and time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochState {
    pub rho_ee: f64,
    pub rho_ge: Complex64,
    pub time: f64,
}

impl BlochState {
    pub fn ground() -> Self {
        Self {
            rho_ee: 0.0,
            rho_ge: Complex64::new(0.0, 0.0),
            time: 0.0,
        }
    }

    pub fn excited() -> Self {
        Self {
            rho_ee: 1.0,
            ..Self::ground()
        }
    }

    /// Checks `0 ≤ ρ_ee ≤ 1` and `|ρ_ge|² ≤ ρ_ee(1 − ρ_ee)` up to `slack`.
    pub fn is_physical(&self, slack: f64) -> bool {
        let p = self.rho_ee;
        p >= -slack && p <= 1.0 + slack && self.rho_ge.norm_sqr() <= p * (1.0 - p) + slack
    }
}

/// Steady-state excited population `|Ω|² / (4Δ² + Γ² + 2|Ω|²)`.
pub fn steady_state_rho_ee(omega: Complex64, delta: f64, gamma: f64) -> Result<f64> {
    check_gamma(gamma)?;
    let w2 = omega.norm_sqr();
    Ok(w2 / (4.0 * delta * delta + gamma * gamma + 2.0 * w2))
}

/// The full steady state, with the coherence that makes both derivatives vanish.
pub fn steady_state(omega: Complex64, delta: f64, gamma: f64) -> Result<BlochState> {
    let rho_ee = steady_state_rho_ee(omega, delta, gamma)?;
    let rho_ge = -(I * omega.conj() / 2.0) * (2.0 * rho_ee - 1.0) / Complex64::new(-gamma / 2.0, delta);
    Ok(BlochState {
        rho_ee,
        rho_ge,
        time: f64::INFINITY,
    })
}

fn check_gamma(gamma: f64) -> Result<()> {
    if gamma > 0.0 && gamma.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("decay rate must be positive, got {gamma}")))
    }
}

/// `ρ̇_ee = −Im(Ω ρ_ge) − Γ ρ_ee`.
pub fn rho_ee_dot(state: &BlochState, omega: Complex64, gamma: f64) -> f64 {
    -(omega * state.rho_ge).im - gamma * state.rho_ee
}

fn derivatives(rho_ee: f64, rho_ge: Complex64, omega: Complex64, delta: f64, gamma: f64) -> (f64, Complex64) {
    let d_ee = -(omega * rho_ge).im - gamma * rho_ee;
    let d_ge = Complex64::new(-gamma / 2.0, delta) * rho_ge + (I * omega.conj() / 2.0) * (2.0 * rho_ee - 1.0);
    (d_ee, d_ge)
}

/// One classical fourth-order Runge–Kutta step of length `dt`.
pub fn evolve_bloch(state: &BlochState, omega: Complex64, delta: f64, gamma: f64, dt: f64) -> Result<BlochState> {
    check_gamma(gamma)?;
    if !(dt > 0.0) {
        return Err(Error::InvalidArgument(format!("time step must be positive, got {dt}")));
    }
    let product = dt * gamma.max(omega.norm()).max(delta.abs());
    if product > MAX_STEP_PRODUCT {
        return Err(Error::StepTooLarge(product));
    }
    let f = |p: f64, c: Complex64| derivatives(p, c, omega, delta, gamma);
    let (p0, c0) = (state.rho_ee, state.rho_ge);
    let (k1p, k1c) = f(p0, c0);
    let (k2p, k2c) = f(p0 + 0.5 * dt * k1p, c0 + k1c * (0.5 * dt));
    let (k3p, k3c) = f(p0 + 0.5 * dt * k2p, c0 + k2c * (0.5 * dt));
    let (k4p, k4c) = f(p0 + dt * k3p, c0 + k3c * dt);
    Ok(BlochState {
        rho_ee: p0 + dt / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p),
        rho_ge: c0 + (k1c + k2c * 2.0 + k3c * 2.0 + k4c) * (dt / 6.0),
        time: state.time + dt,
    })
}

/// Repeated [`evolve_bloch`] steps until `duration` has elapsed; the last
/// step is shortened to land exactly on `state.time + duration`.
pub fn evolve_bloch_for(
    state: &BlochState,
    omega: Complex64,
    delta: f64,
    gamma: f64,
    dt: f64,
    duration: f64,
) -> Result<BlochState> {
    let end = state.time + duration;
    let mut s = *state;
    let steps = (duration / dt).ceil().max(0.0) as u64;
    for i in 0..steps {
        let h = if i + 1 == steps { end - s.time } else { dt };
        if h <= 0.0 {
            break;
        }
        s = evolve_bloch(&s, omega, delta, gamma, h)?;
    }
    Ok(s)
}

/// Photon-absorption rate `Γρ_ee + ρ̇_ee`.
pub fn excitation_rate(state: &BlochState, omega: Complex64, gamma: f64) -> f64 {
    gamma * state.rho_ee + rho_ee_dot(state, omega, gamma)
}

/// The classical guided drive `μ_c` with its power and detuning.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DriveSpec {
    pub mode_id: GuidedModeId,
    /// Guided power P (W).
    pub power: f64,
    /// Detuning Δ (rad/s).
    pub detuning: f64,
}

impl DriveSpec {
    pub fn new(mode_id: GuidedModeId, power: f64, detuning: f64) -> Result<Self> {
        if !(power >= 0.0 && power.is_finite()) {
            return Err(Error::InvalidArgument(format!("drive power must be non-negative, got {power}")));
        }
        if !detuning.is_finite() {
            return Err(Error::InvalidArgument("detuning must be finite".into()));
        }
        Ok(Self {
            mode_id,
            power,
            detuning,
        })
    }

    /// Solves the drive mode and its field amplitude.
    pub fn resolve(&self, fiber: &FiberSpec) -> Result<Drive> {
        let mode = mode_profile(fiber, self.mode_id)?;
        let amplitude = power_amplitude(&mode, self.power)?;
        Ok(Drive {
            spec: *self,
            mode,
            amplitude,
        })
    }
}

/// A drive with its solved mode and field amplitude `A`.
#[derive(Debug, Clone, PartialEq)]
pub struct Drive {
    pub spec: DriveSpec,
    pub mode: GuidedMode,
    pub amplitude: f64,
}

impl Drive {
    /// Rabi frequency at the atom position.
    pub fn rabi(&self, atom: &AtomSpec) -> Complex64 {
        rabi_frequency(atom, &self.mode, self.amplitude)
    }

    /// Azimuthal order `p_c l_c` of the drive photons.
    pub fn orbital_order(&self) -> i32 {
        self.spec.mode_id.azimuthal_order()
    }
}
