//! Axial orbital and spin torques of guided light on the atom.
//!
//! With absorption rate `R = Γρ_ee + ρ̇_ee`, drive photons of azimuthal
//! order `p_c l_c` and a dipole of spherical index q:
//!
//! ```text
//! T_drv  = (p_c l_c − q) ℏ R            Q_drv  = q ℏ R
//! T_spon = q ℏ Γ − ℏ Σ_μ p l γ_μ − ℏ Σ_l l γ_l
//! Q_spon = −q ℏ Γ
//! T_z    = T_drv + ρ_ee T_spon          Q_z    = Q_drv + ρ_ee Q_spon = q ℏ ρ̇_ee
//! ```
//!
//! The van der Waals potentials of a single-q dipole do not depend on φ,
//! so they exert no axial torque.

use crate::atom_dynamics::{rho_ee_dot, steady_state, BlochState, Drive};
use crate::constants::HBAR;
use crate::coupling::{AtomSpec, EmissionBreakdown};
use crate::error::{Error, Result};

/// Every axial torque component at one atom configuration (N·m, N).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TorqueBreakdown {
    pub t_drv: f64,
    pub q_drv: f64,
    pub t_spon: f64,
    pub q_spon: f64,
    pub t_scatt: f64,
    pub q_scatt: f64,
    pub t_total: f64,
    pub q_total: f64,
    /// Azimuthal force `T_z / r`.
    pub f_phi: f64,
    pub rho_ee: f64,
    pub rho_ee_dot: f64,
    pub gamma: f64,
}

/// Relative residuals of the angular-momentum identities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IdentityResiduals {
    /// `T_drv + Q_drv − p_c l_c ℏ R`
    pub drive_total: f64,
    /// `T_spon + Q_spon + ℏ(Σ p l γ_μ + Σ l γ_l)`
    pub spon_total: f64,
    /// `T_z − [ℏρ_ee(p_c l_c Γ − Σ p l γ_μ − Σ l γ_l) + (p_c l_c − q)ℏρ̇_ee]`
    pub orbital_total: f64,
    /// `Q_z − qℏρ̇_ee`
    pub spin_total: f64,
}

impl IdentityResiduals {
    pub fn max(&self) -> f64 {
        self.drive_total.max(self.spon_total).max(self.orbital_total).max(self.spin_total)
    }
}

/// `(p_c l_c − q) ℏ (Γρ_ee + ρ̇_ee)`.
pub fn drive_orbital_torque(lc: u32, pc: i32, q: i32, gamma: f64, rho_ee: f64, rho_ee_dot: f64) -> f64 {
    (pc * lc as i32 - q) as f64 * HBAR * (gamma * rho_ee + rho_ee_dot)
}

/// `q ℏ (Γρ_ee + ρ̇_ee)`.
pub fn drive_spin_torque(q: i32, gamma: f64, rho_ee: f64, rho_ee_dot: f64) -> f64 {
    q as f64 * HBAR * (gamma * rho_ee + rho_ee_dot)
}

/// `q ℏ Γ − ℏ Σ_μ p l γ_μ − ℏ Σ_l l γ_l`.
pub fn spon_orbital_torque(q: i32, breakdown: &EmissionBreakdown) -> f64 {
    q as f64 * HBAR * breakdown.gamma_total
        - HBAR * (breakdown.guided_orbital_flux() + breakdown.radiation_orbital_flux())
}

/// `−q ℏ Γ`.
pub fn spon_spin_torque(q: i32, gamma: f64) -> f64 {
    -(q as f64) * HBAR * gamma
}

/// Van der Waals torques `(T_vdW^e, T_vdW^g)`: zero for a dipole with a
/// single spherical component, whose potentials are independent of φ.
pub fn vdw_torques(_atom: &AtomSpec) -> (f64, f64) {
    (0.0, 0.0)
}

/// Ratio `T_drv / Q_drv = (p_c l_c − q) / q`.
pub fn torque_ratio(lc: u32, pc: i32, q: i32) -> Result<f64> {
    if q == 0 {
        return Err(Error::UndefinedRatio);
    }
    Ok((pc * lc as i32 - q) as f64 / q as f64)
}

fn assemble(pl: i32, q: i32, r: f64, gamma: f64, rho_ee: f64, rho_dot: f64, breakdown: &EmissionBreakdown) -> TorqueBreakdown {
    let qh = q as f64 * HBAR;
    let scattering = gamma * rho_ee;
    let absorption = scattering + rho_dot;
    let t_drv = (pl - q) as f64 * HBAR * absorption;
    let q_drv = qh * absorption;
    let t_spon = spon_orbital_torque(q, breakdown);
    let q_spon = -qh * gamma;
    let t_scatt = rho_ee * t_spon;
    // ρ_ee Q_spon, grouped so that the steady-state spin torque cancels exactly
    let q_scatt = -(qh * scattering);
    let t_total = t_drv + t_scatt;
    TorqueBreakdown {
        t_drv,
        q_drv,
        t_spon,
        q_spon,
        t_scatt,
        q_scatt,
        t_total,
        q_total: q_drv + q_scatt,
        f_phi: t_total / r,
        rho_ee,
        rho_ee_dot: rho_dot,
        gamma,
    }
}

/// Torques for an arbitrary internal state; `ρ̇_ee` is taken from the Bloch
/// equations at `state`.
pub fn total_torques(drive: &Drive, atom: &AtomSpec, state: &BlochState, breakdown: &EmissionBreakdown) -> TorqueBreakdown {
    let omega = drive.rabi(atom);
    let rho_dot = rho_ee_dot(state, omega, breakdown.gamma_total);
    assemble(
        drive.orbital_order(),
        atom.q,
        atom.r,
        breakdown.gamma_total,
        state.rho_ee,
        rho_dot,
        breakdown,
    )
}

/// Torques for the atom at rest in its steady state (`ρ̇_ee = 0`).
pub fn steady_state_torques(
    drive: &Drive,
    atom: &AtomSpec,
    breakdown: &EmissionBreakdown,
) -> Result<(BlochState, TorqueBreakdown)> {
    let omega = drive.rabi(atom);
    let state = steady_state(omega, drive.spec.detuning, breakdown.gamma_total)?;
    let t = assemble(
        drive.orbital_order(),
        atom.q,
        atom.r,
        breakdown.gamma_total,
        state.rho_ee,
        0.0,
        breakdown,
    );
    Ok((state, t))
}

fn relative(residual: f64, terms: &[f64]) -> f64 {
    let scale: f64 = terms.iter().map(|t| t.abs()).sum();
    if scale == 0.0 {
        residual.abs()
    } else {
        residual.abs() / scale
    }
}

impl TorqueBreakdown {
    /// Residuals of the drive, spontaneous and total identities for drive
    /// photons of order `pl` and dipole index `q`.
    pub fn identity_residuals(&self, pl: i32, q: i32, breakdown: &EmissionBreakdown) -> IdentityResiduals {
        let absorption = self.gamma * self.rho_ee + self.rho_ee_dot;
        let photon_drive = pl as f64 * HBAR * absorption;
        let flux = HBAR * (breakdown.guided_orbital_flux() + breakdown.radiation_orbital_flux());
        let orbital = HBAR * self.rho_ee * (pl as f64 * self.gamma)
            - self.rho_ee * flux
            + (pl - q) as f64 * HBAR * self.rho_ee_dot;
        let spin = q as f64 * HBAR * self.rho_ee_dot;
        IdentityResiduals {
            drive_total: relative(self.t_drv + self.q_drv - photon_drive, &[self.t_drv, self.q_drv, photon_drive]),
            spon_total: relative(self.t_spon + self.q_spon + flux, &[self.t_spon, self.q_spon, flux]),
            orbital_total: relative(self.t_total - orbital, &[self.t_drv, self.t_scatt, orbital]),
            spin_total: relative(self.q_total - spin, &[self.q_drv, self.q_scatt, spin]),
        }
    }
}
