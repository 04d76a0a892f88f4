//! Minkowski angular-momentum densities of guided light.
//!
//! For a mode with reduced fields `e`, `h` (the `f = p = +1` profiles),
//! circulation p, azimuthal order l and amplitude A:
//!
//! ```text
//! j_orb  = |A|² p { ε₀n²[l|e|² − 2Im(e_r* e_φ)] + μ₀[l|h|² − 2Im(h_r* h_φ)] } / 4ω
//! j_spin = |A|² p { ε₀n² Im(e_r* e_φ) + μ₀ Im(h_r* h_φ) } / 2ω
//! u      = |A|² { ε₀n²|e|² + μ₀|h|² } / 4
//! ```

use std::f64::consts::PI;

use crate::constants::{EPS0, MU0};
use crate::error::{Error, Result};
use crate::fiber_modes::GuidedMode;
use crate::fields::CylFields;
use crate::quadrature::{integrate_adaptive, integrate_to_infinity};

const RADIAL_TOL: f64 = 1e-12;

/// Axial angular-momentum densities (J·s/m³) and energy density (J/m³) at one radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AMDensities {
    pub j_orb: f64,
    pub j_spin: f64,
    pub j_can: f64,
    pub u: f64,
}

/// Cross-section integrals per unit length (J·s/m and J/m).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegratedAM {
    pub j_orb: f64,
    pub j_spin: f64,
    pub energy: f64,
}

impl IntegratedAM {
    /// `ℏω J_z / U` in units of ℏ.
    pub fn per_photon(&self, omega: f64) -> f64 {
        omega * (self.j_orb + self.j_spin) / self.energy
    }
}

fn densities_from(f: &CylFields, n2: f64, omega: f64, amp2: f64, p: i32, l: u32) -> AMDensities {
    let (pf, lf) = (p as f64, l as f64);
    let (e2, h2) = (f.e_norm_sqr(), f.h_norm_sqr());
    let ie = (f.e[0].conj() * f.e[1]).im;
    let ih = (f.h[0].conj() * f.h[1]).im;
    let j_orb = amp2 * pf * (EPS0 * n2 * (lf * e2 - 2.0 * ie) + MU0 * (lf * h2 - 2.0 * ih)) / (4.0 * omega);
    let j_spin = amp2 * pf * (EPS0 * n2 * ie + MU0 * ih) / (2.0 * omega);
    AMDensities {
        j_orb,
        j_spin,
        j_can: j_orb + j_spin,
        u: amp2 * (EPS0 * n2 * e2 + MU0 * h2) / 4.0,
    }
}

/// Densities at radius `r` for circulation `p` and azimuthal order `l`
/// (`l = 0` for TE and TM modes).
pub fn am_densities(mode: &GuidedMode, amplitude: f64, p: i32, l: u32, r: f64) -> AMDensities {
    let n = mode.fiber.index_at(r);
    densities_from(&mode.reduced_fields(r), n * n, mode.id.omega, amplitude * amplitude, p, l)
}

/// Canonical angular momentum per photon `ℏω j_can / u` at `r`, in units of ℏ.
pub fn photon_am(mode: &GuidedMode, amplitude: f64, p: i32, l: u32, r: f64) -> Result<f64> {
    let d = am_densities(mode, amplitude, p, l, r);
    if !(d.u > 0.0) {
        return Err(Error::DegeneratePoint(r));
    }
    Ok(mode.id.omega * d.j_can / d.u)
}

/// Orbital and spin angular momentum and energy per unit length.
pub fn integrated_am(mode: &GuidedMode, amplitude: f64, p: i32, l: u32) -> Result<IntegratedAM> {
    let a = mode.fiber.radius;
    let (_, q) = mode.transverse_wavenumbers();
    let (n1s, n2s) = (mode.fiber.n1 * mode.fiber.n1, mode.fiber.n2 * mode.fiber.n2);
    let (w, amp2) = (mode.id.omega, amplitude * amplitude);
    let mut out = [0.0; 3];
    for (k, slot) in out.iter_mut().enumerate() {
        let pick = |d: AMDensities| [d.j_orb, d.j_spin, d.u][k];
        let inner = integrate_adaptive(
            |r| pick(densities_from(&mode.core_fields(r), n1s, w, amp2, p, l)) * r,
            0.0,
            a,
            RADIAL_TOL,
        );
        let outer = integrate_to_infinity(
            |r| pick(densities_from(&mode.cladding_fields(r), n2s, w, amp2, p, l)) * r,
            a,
            1.0 / q,
            RADIAL_TOL,
        );
        if !(inner.converged && outer.converged) {
            return Err(Error::QuadratureNotConverged {
                what: "angular-momentum cross-section integral",
                achieved: inner.error + outer.error,
            });
        }
        *slot = 2.0 * PI * (inner.values[0] + outer.values[0]);
    }
    Ok(IntegratedAM {
        j_orb: out[0],
        j_spin: out[1],
        energy: out[2],
    })
}
