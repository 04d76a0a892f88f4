//! Atom–field coupling: coupling coefficients, spontaneous-emission rates
//! into guided and radiation modes, and the Rabi frequency of a guided drive.
//!
//! With `d = d ê_q*` (a single spherical component `d_q`), the coupling to a
//! guided mode μ and a radiation mode ν are
//!
//! ```text
//! G_μ = √(ω β′ / 4πε₀ℏ) (d · e^{(μ)}) e^{i(fβz + plφ)}
//! G_ν = √(ω / 4πε₀ℏ)    (d · e^{(ν)}) e^{i(βz + lφ)}
//! ```
//!
//! and each channel's emission rate is `2π|G|²` (summed over the continuum
//! for radiation modes). The counter-rotating coefficients only enter the
//! van der Waals shifts, which are not computed here.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;

use crate::constants::{C, EPS0, HBAR};
use crate::error::{Error, Result};
use crate::fiber_modes::{guided_kinds, mode_profile, FiberSpec, GuidedMode, GuidedModeId};
use crate::fields::{dot, spherical_from_cyl, unit_dipole};
use crate::radiation_modes::{radiation_quadrature, radiation_spectrum, QuadraturePlan, RadiationMode, RadiationSpectrum};

/// Default relative tolerance of the radiation-mode quadrature.
pub const DEFAULT_TOL: f64 = 1e-6;

/// A two-level emitter with a single spherical dipole component.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AtomSpec {
    /// Transition wavelength λ₀ (m).
    pub lambda0: f64,
    /// Free-space linewidth γ₀ (rad/s).
    pub gamma0: f64,
    /// Spherical index of the dipole, −1, 0 or +1.
    pub q: i32,
    /// Cylindrical position `(r, φ, z)`.
    pub r: f64,
    pub phi: f64,
    pub z: f64,
}

impl AtomSpec {
    pub fn new(lambda0: f64, gamma0: f64, q: i32, r: f64, phi: f64, z: f64) -> Result<Self> {
        if !(lambda0 > 0.0 && lambda0.is_finite()) {
            return Err(Error::InvalidArgument(format!("wavelength must be positive, got {lambda0}")));
        }
        if !(gamma0 > 0.0 && gamma0.is_finite()) {
            return Err(Error::InvalidArgument(format!("linewidth must be positive, got {gamma0}")));
        }
        if !(-1..=1).contains(&q) {
            return Err(Error::InvalidArgument(format!("dipole index q must be -1, 0 or 1, got {q}")));
        }
        if !(r > 0.0 && r.is_finite() && phi.is_finite() && z.is_finite()) {
            return Err(Error::InvalidArgument(format!("invalid atom position ({r}, {phi}, {z})")));
        }
        Ok(Self {
            lambda0,
            gamma0,
            q,
            r,
            phi,
            z,
        })
    }

    /// Transition angular frequency `ω₀ = 2πc/λ₀`.
    pub fn omega0(&self) -> f64 {
        2.0 * PI * C / self.lambda0
    }

    pub fn at_radius(&self, r: f64) -> Self {
        Self { r, ..*self }
    }

    pub fn with_q(&self, q: i32) -> Self {
        Self { q, ..*self }
    }

    fn check_outside(&self, fiber: &FiberSpec) -> Result<()> {
        if self.r > fiber.radius {
            Ok(())
        } else {
            Err(Error::AtomInsideFiber {
                r: self.r,
                a: fiber.radius,
            })
        }
    }
}

/// Emission rate into one resonant guided channel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GuidedChannel {
    pub id: GuidedModeId,
    pub rate: f64,
}

impl GuidedChannel {
    /// Azimuthal phase order `p l` carried by a photon in this channel.
    pub fn orbital_order(&self) -> i32 {
        self.id.azimuthal_order()
    }
}

/// Spontaneous-emission rates of one atom, resolved by channel.
#[derive(Debug, Clone, PartialEq)]
pub struct EmissionBreakdown {
    /// Rates into each resonant guided mode `(N, f, p)` (rad/s).
    pub gamma_guided: Vec<GuidedChannel>,
    /// β-integrated, p-summed radiation rates per azimuthal order (rad/s).
    pub gamma_radiation: BTreeMap<i32, f64>,
    /// Total decay rate Γ (rad/s).
    pub gamma_total: f64,
    /// Azimuthal-order truncation of the radiation sum.
    pub l_cutoff: usize,
}

impl EmissionBreakdown {
    fn assemble(gamma_guided: Vec<GuidedChannel>, gamma_radiation: BTreeMap<i32, f64>, l_cutoff: usize) -> Self {
        let gamma_total = gamma_guided.iter().map(|c| c.rate).sum::<f64>() + gamma_radiation.values().sum::<f64>();
        Self {
            gamma_guided,
            gamma_radiation,
            gamma_total,
            l_cutoff,
        }
    }

    pub fn guided_total(&self) -> f64 {
        self.gamma_guided.iter().map(|c| c.rate).sum()
    }

    pub fn radiation_total(&self) -> f64 {
        self.gamma_radiation.values().sum()
    }

    /// `Σ_μ p l γ_μ` over guided channels (rad/s).
    pub fn guided_orbital_flux(&self) -> f64 {
        self.gamma_guided.iter().map(|c| c.orbital_order() as f64 * c.rate).sum()
    }

    /// `Σ_l l γ_l` over radiation orders (rad/s).
    pub fn radiation_orbital_flux(&self) -> f64 {
        self.gamma_radiation.iter().map(|(&l, &g)| l as f64 * g).sum()
    }
}

/// Dipole moment `d = √(3πε₀ℏc³γ₀/ω₀³)` giving the free-space linewidth γ₀.
pub fn dipole_magnitude(atom: &AtomSpec) -> f64 {
    let w = atom.omega0();
    (3.0 * PI * EPS0 * HBAR * C.powi(3) * atom.gamma0 / w.powi(3)).sqrt()
}

/// Dipole vector `d ê_q*` in Cartesian components (C·m).
fn dipole_vector(atom: &AtomSpec) -> [Complex64; 3] {
    let d = dipole_magnitude(atom);
    unit_dipole(atom.q).map(|c| c * d)
}

/// Guided-mode coupling coefficient `G_μ` at the atom position (rad/s^{1/2}).
pub fn coupling_guided(atom: &AtomSpec, mode: &GuidedMode) -> Complex64 {
    let w = mode.id.omega;
    let pre = (w * mode.beta_prime / (4.0 * PI * EPS0 * HBAR)).sqrt();
    let e = mode.electric_cartesian(atom.r, atom.phi, atom.z);
    pre * dot(dipole_vector(atom), e)
}

/// Radiation-mode coupling coefficient `G_ν` at the atom position.
pub fn coupling_radiation(atom: &AtomSpec, mode: &RadiationMode) -> Complex64 {
    let w = mode.id.omega;
    let pre = (w / (4.0 * PI * EPS0 * HBAR)).sqrt();
    let f = mode.fields_at(atom.r, atom.phi, atom.z);
    let e = crate::fields::cyl_to_cart(f.e, atom.phi);
    pre * dot(dipole_vector(atom), e)
}

/// Emission rate `2π|G_μ|²` into the guided mode `mode`.
pub fn gamma_guided_rate(atom: &AtomSpec, mode: &GuidedMode) -> f64 {
    // |d·e| = d |e_{-q}| depends only on r; evaluate without phases
    let e = mode.assembled_fields(atom.r).e;
    let d = dipole_magnitude(atom);
    let w = mode.id.omega;
    w * mode.beta_prime * d * d * spherical_from_cyl(e, -atom.q).norm_sqr() / (2.0 * EPS0 * HBAR)
}

/// Radiation rates per azimuthal order from a precomputed spectrum.
pub fn radiation_rates(atom: &AtomSpec, spectrum: &RadiationSpectrum, omega: f64) -> BTreeMap<i32, f64> {
    let d = dipole_magnitude(atom);
    let pre = omega * d * d / (2.0 * EPS0 * HBAR);
    spectrum.orders().map(|l| (l, pre * spectrum.get(l, -atom.q))).collect()
}

/// Radiation-mode emission rates resolved by azimuthal order l (rad/s).
pub fn gamma_radiation_rate(atom: &AtomSpec, fiber: &FiberSpec, plan: &QuadraturePlan) -> Result<BTreeMap<i32, f64>> {
    atom.check_outside(fiber)?;
    let spectrum = radiation_spectrum(fiber, plan, atom.r)?;
    Ok(radiation_rates(atom, &spectrum, plan.omega))
}

/// Every resonant guided mode at `omega`, for all `(f, p)`.
pub fn resonant_guided_modes(fiber: &FiberSpec, omega: f64) -> Result<Vec<GuidedMode>> {
    let mut out = Vec::new();
    for (kind, _) in guided_kinds(fiber, omega) {
        let ps: &[i32] = if kind.is_hybrid() { &[1, -1] } else { &[0] };
        let base = mode_profile(fiber, GuidedModeId::new(omega, kind, 1, ps[0])?)?;
        for f in [1, -1] {
            for &p in ps {
                out.push(base.with_direction(f, p)?);
            }
        }
    }
    Ok(out)
}

/// Total decay rate with its guided and radiation breakdown, using the
/// default quadrature tolerance.
pub fn total_gamma(atom: &AtomSpec, fiber: &FiberSpec) -> Result<EmissionBreakdown> {
    EmissionModel::new(fiber, atom.omega0(), DEFAULT_TOL)?.breakdown(atom)
}

/// Rabi frequency `Ω = d · 𝓔 / ℏ` of the guided drive with field amplitude
/// `amplitude` (V), including the phase `e^{i(fβz + plφ)}`.
pub fn rabi_frequency(atom: &AtomSpec, drive_mode: &GuidedMode, amplitude: f64) -> Complex64 {
    let e = drive_mode.electric_cartesian(atom.r, atom.phi, atom.z);
    dot(dipole_vector(atom), e) * (amplitude / HBAR)
}

/// Guided modes and radiation quadrature for one fiber and transition
/// frequency, reused across atom positions and dipole orientations.
#[derive(Debug, Clone)]
pub struct EmissionModel {
    pub fiber: FiberSpec,
    pub omega: f64,
    pub plan: QuadraturePlan,
    pub guided: Vec<GuidedMode>,
}

impl EmissionModel {
    pub fn new(fiber: &FiberSpec, omega: f64, tol: f64) -> Result<Self> {
        Ok(Self {
            fiber: *fiber,
            omega,
            plan: radiation_quadrature(fiber, omega, tol)?,
            guided: resonant_guided_modes(fiber, omega)?,
        })
    }

    fn check(&self, atom: &AtomSpec) -> Result<()> {
        atom.check_outside(&self.fiber)?;
        let rel = (atom.omega0() - self.omega).abs() / self.omega;
        if rel > 1e-12 {
            return Err(Error::InvalidArgument(format!(
                "atom frequency {:e} does not match the emission model frequency {:e}",
                atom.omega0(),
                self.omega
            )));
        }
        Ok(())
    }

    fn from_spectrum(&self, atom: &AtomSpec, spectrum: &RadiationSpectrum) -> EmissionBreakdown {
        let guided = self
            .guided
            .iter()
            .map(|m| GuidedChannel {
                id: m.id,
                rate: gamma_guided_rate(atom, m),
            })
            .collect();
        EmissionBreakdown::assemble(guided, radiation_rates(atom, spectrum, self.omega), spectrum.l_cutoff)
    }

    /// Emission breakdown of `atom`.
    pub fn breakdown(&self, atom: &AtomSpec) -> Result<EmissionBreakdown> {
        self.check(atom)?;
        let spectrum = radiation_spectrum(&self.fiber, &self.plan, atom.r)?;
        Ok(self.from_spectrum(atom, &spectrum))
    }

    /// Breakdowns for `q = −1, 0, +1` at the position of `atom`, sharing
    /// one radiation-mode integration.
    pub fn breakdowns_all_q(&self, atom: &AtomSpec) -> Result<[EmissionBreakdown; 3]> {
        self.check(atom)?;
        let spectrum = radiation_spectrum(&self.fiber, &self.plan, atom.r)?;
        Ok([-1, 0, 1].map(|q| self.from_spectrum(&atom.with_q(q), &spectrum)))
    }
}
