//! Guided modes of a step-index fiber: eigenvalue equations, mode
//! classification, normalized profiles and power bookkeeping.
//!
//! Profiles use Bessel `J_l(hr)` in the core and modified Bessel `K_l(qr)`
//! in the cladding, with `h = √(k²n₁² − β²)` and `q = √(β² − k²n₂²)`.
//! The reduced mode functions are those of the `f = +1, p = +1` mode. With
//! the longitudinal electric amplitude chosen real, the six components have
//! fixed phases:
//!
//! | component | phase |
//! |-----------|-------|
//! | `e_r`     | `i`   |
//! | `e_φ`, `e_z` | `1` |
//! | `h_r`     | `1`   |
//! | `h_φ`, `h_z` | `i` |
//!
//! so every profile is stored as a real function and `e_z` sits in
//! quadrature with `e_r`. Other `(f, p)` are assembled as
//! `e = (e_r, p e_φ, f e_z)` and `h = (fp h_r, f h_φ, p h_z)`, with the
//! azimuthal phase `exp(i p l φ)`. TE and TM modes assemble with `p = +1`
//! in those rules since `l = 0`.
//!
//! Profiles are normalized so that `∫ n²(r) |e|² dA = 1` over the cross
//! section.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::bessel::{bessel_j_seq, bessel_k_scaled_seq};
use crate::constants::{C, EPS0, MU0};
use crate::error::{Error, Result};
use crate::fields::{cyl_to_cart, transverse, CylFields, Longitudinal, I};
use crate::quadrature::{integrate_adaptive, integrate_to_infinity};
use crate::roots::{bisect, bracket_sign_changes};

/// Number of grid cells in the dispersion-function bracket scan.
pub const SCAN_INTERVALS: usize = 10_000;

/// Relative frequency step of the central difference for `dβ/dω`.
pub const GROUP_SLOPE_STEP: f64 = 1e-6;

const NORM_TOL: f64 = 1e-13;

/// Step-index fiber: core radius (m) and core/cladding refractive indices.
///
/// `n1 == n2` describes a homogeneous medium (no guided modes), which is
/// accepted so the free-space limit of the radiation-mode machinery can be
/// exercised.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FiberSpec {
    pub radius: f64,
    pub n1: f64,
    pub n2: f64,
}

impl FiberSpec {
    pub fn new(radius: f64, n1: f64, n2: f64) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::InvalidFiber(format!("radius must be positive, got {radius}")));
        }
        if !(n2 >= 1.0) {
            return Err(Error::InvalidFiber(format!("cladding index must be >= 1, got {n2}")));
        }
        if !(n1 >= n2 && n1.is_finite()) {
            return Err(Error::InvalidFiber(format!(
                "core index {n1} must not be below cladding index {n2}"
            )));
        }
        Ok(Self { radius, n1, n2 })
    }

    /// Refractive index at radius `r`.
    pub fn index_at(&self, r: f64) -> f64 {
        if r < self.radius {
            self.n1
        } else {
            self.n2
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.n1 == self.n2
    }
}

/// Fiber parameter `V = k a √(n₁² − n₂²)`.
pub fn v_number(fiber: &FiberSpec, omega: f64) -> f64 {
    omega / C * fiber.radius * (fiber.n1 * fiber.n1 - fiber.n2 * fiber.n2).sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ModeFamily {
    HE,
    EH,
    TE,
    TM,
}

impl ModeFamily {
    pub fn is_hybrid(self) -> bool {
        matches!(self, ModeFamily::HE | ModeFamily::EH)
    }
}

/// Mode type `N`: family, azimuthal order `l` and radial order `m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModeKind {
    pub family: ModeFamily,
    pub l: u32,
    pub m: u32,
}

impl ModeKind {
    pub fn new(family: ModeFamily, l: u32, m: u32) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidArgument("radial order m must be >= 1".into()));
        }
        match family {
            ModeFamily::HE | ModeFamily::EH if l == 0 => Err(Error::InvalidArgument(format!(
                "{family:?} modes need l >= 1"
            ))),
            ModeFamily::TE | ModeFamily::TM if l != 0 => Err(Error::InvalidArgument(format!(
                "{family:?} modes have l = 0"
            ))),
            _ => Ok(Self { family, l, m }),
        }
    }

    pub const fn he(l: u32, m: u32) -> Self {
        Self {
            family: ModeFamily::HE,
            l,
            m,
        }
    }

    pub const fn eh(l: u32, m: u32) -> Self {
        Self {
            family: ModeFamily::EH,
            l,
            m,
        }
    }

    pub const fn te(m: u32) -> Self {
        Self {
            family: ModeFamily::TE,
            l: 0,
            m,
        }
    }

    pub const fn tm(m: u32) -> Self {
        Self {
            family: ModeFamily::TM,
            l: 0,
            m,
        }
    }

    pub fn is_hybrid(&self) -> bool {
        self.family.is_hybrid()
    }
}

impl fmt::Display for ModeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.l < 10 && self.m < 10 {
            write!(f, "{:?}{}{}", self.family, self.l, self.m)
        } else {
            write!(f, "{:?}{},{}", self.family, self.l, self.m)
        }
    }
}

impl FromStr for ModeKind {
    type Err = Error;

    /// Parses `HE21`, `te01`, or `EH12,1` style labels.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidArgument(format!("unrecognized mode label '{s}'"));
        if s.len() < 4 || !s.is_char_boundary(2) {
            return Err(bad());
        }
        let family = match s[..2].to_ascii_uppercase().as_str() {
            "HE" => ModeFamily::HE,
            "EH" => ModeFamily::EH,
            "TE" => ModeFamily::TE,
            "TM" => ModeFamily::TM,
            _ => return Err(bad()),
        };
        let rest = &s[2..];
        let (l, m) = if let Some((l, m)) = rest.split_once(',') {
            (l.parse().map_err(|_| bad())?, m.parse().map_err(|_| bad())?)
        } else if rest.len() == 2 && rest.chars().all(|c| c.is_ascii_digit()) {
            (rest[..1].parse().map_err(|_| bad())?, rest[1..].parse().map_err(|_| bad())?)
        } else {
            return Err(bad());
        };
        ModeKind::new(family, l, m)
    }
}

/// Full guided-mode label `μ = (ω, N, f, p)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GuidedModeId {
    pub omega: f64,
    pub kind: ModeKind,
    /// Propagation direction along +z (`+1`) or −z (`−1`).
    pub f: i32,
    /// Phase circulation `±1` for hybrid modes, `0` for TE/TM.
    pub p: i32,
}

impl GuidedModeId {
    pub fn new(omega: f64, kind: ModeKind, f: i32, p: i32) -> Result<Self> {
        if !(omega > 0.0) {
            return Err(Error::InvalidArgument(format!("omega must be positive, got {omega}")));
        }
        if f != 1 && f != -1 {
            return Err(Error::InvalidArgument(format!("direction f must be ±1, got {f}")));
        }
        let p_ok = if kind.is_hybrid() { p == 1 || p == -1 } else { p == 0 };
        if !p_ok {
            return Err(Error::InvalidArgument(format!("p = {p} is not allowed for {kind}")));
        }
        Ok(Self { omega, kind, f, p })
    }

    /// Azimuthal phase order `p l` of the assembled field.
    pub fn azimuthal_order(&self) -> i32 {
        self.p * self.kind.l as i32
    }
}

/// Transverse wavenumbers `(u, w) = (h a, q a)` at propagation constant `beta`.
fn uw(fiber: &FiberSpec, k: f64, beta: f64) -> (f64, f64) {
    let a = fiber.radius;
    let u = a * (k * k * fiber.n1 * fiber.n1 - beta * beta).max(0.0).sqrt();
    let w = a * (beta * beta - k * k * fiber.n2 * fiber.n2).max(0.0).sqrt();
    (u, w)
}

/// Pole-free dispersion function of `family` with azimuthal order `l`
/// (ignored for TE/TM), evaluated at `beta ∈ (k n₂, k n₁)`.
///
/// * TE: `w J₁(u) K₀(w) + u J₀(u) K₁(w)`
/// * TM: `n₁² w J₁(u) K₀(w) + n₂² u J₀(u) K₁(w)`
/// * HE/EH: `J_l'(u)/u − J_l(u) X∓`, where `X∓` are the two roots of the
///   quadratic form of the hybrid eigenvalue equation in
///   `J_l'(u)/(u J_l(u))`; the lower root gives HE modes, the upper EH.
///
/// Each form is the usual eigenvalue equation multiplied through by its
/// Bessel denominators, so sign changes only occur at genuine roots.
pub fn dispersion_function(fiber: &FiberSpec, omega: f64, family: ModeFamily, l: u32, beta: f64) -> f64 {
    let k = omega / C;
    let (u, w) = uw(fiber, k, beta);
    let (n1s, n2s) = (fiber.n1 * fiber.n1, fiber.n2 * fiber.n2);
    match family {
        ModeFamily::TE | ModeFamily::TM => {
            let j = bessel_j_seq(1, u);
            let kk = bessel_k_scaled_seq(1, w);
            let (c1, c2) = if family == ModeFamily::TE { (1.0, 1.0) } else { (n1s, n2s) };
            c1 * w * j[1] * kk[0] + c2 * u * j[0] * kk[1]
        }
        ModeFamily::HE | ModeFamily::EH => {
            let li = l as usize;
            let j = bessel_j_seq(li + 1, u);
            let kk = bessel_k_scaled_seq(li + 1, w);
            let jl = j[li];
            let jlp = j[li - 1] - (l as f64 / u) * jl;
            let kl = kk[li];
            let klp = -0.5 * (kk[li - 1] + kk[li + 1]);
            let b = klp / (w * kl);
            let lf = l as f64;
            let c = lf * beta / (k * fiber.n1) * (1.0 / (u * u) + 1.0 / (w * w));
            let d = (n1s - n2s) / (2.0 * n1s);
            let r = (d * d * b * b + c * c).sqrt();
            let center = -(n1s + n2s) / (2.0 * n1s) * b;
            let x = if family == ModeFamily::HE { center - r } else { center + r };
            jlp / u - jl * x
        }
    }
}

/// All roots of the dispersion function for `(family, l)` in `(k n₂, k n₁)`,
/// ordered from the highest β down (radial order m = 1, 2, ...).
pub fn dispersion_roots(fiber: &FiberSpec, omega: f64, family: ModeFamily, l: u32) -> Vec<f64> {
    if fiber.is_homogeneous() {
        return Vec::new();
    }
    let k = omega / C;
    let (lo, hi) = (k * fiber.n2, k * fiber.n1);
    let f = |b: f64| dispersion_function(fiber, omega, family, l, b);
    let mut roots: Vec<f64> = bracket_sign_changes(f, lo, hi, SCAN_INTERVALS)
        .into_iter()
        .map(|(a, b)| bisect(f, a, b))
        .collect();
    roots.reverse();
    roots
}

/// Propagation constant of the guided mode `kind` at `omega`.
pub fn solve_eigenvalue(fiber: &FiberSpec, omega: f64, kind: ModeKind) -> Result<f64> {
    if !(omega > 0.0) {
        return Err(Error::InvalidArgument(format!("omega must be positive, got {omega}")));
    }
    let roots = dispersion_roots(fiber, omega, kind.family, kind.l);
    roots
        .get(kind.m as usize - 1)
        .copied()
        .ok_or(Error::NoGuidedMode {
            kind,
            v: v_number(fiber, omega),
        })
}

/// Every guided mode type at `omega`, ordered by decreasing β.
pub fn guided_kinds(fiber: &FiberSpec, omega: f64) -> Vec<(ModeKind, f64)> {
    let mut out = Vec::new();
    for (m, b) in dispersion_roots(fiber, omega, ModeFamily::TE, 0).into_iter().enumerate() {
        out.push((ModeKind::te(m as u32 + 1), b));
    }
    for (m, b) in dispersion_roots(fiber, omega, ModeFamily::TM, 0).into_iter().enumerate() {
        out.push((ModeKind::tm(m as u32 + 1), b));
    }
    let mut l = 1;
    loop {
        let he = dispersion_roots(fiber, omega, ModeFamily::HE, l);
        let eh = dispersion_roots(fiber, omega, ModeFamily::EH, l);
        if he.is_empty() && eh.is_empty() {
            break;
        }
        for (m, b) in he.into_iter().enumerate() {
            out.push((ModeKind::he(l, m as u32 + 1), b));
        }
        for (m, b) in eh.into_iter().enumerate() {
            out.push((ModeKind::eh(l, m as u32 + 1), b));
        }
        l += 1;
    }
    out.sort_by(|a, b| b.1.total_cmp(&a.1));
    out
}

/// Cutoff value of `V` below which `kind` is not guided.
///
/// * TE₀ₘ, TM₀ₘ: m-th zero of `J₀`
/// * HE₁ₘ: 0 for m = 1, otherwise the (m−1)-th positive zero of `J₁`
/// * EHₗₘ: m-th positive zero of `J_l`
/// * HEₗₘ, l ≥ 2: m-th positive root of
///   `(n₁²/n₂² + 1) J_{l−1}(V) = V J_l(V) / (l − 1)`
pub fn cutoff_v(fiber: &FiberSpec, kind: ModeKind) -> f64 {
    let l = kind.l as usize;
    let m = kind.m as usize;
    let ratio = fiber.n1 * fiber.n1 / (fiber.n2 * fiber.n2);
    let nth_root = |g: &dyn Fn(f64) -> f64, n: usize| -> f64 {
        let br = bracket_sign_changes(g, 1e-6, 200.0, 200_000);
        let (a, b) = br[n - 1];
        bisect(g, a, b)
    };
    match kind.family {
        ModeFamily::TE | ModeFamily::TM => nth_root(&|v| bessel_j_seq(0, v)[0], m),
        ModeFamily::HE if l == 1 => {
            if m == 1 {
                0.0
            } else {
                nth_root(&|v| bessel_j_seq(1, v)[1], m - 1)
            }
        }
        ModeFamily::EH => nth_root(&|v| bessel_j_seq(l, v)[l], m),
        ModeFamily::HE => nth_root(
            &|v| {
                let j = bessel_j_seq(l, v);
                (ratio + 1.0) * j[l - 1] - v * j[l] / (l as f64 - 1.0)
            },
            m,
        ),
    }
}

/// `dβ/dω` by central difference with relative step `rel_step` in ω.
pub fn group_slope_with_step(fiber: &FiberSpec, omega: f64, kind: ModeKind, rel_step: f64) -> Result<f64> {
    let dw = omega * rel_step;
    let bp = solve_eigenvalue(fiber, omega + dw, kind)?;
    let bm = solve_eigenvalue(fiber, omega - dw, kind)?;
    Ok((bp - bm) / (2.0 * dw))
}

/// `dβ/dω` with the default relative step [`GROUP_SLOPE_STEP`].
pub fn group_slope(fiber: &FiberSpec, omega: f64, kind: ModeKind) -> Result<f64> {
    group_slope_with_step(fiber, omega, kind, GROUP_SLOPE_STEP)
}

/// A solved, normalized guided mode.
#[derive(Debug, Clone, PartialEq)]
pub struct GuidedMode {
    pub id: GuidedModeId,
    pub fiber: FiberSpec,
    /// Propagation constant β (rad/m).
    pub beta: f64,
    /// Group slope dβ/dω (s/m).
    pub beta_prime: f64,
    h: f64,
    q: f64,
    /// `E_z` amplitude in the core (real).
    ez_amp: f64,
    /// `H_z` amplitude in the core (complex, purely imaginary).
    hz_amp: Complex64,
    /// `J_l(ha) / K_l(qa)`, joining core and cladding longitudinal fields.
    join: f64,
}

/// The six real reduced profile functions at one radius, following the
/// phase table in the module docs: `e_r = i·e_r`, `h_φ = i·h_phi`, `h_z = i·h_z`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedProfiles {
    pub e_r: f64,
    pub e_phi: f64,
    pub e_z: f64,
    pub h_r: f64,
    pub h_phi: f64,
    pub h_z: f64,
}

/// Solves and normalizes the guided mode `id`.
pub fn mode_profile(fiber: &FiberSpec, id: GuidedModeId) -> Result<GuidedMode> {
    let beta = solve_eigenvalue(fiber, id.omega, id.kind)?;
    let beta_prime = group_slope(fiber, id.omega, id.kind)?;
    let k = id.omega / C;
    let a = fiber.radius;
    let (u, w) = uw(fiber, k, beta);
    let (h, q) = (u / a, w / a);
    let l = id.kind.l as usize;
    let j = bessel_j_seq(l + 1, u);
    let kk = bessel_k_scaled_seq(l + 1, w);
    // scaled K values: the e^w factors cancel in every ratio below
    let join_scaled = j[l] / kk[l];

    let (ez_amp, hz_amp) = match id.kind.family {
        ModeFamily::TE => (0.0, -I),
        ModeFamily::TM => (1.0, Complex64::new(0.0, 0.0)),
        ModeFamily::HE | ModeFamily::EH => {
            let lf = l as f64;
            let jlp = j[l - 1] - (lf / u) * j[l];
            let klp = -0.5 * (kk[l - 1] + kk[l + 1]);
            let s = lf * (1.0 / (u * u) + 1.0 / (w * w)) / (jlp / (u * j[l]) + klp / (w * kk[l]));
            (1.0, I * beta * s / (id.omega * MU0))
        }
    };

    let mut mode = GuidedMode {
        id,
        fiber: *fiber,
        beta,
        beta_prime,
        h,
        q,
        ez_amp,
        hz_amp,
        // K_l(q r) is evaluated scaled as e^{-(qr - qa)} K̃_l(qr); see `cladding_fields`
        join: join_scaled,
    };
    let norm = mode.normalization_integral()?;
    let s = 1.0 / norm.sqrt();
    mode.ez_amp *= s;
    mode.hz_amp *= s;
    Ok(mode)
}

impl GuidedMode {
    pub fn kind(&self) -> ModeKind {
        self.id.kind
    }

    /// Transverse wavenumbers `(h, q)` in core and cladding (1/m).
    pub fn transverse_wavenumbers(&self) -> (f64, f64) {
        (self.h, self.q)
    }

    /// Same mode type with a different direction and circulation.
    pub fn with_direction(&self, f: i32, p: i32) -> Result<GuidedMode> {
        let id = GuidedModeId::new(self.id.omega, self.id.kind, f, p)?;
        Ok(GuidedMode { id, ..self.clone() })
    }

    /// Core-region analytic fields (f = p = +1) evaluated at any `r >= 0`.
    pub fn core_fields(&self, r: f64) -> CylFields {
        let l = self.id.kind.l as usize;
        let x = self.h * r;
        let j = bessel_j_seq(l + 1, x);
        let jm1 = if l == 0 { -j[1] } else { j[l - 1] };
        let jl = j[l];
        let djl = 0.5 * (jm1 - j[l + 1]);
        let ljr = 0.5 * (jm1 + j[l + 1]);
        let h = self.h;
        let ez = Complex64::new(self.ez_amp, 0.0);
        let lg = Longitudinal {
            ez: ez * jl,
            dez: ez * h * djl,
            lez_r: ez * h * ljr,
            hz: self.hz_amp * jl,
            dhz: self.hz_amp * h * djl,
            lhz_r: self.hz_amp * h * ljr,
        };
        let k = self.id.omega / C;
        let n = self.fiber.n1;
        transverse(self.id.omega, self.beta, n, k * k * n * n - self.beta * self.beta, &lg)
    }

    /// Cladding-region analytic fields (f = p = +1) evaluated at any `r > 0`.
    pub fn cladding_fields(&self, r: f64) -> CylFields {
        let l = self.id.kind.l as usize;
        let x = self.q * r;
        let kk = bessel_k_scaled_seq(l + 1, x);
        let decay = (-(x - self.q * self.fiber.radius)).exp();
        let km1 = if l == 0 { kk[1] } else { kk[l - 1] };
        let kl = kk[l] * decay;
        let dkl = -0.5 * (km1 + kk[l + 1]) * decay;
        let lkr = 0.5 * (kk[l + 1] - km1) * decay;
        let q = self.q;
        let ez = Complex64::new(self.ez_amp * self.join, 0.0);
        let hz = self.hz_amp * self.join;
        let lg = Longitudinal {
            ez: ez * kl,
            dez: ez * q * dkl,
            lez_r: ez * q * lkr,
            hz: hz * kl,
            dhz: hz * q * dkl,
            lhz_r: hz * q * lkr,
        };
        let k = self.id.omega / C;
        let n = self.fiber.n2;
        transverse(self.id.omega, self.beta, n, k * k * n * n - self.beta * self.beta, &lg)
    }

    /// Reduced complex fields of the `f = p = +1` mode at radius `r`.
    pub fn reduced_fields(&self, r: f64) -> CylFields {
        if r < self.fiber.radius {
            self.core_fields(r)
        } else {
            self.cladding_fields(r)
        }
    }

    /// The six real profile functions at `r`.
    pub fn profiles(&self, r: f64) -> ReducedProfiles {
        let f = self.reduced_fields(r);
        ReducedProfiles {
            e_r: f.e[0].im,
            e_phi: f.e[1].re,
            e_z: f.e[2].re,
            h_r: f.h[0].re,
            h_phi: f.h[1].im,
            h_z: f.h[2].im,
        }
    }

    /// Fields assembled for this mode's `(f, p)`, without the
    /// `exp(i(fβz + plφ))` phase.
    pub fn assembled_fields(&self, r: f64) -> CylFields {
        assemble(self.reduced_fields(r), self.id.f, self.id.p)
    }

    /// Complex fields at `(r, φ, z)` including the propagation phase.
    pub fn fields_at(&self, r: f64, phi: f64, z: f64) -> CylFields {
        let phase = Complex64::from_polar(
            1.0,
            self.id.f as f64 * self.beta * z + self.id.azimuthal_order() as f64 * phi,
        );
        self.assembled_fields(r).scale(phase)
    }

    /// Cartesian electric field at `(r, φ, z)`.
    pub fn electric_cartesian(&self, r: f64, phi: f64, z: f64) -> [Complex64; 3] {
        cyl_to_cart(self.fields_at(r, phi, z).e, phi)
    }

    /// `∫ n² |e|² dA` of the current profile.
    pub fn normalization_integral(&self) -> Result<f64> {
        let a = self.fiber.radius;
        let (n1s, n2s) = (self.fiber.n1 * self.fiber.n1, self.fiber.n2 * self.fiber.n2);
        let inner = integrate_adaptive(|r| n1s * self.core_fields(r).e_norm_sqr() * r, 0.0, a, NORM_TOL);
        let outer = integrate_to_infinity(
            |r| n2s * self.cladding_fields(r).e_norm_sqr() * r,
            a,
            1.0 / self.q,
            NORM_TOL,
        );
        if !(inner.converged && outer.converged) {
            return Err(Error::QuadratureNotConverged {
                what: "guided-mode normalization",
                achieved: (inner.error + outer.error) / (inner.values[0] + outer.values[0]),
            });
        }
        Ok(2.0 * std::f64::consts::PI * (inner.values[0] + outer.values[0]))
    }

    /// Axial power `P₁ = ½ ∫ Re(e × h*)_z dA` of the forward unit-normalized mode.
    pub fn axial_power(&self) -> Result<f64> {
        self.cross_section_integral("axial Poynting flux", |f| 0.5 * f.axial_poynting())
    }

    /// Energy per unit length `U₁ = ∫ (ε₀n²|e|² + μ₀|h|²)/4 dA` of the unit-normalized mode.
    pub fn energy_per_length(&self) -> Result<f64> {
        let a = self.fiber.radius;
        let (n1s, n2s) = (self.fiber.n1 * self.fiber.n1, self.fiber.n2 * self.fiber.n2);
        let dens = |f: &CylFields, ns: f64| 0.25 * (EPS0 * ns * f.e_norm_sqr() + MU0 * f.h_norm_sqr());
        let inner = integrate_adaptive(|r| dens(&self.core_fields(r), n1s) * r, 0.0, a, NORM_TOL);
        let outer = integrate_to_infinity(|r| dens(&self.cladding_fields(r), n2s) * r, a, 1.0 / self.q, NORM_TOL);
        Ok(2.0 * std::f64::consts::PI * (inner.values[0] + outer.values[0]))
    }

    fn cross_section_integral<F>(&self, what: &'static str, g: F) -> Result<f64>
    where
        F: Fn(&CylFields) -> f64 + Sync,
    {
        let a = self.fiber.radius;
        let inner = integrate_adaptive(|r| g(&self.core_fields(r)) * r, 0.0, a, NORM_TOL);
        let outer = integrate_to_infinity(|r| g(&self.cladding_fields(r)) * r, a, 1.0 / self.q, NORM_TOL);
        if !(inner.converged && outer.converged) {
            return Err(Error::QuadratureNotConverged {
                what,
                achieved: inner.error + outer.error,
            });
        }
        Ok(2.0 * std::f64::consts::PI * (inner.values[0] + outer.values[0]))
    }
}

/// Applies the `(f, p)` assembly rules to reduced `f = p = +1` fields.
pub fn assemble(reduced: CylFields, f: i32, p: i32) -> CylFields {
    let p = if p == 0 { 1 } else { p };
    let (ff, pf) = (f as f64, p as f64);
    let [er, ephi, ez] = reduced.e;
    let [hr, hphi, hz] = reduced.h;
    CylFields {
        e: [er, ephi * pf, ez * ff],
        h: [hr * (ff * pf), hphi * ff, hz * pf],
    }
}

/// Field amplitude `A` (V) carrying power `power` (W) in `mode`; `|A|² = P / P₁`.
pub fn power_amplitude(mode: &GuidedMode, power: f64) -> Result<f64> {
    if !(power >= 0.0) {
        return Err(Error::InvalidArgument(format!("power must be non-negative, got {power}")));
    }
    let p1 = mode.axial_power()?;
    if !(p1 > 0.0) {
        return Err(Error::DegenerateMode(mode.id.kind));
    }
    Ok((power / p1).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fiber_validation() {
        assert!(FiberSpec::new(350e-9, 1.4537, 1.0).is_ok());
        assert!(FiberSpec::new(350e-9, 1.2, 1.0).is_ok());
        assert!(FiberSpec::new(0.0, 1.45, 1.0).is_err());
        assert!(FiberSpec::new(350e-9, 1.0, 1.45).is_err());
        assert!(FiberSpec::new(350e-9, 1.45, 0.9).is_err());
    }

    #[test]
    fn mode_label_round_trip() {
        for s in ["HE11", "TE01", "TM02", "EH21", "HE12,1"] {
            let k: ModeKind = s.parse().unwrap();
            assert_eq!(k.to_string(), s);
        }
        assert_eq!("he21".parse::<ModeKind>().unwrap(), ModeKind::he(2, 1));
        assert!("HE01".parse::<ModeKind>().is_err());
        assert!("TE11".parse::<ModeKind>().is_err());
        assert!("XY11".parse::<ModeKind>().is_err());
    }

    #[test]
    fn mode_id_polarization_rules() {
        let w = 2.4e15;
        assert!(GuidedModeId::new(w, ModeKind::he(1, 1), 1, 1).is_ok());
        assert!(GuidedModeId::new(w, ModeKind::he(1, 1), 1, 0).is_err());
        assert!(GuidedModeId::new(w, ModeKind::te(1), -1, 0).is_ok());
        assert!(GuidedModeId::new(w, ModeKind::tm(1), 1, 1).is_err());
        assert!(GuidedModeId::new(w, ModeKind::tm(1), 2, 0).is_err());
    }

    #[test]
    fn homogeneous_fiber_has_no_guided_modes() {
        let fiber = FiberSpec::new(350e-9, 1.3, 1.3).unwrap();
        let w = 2.0 * std::f64::consts::PI * C / 780e-9;
        assert_eq!(v_number(&fiber, w), 0.0);
        assert!(matches!(
            solve_eigenvalue(&fiber, w, ModeKind::he(1, 1)),
            Err(Error::NoGuidedMode { .. })
        ));
    }

    #[test]
    fn assembly_signs() {
        let one = Complex64::new(1.0, 0.0);
        let f = CylFields { e: [one; 3], h: [one; 3] };
        let a = assemble(f, -1, -1);
        assert_eq!(a.e.map(|c| c.re), [1.0, -1.0, -1.0]);
        assert_eq!(a.h.map(|c| c.re), [1.0, -1.0, -1.0]);
        let te = assemble(f, -1, 0);
        assert_eq!(te.e.map(|c| c.re), [1.0, 1.0, -1.0]);
        assert_eq!(te.h.map(|c| c.re), [-1.0, -1.0, 1.0]);
    }

    const A: f64 = 350e-9;
    const N1: f64 = 1.4537;

    fn nanofiber() -> FiberSpec {
        FiberSpec::new(A, N1, 1.0).unwrap()
    }

    fn omega780() -> f64 {
        2.0 * std::f64::consts::PI * C / 780e-9
    }

    fn mode(kind: ModeKind, f: i32, p: i32) -> GuidedMode {
        let id = GuidedModeId::new(omega780(), kind, f, p).unwrap();
        mode_profile(&nanofiber(), id).unwrap()
    }

    fn four_modes() -> Vec<GuidedMode> {
        vec![
            mode(ModeKind::he(1, 1), 1, 1),
            mode(ModeKind::te(1), 1, 0),
            mode(ModeKind::tm(1), 1, 0),
            mode(ModeKind::he(2, 1), 1, 1),
        ]
    }

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / a.abs().max(b.abs()).max(1e-300)
    }

    #[test]
    fn v_number_of_reference_fiber() {
        // k a NA with NA computed as sqrt((n1-n2)(n1+n2))
        let na = ((N1 - 1.0) * (N1 + 1.0)).sqrt();
        let v = 2.0 * std::f64::consts::PI / 780e-9 * A * na;
        assert!(rel(v_number(&nanofiber(), omega780()), v) < 1e-14);
        assert!((v - 2.975).abs() < 1e-3);
        let wide = FiberSpec::new(2.0 * A, N1, 1.0).unwrap();
        assert!(rel(v_number(&wide, omega780()), 2.0 * v) < 1e-14);
    }

    #[test]
    fn reference_fiber_guides_exactly_four_mode_types() {
        let kinds: Vec<ModeKind> = guided_kinds(&nanofiber(), omega780()).into_iter().map(|(k, _)| k).collect();
        let mut sorted = kinds.clone();
        sorted.sort();
        let mut want = vec![ModeKind::he(1, 1), ModeKind::te(1), ModeKind::tm(1), ModeKind::he(2, 1)];
        want.sort();
        assert_eq!(sorted, want);
        // HE11 is the fundamental mode
        assert_eq!(kinds[0], ModeKind::he(1, 1));
        assert!(matches!(
            solve_eigenvalue(&nanofiber(), omega780(), ModeKind::te(2)),
            Err(Error::NoGuidedMode { .. })
        ));
    }

    #[test]
    fn eigenvalues_lie_between_light_lines() {
        let k = omega780() / C;
        for (_, b) in guided_kinds(&nanofiber(), omega780()) {
            assert!(b > k && b < k * N1);
        }
    }

    #[test]
    fn eigenvalues_are_roots_of_the_dispersion_function() {
        let w = omega780();
        let fib = nanofiber();
        for (kind, b) in guided_kinds(&fib, w) {
            let ulp = b * f64::EPSILON * 4.0;
            let lo = dispersion_function(&fib, w, kind.family, kind.l, b - 1e3 * ulp);
            let hi = dispersion_function(&fib, w, kind.family, kind.l, b + 1e3 * ulp);
            assert!(lo * hi < 0.0, "{kind}");
        }
    }

    #[test]
    fn cutoffs_bracket_mode_existence() {
        let w = omega780();
        let k = w / C;
        let na = (N1 * N1 - 1.0).sqrt();
        for kind in [ModeKind::te(1), ModeKind::tm(1), ModeKind::he(2, 1), ModeKind::eh(1, 1), ModeKind::he(1, 2)] {
            let vc = cutoff_v(&nanofiber(), kind);
            // HE1m roots leave the cladding light line only logarithmically slowly
            let margin = if kind.family == ModeFamily::HE && kind.l == 1 { 1.03 } else { 1.002 };
            let above = FiberSpec::new(vc * margin / (k * na), N1, 1.0).unwrap();
            let below = FiberSpec::new(vc * 0.998 / (k * na), N1, 1.0).unwrap();
            assert!(solve_eigenvalue(&above, w, kind).is_ok(), "{kind} above cutoff {vc}");
            assert!(solve_eigenvalue(&below, w, kind).is_err(), "{kind} below cutoff {vc}");
        }
        assert_eq!(cutoff_v(&nanofiber(), ModeKind::he(1, 1)), 0.0);
        assert!((cutoff_v(&nanofiber(), ModeKind::te(1)) - 2.404_825_557_695_773).abs() < 1e-12);
    }

    #[test]
    fn tangential_fields_continuous_and_normal_d_matched() {
        for m in four_modes() {
            let a = m.fiber.radius;
            let inside = m.core_fields(a);
            let outside = m.cladding_fields(a);
            let scale = inside.e_norm_sqr().sqrt();
            let hscale = inside.h_norm_sqr().sqrt();
            for i in 1..3 {
                assert!((inside.e[i] - outside.e[i]).norm() < 1e-9 * scale, "{} e[{i}]", m.kind());
                assert!((inside.h[i] - outside.h[i]).norm() < 1e-9 * hscale, "{} h[{i}]", m.kind());
            }
            let dn_in = inside.e[0] * N1 * N1;
            assert!((dn_in - outside.e[0]).norm() < 1e-9 * scale * N1 * N1, "{}", m.kind());
            // B_r = μ₀ H_r is continuous as well
            assert!((inside.h[0] - outside.h[0]).norm() < 1e-9 * hscale, "{}", m.kind());
        }
    }

    #[test]
    fn te_mode_has_no_radial_or_axial_electric_field() {
        let m = mode(ModeKind::te(1), 1, 0);
        for r in [0.1, 0.5, 0.99, 1.01, 2.0, 4.0].map(|x| x * A) {
            let p = m.profiles(r);
            assert_eq!(p.e_r, 0.0);
            assert_eq!(p.e_z, 0.0);
            assert!(p.e_phi != 0.0);
        }
    }

    #[test]
    fn profiles_follow_phase_convention() {
        for m in four_modes() {
            for r in [0.2, 0.7, 1.3, 2.5].map(|x| x * A) {
                let f = m.reduced_fields(r);
                let tiny = 1e-12 * f.e_norm_sqr().sqrt();
                let htiny = 1e-12 * f.h_norm_sqr().sqrt();
                assert!(f.e[0].re.abs() <= tiny && f.e[1].im.abs() <= tiny && f.e[2].im.abs() <= tiny);
                assert!(f.h[0].im.abs() <= htiny && f.h[1].re.abs() <= htiny && f.h[2].re.abs() <= htiny);
            }
        }
        // hybrid and TM modes have a nonzero axial component in quadrature with e_r
        for m in [mode(ModeKind::he(1, 1), 1, 1), mode(ModeKind::tm(1), 1, 0)] {
            let p = m.profiles(1.2 * A);
            assert!(p.e_z.abs() > 1e-3 * p.e_r.abs());
        }
    }

    #[test]
    fn normalization_by_independent_simpson_rule() {
        for m in four_modes() {
            // composite Simpson on each side of the interface, cladding cut at 60 decay lengths
            let simpson = |g: &dyn Fn(f64) -> f64, lo: f64, hi: f64, n: usize| {
                let h = (hi - lo) / n as f64;
                let mut s = g(lo) + g(hi);
                for i in 1..n {
                    s += g(lo + i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
                }
                s * h / 3.0
            };
            let (_, q) = m.transverse_wavenumbers();
            let core = simpson(&|r| N1 * N1 * m.core_fields(r).e_norm_sqr() * r, 0.0, A, 4000);
            let clad = simpson(&|r| m.cladding_fields(r).e_norm_sqr() * r, A, A + 60.0 / q, 200_000);
            let total = 2.0 * std::f64::consts::PI * (core + clad);
            assert!((total - 1.0).abs() < 1e-8, "{}: {total}", m.kind());
        }
    }

    #[test]
    fn profiles_decay_monotonically_outside() {
        for m in four_modes() {
            let mut prev = f64::INFINITY;
            for i in 0..200 {
                let r = A * (1.0 + 0.05 * i as f64);
                let v = m.reduced_fields(r).e_norm_sqr();
                assert!(v < prev, "{}", m.kind());
                prev = v;
            }
            assert!(prev < 1e-6 * m.reduced_fields(A).e_norm_sqr());
        }
    }

    #[test]
    fn assembled_fields_satisfy_maxwell_curl_equations() {
        let w = omega780();
        for base in four_modes() {
            let dirs: &[(i32, i32)] = if base.kind().is_hybrid() {
                &[(1, 1), (1, -1), (-1, 1), (-1, -1)]
            } else {
                &[(1, 0), (-1, 0)]
            };
            for &(f, p) in dirs {
                let m = base.with_direction(f, p).unwrap();
                for (r, phi, z) in [(0.6 * A, 0.4, 0.1e-6), (1.7 * A, 2.1, -0.3e-6)] {
                    let n = m.fiber.index_at(r);
                    let hstep = 1e-4 * A;
                    let d = |g: &dyn Fn(f64) -> CylFields| {
                        let a = g(-hstep);
                        let b = g(hstep);
                        CylFields {
                            e: [0, 1, 2].map(|i| (b.e[i] - a.e[i]) / (2.0 * hstep)),
                            h: [0, 1, 2].map(|i| (b.h[i] - a.h[i]) / (2.0 * hstep)),
                        }
                    };
                    let dr = d(&|s| m.fields_at(r + s, phi, z));
                    let dphi = d(&|s| m.fields_at(r, phi + s / r, z));
                    let dz = d(&|s| m.fields_at(r, phi, z + s));
                    let f0 = m.fields_at(r, phi, z);
                    let dr_rv = |i: usize, e: bool| {
                        // (1/r) ∂(r V_φ)/∂r = ∂V_φ/∂r + V_φ/r
                        if e {
                            dr.e[i] + f0.e[i] / r
                        } else {
                            dr.h[i] + f0.h[i] / r
                        }
                    };
                    // ∇×E = iωμ₀H
                    let curl_e = [
                        dphi.e[2] - dz.e[1],
                        dz.e[0] - dr.e[2],
                        dr_rv(1, true) - dphi.e[0],
                    ];
                    let curl_h = [dphi.h[2] - dz.h[1], dz.h[0] - dr.h[2], dr_rv(1, false) - dphi.h[0]];
                    let es = f0.e_norm_sqr().sqrt();
                    let hs = f0.h_norm_sqr().sqrt();
                    for i in 0..3 {
                        let want = I * w * MU0 * f0.h[i];
                        assert!((curl_e[i] - want).norm() < 1e-5 * w * MU0 * hs, "{} f={f} p={p} curlE[{i}] {} {}", m.kind(), curl_e[i], want);
                        let want = -I * w * EPS0 * n * n * f0.e[i];
                        assert!((curl_h[i] - want).norm() < 1e-5 * w * EPS0 * n * n * es, "{} f={f} p={p} curlH[{i}]", m.kind());
                    }
                }
            }
        }
    }

    #[test]
    fn group_slope_matches_energy_velocity() {
        for m in four_modes() {
            let p1 = m.axial_power().unwrap();
            let u1 = m.energy_per_length().unwrap();
            assert!(rel(u1, EPS0 / 2.0) < 1e-9, "{}", m.kind());
            assert!(rel(m.beta_prime, EPS0 / (2.0 * p1)) < 1e-7, "{}: {} vs {}", m.kind(), m.beta_prime, EPS0 / (2.0 * p1));
        }
    }

    #[test]
    fn group_slope_step_convergence_and_bounds() {
        let w = omega780();
        for kind in [ModeKind::he(1, 1), ModeKind::he(2, 1), ModeKind::te(1), ModeKind::tm(1)] {
            let a = group_slope_with_step(&nanofiber(), w, kind, 1e-6).unwrap();
            let b = group_slope_with_step(&nanofiber(), w, kind, 1e-7).unwrap();
            assert!(rel(a, b) < 1e-8, "{kind}: {a} {b}");
            assert!(a > 0.0);
        }
        // strong waveguide dispersion pushes the group index above the phase index
        for (kind, beta) in guided_kinds(&nanofiber(), w) {
            let ng = C * group_slope(&nanofiber(), w, kind).unwrap();
            assert!(ng > C * beta / w && ng > 1.0, "{kind} group index {ng}");
        }
    }

    #[test]
    fn group_slope_approaches_homogeneous_limit() {
        // a thick fiber with vanishing contrast behaves as a uniform medium
        let n = 1.45;
        for (contrast, tol) in [(1e-3, 2e-3), (1e-4, 2e-4)] {
            let fib = FiberSpec::new(10e-6, n * (1.0 + contrast), n).unwrap();
            let bp = group_slope(&fib, omega780(), ModeKind::he(1, 1)).unwrap();
            assert!(rel(bp, n / C) < tol, "{}", bp * C);
        }
    }

    #[test]
    fn power_amplitude_scaling() {
        let m = mode(ModeKind::he(2, 1), 1, 1);
        assert_eq!(power_amplitude(&m, 0.0).unwrap(), 0.0);
        let a1 = power_amplitude(&m, 1e-12).unwrap();
        let a4 = power_amplitude(&m, 4e-12).unwrap();
        assert!(rel(a4, 2.0 * a1) < 1e-14);
        assert!(power_amplitude(&m, -1.0).is_err());
        // reversing f reverses the flux direction; the power amplitude uses |P₁|
        let back = m.with_direction(-1, 1).unwrap();
        let flux = back.cross_section_integral("flux", |f| 0.5 * assemble(*f, -1, 1).axial_poynting()).unwrap();
        assert!(rel(flux, -m.axial_power().unwrap()) < 1e-10);
    }
}
