//! Radiation (continuum) modes of the step-index fiber and the β/l
//! quadrature used to sum spontaneous emission into them.
//!
//! At fixed `(ω, β, l)` with `|β| < k n₂` the longitudinal fields are
//!
//! ```text
//! r < a:  E_z = A J_l(h r),                H_z = B J_l(h r),                 h = √(k²n₁² − β²)
//! r > a:  E_z = a₁ J_l(σr) + a₂ Y_l(σr),   H_z = b₁ J_l(σr) + b₂ Y_l(σr),    σ = √(k²n₂² − β²)
//! ```
//!
//! and `(a₁, a₂, b₁, b₂)` follow from continuity of `E_z, H_z, E_φ, H_φ` at
//! `r = a`. Every inner pair `(A, B)` gives a solution, so the space is two
//! dimensional. Modes are δ-normalized in frequency at fixed β: matching
//! the large-r asymptotics of the cylinder functions gives
//!
//! ```text
//! ∫ n² e_ν · e_ν'* dA = N δ(ω − ω'),   N = (2πω/σ²) [n₂²(|a₁|² + |a₂|²) + Z₀²(|b₁|² + |b₂|²)]
//! ```
//!
//! and the same bilinear form (with conjugated primed coefficients) is the
//! inner product between two solutions of equal `(ω, β, l)`.
//!
//! Polarization basis: `p = +` is the solution with `H_z = 0` inside the
//! core (TM-like in the core), normalized; `p = −` is the normalized
//! component of the `E_z = 0`-inside solution orthogonal to it. Any other
//! orthonormal pair gives the same emission rates because rates sum over p.
//!
//! Bessel functions are evaluated at order `|l|`; the sign of `l` only
//! enters through the explicit `l/r` terms (the `(−1)^l` between `J_{−l}`
//! and `J_l` is absorbed in the amplitudes).

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::bessel::{bessel_j_seq, bessel_jy_seq, ln_j_bound};
use crate::constants::{C, EPS0, MU0};
use crate::error::{Error, Result};
use crate::fiber_modes::FiberSpec;
use crate::fields::{spherical_from_cyl, transverse, CylFields, Longitudinal, I};
use crate::quadrature::{adaptive_panels, gauss_legendre_32};

/// Orders whose free-space amplitude bound `(σR/2)^|l| / |l|!` falls below
/// this are dropped; their normalized fields are negligible and their `Y_l`
/// values would overflow.
const NEGLIGIBLE_AMPLITUDE_LN: f64 = -69.077_552_789_821_37; // ln(1e-30)

/// Extra azimuthal orders beyond `k n₂ R` in the first l-window, and the
/// increment when the window is extended.
pub const L_STEP: usize = 8;

/// Hard cap on `|l|`.
pub const MAX_L: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RadiationPolarization {
    Plus,
    Minus,
}

impl RadiationPolarization {
    pub const BOTH: [RadiationPolarization; 2] = [RadiationPolarization::Plus, RadiationPolarization::Minus];
}

/// Radiation-mode label `ν = (ω, β, l, p)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadiationModeId {
    pub omega: f64,
    pub beta: f64,
    pub l: i32,
    pub p: RadiationPolarization,
}

impl RadiationModeId {
    pub fn new(fiber: &FiberSpec, omega: f64, beta: f64, l: i32, p: RadiationPolarization) -> Result<Self> {
        if !(omega > 0.0) {
            return Err(Error::InvalidArgument(format!("omega must be positive, got {omega}")));
        }
        let limit = omega / C * fiber.n2;
        if !(beta.abs() < limit) {
            return Err(Error::InvalidBeta { beta, limit });
        }
        Ok(Self { omega, beta, l, p })
    }
}

/// Amplitudes of one radiation solution: `[A, B]` inside and
/// `[a₁, a₂, b₁, b₂]` outside.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Amplitudes {
    inner: [Complex64; 2],
    outer: [Complex64; 4],
}

impl Amplitudes {
    fn scale(&self, s: Complex64) -> Self {
        Self {
            inner: self.inner.map(|v| v * s),
            outer: self.outer.map(|v| v * s),
        }
    }

    fn sub(&self, o: &Self) -> Self {
        Self {
            inner: [self.inner[0] - o.inner[0], self.inner[1] - o.inner[1]],
            outer: [0, 1, 2, 3].map(|i| self.outer[i] - o.outer[i]),
        }
    }

    fn is_finite(&self) -> bool {
        self.inner.iter().chain(&self.outer).all(|c| c.re.is_finite() && c.im.is_finite())
    }
}

/// Bessel data at the fiber surface for one `(ω, β)`, orders `0..=nmax+1`.
struct Surface {
    omega: f64,
    beta: f64,
    h: f64,
    sigma: f64,
    a: f64,
    n1: f64,
    n2: f64,
    j_in: Vec<f64>,
    j_out: Vec<f64>,
    y_out: Vec<f64>,
}

/// `Z_n'` from a sequence of cylinder functions.
fn deriv(z: &[f64], n: usize) -> f64 {
    if n == 0 {
        -z[1]
    } else {
        0.5 * (z[n - 1] - z[n + 1])
    }
}

/// `(n/x) Z_n` from a sequence of cylinder functions.
fn over_x(z: &[f64], n: usize) -> f64 {
    if n == 0 {
        0.0
    } else {
        0.5 * (z[n - 1] + z[n + 1])
    }
}

impl Surface {
    fn new(fiber: &FiberSpec, omega: f64, beta: f64, nmax: usize) -> Self {
        let k = omega / C;
        let h = (k * k * fiber.n1 * fiber.n1 - beta * beta).sqrt();
        let sigma = (k * k * fiber.n2 * fiber.n2 - beta * beta).sqrt();
        let a = fiber.radius;
        let j_in = bessel_j_seq(nmax + 1, h * a);
        let (j_out, y_out) = bessel_jy_seq(nmax + 1, sigma * a);
        Self {
            omega,
            beta,
            h,
            sigma,
            a,
            n1: fiber.n1,
            n2: fiber.n2,
            j_in,
            j_out,
            y_out,
        }
    }

    /// Outside amplitudes matched to the inside pair `(A, B)`.
    fn solve(&self, l: i32, a_in: Complex64, b_in: Complex64) -> Amplitudes {
        let n = l.unsigned_abs() as usize;
        let (h, s, a, w, beta) = (self.h, self.sigma, self.a, self.omega, self.beta);
        let jin = self.j_in[n];
        let djin = deriv(&self.j_in, n);
        let ez = a_in * jin;
        let hz = b_in * jin;
        let la = l as f64 / a;
        // E_φ and H_φ inside at r = a, divided by i
        let ephi = (I * beta * la * ez - w * MU0 * h * b_in * djin) / (h * h);
        let hphi = (I * beta * la * hz + w * EPS0 * self.n1 * self.n1 * h * a_in * djin) / (h * h);
        // σ-scaled radial derivatives outside, from E_φ and H_φ continuity
        let dez = (s * s * hphi - I * beta * la * hz) / (w * EPS0 * self.n2 * self.n2 * s);
        let dhz = (I * beta * la * ez - s * s * ephi) / (w * MU0 * s);
        let (jo, yo) = (self.j_out[n], self.y_out[n]);
        let (djo, dyo) = (deriv(&self.j_out, n), deriv(&self.y_out, n));
        let wr = 2.0 / (PI * s * a);
        let pair = |v: Complex64, d: Complex64| ((v * dyo - d * yo) / wr, (d * jo - v * djo) / wr);
        let (a1, a2) = pair(ez, dez);
        let (b1, b2) = pair(hz, dhz);
        Amplitudes {
            inner: [a_in, b_in],
            outer: [a1, a2, b1, b2],
        }
    }

    /// δ-normalization bilinear form between two solutions.
    fn inner(&self, u: &Amplitudes, v: &Amplitudes) -> Complex64 {
        let z0sq = MU0 / EPS0;
        let pre = 2.0 * PI * self.omega / (self.sigma * self.sigma);
        let e = u.outer[0] * v.outer[0].conj() + u.outer[1] * v.outer[1].conj();
        let m = u.outer[2] * v.outer[2].conj() + u.outer[3] * v.outer[3].conj();
        pre * (self.n2 * self.n2 * e + z0sq * m)
    }

    /// The orthonormal `(p = +, p = −)` pair at azimuthal order `l`.
    fn basis(&self, l: i32) -> [Amplitudes; 2] {
        let z0 = (MU0 / EPS0).sqrt();
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        let u = self.solve(l, one, zero);
        let plus = u.scale(Complex64::new(1.0 / self.inner(&u, &u).re.sqrt(), 0.0));
        let v = self.solve(l, zero, one / z0);
        let v = v.sub(&plus.scale(self.inner(&v, &plus)));
        let minus = v.scale(Complex64::new(1.0 / self.inner(&v, &v).re.sqrt(), 0.0));
        [plus, minus]
    }

    fn kappa2_in(&self) -> f64 {
        self.h * self.h
    }

    fn kappa2_out(&self) -> f64 {
        self.sigma * self.sigma
    }
}

/// Bessel tables at the observation radius.
struct Probe {
    r: f64,
    inside: bool,
    z1: Vec<f64>,
    z2: Vec<f64>,
}

impl Probe {
    fn new(surface: &Surface, r: f64, nmax: usize) -> Self {
        if r < surface.a {
            Self {
                r,
                inside: true,
                z1: bessel_j_seq(nmax + 1, surface.h * r),
                z2: Vec::new(),
            }
        } else {
            let (j, y) = bessel_jy_seq(nmax + 1, surface.sigma * r);
            Self {
                r,
                inside: false,
                z1: j,
                z2: y,
            }
        }
    }

    fn fields(&self, s: &Surface, l: i32, amp: &Amplitudes) -> CylFields {
        let n = l.unsigned_abs() as usize;
        let sgn = l.signum() as f64;
        if self.inside {
            let (v, d, o) = (self.z1[n], deriv(&self.z1, n), over_x(&self.z1, n));
            let lg = Longitudinal {
                ez: amp.inner[0] * v,
                dez: amp.inner[0] * (s.h * d),
                lez_r: amp.inner[0] * (sgn * s.h * o),
                hz: amp.inner[1] * v,
                dhz: amp.inner[1] * (s.h * d),
                lhz_r: amp.inner[1] * (sgn * s.h * o),
            };
            transverse(s.omega, s.beta, s.n1, s.kappa2_in(), &lg)
        } else {
            let (j, y) = (&self.z1, &self.z2);
            let comb = |c1: Complex64, c2: Complex64| {
                (
                    c1 * j[n] + c2 * y[n],
                    (c1 * deriv(j, n) + c2 * deriv(y, n)) * s.sigma,
                    (c1 * over_x(j, n) + c2 * over_x(y, n)) * (sgn * s.sigma),
                )
            };
            let (ez, dez, lez_r) = comb(amp.outer[0], amp.outer[1]);
            let (hz, dhz, lhz_r) = comb(amp.outer[2], amp.outer[3]);
            let lg = Longitudinal {
                ez,
                dez,
                lez_r,
                hz,
                dhz,
                lhz_r,
            };
            transverse(s.omega, s.beta, s.n2, s.kappa2_out(), &lg)
        }
    }
}

/// A normalized radiation mode.
pub struct RadiationMode {
    pub id: RadiationModeId,
    pub fiber: FiberSpec,
    surface: Surface,
    amp: Amplitudes,
}

impl std::fmt::Debug for RadiationMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("RadiationMode")
            .field("id", &self.id)
            .field("inner", &self.amp.inner)
            .field("outer", &self.amp.outer)
            .finish()
    }
}

/// Builds the normalized radiation mode `id`.
pub fn radiation_profile(fiber: &FiberSpec, id: RadiationModeId) -> Result<RadiationMode> {
    let id = RadiationModeId::new(fiber, id.omega, id.beta, id.l, id.p)?;
    let surface = Surface::new(fiber, id.omega, id.beta, id.l.unsigned_abs() as usize);
    let [plus, minus] = surface.basis(id.l);
    let amp = match id.p {
        RadiationPolarization::Plus => plus,
        RadiationPolarization::Minus => minus,
    };
    if !amp.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "radiation mode l = {} at β = {:e} is out of floating-point range",
            id.l, id.beta
        )));
    }
    Ok(RadiationMode {
        id,
        fiber: *fiber,
        surface,
        amp,
    })
}

impl RadiationMode {
    /// Transverse wavenumbers `(h, σ)` inside and outside the core.
    pub fn transverse_wavenumbers(&self) -> (f64, f64) {
        (self.surface.h, self.surface.sigma)
    }

    /// `[A, B]`: the inside `E_z`, `H_z` amplitudes.
    pub fn inner_amplitudes(&self) -> [Complex64; 2] {
        self.amp.inner
    }

    /// `[a₁, a₂, b₁, b₂]`: the outside `J`/`Y` amplitudes of `E_z` and `H_z`.
    pub fn outer_amplitudes(&self) -> [Complex64; 4] {
        self.amp.outer
    }

    /// δ-normalization constant `N`; equals 1 for a constructed mode.
    pub fn normalization(&self) -> f64 {
        self.surface.inner(&self.amp, &self.amp).re
    }

    /// Bilinear inner product with another mode of the same `(ω, β, l)`.
    pub fn overlap(&self, other: &RadiationMode) -> Complex64 {
        self.surface.inner(&self.amp, &other.amp)
    }

    fn fields_on_side(&self, r: f64, inside: bool) -> CylFields {
        let n = self.id.l.unsigned_abs() as usize;
        let probe = if inside {
            Probe {
                r,
                inside: true,
                z1: bessel_j_seq(n + 1, self.surface.h * r),
                z2: Vec::new(),
            }
        } else {
            let (j, y) = bessel_jy_seq(n + 1, self.surface.sigma * r);
            Probe {
                r,
                inside: false,
                z1: j,
                z2: y,
            }
        };
        probe.fields(&self.surface, self.id.l, &self.amp)
    }

    /// Inside-core analytic fields at any `r >= 0`.
    pub fn core_fields(&self, r: f64) -> CylFields {
        self.fields_on_side(r, true)
    }

    /// Outside analytic fields at any `r > 0`.
    pub fn cladding_fields(&self, r: f64) -> CylFields {
        self.fields_on_side(r, false)
    }

    /// Complex fields at radius `r`, without the `exp(i(βz + lφ))` phase.
    pub fn fields(&self, r: f64) -> CylFields {
        let probe = Probe::new(&self.surface, r, self.id.l.unsigned_abs() as usize);
        debug_assert_eq!(probe.r, r);
        probe.fields(&self.surface, self.id.l, &self.amp)
    }

    /// Complex fields at `(r, φ, z)` including the phase `exp(i(βz + lφ))`.
    pub fn fields_at(&self, r: f64, phi: f64, z: f64) -> CylFields {
        let phase = Complex64::from_polar(1.0, self.id.beta * z + self.id.l as f64 * phi);
        self.fields(r).scale(phase)
    }
}

/// Discretization of the β integral and l sum for radiation-mode emission.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadraturePlan {
    pub omega: f64,
    /// Requested relative tolerance.
    pub tol: f64,
    /// `k n₂`: the β range is `(−beta_limit, beta_limit)`.
    pub beta_limit: f64,
    /// Initial Gauss–Legendre panels, geometrically graded toward `±k n₂`.
    pub panels: Vec<(f64, f64)>,
    /// Maximum number of panels after adaptive refinement.
    pub max_panels: usize,
    /// Largest `|l|` that may be included before giving up.
    pub max_l: usize,
}

/// Builds the radiation-mode quadrature plan at `omega0` for relative
/// tolerance `tol`.
///
/// The β interval is split at 0 and each half is graded geometrically
/// toward the light line, halving panel widths `depth` times with
/// `depth = ⌈log₂(1/tol)/2⌉ + 4`, so tightening `tol` only adds panels.
pub fn radiation_quadrature(fiber: &FiberSpec, omega0: f64, tol: f64) -> Result<QuadraturePlan> {
    if !(tol > 0.0 && tol < 1.0) {
        return Err(Error::InvalidArgument(format!("tolerance must lie in (0, 1), got {tol}")));
    }
    if !(omega0 > 0.0) {
        return Err(Error::InvalidArgument(format!("omega must be positive, got {omega0}")));
    }
    let b = omega0 / C * fiber.n2;
    let depth = (0.5 * (1.0 / tol).log2()).ceil() as usize + 4;
    let mut edges = vec![0.0];
    for j in 1..=depth {
        edges.push(b * (1.0 - 0.5f64.powi(j as i32)));
    }
    edges.push(b);
    let mut panels = Vec::with_capacity(2 * depth + 2);
    for w in edges.windows(2).rev() {
        panels.push((-w[1], -w[0]));
    }
    for w in edges.windows(2) {
        panels.push((w[0], w[1]));
    }
    let max_panels = 64 * panels.len() + (20.0 * (1.0 / tol).log10()) as usize;
    Ok(QuadraturePlan {
        omega: omega0,
        tol,
        beta_limit: b,
        panels,
        max_panels,
        max_l: MAX_L,
    })
}

impl QuadraturePlan {
    /// Number of β nodes in the initial panels.
    pub fn node_count(&self) -> usize {
        self.panels.len() * gauss_legendre_32().order()
    }

    /// First l-window for an observation radius `r`: `⌈k n₂ max(r, a)⌉ + 8`.
    pub fn initial_l(&self, fiber: &FiberSpec, r: f64) -> usize {
        ((self.beta_limit * r.max(fiber.radius)).ceil() as usize + L_STEP).min(self.max_l)
    }
}

/// β-integrated, p-summed squared spherical field components of the
/// radiation modes at one radius, resolved by azimuthal order:
/// `S(l, q) = ∫ dβ Σ_p |e_q^{(ν)}(r)|²`, in units of s (the modes are
/// normalized per unit angular frequency).
#[derive(Debug, Clone, PartialEq)]
pub struct RadiationSpectrum {
    pub r: f64,
    /// Orders `−l_max..=l_max` were integrated.
    pub l_max: usize,
    /// Smallest L such that orders with `|l| > L` contribute less than
    /// `tol` of the total for every q.
    pub l_cutoff: usize,
    values: Vec<[f64; 3]>,
    /// Estimated absolute quadrature error summed over all components.
    pub error: f64,
    pub panels: usize,
}

impl RadiationSpectrum {
    /// `S(l, q)`; zero outside the integrated window.
    pub fn get(&self, l: i32, q: i32) -> f64 {
        let idx = l + self.l_max as i32;
        if idx < 0 || idx as usize >= self.values.len() {
            return 0.0;
        }
        self.values[idx as usize][(q + 1) as usize]
    }

    /// Integrated orders in ascending l.
    pub fn orders(&self) -> impl Iterator<Item = i32> {
        let l = self.l_max as i32;
        -l..=l
    }

    pub fn total(&self, q: i32) -> f64 {
        self.orders().map(|l| self.get(l, q)).sum()
    }

    /// `Σ_l l S(l, q)`.
    pub fn l_weighted(&self, q: i32) -> f64 {
        self.orders().map(|l| l as f64 * self.get(l, q)).sum()
    }
}

/// Integrates `Σ_p |e_q|²` of the radiation modes at radius `r` over β for
/// all needed orders l.
///
/// The l-window starts at [`QuadraturePlan::initial_l`] and grows by
/// [`L_STEP`] until the three outermost |l| orders each contribute less
/// than `tol` of the total (weighted by |l|, since torques sum `l γ_l`).
pub fn radiation_spectrum(fiber: &FiberSpec, plan: &QuadraturePlan, r: f64) -> Result<RadiationSpectrum> {
    if !(r > 0.0) {
        return Err(Error::InvalidArgument(format!("radius must be positive, got {r}")));
    }
    let mut l_max = plan.initial_l(fiber, r).max(3);
    loop {
        let spec = integrate_window(fiber, plan, r, l_max)?;
        let totals = [-1, 0, 1].map(|q| spec.total(q));
        let tail_ok = (l_max - 2..=l_max).all(|m| {
            [-1, 0, 1].iter().enumerate().all(|(qi, &q)| {
                let part = spec.get(m as i32, q) + spec.get(-(m as i32), q);
                m as f64 * part <= plan.tol * totals[qi]
            })
        });
        if tail_ok {
            return Ok(spec);
        }
        if l_max >= plan.max_l {
            let worst = [-1, 0, 1]
                .iter()
                .enumerate()
                .map(|(qi, &q)| (spec.get(l_max as i32, q) + spec.get(-(l_max as i32), q)) / totals[qi])
                .fold(0.0, f64::max);
            return Err(Error::QuadratureNotConverged {
                what: "radiation-mode azimuthal sum",
                achieved: worst,
            });
        }
        l_max = (l_max + L_STEP).min(plan.max_l);
    }
}

fn integrate_window(fiber: &FiberSpec, plan: &QuadraturePlan, r: f64, l_max: usize) -> Result<RadiationSpectrum> {
    let width = 2 * l_max + 1;
    let rule = gauss_legendre_32();
    let reach = r.max(fiber.radius);
    let eval = |lo: f64, hi: f64| -> Vec<f64> {
        let mut acc = vec![0.0; 3 * width];
        for (beta, wt) in rule.mapped(lo, hi) {
            let surface = Surface::new(fiber, plan.omega, beta, l_max);
            let probe = Probe::new(&surface, r, l_max);
            let sr = surface.sigma * reach;
            for n in 0..=l_max {
                if n >= 2 && ln_j_bound(n, sr) < NEGLIGIBLE_AMPLITUDE_LN {
                    break;
                }
                let signs: &[i32] = if n == 0 { &[1] } else { &[1, -1] };
                for &sg in signs {
                    let l = sg * n as i32;
                    let idx = (l + l_max as i32) as usize;
                    for amp in surface.basis(l) {
                        let e = probe.fields(&surface, l, &amp).e;
                        for (qi, q) in [-1, 0, 1].into_iter().enumerate() {
                            acc[3 * idx + qi] += wt * spherical_from_cyl(e, q).norm_sqr();
                        }
                    }
                }
            }
        }
        acc
    };
    let res = adaptive_panels(&eval, &plan.panels, plan.tol, plan.max_panels);
    if res.values.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "radiation-mode fields overflow at r = {r:e} m; the observation radius is too large"
        )));
    }
    if !res.converged {
        let total: f64 = res.values.iter().map(|v| v.abs()).sum();
        return Err(Error::QuadratureNotConverged {
            what: "radiation-mode β integral",
            achieved: res.error / total,
        });
    }
    let values: Vec<[f64; 3]> = res.values.chunks(3).map(|c| [c[0], c[1], c[2]]).collect();
    let mut spec = RadiationSpectrum {
        r,
        l_max,
        l_cutoff: l_max,
        values,
        error: res.error,
        panels: res.panels,
    };
    spec.l_cutoff = cutoff_from_tail(&spec, plan.tol);
    Ok(spec)
}

fn cutoff_from_tail(spec: &RadiationSpectrum, tol: f64) -> usize {
    let totals = [-1, 0, 1].map(|q| spec.total(q));
    let mut tail = [0.0; 3];
    let mut cutoff = spec.l_max;
    for m in (1..=spec.l_max).rev() {
        for (qi, q) in [-1, 0, 1].into_iter().enumerate() {
            tail[qi] += spec.get(m as i32, q) + spec.get(-(m as i32), q);
        }
        if (0..3).all(|qi| tail[qi] < tol * totals[qi] || totals[qi] == 0.0) {
            cutoff = m - 1;
        } else {
            break;
        }
    }
    cutoff
}
