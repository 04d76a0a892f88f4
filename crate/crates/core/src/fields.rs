//! Cylindrical field components and the vector bookkeeping shared by the
//! guided- and radiation-mode constructions.
//!
//! All fields carry the dependence `exp(i(βz + lφ − ωt))`. Inside a
//! homogeneous region with index `n` and `κ² = k²n² − β²`, the transverse
//! components follow from the longitudinal ones:
//!
//! ```text
//! E_r = (i/κ²) [β ∂_r E_z + iωμ₀ (l/r) H_z]
//! E_φ = (i/κ²) [iβ (l/r) E_z − ωμ₀ ∂_r H_z]
//! H_r = (i/κ²) [β ∂_r H_z − iωε₀n² (l/r) E_z]
//! H_φ = (i/κ²) [iβ (l/r) H_z + ωε₀n² ∂_r E_z]
//! ```

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

use crate::constants::{EPS0, MU0};

pub(crate) const I: Complex64 = Complex64::new(0.0, 1.0);

/// Complex `(r, φ, z)` components of E and H at one radius, with the
/// `exp(i(βz + lφ))` phase factor not applied.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CylFields {
    pub e: [Complex64; 3],
    pub h: [Complex64; 3],
}

impl CylFields {
    pub fn zero() -> Self {
        Self {
            e: [Complex64::new(0.0, 0.0); 3],
            h: [Complex64::new(0.0, 0.0); 3],
        }
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self {
            e: self.e.map(|v| v * s),
            h: self.h.map(|v| v * s),
        }
    }

    pub fn e_norm_sqr(&self) -> f64 {
        self.e.iter().map(|v| v.norm_sqr()).sum()
    }

    pub fn h_norm_sqr(&self) -> f64 {
        self.h.iter().map(|v| v.norm_sqr()).sum()
    }

    /// `Re(E × H*)_z`.
    pub fn axial_poynting(&self) -> f64 {
        (self.e[0] * self.h[1].conj() - self.e[1] * self.h[0].conj()).re
    }

    /// `Re(E × H*)_φ`.
    pub fn azimuthal_poynting(&self) -> f64 {
        (self.e[2] * self.h[0].conj() - self.e[0] * self.h[2].conj()).re
    }
}

/// Longitudinal components at one radius: value, radial derivative and
/// `l/r` times the value, for `E_z` and `H_z`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Longitudinal {
    pub ez: Complex64,
    pub dez: Complex64,
    pub lez_r: Complex64,
    pub hz: Complex64,
    pub dhz: Complex64,
    pub lhz_r: Complex64,
}

pub(crate) fn transverse(omega: f64, beta: f64, n: f64, kappa2: f64, lg: &Longitudinal) -> CylFields {
    let pre = I / kappa2;
    let wmu = omega * MU0;
    let weps = omega * EPS0 * n * n;
    let er = pre * (beta * lg.dez + I * wmu * lg.lhz_r);
    let ephi = pre * (I * beta * lg.lez_r - wmu * lg.dhz);
    let hr = pre * (beta * lg.dhz - I * weps * lg.lez_r);
    let hphi = pre * (I * beta * lg.lhz_r + weps * lg.dez);
    CylFields {
        e: [er, ephi, lg.ez],
        h: [hr, hphi, lg.hz],
    }
}

/// Cylindrical `(r, φ, z)` to Cartesian `(x, y, z)` at azimuth `phi`.
pub fn cyl_to_cart(v: [Complex64; 3], phi: f64) -> [Complex64; 3] {
    let (s, c) = phi.sin_cos();
    [v[0] * c - v[1] * s, v[0] * s + v[1] * c, v[2]]
}

/// Spherical tensor component `V_q` of a Cartesian vector:
/// `V_0 = V_z`, `V_{±1} = ∓(V_x ± iV_y)/√2`.
pub fn spherical_component(v: [Complex64; 3], q: i32) -> Complex64 {
    match q {
        0 => v[2],
        1 => -(v[0] + I * v[1]) * FRAC_1_SQRT_2,
        -1 => (v[0] - I * v[1]) * FRAC_1_SQRT_2,
        _ => panic!("spherical index must be -1, 0 or 1, got {q}"),
    }
}

/// Spherical component `V_q` built from cylindrical components with the
/// `e^{iqφ}` factor stripped: `V_{±1} = ∓(V_r ± iV_φ)/√2`.
pub fn spherical_from_cyl(v: [Complex64; 3], q: i32) -> Complex64 {
    match q {
        0 => v[2],
        1 => -(v[0] + I * v[1]) * FRAC_1_SQRT_2,
        -1 => (v[0] - I * v[1]) * FRAC_1_SQRT_2,
        _ => panic!("spherical index must be -1, 0 or 1, got {q}"),
    }
}

/// Cartesian unit dipole with a single spherical component `d_q = 1`,
/// i.e. the conjugated spherical basis vector `ê_q*`.
pub fn unit_dipole(q: i32) -> [Complex64; 3] {
    let z = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    match q {
        0 => [z, z, one],
        // ê_{+1} = -(x̂ + iŷ)/√2
        1 => [-one * FRAC_1_SQRT_2, I * FRAC_1_SQRT_2, z],
        // ê_{-1} = (x̂ - iŷ)/√2
        -1 => [one * FRAC_1_SQRT_2, I * FRAC_1_SQRT_2, z],
        _ => panic!("spherical index must be -1, 0 or 1, got {q}"),
    }
}

/// Bilinear (unconjugated) dot product `a · b`.
pub fn dot(a: [Complex64; 3], b: [Complex64; 3]) -> Complex64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}
