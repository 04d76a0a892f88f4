//! SI physical constants (CODATA 2018). `EPS0` is derived from `MU0` and `C`
//! so that `EPS0 * MU0 * C² = 1` holds to rounding.

/// Speed of light in vacuum (m/s).
pub const C: f64 = 299_792_458.0;
/// Vacuum permeability (N/A²).
pub const MU0: f64 = 1.256_637_062_12e-6;
/// Vacuum permittivity (F/m).
pub const EPS0: f64 = 1.0 / (MU0 * C * C);
/// Reduced Planck constant (J·s).
pub const HBAR: f64 = 1.054_571_817e-34;

/// One zeptonewton-nanometre in N·m.
pub const ZN_NM: f64 = 1e-30;
/// One zeptonewton in N.
pub const ZN: f64 = 1e-21;
