//! Angular-momentum analysis of the drive modes.

use fibertorque::angular_momentum::{am_densities, integrated_am, photon_am, AMDensities, IntegratedAM};
use fibertorque::fiber_modes::ModeKind;

use crate::config::ScanConfig;
use crate::error::CliError;
use crate::scan::resolve_drives;

/// Bound on `|ℏω j_can/u − plℏ|` in units of ℏ.
pub const QUANTIZATION_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct AmRow {
    pub mode: ModeKind,
    pub p: i32,
    pub r_over_a: f64,
    pub densities: AMDensities,
    /// `ℏω j_can/u` in units of ℏ.
    pub photon_am: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AmSummary {
    pub mode: ModeKind,
    pub p: i32,
    pub integrated: IntegratedAM,
    pub photon_am: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AmTable {
    pub rows: Vec<AmRow>,
    pub summaries: Vec<AmSummary>,
}

/// Densities on the `am.r_over_a` grid and cross-section totals for every
/// drive mode at the configured power.
pub fn run_am_analysis(cfg: &ScanConfig) -> Result<AmTable, CliError> {
    if !(cfg.drive.power > 0.0) {
        return Err(CliError::config(None, "drive.power_pw", "angular-momentum analysis needs a positive power"));
    }
    let a = cfg.fiber.radius;
    let mut rows = Vec::new();
    let mut summaries = Vec::new();
    for drive in resolve_drives(cfg)? {
        let id = drive.spec.mode_id;
        let (kind, p, l) = (id.kind, id.p, id.kind.l);
        let pl = id.azimuthal_order() as f64;
        for x in cfg.am.values() {
            let ph = photon_am(&drive.mode, drive.amplitude, p, l, x * a)?;
            if !((ph - pl).abs() < QUANTIZATION_TOL) {
                return Err(CliError::Numerical(format!("photon angular momentum {ph} ħ of {kind} at r/a={x} differs from {pl} ħ")));
            }
            rows.push(AmRow {
                mode: kind,
                p,
                r_over_a: x,
                densities: am_densities(&drive.mode, drive.amplitude, p, l, x * a),
                photon_am: ph,
            });
        }
        let integrated = integrated_am(&drive.mode, drive.amplitude, p, l)?;
        summaries.push(AmSummary {
            mode: kind,
            p,
            photon_am: integrated.per_photon(id.omega),
            integrated,
        });
    }
    Ok(AmTable { rows, summaries })
}
