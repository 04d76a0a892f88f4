//! Radial torque scans.

use rayon::prelude::*;

use fibertorque::atom_dynamics::{Drive, DriveSpec};
use fibertorque::coupling::{AtomSpec, EmissionBreakdown, EmissionModel};
use fibertorque::fiber_modes::{GuidedModeId, ModeKind};
use fibertorque::torques::{steady_state_torques, TorqueBreakdown};

use crate::config::ScanConfig;
use crate::error::CliError;

/// Relative bound on the torque identity residuals of every row.
pub const IDENTITY_TOL: f64 = 1e-12;

/// One atom position, dipole orientation and drive mode.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanRow {
    pub mode: ModeKind,
    pub p: i32,
    pub q: i32,
    pub r_over_a: f64,
    pub r: f64,
    pub gamma_total: f64,
    pub gamma_guided: f64,
    pub gamma_radiation: f64,
    pub torques: TorqueBreakdown,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanTable {
    pub gamma0: f64,
    pub rows: Vec<ScanRow>,
}

impl ScanTable {
    /// Rows for one drive mode and dipole index, in scan order.
    pub fn series(&self, mode: ModeKind, q: i32) -> Vec<&ScanRow> {
        self.rows.iter().filter(|r| r.mode == mode && r.q == q).collect()
    }
}

pub fn transition_frequency(cfg: &ScanConfig) -> f64 {
    2.0 * std::f64::consts::PI * fibertorque::constants::C / cfg.atom.lambda0
}

pub fn atom_at(cfg: &ScanConfig, q: i32, r: f64) -> Result<AtomSpec, CliError> {
    Ok(AtomSpec::new(cfg.atom.lambda0, cfg.atom.gamma0, q, r, 0.0, 0.0)?)
}

/// Drive modes of the configuration, solved once per run.
pub fn resolve_drives(cfg: &ScanConfig) -> Result<Vec<Drive>, CliError> {
    let omega = transition_frequency(cfg);
    cfg.drive
        .modes
        .iter()
        .map(|&kind| {
            let id = GuidedModeId::new(omega, kind, cfg.drive.f, cfg.drive.p_for(kind))?;
            let spec = DriveSpec::new(id, cfg.drive.power, cfg.drive.detuning)?;
            Ok(spec.resolve(&cfg.fiber)?)
        })
        .collect()
}

fn check_row(row: &ScanRow, pl: i32, b: &EmissionBreakdown) -> Result<(), CliError> {
    let res = row.torques.identity_residuals(pl, row.q, b);
    if !(res.max() < IDENTITY_TOL) || row.torques.q_total != 0.0 {
        return Err(CliError::Numerical(format!(
            "torque identities violated for {} q={} at r/a={}: {res:?}, Q_total={}",
            row.mode, row.q, row.r_over_a, row.torques.q_total
        )));
    }
    Ok(())
}

/// Steady-state torques on the scan grid for every configured drive mode
/// and dipole index. Emission rates are computed once per radius.
pub fn run_scan(cfg: &ScanConfig, tol: f64) -> Result<ScanTable, CliError> {
    let range = cfg
        .scan
        .ok_or_else(|| CliError::config(None, "scan.r_over_a", "required for a torque scan"))?;
    let a = cfg.fiber.radius;
    let model = EmissionModel::new(&cfg.fiber, transition_frequency(cfg), tol)?;
    let drives = resolve_drives(cfg)?;
    let grid = range.values();
    let atoms = grid.iter().map(|x| atom_at(cfg, 0, x * a)).collect::<Result<Vec<_>, _>>()?;
    let breakdowns = atoms
        .par_iter()
        .map(|at| model.breakdowns_all_q(at))
        .collect::<Result<Vec<_>, _>>()?;

    let mut rows = Vec::with_capacity(drives.len() * cfg.atom.q.len() * grid.len());
    for drive in &drives {
        for &q in &cfg.atom.q {
            for ((x, at), bs) in grid.iter().zip(&atoms).zip(&breakdowns) {
                let b = &bs[(q + 1) as usize];
                let (_, torques) = steady_state_torques(drive, &at.with_q(q), b)?;
                let row = ScanRow {
                    mode: drive.spec.mode_id.kind,
                    p: drive.spec.mode_id.p,
                    q,
                    r_over_a: *x,
                    r: at.r,
                    gamma_total: b.gamma_total,
                    gamma_guided: b.guided_total(),
                    gamma_radiation: b.radiation_total(),
                    torques,
                };
                check_row(&row, drive.orbital_order(), b)?;
                rows.push(row);
            }
        }
    }
    Ok(ScanTable {
        gamma0: cfg.atom.gamma0,
        rows,
    })
}
