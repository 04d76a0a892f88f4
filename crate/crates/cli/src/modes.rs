//! Guided-mode table at the transition frequency.

use fibertorque::constants::C;
use fibertorque::fiber_modes::{cutoff_v, group_slope, guided_kinds, v_number, ModeKind};

use crate::config::ScanConfig;
use crate::error::CliError;
use crate::scan::transition_frequency;

#[derive(Debug, Clone, PartialEq)]
pub struct ModeRow {
    pub kind: ModeKind,
    pub beta: f64,
    pub beta_prime: f64,
    pub n_eff: f64,
    pub n_group: f64,
    pub v_cutoff: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ModeTable {
    pub v: f64,
    pub rows: Vec<ModeRow>,
}

pub fn run_modes(cfg: &ScanConfig) -> Result<ModeTable, CliError> {
    let omega = transition_frequency(cfg);
    let k = omega / C;
    let rows = guided_kinds(&cfg.fiber, omega)
        .into_iter()
        .map(|(kind, beta)| {
            let beta_prime = group_slope(&cfg.fiber, omega, kind)?;
            Ok(ModeRow {
                kind,
                beta,
                beta_prime,
                n_eff: beta / k,
                n_group: C * beta_prime,
                v_cutoff: cutoff_v(&cfg.fiber, kind),
            })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(ModeTable {
        v: v_number(&cfg.fiber, omega),
        rows,
    })
}
