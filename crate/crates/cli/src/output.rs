//! CSV and plot-data serialization. Values use 12 significant digits in
//! scientific notation, so identical tables give identical bytes.

use std::fs;
use std::path::{Path, PathBuf};

use fibertorque::constants::{ZN, ZN_NM};
use fibertorque::fiber_modes::ModeKind;

use crate::am::AmTable;
use crate::config::PlotStyle;
use crate::error::CliError;
use crate::modes::ModeTable;
use crate::scan::ScanTable;

pub fn fmt_value(x: f64) -> String {
    format!("{x:.11e}")
}

fn fmt_sign(v: i32) -> String {
    if v == 0 {
        "0".into()
    } else {
        format!("{v:+}")
    }
}

fn to_string(w: csv::Writer<Vec<u8>>) -> Result<String, CliError> {
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Io(e.to_string()))
}

pub const SCAN_HEADER: [&str; 16] = [
    "mode",
    "p",
    "q",
    "r_over_a",
    "r_nm",
    "Gamma_over_gamma0",
    "Gamma_guided_over_gamma0",
    "Gamma_radiation_over_gamma0",
    "rho_ee",
    "T_drv_zN_nm",
    "Q_drv_zN_nm",
    "T_scatt_zN_nm",
    "Q_scatt_zN_nm",
    "T_total_zN_nm",
    "Q_total_zN_nm",
    "F_phi_zN",
];

pub fn scan_csv(table: &ScanTable) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(SCAN_HEADER)?;
    let g0 = table.gamma0;
    for r in &table.rows {
        let t = &r.torques;
        let mut rec = vec![r.mode.to_string(), fmt_sign(r.p), fmt_sign(r.q)];
        rec.extend(
            [
                r.r_over_a,
                r.r * 1e9,
                r.gamma_total / g0,
                r.gamma_guided / g0,
                r.gamma_radiation / g0,
                t.rho_ee,
                t.t_drv / ZN_NM,
                t.q_drv / ZN_NM,
                t.t_scatt / ZN_NM,
                t.q_scatt / ZN_NM,
                t.t_total / ZN_NM,
                t.q_total / ZN_NM,
                t.f_phi / ZN,
            ]
            .map(fmt_value),
        );
        w.write_record(&rec)?;
    }
    to_string(w)
}

/// Density table and cross-section totals.
pub fn am_csv(table: &AmTable) -> Result<(String, String), CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "mode",
        "p",
        "r_over_a",
        "j_orb_Js_per_m3",
        "j_spin_Js_per_m3",
        "j_can_Js_per_m3",
        "u_J_per_m3",
        "photon_am_hbar",
    ])?;
    for r in &table.rows {
        let d = &r.densities;
        let mut rec = vec![r.mode.to_string(), fmt_sign(r.p)];
        rec.extend([r.r_over_a, d.j_orb, d.j_spin, d.j_can, d.u, r.photon_am].map(fmt_value));
        w.write_record(&rec)?;
    }
    let densities = to_string(w)?;

    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["mode", "p", "J_orb_Js_per_m", "J_spin_Js_per_m", "U_J_per_m", "J_orb_over_J_spin", "photon_am_hbar"])?;
    for s in &table.summaries {
        let i = &s.integrated;
        let ratio = if i.j_spin != 0.0 { i.j_orb / i.j_spin } else { f64::NAN };
        let mut rec = vec![s.mode.to_string(), fmt_sign(s.p)];
        rec.extend([i.j_orb, i.j_spin, i.energy, ratio, s.photon_am].map(fmt_value));
        w.write_record(&rec)?;
    }
    Ok((densities, to_string(w)?))
}

pub fn modes_csv(table: &ModeTable) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["mode", "V", "beta_per_m", "beta_prime_s_per_m", "n_eff", "n_group", "V_cutoff"])?;
    for r in &table.rows {
        let mut rec = vec![r.kind.to_string()];
        rec.extend([table.v, r.beta, r.beta_prime, r.n_eff, r.n_group, r.v_cutoff].map(fmt_value));
        w.write_record(&rec)?;
    }
    to_string(w)
}

/// Plot-ready files as `(file name, contents)`, one column per series.
pub fn plot_files(table: &ScanTable, style: PlotStyle) -> Result<Vec<(String, String)>, CliError> {
    let mut modes: Vec<ModeKind> = Vec::new();
    let mut qs: Vec<i32> = Vec::new();
    for r in &table.rows {
        if !modes.contains(&r.mode) {
            modes.push(r.mode);
        }
        if !qs.contains(&r.q) {
            qs.push(r.q);
        }
    }
    if modes.is_empty() {
        return Err(CliError::config(None, "output.style", "nothing to plot: the scan table is empty"));
    }
    type Column = fn(&crate::scan::ScanRow) -> f64;
    let panel = |name: String, labels: Vec<String>, series: Vec<Vec<f64>>, grid: Vec<f64>| -> Result<(String, String), CliError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header = vec!["r_over_a".to_string()];
        header.extend(labels);
        w.write_record(&header)?;
        for (i, x) in grid.iter().enumerate() {
            let mut rec = vec![fmt_value(*x)];
            rec.extend(series.iter().map(|s| fmt_value(s[i])));
            w.write_record(&rec)?;
        }
        Ok((name, to_string(w)?))
    };
    let grid_of = |mode: ModeKind, q: i32| table.series(mode, q).iter().map(|r| r.r_over_a).collect::<Vec<_>>();

    let mut files = Vec::new();
    match style {
        PlotStyle::Fig2 | PlotStyle::Fig3 => {
            let cols: [(&str, Column); 2] = if style == PlotStyle::Fig2 {
                [("T_drv", |r| r.torques.t_drv / ZN_NM), ("Q_drv", |r| r.torques.q_drv / ZN_NM)]
            } else {
                [("T_scatt", |r| r.torques.t_scatt / ZN_NM), ("Q_scatt", |r| r.torques.q_scatt / ZN_NM)]
            };
            let prefix = if style == PlotStyle::Fig2 { "fig2" } else { "fig3" };
            for &mode in &modes {
                for (name, col) in cols {
                    let labels = qs.iter().map(|q| format!("{name}_zN_nm_q{}", fmt_sign(*q))).collect();
                    let series = qs.iter().map(|&q| table.series(mode, q).into_iter().map(col).collect()).collect();
                    files.push(panel(format!("{prefix}_{mode}_{name}.csv"), labels, series, grid_of(mode, qs[0]))?);
                }
            }
        }
        PlotStyle::Fig4 => {
            for &q in &qs {
                let labels = modes.iter().map(|m| format!("T_total_zN_nm_{m}")).collect();
                let series = modes
                    .iter()
                    .map(|&m| table.series(m, q).into_iter().map(|r| r.torques.t_total / ZN_NM).collect())
                    .collect();
                files.push(panel(format!("fig4_q{}.csv", fmt_sign(q)), labels, series, grid_of(modes[0], q))?);
            }
        }
    }
    Ok(files)
}

/// Writes the plot files for `style` into `dir`, creating it if needed.
pub fn emit_plotdata(table: &ScanTable, style: PlotStyle, dir: &Path) -> Result<Vec<PathBuf>, CliError> {
    let files = plot_files(table, style)?;
    fs::create_dir_all(dir)?;
    let mut written = Vec::with_capacity(files.len());
    for (name, contents) in files {
        let path = dir.join(name);
        fs::write(&path, contents)?;
        written.push(path);
    }
    Ok(written)
}
