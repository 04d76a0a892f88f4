//! Configuration-driven front end: radial torque scans, angular-momentum
//! analysis and mode tables for a nanofiber-coupled two-level atom.

pub mod am;
pub mod config;
pub mod error;
pub mod modes;
pub mod output;
pub mod scan;

use std::fs;
use std::path::{Path, PathBuf};

pub use am::{run_am_analysis, AmTable};
pub use config::ScanConfig;
pub use error::CliError;
pub use modes::{run_modes, ModeTable};
pub use output::emit_plotdata;
pub use scan::{run_scan, ScanTable};

use config::OutputFormat;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verb {
    ScanTorque,
    AmAnalysis,
    Modes,
}

pub fn load_config(path: &Path) -> Result<ScanConfig, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    ScanConfig::parse(&text)
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
    }
    fs::write(path, contents).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn sibling(path: &Path, suffix: &str) -> PathBuf {
    let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    path.with_file_name(format!("{stem}{suffix}"))
}

/// Runs one verb. Returns the text meant for standard output.
pub fn execute(verb: Verb, cfg: &ScanConfig, tol: f64, out: Option<&Path>) -> Result<String, CliError> {
    let target = out.map(Path::to_path_buf).or_else(|| cfg.output.path.clone());
    match verb {
        Verb::ScanTorque => {
            let table = run_scan(cfg, tol)?;
            match cfg.output.format {
                OutputFormat::Csv => {
                    let text = output::scan_csv(&table)?;
                    match target {
                        Some(p) => {
                            write_file(&p, &text)?;
                            Ok(format!("wrote {} rows to {}\n", table.rows.len(), p.display()))
                        }
                        None => Ok(text),
                    }
                }
                OutputFormat::Plot => {
                    let dir = target.ok_or_else(|| {
                        CliError::config(None, "output.path", "plot output needs a directory (output.path or --out)")
                    })?;
                    let files = emit_plotdata(&table, cfg.output.style, &dir)?;
                    Ok(files.iter().map(|f| format!("wrote {}\n", f.display())).collect())
                }
            }
        }
        Verb::AmAnalysis => {
            let table = run_am_analysis(cfg)?;
            let (densities, totals) = output::am_csv(&table)?;
            match target {
                Some(p) => {
                    let q = sibling(&p, "_integrated.csv");
                    write_file(&p, &densities)?;
                    write_file(&q, &totals)?;
                    Ok(format!("wrote {} and {}\n", p.display(), q.display()))
                }
                None => Ok(format!("{densities}\n{totals}")),
            }
        }
        Verb::Modes => {
            let text = output::modes_csv(&run_modes(cfg)?)?;
            match target {
                Some(p) => {
                    write_file(&p, &text)?;
                    Ok(format!("wrote {}\n", p.display()))
                }
                None => Ok(text),
            }
        }
    }
}
