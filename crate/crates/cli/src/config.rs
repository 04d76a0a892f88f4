//! `key = value` configuration files with dotted section names.
//!
//! ```text
//! # comment
//! fiber.radius_nm = 350
//! [drive]
//! mode = HE21, TE01
//! ```
//!
//! A `[section]` header prefixes the keys that follow it until the next
//! header. Every key may appear once.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::path::PathBuf;

use fibertorque::fiber_modes::{FiberSpec, ModeKind};

use crate::error::CliError;

/// Inclusive linear grid `start:stop:points`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Range {
    pub start: f64,
    pub stop: f64,
    pub points: usize,
}

impl Range {
    pub fn values(&self) -> Vec<f64> {
        if self.points == 1 {
            return vec![self.start];
        }
        let step = (self.stop - self.start) / (self.points - 1) as f64;
        (0..self.points).map(|i| self.start + step * i as f64).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Plot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlotStyle {
    Fig2,
    Fig3,
    Fig4,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AtomConfig {
    /// Transition wavelength (m).
    pub lambda0: f64,
    /// Free-space linewidth γ₀ (rad/s).
    pub gamma0: f64,
    pub q: Vec<i32>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DriveConfig {
    pub modes: Vec<ModeKind>,
    pub f: i32,
    /// Circulation for hybrid modes; TE and TM modes always use 0.
    pub p: i32,
    /// Power (W).
    pub power: f64,
    /// Detuning Δ (rad/s).
    pub detuning: f64,
}

impl DriveConfig {
    pub fn p_for(&self, kind: ModeKind) -> i32 {
        if kind.is_hybrid() {
            self.p
        } else {
            0
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OutputConfig {
    pub path: Option<PathBuf>,
    pub format: OutputFormat,
    pub style: PlotStyle,
}

/// Everything a run needs.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanConfig {
    pub fiber: FiberSpec,
    pub atom: AtomConfig,
    pub drive: DriveConfig,
    pub scan: Option<Range>,
    pub am: Range,
    pub output: OutputConfig,
}

#[derive(Debug)]
struct Entry {
    line: usize,
    value: String,
    used: bool,
}

struct Entries(BTreeMap<String, Entry>);

impl Entries {
    fn take(&mut self, key: &str) -> Option<(usize, String)> {
        self.0.get_mut(key).map(|e| {
            e.used = true;
            (e.line, e.value.clone())
        })
    }

    fn parsed<T>(&mut self, key: &str, default: Option<T>, parse: impl Fn(&str) -> Result<T, String>) -> Result<T, CliError> {
        match self.take(key) {
            Some((line, v)) => parse(&v).map_err(|m| CliError::config(Some(line), key, m)),
            None => default.ok_or_else(|| CliError::config(None, key, "required key is missing")),
        }
    }

    fn optional<T>(&mut self, key: &str, parse: impl Fn(&str) -> Result<T, String>) -> Result<Option<T>, CliError> {
        match self.take(key) {
            Some((line, v)) => parse(&v).map(Some).map_err(|m| CliError::config(Some(line), key, m)),
            None => Ok(None),
        }
    }
}

fn number(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(x) if x.is_finite() => Ok(x),
        _ => Err(format!("expected a number, got '{s}'")),
    }
}

fn positive(s: &str) -> Result<f64, String> {
    let x = number(s)?;
    if x > 0.0 {
        Ok(x)
    } else {
        Err(format!("expected a positive number, got '{s}'"))
    }
}

fn sign(s: &str) -> Result<i32, String> {
    match s.parse::<i32>() {
        Ok(v @ (1 | -1)) => Ok(v),
        _ => Err(format!("expected +1 or -1, got '{s}'")),
    }
}

fn list<T>(s: &str, item: impl Fn(&str) -> Result<T, String>) -> Result<Vec<T>, String> {
    let items: Vec<T> = s.split(',').map(|x| item(x.trim())).collect::<Result<_, _>>()?;
    if items.is_empty() {
        return Err("expected at least one value".into());
    }
    Ok(items)
}

fn q_index(s: &str) -> Result<i32, String> {
    match s.parse::<i32>() {
        Ok(v @ -1..=1) => Ok(v),
        _ => Err(format!("expected -1, 0 or +1, got '{s}'")),
    }
}

fn mode_kind(s: &str) -> Result<ModeKind, String> {
    s.parse::<ModeKind>().map_err(|e| e.to_string())
}

fn range(s: &str) -> Result<Range, String> {
    let parts: Vec<&str> = s.split(':').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(format!("expected start:stop:points, got '{s}'"));
    }
    let (start, stop) = (number(parts[0])?, number(parts[1])?);
    let points: usize = parts[2].parse().map_err(|_| format!("expected an integer point count, got '{}'", parts[2]))?;
    if points < 2 {
        return Err(format!("need at least 2 points, got {points}"));
    }
    if !(stop > start) {
        return Err(format!("stop must exceed start in '{s}'"));
    }
    Ok(Range { start, stop, points })
}

/// Splits the text into `key -> (line, value)` pairs.
fn tokenize(text: &str) -> Result<Entries, CliError> {
    let mut map = BTreeMap::new();
    let mut section = String::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        if let Some(name) = body.strip_prefix('[') {
            let name = name
                .strip_suffix(']')
                .ok_or_else(|| CliError::config(Some(line), body, "unterminated section header"))?
                .trim();
            if name.is_empty() || name.contains(char::is_whitespace) {
                return Err(CliError::config(Some(line), body, "invalid section name"));
            }
            section = format!("{name}.");
            continue;
        }
        let (key, value) = body
            .split_once('=')
            .ok_or_else(|| CliError::config(Some(line), body, "expected 'key = value'"))?;
        let key = format!("{section}{}", key.trim());
        let value = value.trim();
        if key.ends_with('.') || key.contains(char::is_whitespace) {
            return Err(CliError::config(Some(line), &key, "invalid key"));
        }
        if value.is_empty() {
            return Err(CliError::config(Some(line), &key, "missing value"));
        }
        if let Some(prev) = map.get(&key) {
            let prev: &Entry = prev;
            return Err(CliError::config(Some(line), &key, format!("duplicate key (first set on line {})", prev.line)));
        }
        map.insert(
            key,
            Entry {
                line,
                value: value.to_string(),
                used: false,
            },
        );
    }
    Ok(Entries(map))
}

impl ScanConfig {
    /// Parses and validates configuration text.
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut e = tokenize(text)?;

        let radius = e.parsed("fiber.radius_nm", None, positive)? / 1e9;
        let n1 = e.parsed("fiber.n1", None, positive)?;
        let n2 = e.parsed("fiber.n2", Some(1.0), positive)?;
        let fiber = FiberSpec::new(radius, n1, n2).map_err(|err| CliError::config(None, "fiber", err.to_string()))?;

        let lambda0 = e.parsed("atom.lambda0_nm", None, positive)? / 1e9;
        let gamma0 = e.parsed("atom.gamma0_mhz", None, positive)? * 2.0 * PI * 1e6;
        let q = e.parsed("atom.q", Some(vec![1, 0, -1]), |s| list(s, q_index))?;

        let modes = e.parsed("drive.mode", Some(vec![ModeKind::he(2, 1)]), |s| list(s, mode_kind))?;
        let f = e.parsed("drive.f", Some(1), sign)?;
        let p = e.parsed("drive.p", Some(1), sign)?;
        let power = e.parsed("drive.power_pw", None, |s| {
            let x = number(s)?;
            if x >= 0.0 {
                Ok(x / 1e12)
            } else {
                Err(format!("power must be non-negative, got '{s}'"))
            }
        })?;
        let detuning = e.parsed("drive.detuning_mhz", Some(0.0), number)? * 2.0 * PI * 1e6;

        let scan_line = e.0.get("scan.r_over_a").map(|x| x.line);
        let scan = e.optional("scan.r_over_a", range)?;
        if let Some(r) = scan {
            if !(r.start > 1.0) {
                return Err(CliError::config(
                    scan_line,
                    "scan.r_over_a",
                    format!("the atom must be outside the fiber: start must exceed 1, got {}", r.start),
                ));
            }
        }
        let am_line = e.0.get("am.r_over_a").map(|x| x.line);
        let am = e.parsed("am.r_over_a", Some(Range { start: 0.1, stop: 5.0, points: 50 }), range)?;
        if !(am.start > 0.0) {
            return Err(CliError::config(am_line, "am.r_over_a", "start must be positive"));
        }

        let path = e.optional("output.path", |s| Ok(PathBuf::from(s)))?;
        let format = e.parsed("output.format", Some(OutputFormat::Csv), |s| match s {
            "csv" => Ok(OutputFormat::Csv),
            "plot" => Ok(OutputFormat::Plot),
            _ => Err(format!("expected csv or plot, got '{s}'")),
        })?;
        let style = e.parsed("output.style", Some(PlotStyle::Fig2), |s| match s {
            "fig2" => Ok(PlotStyle::Fig2),
            "fig3" => Ok(PlotStyle::Fig3),
            "fig4" => Ok(PlotStyle::Fig4),
            _ => Err(format!("expected fig2, fig3 or fig4, got '{s}'")),
        })?;

        if let Some((key, entry)) = e.0.iter().find(|(_, v)| !v.used) {
            return Err(CliError::config(Some(entry.line), key, "unknown key"));
        }

        Ok(Self {
            fiber,
            atom: AtomConfig { lambda0, gamma0, q },
            drive: DriveConfig {
                modes,
                f,
                p,
                power,
                detuning,
            },
            scan,
            am,
            output: OutputConfig { path, format, style },
        })
    }
}
