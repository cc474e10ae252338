//! Diagnostics CSV, snapshot and config file I/O.
//!
//! All numeric output uses 17 significant digits so files are
//! byte-deterministic and round-trip to the exact same doubles.

use crate::grid::{DiagnosticsRecord, PhaseState};
use crate::scenario::ScenarioConfig;
use crate::{Error, Result};
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

pub const DIAGNOSTICS_HEADER: &str = "t,mass,l1,l2,energy,entropy,e_l2,e_linf,troubled_cells";

fn full(v: f64) -> String {
    format!("{v:.16e}")
}

/// Render the per-step diagnostics series as CSV text.
pub fn diagnostics_csv(records: &[DiagnosticsRecord]) -> String {
    let mut out = String::with_capacity(96 * (records.len() + 1));
    out.push_str(DIAGNOSTICS_HEADER);
    out.push('\n');
    for r in records {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{}",
            full(r.t),
            full(r.mass),
            full(r.l1),
            full(r.l2),
            full(r.energy),
            full(r.entropy),
            full(r.e_l2),
            full(r.e_linf),
            r.troubled_cells
        );
    }
    out
}

/// Write the diagnostics series to `path`.
pub fn emit_diagnostics_csv(records: &[DiagnosticsRecord], path: &Path) -> Result<()> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir).map_err(Error::io(dir))?;
    }
    fs::write(path, diagnostics_csv(records)).map_err(Error::io(path))
}

/// Parse a diagnostics CSV produced by [`emit_diagnostics_csv`].
pub fn read_diagnostics_csv(path: &Path) -> Result<Vec<DiagnosticsRecord>> {
    let text = fs::read_to_string(path).map_err(Error::io(path))?;
    let mut lines = text.lines();
    let header = lines.next().unwrap_or_default();
    if header != DIAGNOSTICS_HEADER {
        return Err(Error::Format {
            path: path.to_path_buf(),
            message: format!("unexpected header `{header}`"),
        });
    }
    let mut records = Vec::new();
    for (ln, line) in lines.enumerate() {
        let cols: Vec<&str> = line.split(',').collect();
        if cols.len() != 9 {
            return Err(Error::Format {
                path: path.to_path_buf(),
                message: format!("line {}: expected 9 columns, got {}", ln + 2, cols.len()),
            });
        }
        let num = |s: &str| -> Result<f64> {
            s.parse().map_err(|_| Error::Format {
                path: path.to_path_buf(),
                message: format!("line {}: bad number `{s}`", ln + 2),
            })
        };
        records.push(DiagnosticsRecord {
            t: num(cols[0])?,
            mass: num(cols[1])?,
            l1: num(cols[2])?,
            l2: num(cols[3])?,
            energy: num(cols[4])?,
            entropy: num(cols[5])?,
            e_l2: num(cols[6])?,
            e_linf: num(cols[7])?,
            troubled_cells: cols[8].parse().map_err(|_| Error::Format {
                path: path.to_path_buf(),
                message: format!("line {}: bad count `{}`", ln + 2, cols[8]),
            })?,
        });
    }
    Ok(records)
}

#[derive(Debug, serde::Serialize, serde::Deserialize)]
struct SnapshotMeta {
    t: f64,
    nx: usize,
    nv: usize,
    x_lo: f64,
    x_hi: f64,
    v_lo: f64,
    v_hi: f64,
    scenario: String,
    variant: String,
}

/// Write a phase-space snapshot as `x,v,f` CSV (x outer, v inner) plus a
/// JSON sidecar with the grid and run metadata.
pub fn emit_snapshot(
    state: &PhaseState,
    t: f64,
    path: &Path,
    scenario: &str,
    variant: &str,
) -> Result<()> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir).map_err(Error::io(dir))?;
    }
    let mut out = String::with_capacity(48 * state.nx() * state.nv());
    out.push_str("x,v,f\n");
    for i in 0..state.nx() {
        let x = state.grid_x.center(i);
        for j in 0..state.nv() {
            let v = state.grid_v.center(j);
            let _ = writeln!(out, "{},{},{}", full(x), full(v), full(state.f[[i, j]]));
        }
    }
    fs::write(path, out).map_err(Error::io(path))?;

    let meta = SnapshotMeta {
        t,
        nx: state.nx(),
        nv: state.nv(),
        x_lo: state.grid_x.x_lo,
        x_hi: state.grid_x.x_hi,
        v_lo: state.grid_v.x_lo,
        v_hi: state.grid_v.x_hi,
        scenario: scenario.to_string(),
        variant: variant.to_string(),
    };
    let meta_path = path.with_extension("meta.json");
    let text = serde_json::to_string_pretty(&meta).expect("metadata serializes");
    fs::write(&meta_path, text).map_err(Error::io(meta_path))
}

/// Read back the `f` column of a snapshot, in file order.
pub fn read_snapshot_values(path: &Path) -> Result<Vec<f64>> {
    let text = fs::read_to_string(path).map_err(Error::io(path))?;
    let mut values = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        if ln == 0 {
            if line != "x,v,f" {
                return Err(Error::Format {
                    path: path.to_path_buf(),
                    message: format!("unexpected header `{line}`"),
                });
            }
            continue;
        }
        let last = line.rsplit(',').next().unwrap_or_default();
        values.push(last.parse().map_err(|_| Error::Format {
            path: path.to_path_buf(),
            message: format!("line {}: bad number `{last}`", ln + 1),
        })?);
    }
    Ok(values)
}

/// Read a run configuration from a JSON file.
pub fn read_config(path: &Path) -> Result<ScenarioConfig> {
    let text = fs::read_to_string(path).map_err(Error::io(path))?;
    serde_json::from_str(&text).map_err(|e| Error::Format {
        path: path.to_path_buf(),
        message: e.to_string(),
    })
}

/// Write a run configuration as JSON.
pub fn write_config(config: &ScenarioConfig, path: &Path) -> Result<()> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir).map_err(Error::io(dir))?;
    }
    let text = serde_json::to_string_pretty(config).expect("config serializes");
    fs::write(path, text).map_err(Error::io(path))
}
