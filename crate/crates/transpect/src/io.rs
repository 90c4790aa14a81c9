//! CSV and JSON serialization of signals, spectra and study tables.
//!
//! All floating-point columns use a fixed 17-significant-digit scientific
//! format, enough to round-trip every f64 exactly, so repeated runs with the
//! same inputs produce byte-identical files.

use std::fs;
use std::io::Write as _;
use std::path::Path;

use num_complex::Complex64;
use thiserror::Error;

use crate::distributions::DeltaStudyRow;
use crate::grid::{Grid, WeightedSignal};
use crate::solver::EnvelopeReport;
use crate::wft::SpectralDensity;

#[derive(Debug, Error)]
pub enum IoError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("malformed input at line {line}: {detail}")]
    Malformed { line: usize, detail: String },
    #[error(transparent)]
    Numeric(#[from] crate::error::Error),
}

pub type IoResult<T> = std::result::Result<T, IoError>;

/// Fixed 17-significant-digit formatting used by every CSV column.
pub fn format_g17(x: f64) -> String {
    format!("{x:.16e}")
}

/// Render a signal as CSV with columns t, y, re, im (header row mandatory).
pub fn signal_to_csv_string(f: &WeightedSignal) -> String {
    let grid = f.grid();
    let mut out = String::from("t,y,re,im\n");
    for ((z, &t), &y) in f.samples().iter().zip(grid.t_nodes()).zip(grid.y_nodes()) {
        out.push_str(&format!(
            "{},{},{},{}\n",
            format_g17(t),
            format_g17(y),
            format_g17(z.re),
            format_g17(z.im)
        ));
    }
    out
}

pub fn write_signal_csv(path: &Path, f: &WeightedSignal) -> IoResult<()> {
    write_atomic(path, signal_to_csv_string(f).as_bytes())
}

/// Read a signal CSV produced by [`write_signal_csv`] back onto a grid. The
/// node columns must match the grid within 1e-9 relative.
pub fn read_signal_csv(path: &Path, grid: &Grid) -> IoResult<WeightedSignal> {
    let text = fs::read_to_string(path)?;
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, header)) if header.trim() == "t,y,re,im" => {}
        other => {
            return Err(IoError::Malformed {
                line: 1,
                detail: format!("expected header 't,y,re,im', got {:?}", other.map(|o| o.1)),
            })
        }
    }
    let mut samples = Vec::with_capacity(grid.len());
    let tol = 1e-9 * grid.half_width().max(1.0);
    for (idx, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let cols: Vec<&str> = line.split(',').collect();
        if cols.len() != 4 {
            return Err(IoError::Malformed {
                line: idx + 1,
                detail: format!("expected 4 columns, got {}", cols.len()),
            });
        }
        let parse = |s: &str| -> IoResult<f64> {
            s.trim().parse::<f64>().map_err(|e| IoError::Malformed {
                line: idx + 1,
                detail: format!("bad number {s:?}: {e}"),
            })
        };
        let (t, y, re, im) = (parse(cols[0])?, parse(cols[1])?, parse(cols[2])?, parse(cols[3])?);
        let j = samples.len();
        if j >= grid.len() {
            return Err(IoError::Malformed {
                line: idx + 1,
                detail: format!("more than {} rows", grid.len()),
            });
        }
        if (y - grid.y_nodes()[j]).abs() > tol || (t - grid.t_nodes()[j]).abs() > tol * t.abs().max(1.0) {
            return Err(IoError::Malformed {
                line: idx + 1,
                detail: format!(
                    "node mismatch: file has (t, y) = ({t}, {y}), grid has ({}, {})",
                    grid.t_nodes()[j],
                    grid.y_nodes()[j]
                ),
            });
        }
        samples.push(Complex64::new(re, im));
    }
    if samples.len() != grid.len() {
        return Err(IoError::Malformed {
            line: 0,
            detail: format!("expected {} rows, got {}", grid.len(), samples.len()),
        });
    }
    Ok(WeightedSignal::from_samples(grid, samples)?)
}

/// Spectrum CSV with columns xi, re, im.
pub fn spectrum_to_csv_string(spectrum: &SpectralDensity) -> String {
    let mut out = String::from("xi,re,im\n");
    for (z, &xi) in spectrum.samples().iter().zip(spectrum.grid().xi_nodes()) {
        out.push_str(&format!(
            "{},{},{}\n",
            format_g17(xi),
            format_g17(z.re),
            format_g17(z.im)
        ));
    }
    out
}

pub fn write_spectrum_csv(path: &Path, spectrum: &SpectralDensity) -> IoResult<()> {
    write_atomic(path, spectrum_to_csv_string(spectrum).as_bytes())
}

/// Convergence table CSV with columns eps, abs_error, est_order. The order
/// column is empty on the first row.
pub fn delta_study_to_csv_string(rows: &[DeltaStudyRow]) -> String {
    let mut out = String::from("eps,abs_error,est_order\n");
    for row in rows {
        let order = row.est_order.map(format_g17).unwrap_or_default();
        out.push_str(&format!(
            "{},{},{}\n",
            format_g17(row.eps),
            format_g17(row.abs_error),
            order
        ));
    }
    out
}

pub fn write_delta_study_csv(path: &Path, rows: &[DeltaStudyRow]) -> IoResult<()> {
    write_atomic(path, delta_study_to_csv_string(rows).as_bytes())
}

/// Envelope sweep CSV with columns t0, alpha, sup_envelope.
pub fn envelope_report_to_csv_string(report: &EnvelopeReport) -> String {
    let mut out = String::from("t0,alpha,sup_envelope\n");
    for row in &report.rows {
        out.push_str(&format!(
            "{},{},{}\n",
            format_g17(row.t0),
            format_g17(row.alpha),
            format_g17(row.sup_envelope)
        ));
    }
    out
}

pub fn write_envelope_report_csv(path: &Path, report: &EnvelopeReport) -> IoResult<()> {
    write_atomic(path, envelope_report_to_csv_string(report).as_bytes())
}

/// Pointwise envelope CSV with columns t, u, plus_env, minus_env: the real
/// part of the signal against the curves +-bound/omega(t).
pub fn pointwise_envelope_to_csv_string(f: &WeightedSignal, bound: f64) -> String {
    let mut out = String::from("t,u,plus_env,minus_env\n");
    for ((z, &t), &w) in f
        .samples()
        .iter()
        .zip(f.grid().t_nodes())
        .zip(f.grid().omega_nodes())
    {
        let env = bound / w;
        out.push_str(&format!(
            "{},{},{},{}\n",
            format_g17(t),
            format_g17(z.re),
            format_g17(env),
            format_g17(-env)
        ));
    }
    out
}

pub fn write_pointwise_envelope_csv(path: &Path, f: &WeightedSignal, bound: f64) -> IoResult<()> {
    write_atomic(path, pointwise_envelope_to_csv_string(f, bound).as_bytes())
}

/// Serialize any report as pretty JSON with a trailing newline.
pub fn to_json_string<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize infallibly");
    s.push('\n');
    s
}

pub fn write_json<T: serde::Serialize>(path: &Path, value: &T) -> IoResult<()> {
    write_atomic(path, to_json_string(value).as_bytes())
}

fn write_atomic(path: &Path, bytes: &[u8]) -> IoResult<()> {
    if let Some(dir) = path.parent() {
        if !dir.as_os_str().is_empty() {
            fs::create_dir_all(dir)?;
        }
    }
    let mut file = fs::File::create(path)?;
    file.write_all(bytes)?;
    Ok(())
}
