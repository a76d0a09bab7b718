//! Companion plotting scripts (Python + matplotlib) for the CSV outputs.
//! Nothing is rendered in-process.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::csv::write_atomic;
use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlotKind {
    /// Attractor samples against the swept parameter.
    Bifurcation,
    /// Lyapunov exponent against the swept parameter, with a zero line.
    Lyapunov,
    /// Map values over the (x, alpha) unit square.
    Surface,
}

impl FromStr for PlotKind {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "bifurcation" => Ok(PlotKind::Bifurcation),
            "lyapunov" => Ok(PlotKind::Lyapunov),
            "surface" => Ok(PlotKind::Surface),
            other => Err(CliError::usage(
                "--kind",
                format!(
                    "unsupported plot kind {other:?} (expected bifurcation, lyapunov or surface)"
                ),
            )),
        }
    }
}

impl fmt::Display for PlotKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PlotKind::Bifurcation => "bifurcation",
            PlotKind::Lyapunov => "lyapunov",
            PlotKind::Surface => "surface",
        })
    }
}

/// `semi_logistic.csv` -> `semi_logistic.bifurcation.py`.
pub fn script_path(csv_path: &Path, kind: PlotKind) -> PathBuf {
    csv_path.with_extension(format!("{kind}.py"))
}

const PREAMBLE: &str = r#"#!/usr/bin/env python3
# Generated by fraclog. Requires matplotlib (and numpy for surfaces).
import csv
import os
import sys

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

HERE = os.path.dirname(os.path.abspath(__file__))
"#;

const READER: &str = r##"

def rows(path):
    with open(path, newline="") as fh:
        lines = [line for line in fh if not line.startswith("#")]
    return list(csv.DictReader(lines))
"##;

fn body(kind: PlotKind) -> &'static str {
    match kind {
        PlotKind::Bifurcation => {
            r#"

xs, ys = [], []
for row in rows(CSV):
    if row["status"] != "completed" or not row["samples"]:
        continue
    p = float(row["param"])
    for s in row["samples"].split(";"):
        xs.append(p)
        ys.append(float(s))

fig, ax = plt.subplots(figsize=(8, 5))
ax.scatter(xs, ys, s=0.05, c="black", marker=".", linewidths=0)
ax.set_xlabel("parameter")
ax.set_ylabel("x")
ax.set_title("bifurcation diagram")
fig.tight_layout()
fig.savefig(OUT, dpi=200)
"#
        }
        PlotKind::Lyapunov => {
            r#"

xs, ys = [], []
for row in rows(CSV):
    if row["lyapunov"] in ("undefined", ""):
        continue
    xs.append(float(row["param"]))
    ys.append(float(row["lyapunov"]))

fig, ax = plt.subplots(figsize=(8, 4))
ax.plot(xs, ys, lw=0.7, c="tab:blue")
ax.axhline(0.0, c="black", lw=0.8, ls="--")
ax.set_xlabel("parameter")
ax.set_ylabel("Lyapunov exponent")
fig.tight_layout()
fig.savefig(OUT, dpi=200)
"#
        }
        PlotKind::Surface => {
            r#"

import numpy as np

data = rows(CSV)
xs = sorted({float(r["x"]) for r in data})
alphas = sorted({float(r["alpha"]) for r in data})
ix = {v: i for i, v in enumerate(xs)}
ia = {v: i for i, v in enumerate(alphas)}
Z = np.full((len(alphas), len(xs)), np.nan)
for r in data:
    Z[ia[float(r["alpha"])], ix[float(r["x"])]] = float(r["value"])
X, A = np.meshgrid(xs, alphas)

fig = plt.figure(figsize=(7, 5))
ax = fig.add_subplot(projection="3d")
ax.plot_surface(X, A, Z, cmap="viridis", linewidth=0)
ax.set_xlabel("x")
ax.set_ylabel("alpha")
ax.set_zlabel("Q(x)")
fig.tight_layout()
fig.savefig(OUT, dpi=200)
"#
        }
    }
}

pub fn render_script(csv_name: &str, image_name: &str, kind: PlotKind) -> String {
    format!(
        "{PREAMBLE}CSV = sys.argv[1] if len(sys.argv) > 1 else os.path.join(HERE, {csv:?})\nOUT = sys.argv[2] if len(sys.argv) > 2 else os.path.join(HERE, {img:?})\n{READER}{body}",
        csv = csv_name,
        img = image_name,
        body = body(kind)
    )
}

/// Writes the plotting script for `csv_path` next to it and returns its path.
pub fn emit_plot_script(csv_path: &Path, kind: PlotKind) -> Result<PathBuf, CliError> {
    if !csv_path.is_file() {
        return Err(CliError::Io {
            path: csv_path.to_path_buf(),
            source: std::io::Error::new(std::io::ErrorKind::NotFound, "csv file not found"),
        });
    }
    let name = |p: &Path| {
        p.file_name()
            .map(|n| n.to_string_lossy().into_owned())
            .unwrap_or_default()
    };
    let script = script_path(csv_path, kind);
    let image = csv_path.with_extension(format!("{kind}.png"));
    write_atomic(
        &script,
        &render_script(&name(csv_path), &name(&image), kind),
    )?;
    Ok(script)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kinds_parse() {
        assert_eq!("surface".parse::<PlotKind>().unwrap(), PlotKind::Surface);
        let err = "heatmap".parse::<PlotKind>().unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn bifurcation_script_layout() {
        let s = render_script("semi_logistic.csv", "semi_logistic.bifurcation.png", PlotKind::Bifurcation);
        assert!(s.contains("\"semi_logistic.csv\""));
        assert!(s.contains("ax.set_xlabel(\"parameter\")"));
        assert!(s.contains("ax.set_ylabel(\"x\")"));
        assert!(s.contains("split(\";\")"));
    }

    #[test]
    fn lyapunov_script_has_zero_line() {
        let s = render_script("l.csv", "l.png", PlotKind::Lyapunov);
        assert!(s.contains("axhline(0.0"));
    }

    #[test]
    fn surface_script_uses_both_axes() {
        let s = render_script("fig1.csv", "fig1.png", PlotKind::Surface);
        assert!(s.contains("r[\"alpha\"]"));
        assert!(s.contains("plot_surface"));
    }

    #[test]
    fn missing_csv_is_an_error() {
        let dir = tempfile::tempdir().unwrap();
        assert!(emit_plot_script(&dir.path().join("nope.csv"), PlotKind::Bifurcation).is_err());
    }

    #[test]
    fn script_written_alongside() {
        let dir = tempfile::tempdir().unwrap();
        let csv = dir.path().join("semi_logistic.csv");
        std::fs::write(&csv, "x").unwrap();
        let script = emit_plot_script(&csv, PlotKind::Bifurcation).unwrap();
        assert_eq!(script, dir.path().join("semi_logistic.bifurcation.py"));
        assert!(script.is_file());
    }
}
