use std::fmt::Write as _;
use std::path::Path;

use super::IntersectionReport;
use crate::dataio::{format_f64, write_text};
use crate::error::Result;
use crate::eval::SweepTable;
use crate::fingerprint::ClassFingerprint;

/// Objects that can be written as two-column `x y` plot data.
#[derive(Debug, Clone, Copy)]
pub enum PlotData<'a> {
    /// `cell membership` for all `dim` cells.
    Fingerprint(&'a ClassFingerprint),
    /// `cell min-membership` for the shared cells.
    Intersection(&'a IntersectionReport),
    /// `k macro-F1` with F1 in percent.
    Sweep(&'a SweepTable),
}

pub fn plot_lines(data: PlotData<'_>) -> String {
    let mut out = String::new();
    match data {
        PlotData::Fingerprint(fp) => {
            for (i, m) in fp.to_dense().into_iter().enumerate() {
                let _ = writeln!(out, "{i} {}", format_f64(m));
            }
        }
        PlotData::Intersection(r) => {
            for c in &r.shared {
                let _ = writeln!(out, "{} {}", c.feature, format_f64(c.min));
            }
        }
        PlotData::Sweep(t) => {
            for r in &t.rows {
                // Percent scaling leaves binary noise (51.89000000000001); keep 1e-9.
                let pct = (r.macro_f1 * 100.0 * 1e9).round() / 1e9;
                let _ = writeln!(out, "{} {}", r.k, format_f64(pct));
            }
        }
    }
    out
}

pub fn emit_plot_data(data: PlotData<'_>, path: impl AsRef<Path>) -> Result<()> {
    write_text(path.as_ref(), &plot_lines(data))
}
