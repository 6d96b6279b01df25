use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use super::{evaluate, predict_dataset};
use crate::dataio::LabeledDataset;
use crate::error::{FfpError, Result};
use crate::fingerprint::FingerprintParams;
use crate::library::{FingerprintLibrary, NormRule};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow {
    pub k: usize,
    pub macro_f1: f64,
}

/// Validation macro-F1 per fingerprint size, in the order the sizes were given.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepTable {
    pub rows: Vec<SweepRow>,
    /// Size with the highest macro-F1; the smallest such size on ties.
    pub best_k: usize,
}

impl SweepTable {
    pub fn from_rows(rows: Vec<SweepRow>) -> Result<Self> {
        let best = rows
            .iter()
            .copied()
            .reduce(|best, r| {
                if r.macro_f1 > best.macro_f1 || (r.macro_f1 == best.macro_f1 && r.k < best.k) {
                    r
                } else {
                    best
                }
            })
            .ok_or_else(|| FfpError::InvalidParameter("sweep needs at least one k".into()))?;
        Ok(SweepTable {
            rows,
            best_k: best.k,
        })
    }

    pub fn row(&self, k: usize) -> Option<&SweepRow> {
        self.rows.iter().find(|r| r.k == k)
    }

    pub fn best(&self) -> &SweepRow {
        self.row(self.best_k).expect("best_k comes from rows")
    }

    /// Two rows per chunk of six sizes: `K` then `F1` in percent.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for chunk in self.rows.chunks(6) {
            out.push_str("K ");
            for r in chunk {
                let _ = write!(out, " {:>6}", r.k);
            }
            out.push_str("\nF1");
            for r in chunk {
                let _ = write!(out, " {:>6.2}", r.macro_f1 * 100.0);
            }
            out.push('\n');
        }
        let best = self.best();
        let _ = writeln!(out, "best K={} F1={:.2}", best.k, best.macro_f1 * 100.0);
        out
    }

    /// `k,macro_f1` rows with full precision.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("k,macro_f1\n");
        for r in &self.rows {
            let _ = writeln!(out, "{},{}", r.k, crate::dataio::format_f64(r.macro_f1));
        }
        out
    }
}

/// Builds a library on `train` for every `k` and scores it on `validation`.
pub fn sweep_k(
    train: &LabeledDataset,
    validation: &LabeledDataset,
    k_values: &[usize],
    a: f64,
    norm: NormRule,
) -> Result<SweepTable> {
    if k_values.is_empty() {
        return Err(FfpError::InvalidParameter(
            "sweep needs at least one k".into(),
        ));
    }
    let rows = k_values
        .par_iter()
        .map(|&k| {
            let params = FingerprintParams::new(k, a)?;
            let lib = FingerprintLibrary::from_dataset(train, params, norm)?;
            let report = evaluate(&predict_dataset(validation, &lib)?, validation)?;
            Ok(SweepRow {
                k,
                macro_f1: report.macro_f1,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    SweepTable::from_rows(rows)
}
