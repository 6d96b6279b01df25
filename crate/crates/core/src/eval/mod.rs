//! Metrics, parameter sweeps, seeded runs and baseline comparison.

mod baseline;
mod diff;
mod metrics;
mod seeds;
mod sweep;

pub use baseline::NearestCentroid;
pub use diff::{diff_baseline, Disagreement, DisagreementSet};
pub use metrics::{evaluate, evaluate_pairs, ClassMetrics, EvaluationReport};
pub use seeds::{run_seeds, SeedRuns, SeedSource};
pub use sweep::{sweep_k, SweepRow, SweepTable};

use crate::classify::classify_dataset;
use crate::dataio::{LabeledDataset, Prediction};
use crate::error::Result;
use crate::library::FingerprintLibrary;

/// Fingerprint-classifier predictions for every instance, in dataset order.
pub fn predict_dataset(
    dataset: &LabeledDataset,
    lib: &FingerprintLibrary,
) -> Result<Vec<Prediction>> {
    Ok(classify_dataset(dataset, lib)?
        .into_iter()
        .map(|(id, r)| Prediction {
            id,
            label: r.predicted,
        })
        .collect())
}
