use rayon::prelude::*;
use serde::Serialize;

use super::{evaluate, predict_dataset};
use crate::dataio::{generate_synthetic, stratified_split, LabeledDataset, SyntheticSpec};
use crate::error::{FfpError, Result};
use crate::fingerprint::FingerprintParams;
use crate::library::{FingerprintLibrary, NormRule};

/// Where each seeded run gets its data.
#[derive(Debug, Clone, Copy)]
pub enum SeedSource<'a> {
    /// Regenerate the dataset with the run's seed, then split it
    /// (stratified, same seed) into train and test.
    Synthetic {
        spec: &'a SyntheticSpec,
        train_fraction: f64,
    },
    /// The same split for every seed; runs are identical.
    Fixed {
        train: &'a LabeledDataset,
        test: &'a LabeledDataset,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SeedRuns {
    /// `(seed, macro_f1)` in the order the seeds were given.
    pub runs: Vec<(u64, f64)>,
    pub mean: f64,
}

impl SeedRuns {
    /// Population standard deviation of the per-seed scores.
    pub fn std_dev(&self) -> f64 {
        let n = self.runs.len() as f64;
        (self
            .runs
            .iter()
            .map(|(_, f)| (f - self.mean).powi(2))
            .sum::<f64>()
            / n)
            .sqrt()
    }
}

pub fn run_seeds(
    source: SeedSource<'_>,
    seeds: &[u64],
    params: FingerprintParams,
    norm: NormRule,
) -> Result<SeedRuns> {
    if seeds.is_empty() {
        return Err(FfpError::InvalidParameter(
            "at least one seed is required".into(),
        ));
    }
    let runs = seeds
        .par_iter()
        .map(|&seed| {
            let score = match source {
                SeedSource::Synthetic {
                    spec,
                    train_fraction,
                } => {
                    let ds = generate_synthetic(&spec.clone().with_seed(seed))?;
                    let parts =
                        stratified_split(&ds, &[train_fraction, 1.0 - train_fraction], seed)?;
                    single_run(&parts[0], &parts[1], params, norm)?
                }
                SeedSource::Fixed { train, test } => single_run(train, test, params, norm)?,
            };
            Ok((seed, score))
        })
        .collect::<Result<Vec<_>>>()?;
    let mean = runs.iter().map(|(_, f)| f).sum::<f64>() / runs.len() as f64;
    Ok(SeedRuns { runs, mean })
}

fn single_run(
    train: &LabeledDataset,
    test: &LabeledDataset,
    params: FingerprintParams,
    norm: NormRule,
) -> Result<f64> {
    let lib = FingerprintLibrary::from_dataset(train, params, norm)?;
    Ok(evaluate(&predict_dataset(test, &lib)?, test)?.macro_f1)
}
