use rayon::prelude::*;

use crate::dataio::LabeledDataset;
use crate::error::{FfpError, Result};
use crate::fingerprint::{fingerprint_instance, intersection_sum, ClassFingerprint};
use crate::library::FingerprintLibrary;
use crate::vector::FeatureVector;
use crate::Warning;

#[derive(Debug, Clone, PartialEq)]
pub struct ClassificationResult {
    /// `(label, similarity)` in library class order.
    pub scores: Vec<(String, f64)>,
    pub predicted: String,
    /// More than one class attained the maximum score.
    pub tied: bool,
    pub warnings: Vec<Warning>,
}

impl ClassificationResult {
    pub fn score(&self, label: &str) -> Option<f64> {
        self.scores
            .iter()
            .find(|(l, _)| l == label)
            .map(|(_, s)| *s)
    }

    pub fn max_score(&self) -> f64 {
        self.score(&self.predicted).unwrap_or(0.0)
    }
}

/// Scores an instance fingerprint against every class of the library.
pub fn classify_fingerprint(
    instance: &ClassFingerprint,
    lib: &FingerprintLibrary,
) -> Result<ClassificationResult> {
    if instance.dim() != lib.dim() {
        return Err(FfpError::DimensionMismatch {
            expected: lib.dim(),
            found: instance.dim(),
        });
    }
    let sums: Vec<f64> = lib
        .fingerprints()
        .iter()
        .map(|class| intersection_sum(class, instance))
        .collect();
    // Argmax on the raw sums so the decision cannot depend on N through rounding.
    // Strict comparison keeps the earliest class on ties.
    let mut best = 0;
    for (i, s) in sums.iter().enumerate().skip(1) {
        if *s > sums[best] {
            best = i;
        }
    }
    let tied = sums.iter().filter(|s| **s == sums[best]).count() > 1;
    let scores: Vec<(String, f64)> = lib
        .fingerprints()
        .iter()
        .zip(&sums)
        .map(|(class, s)| (class.label().to_string(), s / lib.norm()))
        .collect();
    Ok(ClassificationResult {
        predicted: scores[best].0.clone(),
        scores,
        tied,
        warnings: Vec::new(),
    })
}

pub fn classify(v: &FeatureVector, lib: &FingerprintLibrary) -> Result<ClassificationResult> {
    classify_with_id(v, "instance", lib)
}

pub fn classify_with_id(
    v: &FeatureVector,
    id: &str,
    lib: &FingerprintLibrary,
) -> Result<ClassificationResult> {
    if v.dim() != lib.dim() {
        return Err(FfpError::DimensionMismatch {
            expected: lib.dim(),
            found: v.dim(),
        });
    }
    let instance = fingerprint_instance(v, id, lib.params())?;
    let mut result = classify_fingerprint(&instance, lib)?;
    if v.is_all_zero() {
        result
            .warnings
            .push(Warning::ZeroVector { id: id.to_string() });
    }
    Ok(result)
}

/// Classifies every instance; results come back in dataset order.
pub fn classify_dataset(
    dataset: &LabeledDataset,
    lib: &FingerprintLibrary,
) -> Result<Vec<(String, ClassificationResult)>> {
    if dataset.dim() != lib.dim() && !dataset.is_empty() {
        return Err(FfpError::DimensionMismatch {
            expected: lib.dim(),
            found: dataset.dim(),
        });
    }
    dataset
        .instances()
        .par_iter()
        .map(|inst| classify_with_id(&inst.vector, &inst.id, lib).map(|r| (inst.id.clone(), r)))
        .collect()
}
