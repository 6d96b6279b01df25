use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;

use serde::Serialize;

use crate::classify::classify_with_id;
use crate::dataio::{LabeledDataset, Prediction};
use crate::error::{FfpError, Result};
use crate::explain::render_similarities;
use crate::library::FingerprintLibrary;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Disagreement {
    pub id: String,
    pub gold_label: String,
    pub ffp_label: String,
    pub baseline_label: String,
    /// Fingerprint similarity to every class, in library class order.
    pub ffp_scores: Vec<(String, f64)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Default)]
pub struct DisagreementSet {
    pub items: Vec<Disagreement>,
}

impl DisagreementSet {
    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    /// Case-study listing: one block per item with the labels and a
    /// `Similarity:` line, the FFP choice marked with `*`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for d in &self.items {
            let _ = writeln!(
                out,
                "Id: {}  gold={}  ffp={}  baseline={}",
                d.id, d.gold_label, d.ffp_label, d.baseline_label
            );
            let _ = writeln!(
                out,
                "Similarity: {}",
                render_similarities(&d.ffp_scores, Some(&d.ffp_label))
            );
        }
        let _ = writeln!(out, "{} disagreement(s)", self.items.len());
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("disagreements serialize")
    }
}

/// Instances where the fingerprint classifier and a baseline disagree.
///
/// Both prediction lists must cover the same ids, all present in `dataset`.
/// Items follow the order of `ffp` and carry scores recomputed from `lib`.
pub fn diff_baseline(
    ffp: &[Prediction],
    baseline: &[Prediction],
    dataset: &LabeledDataset,
    lib: &FingerprintLibrary,
) -> Result<DisagreementSet> {
    let base: HashMap<&str, &str> = baseline
        .iter()
        .map(|p| (p.id.as_str(), p.label.as_str()))
        .collect();
    if base.len() != baseline.len() {
        return Err(FfpError::IdMismatch(
            "duplicate id in baseline predictions".into(),
        ));
    }
    let ffp_ids: HashSet<&str> = ffp.iter().map(|p| p.id.as_str()).collect();
    if ffp_ids.len() != ffp.len() {
        return Err(FfpError::IdMismatch(
            "duplicate id in FFP predictions".into(),
        ));
    }
    if let Some(p) = ffp.iter().find(|p| !base.contains_key(p.id.as_str())) {
        return Err(FfpError::IdMismatch(format!(
            "'{}' missing from baseline predictions",
            p.id
        )));
    }
    if let Some(p) = baseline.iter().find(|p| !ffp_ids.contains(p.id.as_str())) {
        return Err(FfpError::IdMismatch(format!(
            "'{}' missing from FFP predictions",
            p.id
        )));
    }
    let instances: HashMap<&str, _> = dataset
        .instances()
        .iter()
        .map(|i| (i.id.as_str(), i))
        .collect();

    let mut items = Vec::new();
    for p in ffp {
        let baseline_label = base[p.id.as_str()];
        if p.label == baseline_label {
            continue;
        }
        let inst = instances
            .get(p.id.as_str())
            .ok_or_else(|| FfpError::IdMismatch(format!("'{}' not in dataset", p.id)))?;
        let result = classify_with_id(&inst.vector, &inst.id, lib)?;
        items.push(Disagreement {
            id: p.id.clone(),
            gold_label: inst.label.clone(),
            ffp_label: p.label.clone(),
            baseline_label: baseline_label.to_string(),
            ffp_scores: result.scores,
        });
    }
    Ok(DisagreementSet { items })
}
