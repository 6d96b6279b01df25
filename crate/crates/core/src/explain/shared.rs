use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{FfpError, Result};
use crate::library::FingerprintLibrary;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SharedFeature {
    pub feature: usize,
    /// Classes whose fingerprint contains the feature, in library class order.
    pub classes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SharedFeatureReport {
    pub min_classes: usize,
    /// Most widely shared first; ascending feature index among equals.
    pub features: Vec<SharedFeature>,
}

impl SharedFeatureReport {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for f in &self.features {
            let _ = writeln!(
                out,
                "feature {} in {} classes: {}",
                f.feature,
                f.classes.len(),
                f.classes.join(", ")
            );
        }
        if self.features.is_empty() {
            let _ = writeln!(
                out,
                "no feature is shared by {} or more classes",
                self.min_classes
            );
        }
        out
    }
}

/// Every feature in any fingerprint with the classes that contain it,
/// ascending by feature.
pub fn feature_classes(lib: &FingerprintLibrary) -> Vec<SharedFeature> {
    let mut map: BTreeMap<usize, Vec<String>> = BTreeMap::new();
    for fp in lib.fingerprints() {
        for e in fp.entries() {
            map.entry(e.feature)
                .or_default()
                .push(fp.label().to_string());
        }
    }
    map.into_iter()
        .map(|(feature, classes)| SharedFeature { feature, classes })
        .collect()
}

/// Features present in at least `min_classes` (>= 2) fingerprints.
pub fn shared_features(
    lib: &FingerprintLibrary,
    min_classes: usize,
) -> Result<SharedFeatureReport> {
    if min_classes < 2 {
        return Err(FfpError::InvalidParameter(format!(
            "min_classes must be at least 2, got {min_classes}"
        )));
    }
    let mut features: Vec<SharedFeature> = feature_classes(lib)
        .into_iter()
        .filter(|f| f.classes.len() >= min_classes)
        .collect();
    features.sort_by(|x, y| {
        y.classes
            .len()
            .cmp(&x.classes.len())
            .then(x.feature.cmp(&y.feature))
    });
    Ok(SharedFeatureReport {
        min_classes,
        features,
    })
}
