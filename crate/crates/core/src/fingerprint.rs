//! Fuzzy fingerprints: sparse fuzzy sets over feature indices.
//!
//! A fingerprint keeps the `k` highest-ranked features of an aggregated
//! activation vector. The feature at rank `i` gets membership
//! `1 - a * (i - 1) / k`; every other feature has implicit membership 0.

use std::cmp::Ordering;

use crate::error::{FfpError, Result};
use crate::vector::{aggregate_class, descending_order, FeatureVector};

/// Slope used when none is given.
pub const DEFAULT_SLOPE: f64 = 0.8;

/// Fingerprint size `k` and membership slope `a`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FingerprintParams {
    k: usize,
    a: f64,
}

impl FingerprintParams {
    pub fn new(k: usize, a: f64) -> Result<Self> {
        if k == 0 {
            return Err(FfpError::InvalidParameter("k must be at least 1".into()));
        }
        if !(0.0..=1.0).contains(&a) {
            return Err(FfpError::InvalidParameter(format!(
                "slope a must lie in [0, 1], got {a}"
            )));
        }
        Ok(FingerprintParams { k, a })
    }

    pub fn with_default_slope(k: usize) -> Result<Self> {
        Self::new(k, DEFAULT_SLOPE)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    /// Number of entries a fingerprint of dimension `dim` carries.
    pub fn size_for(&self, dim: usize) -> usize {
        self.k.min(dim)
    }
}

/// Membership degree of the feature at 1-based `rank`.
pub fn fuzzify(rank: usize, k: usize, a: f64) -> Result<f64> {
    if rank == 0 || rank > k {
        return Err(FfpError::Domain(format!("rank {rank} outside [1, {k}]")));
    }
    if !(0.0..=1.0).contains(&a) {
        return Err(FfpError::Domain(format!("slope {a} outside [0, 1]")));
    }
    Ok(membership(rank, k, a))
}

#[inline]
fn membership(rank: usize, k: usize, a: f64) -> f64 {
    1.0 - a * (rank - 1) as f64 / k as f64
}

/// One `(feature, membership)` pair of a fingerprint.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Entry {
    pub feature: usize,
    pub membership: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClassFingerprint {
    label: String,
    dim: usize,
    params: FingerprintParams,
    /// Rank order: descending membership, then ascending feature.
    entries: Vec<Entry>,
    /// Same entries sorted by feature index, for merge intersection.
    by_feature: Vec<Entry>,
}

impl ClassFingerprint {
    /// Builds a fingerprint from features listed best rank first.
    ///
    /// `ranked` must hold exactly `min(k, dim)` distinct indices below `dim`.
    pub fn from_ranked_features(
        label: impl Into<String>,
        dim: usize,
        params: FingerprintParams,
        ranked: &[usize],
    ) -> Result<Self> {
        if dim == 0 {
            return Err(FfpError::InvalidParameter(
                "dimension must be positive".into(),
            ));
        }
        let size = params.size_for(dim);
        if ranked.len() != size {
            return Err(FfpError::InvalidInput(format!(
                "fingerprint needs {size} ranked features, got {}",
                ranked.len()
            )));
        }
        let mut seen = vec![false; dim];
        for &f in ranked {
            if f >= dim {
                return Err(FfpError::InvalidInput(format!(
                    "feature index {f} outside [0, {dim})"
                )));
            }
            if std::mem::replace(&mut seen[f], true) {
                return Err(FfpError::InvalidInput(format!(
                    "duplicate feature index {f}"
                )));
            }
        }
        let mut entries: Vec<Entry> = ranked
            .iter()
            .enumerate()
            .map(|(pos, &feature)| Entry {
                feature,
                membership: membership(pos + 1, params.k, params.a),
            })
            .collect();
        // Only reorders when a = 0, where every membership equals 1.
        entries.sort_by(canonical_order);
        let mut by_feature = entries.clone();
        by_feature.sort_by_key(|e| e.feature);
        Ok(ClassFingerprint {
            label: label.into(),
            dim,
            params,
            entries,
            by_feature,
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn params(&self) -> FingerprintParams {
        self.params
    }

    pub fn k(&self) -> usize {
        self.params.k
    }

    pub fn a(&self) -> f64 {
        self.params.a
    }

    /// Entries in rank order (descending membership, ascending index).
    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    /// Entries sorted by ascending feature index.
    pub fn entries_by_feature(&self) -> &[Entry] {
        &self.by_feature
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// True when `k` exceeded the dimension and the fingerprint was cut to `dim` entries.
    pub fn is_truncated(&self) -> bool {
        self.params.k > self.dim
    }

    pub fn membership(&self, feature: usize) -> f64 {
        self.by_feature
            .binary_search_by_key(&feature, |e| e.feature)
            .map(|i| self.by_feature[i].membership)
            .unwrap_or(0.0)
    }

    /// Dense membership vector of length `dim`.
    pub fn to_dense(&self) -> Vec<f64> {
        let mut dense = vec![0.0; self.dim];
        for e in &self.entries {
            dense[e.feature] = e.membership;
        }
        dense
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }
}

pub(crate) fn canonical_order(x: &Entry, y: &Entry) -> Ordering {
    y.membership
        .partial_cmp(&x.membership)
        .unwrap_or(Ordering::Equal)
        .then(x.feature.cmp(&y.feature))
}

/// Fingerprint of an already aggregated activation vector.
pub fn fingerprint_aggregate(
    aggregate: &FeatureVector,
    label: impl Into<String>,
    params: FingerprintParams,
) -> Result<ClassFingerprint> {
    let dim = aggregate.dim();
    let mut order = descending_order(aggregate.values())?;
    order.truncate(params.size_for(dim));
    ClassFingerprint::from_ranked_features(label, dim, params, &order)
}

/// Aggregate, rank, keep the top `k`, fuzzify.
pub fn build_class_fingerprint(
    vectors: &[FeatureVector],
    label: impl Into<String>,
    params: FingerprintParams,
) -> Result<ClassFingerprint> {
    let label = label.into();
    let aggregate = aggregate_class(vectors).map_err(|e| match e {
        FfpError::EmptyClass { .. } => FfpError::EmptyClass {
            label: Some(label.clone()),
        },
        other => other,
    })?;
    fingerprint_aggregate(&aggregate, label, params)
}

/// Fingerprint of a single instance.
pub fn fingerprint_instance(
    v: &FeatureVector,
    id: impl Into<String>,
    params: FingerprintParams,
) -> Result<ClassFingerprint> {
    fingerprint_aggregate(v, id, params)
}

/// Shared features of two fingerprints in ascending index order, with the
/// membership in each.
pub fn intersection<'a>(
    x: &'a ClassFingerprint,
    y: &'a ClassFingerprint,
) -> impl Iterator<Item = (usize, f64, f64)> + 'a {
    Intersection {
        x: &x.by_feature,
        y: &y.by_feature,
    }
}

struct Intersection<'a> {
    x: &'a [Entry],
    y: &'a [Entry],
}

impl Iterator for Intersection<'_> {
    type Item = (usize, f64, f64);

    fn next(&mut self) -> Option<Self::Item> {
        while let (Some(ex), Some(ey)) = (self.x.first(), self.y.first()) {
            match ex.feature.cmp(&ey.feature) {
                Ordering::Less => self.x = &self.x[1..],
                Ordering::Greater => self.y = &self.y[1..],
                Ordering::Equal => {
                    self.x = &self.x[1..];
                    self.y = &self.y[1..];
                    return Some((ex.feature, ex.membership, ey.membership));
                }
            }
        }
        None
    }
}

pub(crate) fn check_norm(norm: f64) -> Result<()> {
    if norm.is_finite() && norm > 0.0 {
        Ok(())
    } else {
        Err(FfpError::InvalidParameter(format!(
            "normalization constant must be positive and finite, got {norm}"
        )))
    }
}

/// Sum of element-wise minimum memberships divided by `norm`.
///
/// Terms are accumulated in ascending feature order, so the result is
/// bit-identical to a dense loop over all cells.
pub fn similarity(x: &ClassFingerprint, y: &ClassFingerprint, norm: f64) -> Result<f64> {
    if x.dim != y.dim {
        return Err(FfpError::DimensionMismatch {
            expected: x.dim,
            found: y.dim,
        });
    }
    check_norm(norm)?;
    Ok(intersection_sum(x, y) / norm)
}

pub(crate) fn intersection_sum(x: &ClassFingerprint, y: &ClassFingerprint) -> f64 {
    intersection(x, y).fold(0.0, |acc, (_, mx, my)| acc + mx.min(my))
}
