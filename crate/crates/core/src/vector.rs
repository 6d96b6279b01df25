use std::cmp::Ordering;

use crate::error::{FfpError, Result};

/// A dense, finite, non-empty vector of feature activations.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureVector(Vec<f64>);

impl FeatureVector {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(FfpError::InvalidInput(
                "feature vector must have at least one cell".into(),
            ));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(FfpError::InvalidInput(format!(
                "non-finite value {} at feature {i}",
                values[i]
            )));
        }
        Ok(FeatureVector(values))
    }

    pub fn zeros(dim: usize) -> Result<Self> {
        Self::new(vec![0.0; dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn into_values(self) -> Vec<f64> {
        self.0
    }

    pub fn is_all_zero(&self) -> bool {
        self.0.iter().all(|v| *v == 0.0)
    }
}

impl TryFrom<Vec<f64>> for FeatureVector {
    type Error = FfpError;

    fn try_from(values: Vec<f64>) -> Result<Self> {
        Self::new(values)
    }
}

/// 1-based activation ranks, one per feature; a permutation of `1..=d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankVector(Vec<usize>);

impl RankVector {
    pub fn ranks(&self) -> &[usize] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// Feature indices ordered from rank 1 to rank d.
    pub fn order(&self) -> Vec<usize> {
        let mut order = vec![0; self.0.len()];
        for (feature, &rank) in self.0.iter().enumerate() {
            order[rank - 1] = feature;
        }
        order
    }
}

/// Element-wise sum of the class vectors, accumulated in slice order.
pub fn aggregate_class(vectors: &[FeatureVector]) -> Result<FeatureVector> {
    aggregate_iter(vectors.iter())
}

pub(crate) fn aggregate_iter<'a, I>(vectors: I) -> Result<FeatureVector>
where
    I: IntoIterator<Item = &'a FeatureVector>,
{
    let mut iter = vectors.into_iter();
    let first = iter.next().ok_or(FfpError::EmptyClass { label: None })?;
    let mut sum = first.values().to_vec();
    for v in iter {
        if v.dim() != sum.len() {
            return Err(FfpError::DimensionMismatch {
                expected: sum.len(),
                found: v.dim(),
            });
        }
        for (acc, x) in sum.iter_mut().zip(v.values()) {
            *acc += x;
        }
    }
    FeatureVector::new(sum).map_err(|_| {
        FfpError::InvalidInput("aggregated activations overflowed to a non-finite value".into())
    })
}

/// Feature indices sorted by descending value; equal values keep ascending
/// index order. Signed values rank as-is (no magnitude mode).
pub(crate) fn descending_order(values: &[f64]) -> Result<Vec<usize>> {
    if let Some(i) = values.iter().position(|v| v.is_nan()) {
        return Err(FfpError::InvalidInput(format!("NaN at feature {i}")));
    }
    let mut order: Vec<usize> = (0..values.len()).collect();
    // Stable sort: ties stay in index order. partial_cmp treats -0.0 == 0.0.
    order.sort_by(|&x, &y| values[y].partial_cmp(&values[x]).unwrap_or(Ordering::Equal));
    Ok(order)
}

pub fn rank_features(v: &FeatureVector) -> Result<RankVector> {
    rank_values(v.values())
}

pub(crate) fn rank_values(values: &[f64]) -> Result<RankVector> {
    let order = descending_order(values)?;
    let mut ranks = vec![0; values.len()];
    for (pos, feature) in order.into_iter().enumerate() {
        ranks[feature] = pos + 1;
    }
    Ok(RankVector(ranks))
}
