use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dataio::{Instance, LabeledDataset};
use crate::error::{FfpError, Result};
use crate::vector::FeatureVector;

/// Recipe for a labeled dataset of noisy class means.
///
/// Each instance is its class mean plus independent uniform noise in
/// `[-noise, noise]` per cell, drawn from a ChaCha8 stream seeded by `seed`.
#[derive(Debug, Clone, PartialEq)]
pub struct SyntheticSpec {
    pub labels: Vec<String>,
    pub dim: usize,
    pub counts: Vec<usize>,
    pub means: Vec<Vec<f64>>,
    pub noise: f64,
    pub seed: u64,
}

impl SyntheticSpec {
    /// Class `c` has mean `height` on cells `[c*w, (c+1)*w)` and 0 elsewhere,
    /// with block width `w = dim / classes`.
    pub fn one_hot_blocks(
        labels: Vec<String>,
        dim: usize,
        counts: Vec<usize>,
        height: f64,
        noise: f64,
        seed: u64,
    ) -> Result<Self> {
        let n = labels.len();
        if n == 0 || dim < n {
            return Err(FfpError::InvalidParameter(format!(
                "one-hot blocks need 1 <= classes <= dim, got {n} classes for dim {dim}"
            )));
        }
        let width = dim / n;
        let means = (0..n)
            .map(|c| {
                let mut m = vec![0.0; dim];
                m[c * width..(c + 1) * width].fill(height);
                m
            })
            .collect();
        let spec = SyntheticSpec {
            labels,
            dim,
            counts,
            means,
            noise,
            seed,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// A majority class whose support overlaps every minority class.
    ///
    /// Classes `1..n` get disjoint blocks of `width` cells at height 1.
    /// Class 0 has height `majority_gain` on the first half of each of those
    /// blocks, so it shares features with every other class and carries
    /// larger activations on them. `dim = (n - 1) * width`.
    pub fn shared_majority(
        labels: Vec<String>,
        width: usize,
        counts: Vec<usize>,
        majority_gain: f64,
        noise: f64,
        seed: u64,
    ) -> Result<Self> {
        let n = labels.len();
        if n < 2 || width < 2 {
            return Err(FfpError::InvalidParameter(
                "shared-majority layout needs at least 2 classes and block width >= 2".into(),
            ));
        }
        let dim = (n - 1) * width;
        let mut means = vec![vec![0.0; dim]; n];
        for c in 1..n {
            let start = (c - 1) * width;
            means[c][start..start + width].fill(1.0);
            means[0][start..start + width / 2].fill(majority_gain);
        }
        let spec = SyntheticSpec {
            labels,
            dim,
            counts,
            means,
            noise,
            seed,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn num_classes(&self) -> usize {
        self.labels.len()
    }

    pub fn total(&self) -> usize {
        self.counts.iter().sum()
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.labels.len();
        let bad = |m: String| Err(FfpError::InvalidParameter(m));
        if n == 0 {
            return bad("synthetic spec needs at least one class".into());
        }
        if self.dim == 0 {
            return bad("synthetic dimension must be positive".into());
        }
        if self.counts.len() != n || self.means.len() != n {
            return bad(format!(
                "{n} labels but {} counts and {} means",
                self.counts.len(),
                self.means.len()
            ));
        }
        if let Some(c) = self.counts.iter().position(|&c| c == 0) {
            return bad(format!("class '{}' has count 0", self.labels[c]));
        }
        if let Some(m) = self.means.iter().find(|m| m.len() != self.dim) {
            return bad(format!(
                "mean of length {} for dimension {}",
                m.len(),
                self.dim
            ));
        }
        if self.means.iter().flatten().any(|v| !v.is_finite()) {
            return bad("class means must be finite".into());
        }
        if !(self.noise.is_finite() && self.noise >= 0.0) {
            return bad(format!(
                "noise scale must be finite and >= 0, got {}",
                self.noise
            ));
        }
        Ok(())
    }
}

/// Splits `total` into per-class counts proportional to `weights` by the
/// largest-remainder rule, raising any zero count to 1 (taken from the
/// largest class). Each count is within 1 of its exact target unless the
/// minimum-one rule applied.
pub fn skewed_counts(total: usize, weights: &[f64]) -> Result<Vec<usize>> {
    if weights.is_empty() || weights.iter().any(|w| !(w.is_finite() && *w > 0.0)) {
        return Err(FfpError::InvalidParameter(
            "weights must be positive and finite".into(),
        ));
    }
    if total < weights.len() {
        return Err(FfpError::InvalidParameter(format!(
            "total {total} cannot give each of {} classes an instance",
            weights.len()
        )));
    }
    let mut counts = apportion(total, weights);
    while let Some(zero) = counts.iter().position(|&c| c == 0) {
        let largest = (0..counts.len())
            .max_by_key(|&i| (counts[i], std::cmp::Reverse(i)))
            .unwrap();
        counts[largest] -= 1;
        counts[zero] = 1;
    }
    Ok(counts)
}

/// Largest-remainder apportionment; remainder ties go to the lower index.
fn apportion(total: usize, weights: &[f64]) -> Vec<usize> {
    let sum: f64 = weights.iter().sum();
    let targets: Vec<f64> = weights.iter().map(|w| total as f64 * w / sum).collect();
    let mut counts: Vec<usize> = targets.iter().map(|t| t.floor() as usize).collect();
    let assigned: usize = counts.iter().sum();
    let mut order: Vec<usize> = (0..weights.len()).collect();
    order.sort_by(|&x, &y| {
        let rx = targets[x] - targets[x].floor();
        let ry = targets[y] - targets[y].floor();
        ry.partial_cmp(&rx)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(x.cmp(&y))
    });
    for &i in order.iter().take(total.saturating_sub(assigned)) {
        counts[i] += 1;
    }
    counts
}

/// Instances are generated class by class, shuffled, and given ids
/// `syn000000`, `syn000001`, ... in shuffled order.
pub fn generate_synthetic(spec: &SyntheticSpec) -> Result<LabeledDataset> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut rows: Vec<(usize, Vec<f64>)> = Vec::with_capacity(spec.total());
    for (class, (&count, mean)) in spec.counts.iter().zip(&spec.means).enumerate() {
        for _ in 0..count {
            let v = mean
                .iter()
                .map(|m| {
                    if spec.noise > 0.0 {
                        m + rng.gen_range(-spec.noise..=spec.noise)
                    } else {
                        *m
                    }
                })
                .collect();
            rows.push((class, v));
        }
    }
    rows.shuffle(&mut rng);
    let instances = rows
        .into_iter()
        .enumerate()
        .map(|(i, (class, v))| {
            Ok(Instance {
                id: format!("syn{i:06}"),
                label: spec.labels[class].clone(),
                vector: FeatureVector::new(v)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    LabeledDataset::new(spec.dim, spec.labels.clone(), instances)
}

/// Stratified split into parts sized by `fractions` (which must sum to 1).
/// Each class is shuffled with `seed` and apportioned separately; every part
/// keeps the dataset's instance order and class list.
pub fn stratified_split(
    dataset: &LabeledDataset,
    fractions: &[f64],
    seed: u64,
) -> Result<Vec<LabeledDataset>> {
    if fractions.is_empty() || fractions.iter().any(|f| !(f.is_finite() && *f >= 0.0)) {
        return Err(FfpError::InvalidParameter(
            "split fractions must be non-negative".into(),
        ));
    }
    let sum: f64 = fractions.iter().sum();
    if (sum - 1.0).abs() > 1e-9 {
        return Err(FfpError::InvalidParameter(format!(
            "split fractions must sum to 1, got {sum}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut part_of = vec![0usize; dataset.len()];
    for class in dataset.classes() {
        let mut members: Vec<usize> = dataset
            .instances()
            .iter()
            .enumerate()
            .filter(|(_, inst)| &inst.label == class)
            .map(|(i, _)| i)
            .collect();
        members.shuffle(&mut rng);
        let sizes = if fractions.iter().all(|f| *f == 0.0) {
            vec![0; fractions.len()]
        } else {
            apportion(members.len(), fractions)
        };
        let mut it = members.into_iter();
        for (part, size) in sizes.into_iter().enumerate() {
            for idx in it.by_ref().take(size) {
                part_of[idx] = part;
            }
        }
    }
    (0..fractions.len())
        .map(|part| {
            let instances = dataset
                .instances()
                .iter()
                .zip(&part_of)
                .filter(|(_, p)| **p == part)
                .map(|(inst, _)| inst.clone())
                .collect();
            LabeledDataset::new(dataset.dim(), dataset.classes().to_vec(), instances)
        })
        .collect()
}
