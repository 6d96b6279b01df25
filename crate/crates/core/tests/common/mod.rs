//! Fixtures and brute-force oracles shared by the integration tests.
//!
//! The oracles deliberately avoid the library's code paths: they work on
//! plain `Vec<f64>` and loop over every cell.

#![allow(dead_code)]

use ffp_core::dataio::{Instance, LabeledDataset};
use ffp_core::{ClassFingerprint, FeatureVector, FingerprintLibrary, FingerprintParams};
use rand::Rng;

pub const EMOTION_DIM: usize = 768;

/// Class fingerprints ordered by rank, K = 7, a = 0.8.
pub const EMOTION_FPS: [(&str, [usize; 7]); 7] = [
    ("Neu", [217, 644, 541, 718, 401, 330, 426]),
    ("Ang", [8, 679, 204, 292, 651, 573, 111]),
    ("Dis", [588, 573, 27, 154, 331, 67, 561]),
    ("Fear", [588, 313, 655, 406, 736, 349, 624]),
    ("Hap", [588, 585, 388, 600, 767, 319, 741]),
    ("Sad", [371, 588, 5, 156, 4, 93, 550]),
    ("Sur", [691, 588, 97, 573, 530, 535, 654]),
];

/// "You still have not given me those files I've asked you for."
pub const SAMPLE1: [usize; 7] = [8, 679, 309, 624, 292, 76, 134];
/// "Don't forget to give me the files I've asked you for"
pub const SAMPLE2: [usize; 7] = [330, 644, 541, 217, 114, 426, 211];

pub fn emotion_params() -> FingerprintParams {
    FingerprintParams::new(7, 0.8).unwrap()
}

pub fn emotion_library() -> FingerprintLibrary {
    let fps = EMOTION_FPS
        .iter()
        .map(|(label, ranked)| {
            ClassFingerprint::from_ranked_features(*label, EMOTION_DIM, emotion_params(), ranked)
                .unwrap()
        })
        .collect();
    FingerprintLibrary::new(fps, 7.0).unwrap()
}

pub fn sample_fingerprint(label: &str, ranked: &[usize]) -> ClassFingerprint {
    ClassFingerprint::from_ranked_features(label, EMOTION_DIM, emotion_params(), ranked).unwrap()
}

/// A 768-d activation vector whose top-7 ranking is exactly `ranked`.
pub fn forced_vector(ranked: &[usize]) -> Vec<f64> {
    let mut v = vec![0.0; EMOTION_DIM];
    for (pos, &f) in ranked.iter().enumerate() {
        v[f] = (ranked.len() - pos) as f64;
    }
    v
}

pub fn labels(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("c{i}")).collect()
}

pub fn dataset(dim: usize, classes: Vec<String>, rows: Vec<(String, Vec<f64>)>) -> LabeledDataset {
    let instances = rows
        .into_iter()
        .enumerate()
        .map(|(i, (label, v))| Instance {
            id: format!("x{i}"),
            label,
            vector: FeatureVector::new(v).unwrap(),
        })
        .collect();
    LabeledDataset::new(dim, classes, instances).unwrap()
}

pub fn gaussian<R: Rng>(rng: &mut R) -> f64 {
    // Box-Muller
    let u1: f64 = rng.gen_range(f64::EPSILON..1.0);
    let u2: f64 = rng.gen();
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}

/// Gaussian clusters: class c has mean `spread` on a random subset of cells.
pub fn gaussian_clusters<R: Rng>(
    rng: &mut R,
    classes: usize,
    dim: usize,
    per_class: usize,
    spread: f64,
) -> LabeledDataset {
    let names = labels(classes);
    let mut rows = Vec::new();
    for name in &names {
        let mean: Vec<f64> = (0..dim)
            .map(|_| if rng.gen_bool(0.3) { spread } else { 0.0 })
            .collect();
        for _ in 0..per_class {
            rows.push((
                name.clone(),
                mean.iter().map(|m| m + gaussian(rng)).collect(),
            ));
        }
    }
    dataset(dim, names, rows)
}

/// Column sums in row order.
pub fn oracle_column_sum(rows: &[Vec<f64>]) -> Vec<f64> {
    let mut sum = vec![0.0; rows[0].len()];
    for r in rows {
        for j in 0..r.len() {
            sum[j] += r[j];
        }
    }
    sum
}

/// 1-based ranks by (value descending, index ascending), via a full sort of pairs.
pub fn oracle_ranks(values: &[f64]) -> Vec<usize> {
    let mut pairs: Vec<(f64, usize)> = values.iter().copied().zip(0..).collect();
    pairs.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap().then(a.1.cmp(&b.1)));
    let mut ranks = vec![0; values.len()];
    for (r, (_, i)) in pairs.into_iter().enumerate() {
        ranks[i] = r + 1;
    }
    ranks
}

/// Dense fuzzy fingerprint: membership per cell, 0 outside the top k.
pub fn oracle_dense_fingerprint(values: &[f64], k: usize, a: f64) -> Vec<f64> {
    oracle_ranks(values)
        .into_iter()
        .map(|r| {
            if r <= k {
                1.0 - a * (r - 1) as f64 / k as f64
            } else {
                0.0
            }
        })
        .collect()
}

/// Sum over all d cells of min(x, y), then divided by N.
pub fn oracle_similarity(x: &[f64], y: &[f64], norm: f64) -> f64 {
    let mut s = 0.0;
    for v in 0..x.len() {
        s += x[v].min(y[v]);
    }
    s / norm
}

/// Naive classifier over a dataset: returns (predicted label, scores) per test row.
pub fn oracle_classify(
    train: &LabeledDataset,
    test: &LabeledDataset,
    k: usize,
    a: f64,
    norm: f64,
) -> Vec<(String, Vec<f64>)> {
    let class_fps: Vec<Vec<f64>> = train
        .classes()
        .iter()
        .map(|c| {
            let rows: Vec<Vec<f64>> = train
                .instances()
                .iter()
                .filter(|i| &i.label == c)
                .map(|i| i.vector.values().to_vec())
                .collect();
            oracle_dense_fingerprint(&oracle_column_sum(&rows), k, a)
        })
        .collect();
    test.instances()
        .iter()
        .map(|inst| {
            let u = oracle_dense_fingerprint(inst.vector.values(), k, a);
            // Decide on the undivided sums; dividing can merge or split near-ties.
            let sums: Vec<f64> = class_fps
                .iter()
                .map(|c| oracle_similarity(c, &u, 1.0))
                .collect();
            let mut best = 0;
            for i in 1..sums.len() {
                if sums[i] > sums[best] {
                    best = i;
                }
            }
            (
                train.classes()[best].clone(),
                sums.iter().map(|s| s / norm).collect(),
            )
        })
        .collect()
}
