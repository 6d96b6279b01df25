//! Fuzzy fingerprint classification.
//!
//! A class fingerprint is built by summing the feature vectors of all
//! training instances of that class, ranking the summed activations, keeping
//! the top `k` features and giving the feature at rank `i` the membership
//! `1 - a * (i - 1) / k`. An instance is fingerprinted the same way and
//! scored against each class by summing the element-wise minimum of the two
//! membership functions, divided by a normalization constant `N`. The class
//! with the highest score wins.
//!
//! Modules:
//!
//! - [`vector`], [`fingerprint`], [`library`], [`classify`]: fingerprint
//!   construction, similarity and classification.
//! - [`dataio`]: dataset, library, prediction and conversation files; a
//!   bag-of-words vectorizer; a seeded synthetic dataset generator.
//! - [`eval`]: per-class and macro metrics, `k` sweeps, multi-seed runs,
//!   a nearest-centroid baseline and disagreement extraction.
//! - [`explain`]: fingerprint listings, intersections, shared-feature
//!   reports and plot data.

pub mod classify;
pub mod dataio;
pub mod error;
pub mod eval;
pub mod explain;
pub mod fingerprint;
pub mod library;
pub mod vector;

use std::fmt;

pub use classify::{classify, classify_dataset, classify_fingerprint, ClassificationResult};
pub use error::{FfpError, Result};
pub use fingerprint::{
    build_class_fingerprint, fingerprint_instance, fuzzify, intersection, similarity,
    ClassFingerprint, Entry, FingerprintParams, DEFAULT_SLOPE,
};
pub use library::{FingerprintLibrary, NormRule};
pub use vector::{aggregate_class, rank_features, FeatureVector, RankVector};

/// Non-fatal conditions reported alongside a result.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Warning {
    /// The instance vector was all zeros; its ranking is pure index order.
    ZeroVector { id: String },
    /// `k` exceeded the dimension, so fingerprints hold only `dim` entries.
    Truncated { k: usize, dim: usize },
    /// No token of the document is in the vocabulary.
    NoKnownTokens { id: String },
}

impl fmt::Display for Warning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Warning::ZeroVector { id } => {
                write!(
                    f,
                    "instance '{id}' is an all-zero vector; ranking falls back to index order"
                )
            }
            Warning::Truncated { k, dim } => {
                write!(
                    f,
                    "k = {k} exceeds dimension {dim}; fingerprints hold {dim} entries"
                )
            }
            Warning::NoKnownTokens { id } => {
                write!(
                    f,
                    "document '{id}' has no in-vocabulary tokens; its vector is all zeros"
                )
            }
        }
    }
}
