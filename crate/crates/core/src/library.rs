use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::dataio::LabeledDataset;
use crate::error::{FfpError, Result};
use crate::fingerprint::{check_norm, fingerprint_aggregate, ClassFingerprint, FingerprintParams};
use crate::vector::aggregate_iter;

/// How the similarity normalization constant `N` is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum NormRule {
    /// `N = k`.
    #[default]
    FingerprintSize,
    Fixed(f64),
}

impl NormRule {
    pub fn resolve(&self, k: usize) -> Result<f64> {
        let n = match *self {
            NormRule::FingerprintSize => k as f64,
            NormRule::Fixed(n) => n,
        };
        check_norm(n)?;
        Ok(n)
    }
}

impl FromStr for NormRule {
    type Err = FfpError;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("k") {
            return Ok(NormRule::FingerprintSize);
        }
        let n: f64 = s.parse().map_err(|_| {
            FfpError::InvalidParameter(format!("norm must be 'k' or a number, got '{s}'"))
        })?;
        check_norm(n)?;
        Ok(NormRule::Fixed(n))
    }
}

impl fmt::Display for NormRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NormRule::FingerprintSize => f.write_str("k"),
            NormRule::Fixed(n) => write!(f, "{n}"),
        }
    }
}

/// One fingerprint per class, in declared class order, with the shared
/// parameters they were built with.
#[derive(Debug, Clone, PartialEq)]
pub struct FingerprintLibrary {
    fingerprints: Vec<ClassFingerprint>,
    dim: usize,
    params: FingerprintParams,
    norm: f64,
}

impl FingerprintLibrary {
    pub fn new(fingerprints: Vec<ClassFingerprint>, norm: f64) -> Result<Self> {
        let first = fingerprints.first().ok_or_else(|| {
            FfpError::InvalidInput("library needs at least one fingerprint".into())
        })?;
        let (dim, params) = (first.dim(), first.params());
        check_norm(norm)?;
        let mut labels = HashSet::new();
        for fp in &fingerprints {
            if fp.dim() != dim {
                return Err(FfpError::DimensionMismatch {
                    expected: dim,
                    found: fp.dim(),
                });
            }
            if fp.params() != params {
                return Err(FfpError::InvalidInput(format!(
                    "fingerprint '{}' was built with different (k, a)",
                    fp.label()
                )));
            }
            if !labels.insert(fp.label()) {
                return Err(FfpError::InvalidInput(format!(
                    "duplicate class label '{}'",
                    fp.label()
                )));
            }
        }
        Ok(FingerprintLibrary {
            fingerprints,
            dim,
            params,
            norm,
        })
    }

    /// Builds one fingerprint per dataset class, in the dataset's class order.
    /// Every class needs at least one instance.
    pub fn from_dataset(
        dataset: &LabeledDataset,
        params: FingerprintParams,
        norm: NormRule,
    ) -> Result<Self> {
        let norm = norm.resolve(params.k())?;
        let fingerprints = dataset
            .classes()
            .par_iter()
            .map(|label| {
                let aggregate = aggregate_iter(dataset.vectors_of(label)).map_err(|e| match e {
                    FfpError::EmptyClass { .. } => FfpError::EmptyClass {
                        label: Some(label.clone()),
                    },
                    other => other,
                })?;
                fingerprint_aggregate(&aggregate, label.clone(), params)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(fingerprints, norm)
    }

    pub fn fingerprints(&self) -> &[ClassFingerprint] {
        &self.fingerprints
    }

    pub fn class_order(&self) -> Vec<&str> {
        self.fingerprints.iter().map(|fp| fp.label()).collect()
    }

    pub fn get(&self, label: &str) -> Option<&ClassFingerprint> {
        self.fingerprints.iter().find(|fp| fp.label() == label)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn params(&self) -> FingerprintParams {
        self.params
    }

    pub fn k(&self) -> usize {
        self.params.k()
    }

    pub fn a(&self) -> f64 {
        self.params.a()
    }

    pub fn norm(&self) -> f64 {
        self.norm
    }

    pub fn len(&self) -> usize {
        self.fingerprints.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fingerprints.is_empty()
    }

    pub fn is_truncated(&self) -> bool {
        self.params.k() > self.dim
    }

    pub fn with_norm(mut self, norm: f64) -> Result<Self> {
        check_norm(norm)?;
        self.norm = norm;
        Ok(self)
    }

    /// Reorders the classes; `order` must name every class exactly once.
    pub fn with_class_order<S: AsRef<str>>(mut self, order: &[S]) -> Result<Self> {
        if order.len() != self.fingerprints.len() {
            return Err(FfpError::InvalidParameter(format!(
                "class order names {} classes, library has {}",
                order.len(),
                self.fingerprints.len()
            )));
        }
        let mut reordered = Vec::with_capacity(order.len());
        for label in order {
            let label = label.as_ref();
            let pos = self
                .fingerprints
                .iter()
                .position(|fp| fp.label() == label)
                .ok_or_else(|| FfpError::UnknownLabel(label.to_string()))?;
            reordered.push(self.fingerprints.swap_remove(pos));
        }
        self.fingerprints = reordered;
        Ok(self)
    }
}
