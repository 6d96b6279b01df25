use crate::dataio::{LabeledDataset, Prediction};
use crate::error::{FfpError, Result};
use crate::vector::{aggregate_iter, FeatureVector};

/// Reference classifier: the class whose mean training vector has the
/// largest dot product with the instance. Ties go to the earliest class.
#[derive(Debug, Clone, PartialEq)]
pub struct NearestCentroid {
    classes: Vec<String>,
    centroids: Vec<Vec<f64>>,
}

impl NearestCentroid {
    pub fn fit(train: &LabeledDataset) -> Result<Self> {
        let centroids = train
            .classes()
            .iter()
            .map(|label| {
                let n = train.vectors_of(label).count();
                let sum = aggregate_iter(train.vectors_of(label)).map_err(|e| match e {
                    FfpError::EmptyClass { .. } => FfpError::EmptyClass {
                        label: Some(label.clone()),
                    },
                    other => other,
                })?;
                Ok(sum.values().iter().map(|v| v / n as f64).collect())
            })
            .collect::<Result<Vec<Vec<f64>>>>()?;
        Ok(NearestCentroid {
            classes: train.classes().to_vec(),
            centroids,
        })
    }

    pub fn classes(&self) -> &[String] {
        &self.classes
    }

    pub fn centroid(&self, label: &str) -> Option<&[f64]> {
        self.classes
            .iter()
            .position(|c| c == label)
            .map(|i| self.centroids[i].as_slice())
    }

    pub fn scores(&self, v: &FeatureVector) -> Result<Vec<f64>> {
        let dim = self.centroids[0].len();
        if v.dim() != dim {
            return Err(FfpError::DimensionMismatch {
                expected: dim,
                found: v.dim(),
            });
        }
        Ok(self
            .centroids
            .iter()
            .map(|c| c.iter().zip(v.values()).map(|(a, b)| a * b).sum())
            .collect())
    }

    pub fn predict(&self, v: &FeatureVector) -> Result<&str> {
        let scores = self.scores(v)?;
        let mut best = 0;
        for (i, s) in scores.iter().enumerate().skip(1) {
            if *s > scores[best] {
                best = i;
            }
        }
        Ok(&self.classes[best])
    }

    pub fn predict_dataset(&self, ds: &LabeledDataset) -> Result<Vec<Prediction>> {
        ds.instances()
            .iter()
            .map(|inst| {
                Ok(Prediction::new(
                    inst.id.clone(),
                    self.predict(&inst.vector)?,
                ))
            })
            .collect()
    }
}
