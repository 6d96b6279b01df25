use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;

use serde::Serialize;

use crate::dataio::{LabeledDataset, Prediction};
use crate::error::{FfpError, Result};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassMetrics {
    pub label: String,
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    /// Gold instances of this class.
    pub support: usize,
    /// Instances predicted as this class.
    pub predicted: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvaluationReport {
    pub classes: Vec<String>,
    pub per_class: Vec<ClassMetrics>,
    /// Unweighted mean F1 over every declared class, zero-support ones included.
    pub macro_f1: f64,
    pub accuracy: f64,
    /// `confusion[gold][predicted]`, indexed by class order.
    pub confusion: Vec<Vec<usize>>,
}

/// One-vs-rest precision, recall and F1 per class.
///
/// Prediction ids must match the gold ids exactly. A ratio with a zero
/// denominator is 0, so a class nobody predicts and nobody holds has F1 0.
pub fn evaluate(predictions: &[Prediction], gold: &LabeledDataset) -> Result<EvaluationReport> {
    let mut by_id: HashMap<&str, &str> = HashMap::with_capacity(predictions.len());
    for p in predictions {
        if by_id.insert(p.id.as_str(), p.label.as_str()).is_some() {
            return Err(FfpError::IdMismatch(format!(
                "duplicate prediction for '{}'",
                p.id
            )));
        }
    }
    let gold_ids: HashSet<&str> = gold.instances().iter().map(|i| i.id.as_str()).collect();
    if let Some(missing) = gold
        .instances()
        .iter()
        .find(|i| !by_id.contains_key(i.id.as_str()))
    {
        return Err(FfpError::IdMismatch(format!(
            "no prediction for '{}'",
            missing.id
        )));
    }
    if let Some(extra) = predictions
        .iter()
        .find(|p| !gold_ids.contains(p.id.as_str()))
    {
        return Err(FfpError::IdMismatch(format!(
            "prediction for unknown id '{}'",
            extra.id
        )));
    }
    let pairs = gold
        .instances()
        .iter()
        .map(|inst| (inst.label.as_str(), by_id[inst.id.as_str()]));
    evaluate_pairs(gold.classes(), pairs)
}

/// Metrics from `(gold, predicted)` label pairs.
pub fn evaluate_pairs<'a, I>(classes: &[String], pairs: I) -> Result<EvaluationReport>
where
    I: IntoIterator<Item = (&'a str, &'a str)>,
{
    let pos: HashMap<&str, usize> = classes
        .iter()
        .enumerate()
        .map(|(i, c)| (c.as_str(), i))
        .collect();
    let n = classes.len();
    let mut confusion = vec![vec![0usize; n]; n];
    for (g, p) in pairs {
        let gi = *pos
            .get(g)
            .ok_or_else(|| FfpError::UnknownLabel(g.to_string()))?;
        let pi = *pos
            .get(p)
            .ok_or_else(|| FfpError::UnknownLabel(p.to_string()))?;
        confusion[gi][pi] += 1;
    }
    Ok(report_from_confusion(classes, confusion))
}

fn ratio(num: usize, den: usize) -> f64 {
    if den == 0 {
        0.0
    } else {
        num as f64 / den as f64
    }
}

fn report_from_confusion(classes: &[String], confusion: Vec<Vec<usize>>) -> EvaluationReport {
    let n = classes.len();
    let total: usize = confusion.iter().flatten().sum();
    let correct: usize = (0..n).map(|i| confusion[i][i]).sum();
    let per_class: Vec<ClassMetrics> = (0..n)
        .map(|c| {
            let tp = confusion[c][c];
            let support: usize = confusion[c].iter().sum();
            let predicted: usize = confusion.iter().map(|row| row[c]).sum();
            let precision = ratio(tp, predicted);
            let recall = ratio(tp, support);
            let f1 = if precision + recall > 0.0 {
                2.0 * precision * recall / (precision + recall)
            } else {
                0.0
            };
            ClassMetrics {
                label: classes[c].clone(),
                precision,
                recall,
                f1,
                support,
                predicted,
            }
        })
        .collect();
    let macro_f1 = if n == 0 {
        0.0
    } else {
        per_class.iter().map(|m| m.f1).sum::<f64>() / n as f64
    };
    EvaluationReport {
        classes: classes.to_vec(),
        per_class,
        macro_f1,
        accuracy: ratio(correct, total),
        confusion,
    }
}

impl EvaluationReport {
    pub fn class(&self, label: &str) -> Option<&ClassMetrics> {
        self.per_class.iter().find(|m| m.label == label)
    }

    pub fn total(&self) -> usize {
        self.confusion.iter().flatten().sum()
    }

    /// Human-readable table: per-class rows, macro-F1, accuracy, confusion matrix.
    pub fn to_text(&self) -> String {
        let width = self
            .classes
            .iter()
            .map(String::len)
            .max()
            .unwrap_or(0)
            .max(5);
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{:<width$}  {:>9}  {:>6}  {:>6}  {:>7}",
            "class", "precision", "recall", "f1", "support"
        );
        for m in &self.per_class {
            let _ = writeln!(
                out,
                "{:<width$}  {:>9.3}  {:>6.3}  {:>6.3}  {:>7}",
                m.label, m.precision, m.recall, m.f1, m.support
            );
        }
        let _ = writeln!(out, "macro-F1 {:.3}", self.macro_f1);
        let _ = writeln!(out, "accuracy {:.3}", self.accuracy);
        let _ = writeln!(out, "confusion (rows gold, columns predicted)");
        let _ = write!(out, "{:<width$}", "");
        for c in &self.classes {
            let _ = write!(out, "  {c:>6}");
        }
        out.push('\n');
        for (c, row) in self.classes.iter().zip(&self.confusion) {
            let _ = write!(out, "{c:<width$}");
            for v in row {
                let _ = write!(out, "  {v:>6}");
            }
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
