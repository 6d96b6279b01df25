use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;
use std::path::Path;

use super::{check_cell, format_f64, read_text, write_text};
use crate::error::{FfpError, Result};
use crate::vector::FeatureVector;

#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    pub id: String,
    pub label: String,
    pub vector: FeatureVector,
}

/// Labeled instances sharing one dimension, with a declared class order.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledDataset {
    dim: usize,
    classes: Vec<String>,
    instances: Vec<Instance>,
}

impl LabeledDataset {
    pub fn new(dim: usize, classes: Vec<String>, instances: Vec<Instance>) -> Result<Self> {
        if dim == 0 {
            return Err(FfpError::InvalidInput(
                "dataset dimension must be positive".into(),
            ));
        }
        let mut class_set = HashSet::new();
        for c in &classes {
            check_cell("class label", c)?;
            if !class_set.insert(c.as_str()) {
                return Err(FfpError::InvalidInput(format!("duplicate class '{c}'")));
            }
        }
        let mut ids = HashSet::new();
        for inst in &instances {
            check_cell("instance id", &inst.id)?;
            if !ids.insert(inst.id.as_str()) {
                return Err(FfpError::InvalidInput(format!(
                    "duplicate instance id '{}'",
                    inst.id
                )));
            }
            if !class_set.contains(inst.label.as_str()) {
                return Err(FfpError::UnknownLabel(inst.label.clone()));
            }
            if inst.vector.dim() != dim {
                return Err(FfpError::DimensionMismatch {
                    expected: dim,
                    found: inst.vector.dim(),
                });
            }
        }
        Ok(LabeledDataset {
            dim,
            classes,
            instances,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn classes(&self) -> &[String] {
        &self.classes
    }

    pub fn instances(&self) -> &[Instance] {
        &self.instances
    }

    pub fn len(&self) -> usize {
        self.instances.len()
    }

    pub fn is_empty(&self) -> bool {
        self.instances.is_empty()
    }

    pub fn get(&self, id: &str) -> Option<&Instance> {
        self.instances.iter().find(|i| i.id == id)
    }

    /// Vectors of one class, in dataset order.
    pub fn vectors_of<'a>(
        &'a self,
        label: &'a str,
    ) -> impl Iterator<Item = &'a FeatureVector> + 'a {
        self.instances
            .iter()
            .filter(move |i| i.label == label)
            .map(|i| &i.vector)
    }

    /// Instance count per class, in class order.
    pub fn class_counts(&self) -> Vec<usize> {
        let pos: HashMap<&str, usize> = self
            .classes
            .iter()
            .enumerate()
            .map(|(i, c)| (c.as_str(), i))
            .collect();
        let mut counts = vec![0; self.classes.len()];
        for inst in &self.instances {
            counts[pos[inst.label.as_str()]] += 1;
        }
        counts
    }

    /// Same instances, new class order; `order` must be a permutation of the classes.
    pub fn with_class_order<S: AsRef<str>>(mut self, order: &[S]) -> Result<Self> {
        let order: Vec<String> = order.iter().map(|s| s.as_ref().to_string()).collect();
        let mut a: Vec<&String> = order.iter().collect();
        let mut b: Vec<&String> = self.classes.iter().collect();
        a.sort();
        b.sort();
        if a != b {
            return Err(FfpError::InvalidParameter(format!(
                "class order {:?} does not match dataset classes {:?}",
                order, self.classes
            )));
        }
        self.classes = order;
        Ok(self)
    }

    /// Canonical text form of the dataset file.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "#dim={}", self.dim);
        let _ = writeln!(out, "#classes={}", self.classes.join(","));
        for inst in &self.instances {
            out.push_str(&inst.id);
            out.push(',');
            out.push_str(&inst.label);
            for v in inst.vector.values() {
                out.push(',');
                out.push_str(&format_f64(*v));
            }
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));

        let (n, line) = lines
            .next()
            .ok_or_else(|| FfpError::parse(1, "missing '#dim=' header"))?;
        let dim: usize = line
            .trim()
            .strip_prefix("#dim=")
            .ok_or_else(|| FfpError::parse(n, "expected '#dim=<d>'"))?
            .trim()
            .parse()
            .map_err(|_| FfpError::parse(n, "dimension is not a positive integer"))?;
        if dim == 0 {
            return Err(FfpError::parse(n, "dimension must be positive"));
        }

        let (n, line) = lines
            .next()
            .ok_or_else(|| FfpError::parse(2, "missing '#classes=' header"))?;
        let classes_cell = line
            .trim()
            .strip_prefix("#classes=")
            .ok_or_else(|| FfpError::parse(n, "expected '#classes=<labels>'"))?;
        let classes: Vec<String> = if classes_cell.trim().is_empty() {
            Vec::new()
        } else {
            classes_cell
                .split(',')
                .map(|c| c.trim().to_string())
                .collect()
        };
        let class_set: HashSet<&str> = classes.iter().map(String::as_str).collect();
        if class_set.len() != classes.len() {
            return Err(FfpError::parse(n, "duplicate class label in header"));
        }

        let mut instances = Vec::new();
        let mut ids = HashSet::new();
        for (n, line) in lines {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let cells: Vec<&str> = line.split(',').map(str::trim).collect();
            if cells.len() != dim + 2 {
                return Err(FfpError::parse(
                    n,
                    format!(
                        "expected {} fields (id, label, {dim} values), found {}",
                        dim + 2,
                        cells.len()
                    ),
                ));
            }
            let (id, label) = (cells[0], cells[1]);
            if id.is_empty() {
                return Err(FfpError::parse(n, "empty instance id"));
            }
            if !ids.insert(id.to_string()) {
                return Err(FfpError::parse(n, format!("duplicate instance id '{id}'")));
            }
            if !class_set.contains(label) {
                return Err(FfpError::parse(
                    n,
                    format!("label '{label}' not declared in '#classes='"),
                ));
            }
            let mut values = Vec::with_capacity(dim);
            for (col, cell) in cells[2..].iter().enumerate() {
                let v: f64 = cell.parse().map_err(|_| {
                    FfpError::parse(n, format!("value {col} ('{cell}') is not a number"))
                })?;
                if !v.is_finite() {
                    return Err(FfpError::parse(
                        n,
                        format!("value {col} ('{cell}') is not finite"),
                    ));
                }
                values.push(v);
            }
            instances.push(Instance {
                id: id.to_string(),
                label: label.to_string(),
                vector: FeatureVector::new(values)?,
            });
        }
        LabeledDataset::new(dim, classes, instances).map_err(|e| FfpError::parse(0, e.to_string()))
    }
}

pub fn read_dataset(path: impl AsRef<Path>) -> Result<LabeledDataset> {
    LabeledDataset::from_text(&read_text(path.as_ref())?)
}

pub fn write_dataset(ds: &LabeledDataset, path: impl AsRef<Path>) -> Result<()> {
    write_text(path.as_ref(), &ds.to_text())
}
