use std::fmt::Write as _;

use serde::Serialize;

use super::format_membership;
use crate::error::Result;
use crate::fingerprint::{intersection, similarity, ClassFingerprint};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SharedCell {
    pub feature: usize,
    pub instance_membership: f64,
    pub class_membership: f64,
    pub min: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IntersectionReport {
    pub instance: String,
    pub class: String,
    /// Features present in both fingerprints, ascending by index.
    pub shared: Vec<SharedCell>,
    pub norm: f64,
    /// Sum of `min` over `shared`, divided by `norm`; equals the similarity score.
    pub contribution: f64,
}

pub fn intersect(
    instance: &ClassFingerprint,
    class: &ClassFingerprint,
    norm: f64,
) -> Result<IntersectionReport> {
    let contribution = similarity(instance, class, norm)?;
    let shared = intersection(instance, class)
        .map(|(feature, mi, mc)| SharedCell {
            feature,
            instance_membership: mi,
            class_membership: mc,
            min: mi.min(mc),
        })
        .collect();
    Ok(IntersectionReport {
        instance: instance.label().to_string(),
        class: class.label().to_string(),
        shared,
        norm,
        contribution,
    })
}

impl IntersectionReport {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} vs {}", self.instance, self.class);
        for c in &self.shared {
            let _ = writeln!(
                out,
                "  feature {:>6}: min({}, {}) = {}",
                c.feature,
                format_membership(c.instance_membership),
                format_membership(c.class_membership),
                format_membership(c.min)
            );
        }
        let total: f64 = self.shared.iter().fold(0.0, |acc, c| acc + c.min);
        let _ = writeln!(
            out,
            "  sum {:.4} / N {} = {:.4}",
            total, self.norm, self.contribution
        );
        out
    }
}
