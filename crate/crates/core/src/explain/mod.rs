//! Human-readable views of fingerprints and classification decisions.

mod intersect;
mod plot;
mod render;
mod shared;

pub use intersect::{intersect, IntersectionReport, SharedCell};
pub use plot::{emit_plot_data, plot_lines, PlotData};
pub use render::{
    format_membership, parse_rank_ordered, render_classification, render_fingerprint,
    render_library, render_similarities, RenderStyle,
};
pub use shared::{feature_classes, shared_features, SharedFeature, SharedFeatureReport};
