//! File formats, text vectorization and synthetic data.
//!
//! Dataset file (UTF-8 text):
//!
//! ```text
//! #dim=3
//! #classes=pos,neg
//! doc1,pos,1,0,2.5
//! doc2,neg,0,3,-1
//! ```
//!
//! Lines after the header that start with `#` are comments; blank lines are
//! skipped. Numbers are written in their shortest round-trip form.

mod conversation;
mod dataset;
mod library_file;
mod predictions;
mod synthetic;
mod text;

pub use conversation::{
    conversations_from_str, conversations_to_documents, conversations_to_string,
    read_conversations, write_conversations, Conversation, Turn,
};
pub use dataset::{read_dataset, write_dataset, Instance, LabeledDataset};
pub use library_file::{
    library_from_str, library_to_string, load_library, save_library, LIBRARY_FORMAT_VERSION,
};
pub use predictions::{
    predictions_from_str, predictions_to_string, read_predictions, scores_to_string,
    write_predictions, write_scores, Prediction,
};
pub use synthetic::{generate_synthetic, skewed_counts, stratified_split, SyntheticSpec};
pub use text::{
    read_vocabulary, tokenize, vectorize_text, write_vocabulary, Document, Vectorized, Vocabulary,
};

use std::fs;
use std::path::Path;

use crate::error::{FfpError, Result};

/// Shortest round-trip decimal; integral values drop the trailing `.0`.
pub(crate) fn format_f64(x: f64) -> String {
    let s = format!("{x:?}");
    match s.strip_suffix(".0") {
        Some(int) => int.to_string(),
        None => s,
    }
}

pub(crate) fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| FfpError::io(path, e))
}

pub(crate) fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| FfpError::io(path, e))
}

/// Ids and labels end up as bare CSV cells.
pub(crate) fn check_cell(kind: &str, value: &str) -> Result<()> {
    if value.is_empty()
        || value.starts_with('#')
        || value.contains([',', '\n', '\r'])
        || value.trim() != value
    {
        return Err(FfpError::InvalidInput(format!(
            "{kind} '{value}' must be non-empty, without surrounding whitespace, commas, newlines or a leading '#'"
        )));
    }
    Ok(())
}
