//! Conversation file: JSON Lines, one dialogue per line.
//!
//! ```text
//! {"id":"d1","turns":[{"speaker":"A","text":"Hi there.","label":"neutral"},{"speaker":"B","text":"Go away!","label":"anger"}]}
//! ```

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{read_text, write_text, Document};
use crate::error::{FfpError, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Turn {
    pub speaker: String,
    pub text: String,
    pub label: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Conversation {
    pub id: String,
    pub turns: Vec<Turn>,
}

pub fn conversations_from_str(text: &str) -> Result<Vec<Conversation>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let conv: Conversation =
            serde_json::from_str(line).map_err(|e| FfpError::parse(i + 1, e.to_string()))?;
        if conv.id.is_empty() || conv.id.contains([',', ':']) {
            return Err(FfpError::parse(
                i + 1,
                format!("invalid dialogue id '{}'", conv.id),
            ));
        }
        out.push(conv);
    }
    Ok(out)
}

pub fn conversations_to_string(conversations: &[Conversation]) -> String {
    let mut out = String::new();
    for c in conversations {
        out.push_str(&serde_json::to_string(c).expect("conversation serializes"));
        out.push('\n');
    }
    out
}

pub fn read_conversations(path: impl AsRef<Path>) -> Result<Vec<Conversation>> {
    conversations_from_str(&read_text(path.as_ref())?)
}

pub fn write_conversations(conversations: &[Conversation], path: impl AsRef<Path>) -> Result<()> {
    write_text(path.as_ref(), &conversations_to_string(conversations))
}

/// One document per turn, with id `<dialogue>:<turn>` (turns counted from 0).
pub fn conversations_to_documents(conversations: &[Conversation]) -> Vec<Document> {
    conversations
        .iter()
        .flat_map(|c| {
            c.turns.iter().enumerate().map(move |(i, t)| {
                Document::new(format!("{}:{i}", c.id), t.label.clone(), t.text.clone())
            })
        })
        .collect()
}
