use std::collections::HashMap;
use std::path::Path;

use super::{read_text, write_text};
use crate::dataio::{Instance, LabeledDataset};
use crate::error::{FfpError, Result};
use crate::vector::FeatureVector;
use crate::Warning;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    pub id: String,
    pub label: String,
    pub text: String,
}

impl Document {
    pub fn new(id: impl Into<String>, label: impl Into<String>, text: impl Into<String>) -> Self {
        Document {
            id: id.into(),
            label: label.into(),
            text: text.into(),
        }
    }
}

/// Ordered token list with its reverse index.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Vocabulary {
    tokens: Vec<String>,
    index: HashMap<String, usize>,
}

impl Vocabulary {
    pub fn from_tokens<I, S>(tokens: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut vocab = Vocabulary::default();
        for t in tokens {
            let t = t.into();
            if t.is_empty() || t.chars().any(char::is_whitespace) {
                return Err(FfpError::InvalidInput(format!(
                    "invalid vocabulary token '{t}'"
                )));
            }
            if vocab.index.contains_key(&t) {
                return Err(FfpError::InvalidInput(format!(
                    "duplicate vocabulary token '{t}'"
                )));
            }
            vocab.push(t);
        }
        Ok(vocab)
    }

    fn push(&mut self, token: String) -> usize {
        let idx = self.tokens.len();
        self.index.insert(token.clone(), idx);
        self.tokens.push(token);
        idx
    }

    pub fn tokens(&self) -> &[String] {
        &self.tokens
    }

    pub fn index_of(&self, token: &str) -> Option<usize> {
        self.index.get(token).copied()
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }
}

/// Lowercases and splits on runs of non-alphanumeric characters.
pub fn tokenize(text: &str) -> impl Iterator<Item = String> + '_ {
    text.split(|c: char| !c.is_alphanumeric())
        .filter(|t| !t.is_empty())
        .map(str::to_lowercase)
}

#[derive(Debug, Clone)]
pub struct Vectorized {
    pub dataset: LabeledDataset,
    pub vocabulary: Vocabulary,
    pub warnings: Vec<Warning>,
}

/// Raw token counts per document.
///
/// Without a vocabulary one is built in first-occurrence order; with one,
/// unknown tokens are dropped. Classes follow first-occurrence order of the
/// document labels.
pub fn vectorize_text(
    documents: &[Document],
    vocabulary: Option<&Vocabulary>,
) -> Result<Vectorized> {
    if documents.is_empty() {
        return Err(FfpError::InvalidInput("empty corpus".into()));
    }
    let tokenized: Vec<Vec<String>> = documents
        .iter()
        .map(|d| tokenize(&d.text).collect())
        .collect();

    let vocab = match vocabulary {
        Some(v) => v.clone(),
        None => {
            let mut v = Vocabulary::default();
            for tok in tokenized.iter().flatten() {
                if v.index_of(tok).is_none() {
                    v.push(tok.clone());
                }
            }
            v
        }
    };
    if vocab.is_empty() {
        return Err(FfpError::InvalidInput(
            "corpus produced an empty vocabulary".into(),
        ));
    }

    let mut classes: Vec<String> = Vec::new();
    let mut instances = Vec::with_capacity(documents.len());
    let mut warnings = Vec::new();
    for (doc, tokens) in documents.iter().zip(&tokenized) {
        if !classes.contains(&doc.label) {
            classes.push(doc.label.clone());
        }
        let mut counts = vec![0.0; vocab.len()];
        let mut known = 0usize;
        for tok in tokens {
            if let Some(i) = vocab.index_of(tok) {
                counts[i] += 1.0;
                known += 1;
            }
        }
        if known == 0 {
            warnings.push(Warning::NoKnownTokens { id: doc.id.clone() });
        }
        instances.push(Instance {
            id: doc.id.clone(),
            label: doc.label.clone(),
            vector: FeatureVector::new(counts)?,
        });
    }
    let dataset = LabeledDataset::new(vocab.len(), classes, instances)?;
    Ok(Vectorized {
        dataset,
        vocabulary: vocab,
        warnings,
    })
}

/// One token per line.
pub fn write_vocabulary(vocab: &Vocabulary, path: impl AsRef<Path>) -> Result<()> {
    let mut text = vocab.tokens.join("\n");
    text.push('\n');
    write_text(path.as_ref(), &text)
}

pub fn read_vocabulary(path: impl AsRef<Path>) -> Result<Vocabulary> {
    let text = read_text(path.as_ref())?;
    Vocabulary::from_tokens(text.lines().map(str::trim).filter(|l| !l.is_empty()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_tokens() {
        let out = vectorize_text(&[Document::new("d", "x", "a b a")], None).unwrap();
        assert_eq!(out.vocabulary.tokens(), &["a".to_string(), "b".to_string()]);
        assert_eq!(out.dataset.instances()[0].vector.values(), &[2.0, 1.0]);
        assert!(out.warnings.is_empty());
    }

    #[test]
    fn tokenizer_lowercases_and_splits() {
        let toks: Vec<String> = tokenize("Hello, WORLD!  it's 2day").collect();
        assert_eq!(toks, vec!["hello", "world", "it", "s", "2day"]);
    }

    #[test]
    fn unknown_tokens_under_fixed_vocab() {
        let vocab = Vocabulary::from_tokens(["alpha", "beta"]).unwrap();
        let docs = [
            Document::new("d1", "x", "gamma delta"),
            Document::new("d2", "y", "beta gamma beta"),
        ];
        let out = vectorize_text(&docs, Some(&vocab)).unwrap();
        assert_eq!(out.dataset.instances()[0].vector.values(), &[0.0, 0.0]);
        assert_eq!(out.dataset.instances()[1].vector.values(), &[0.0, 2.0]);
        assert_eq!(
            out.warnings,
            vec![Warning::NoKnownTokens { id: "d1".into() }]
        );
        assert_eq!(out.dataset.classes(), &["x".to_string(), "y".to_string()]);
    }

    #[test]
    fn errors() {
        assert!(vectorize_text(&[], None).is_err());
        assert!(vectorize_text(&[Document::new("d", "x", "!!!")], None).is_err());
        assert!(Vocabulary::from_tokens(["a", "a"]).is_err());
    }
}
