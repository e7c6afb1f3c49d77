//! Vocabulary construction and the two encodings: binary bag-of-words for
//! the count-based models, post-padded id sequences for the recurrent one.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::textprep::TokenList;

pub const DEFAULT_MAX_TERMS: usize = 5000;
pub const DEFAULT_MAX_LENGTH: usize = 30;
const VOCAB_HEADER: &str = "sentiment-signals vocabulary v1";

/// Terms ranked by descending corpus frequency, ties broken
/// lexicographically. Sequence ids are 1-based; 0 is padding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vocabulary {
    terms: Vec<String>,
    frequencies: Vec<u64>,
    index: HashMap<String, usize>,
    max_terms: usize,
}

impl Vocabulary {
    fn from_ranked(ranked: Vec<(String, u64)>, max_terms: usize) -> Self {
        let index = ranked
            .iter()
            .enumerate()
            .map(|(i, (t, _))| (t.clone(), i))
            .collect();
        let (terms, frequencies) = ranked.into_iter().unzip();
        Vocabulary {
            terms,
            frequencies,
            index,
            max_terms,
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_terms(&self) -> usize {
        self.max_terms
    }

    pub fn terms(&self) -> &[String] {
        &self.terms
    }

    pub fn frequency(&self, position: usize) -> u64 {
        self.frequencies[position]
    }

    /// 0-based position in `terms`.
    pub fn position(&self, term: &str) -> Option<usize> {
        self.index.get(term).copied()
    }

    /// 1-based sequence id.
    pub fn id(&self, term: &str) -> Option<usize> {
        self.position(term).map(|p| p + 1)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{VOCAB_HEADER}\nmax_terms\t{}\n", self.max_terms);
        for (t, f) in self.terms.iter().zip(&self.frequencies) {
            writeln!(out, "{t}\t{f}").unwrap();
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header = lines.next().unwrap_or("");
        if header != VOCAB_HEADER {
            return Err(Error::ModelVersionMismatch {
                expected: VOCAB_HEADER.into(),
                found: header.into(),
            });
        }
        let max_terms = lines
            .next()
            .and_then(|l| l.strip_prefix("max_terms\t"))
            .and_then(|v| v.parse::<usize>().ok())
            .filter(|&m| m > 0)
            .ok_or_else(|| Error::malformed("vocabulary", "bad max_terms line"))?;
        let mut ranked = Vec::new();
        for line in lines {
            let (term, freq) = line
                .split_once('\t')
                .ok_or_else(|| Error::malformed("vocabulary", format!("bad line `{line}`")))?;
            let freq: u64 = freq
                .parse()
                .map_err(|_| Error::malformed("vocabulary", format!("bad frequency `{freq}`")))?;
            ranked.push((term.to_string(), freq));
        }
        if ranked.len() > max_terms {
            return Err(Error::malformed("vocabulary", "more terms than max_terms"));
        }
        let vocab = Vocabulary::from_ranked(ranked, max_terms);
        if vocab.index.len() != vocab.terms.len() {
            return Err(Error::malformed("vocabulary", "duplicate term"));
        }
        Ok(vocab)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_text())?;
        Ok(())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_text(&std::fs::read_to_string(path)?)
    }
}

/// Keeps the `max_terms` most frequent tokens.
pub fn build_vocabulary(corpus: &[TokenList], max_terms: usize) -> Result<Vocabulary> {
    if corpus.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    if max_terms == 0 {
        return Err(Error::InvalidConfig("max_terms must be positive".into()));
    }
    let mut counts: HashMap<&str, u64> = HashMap::new();
    for doc in corpus {
        for tok in doc.iter() {
            *counts.entry(tok).or_insert(0) += 1;
        }
    }
    let mut ranked: Vec<(String, u64)> = counts
        .into_iter()
        .map(|(t, c)| (t.to_string(), c))
        .collect();
    ranked.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    ranked.truncate(max_terms);
    Ok(Vocabulary::from_ranked(ranked, max_terms))
}

/// Presence vector over the vocabulary.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BinaryVector(Vec<u8>);

impl BinaryVector {
    /// Panics if any value is not 0 or 1.
    pub fn new(bits: Vec<u8>) -> Self {
        assert!(bits.iter().all(|&b| b <= 1), "binary vector values must be 0 or 1");
        BinaryVector(bits)
    }

    pub fn zeros(len: usize) -> Self {
        BinaryVector(vec![0; len])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> bool {
        self.0[i] == 1
    }

    pub fn bits(&self) -> &[u8] {
        &self.0
    }

    pub fn count_ones(&self) -> usize {
        self.0.iter().filter(|&&b| b == 1).count()
    }
}

pub fn encode_binary(tokens: &TokenList, vocab: &Vocabulary) -> BinaryVector {
    let mut bits = vec![0u8; vocab.len()];
    for tok in tokens.iter() {
        if let Some(p) = vocab.position(tok) {
            bits[p] = 1;
        }
    }
    BinaryVector(bits)
}

/// Fixed-length id sequence, zero-padded at the end.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TokenSequence(Vec<usize>);

impl TokenSequence {
    pub fn new(ids: Vec<usize>) -> Self {
        TokenSequence(ids)
    }

    pub fn ids(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn reversed(&self) -> Self {
        TokenSequence(self.0.iter().rev().copied().collect())
    }
}

/// Maps known tokens to ids, drops unknown ones, keeps the first
/// `max_length` ids and pads with zeros.
pub fn encode_sequence(tokens: &TokenList, vocab: &Vocabulary, max_length: usize) -> TokenSequence {
    let mut ids: Vec<usize> = tokens
        .iter()
        .filter_map(|t| vocab.id(t))
        .take(max_length)
        .collect();
    ids.resize(max_length, 0);
    TokenSequence(ids)
}
