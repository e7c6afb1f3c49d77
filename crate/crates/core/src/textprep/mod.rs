//! Tweet text normalization: cleaning, tokenization, lemmatization and
//! Porter stemming.

mod lemma;
mod porter;

use std::collections::BTreeSet;
use std::path::Path;

use crate::error::{Error, Result};

pub use lemma::lemmatize_token;
pub use porter::stem_token;

/// Pronouns, articles, auxiliaries and stative verbs. Negations and
/// direction words (`not`, `up`, `down`, ...) are kept on purpose since they
/// carry polarity in market chatter.
const DEFAULT_STOPWORDS: &[&str] = &[
    "a", "about", "after", "again", "all", "am", "an", "and", "any", "appear", "appears", "are",
    "as", "at", "be", "because", "been", "before", "being", "belong", "belongs", "between",
    "both", "but", "by", "can", "could", "did", "do", "does", "doing", "during", "each", "for",
    "from", "further", "had", "has", "have", "having", "he", "her", "here", "hers", "herself",
    "him", "himself", "his", "how", "i", "if", "im", "in", "into", "is", "it", "its", "itself",
    "ive", "just", "know", "knows", "me", "mine", "my", "myself", "of", "on", "once", "only",
    "or", "other", "our", "ours", "ourselves", "own", "same", "seem", "seemed", "seems", "she",
    "should", "so", "some", "such", "than", "that", "the", "their", "theirs", "them",
    "themselves", "then", "there", "these", "they", "this", "those", "through", "to", "until",
    "us", "very", "was", "we", "were", "what", "when", "where", "which", "while", "who", "whom",
    "why", "will", "with", "would", "you", "youre", "your", "yours", "yourself", "yourselves",
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StopwordList {
    words: BTreeSet<String>,
}

impl Default for StopwordList {
    fn default() -> Self {
        Self::builtin()
    }
}

impl StopwordList {
    pub fn builtin() -> Self {
        StopwordList {
            words: DEFAULT_STOPWORDS.iter().map(|w| w.to_string()).collect(),
        }
    }

    pub fn empty() -> Self {
        StopwordList {
            words: BTreeSet::new(),
        }
    }

    /// Entries are lowercased; entries containing whitespace are rejected.
    pub fn from_words<I, S>(words: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut set = BTreeSet::new();
        for w in words {
            let w = w.as_ref().trim();
            if w.is_empty() {
                continue;
            }
            if w.chars().any(char::is_whitespace) {
                return Err(Error::malformed("stopword list", format!("entry `{w}` contains whitespace")));
            }
            set.insert(w.to_lowercase());
        }
        Ok(StopwordList { words: set })
    }

    /// One word per line; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        Self::from_words(
            text.lines()
                .map(|line| line.split('#').next().unwrap_or("").trim())
                .filter(|w| !w.is_empty()),
        )
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn contains(&self, word: &str) -> bool {
        self.words.contains(word)
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &str> {
        self.words.iter().map(String::as_str)
    }
}

/// Ordered lowercase word tokens, each matching `[a-z0-9_]+`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct TokenList(Vec<String>);

impl TokenList {
    pub fn new(tokens: Vec<String>) -> Self {
        debug_assert!(tokens.iter().all(|t| is_word_token(t)));
        TokenList(tokens)
    }

    pub fn tokens(&self) -> &[String] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &str> {
        self.0.iter().map(String::as_str)
    }

    pub fn into_inner(self) -> Vec<String> {
        self.0
    }
}

impl<S: Into<String>> FromIterator<S> for TokenList {
    fn from_iter<T: IntoIterator<Item = S>>(iter: T) -> Self {
        TokenList::new(iter.into_iter().map(Into::into).collect())
    }
}

fn is_word_byte(b: u8) -> bool {
    b.is_ascii_lowercase() || b.is_ascii_digit() || b == b'_'
}

fn is_word_token(t: &str) -> bool {
    !t.is_empty() && t.bytes().all(is_word_byte)
}

fn url_start(token: &str) -> Option<usize> {
    ["http://", "https://", "www."]
        .iter()
        .filter_map(|p| token.find(p))
        .min()
}

fn collapse_runs(token: &str) -> String {
    let chars: Vec<char> = token.chars().collect();
    let mut out = String::with_capacity(token.len());
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let mut j = i + 1;
        while j < chars.len() && chars[j] == c {
            j += 1;
        }
        let run = j - i;
        if c.is_ascii_alphabetic() && run >= 3 {
            out.push(c);
        } else {
            out.extend(std::iter::repeat_n(c, run));
        }
        i = j;
    }
    out
}

/// Cleans one tweet. Steps, in order: lowercase, strip URLs, drop
/// `@user` tokens, strip punctuation, collapse letter runs of three or more,
/// drop all-digit tokens, drop stopwords, normalize whitespace.
///
/// ASCII punctuation is deleted in place (`don't` becomes `dont`); every
/// other non-word character, emoji included, becomes a space.
pub fn clean_text(raw: &str, stopwords: &StopwordList) -> String {
    let lower = raw.to_lowercase();

    let without_urls: Vec<&str> = lower
        .split_whitespace()
        .map(|tok| match url_start(tok) {
            Some(i) => &tok[..i],
            None => tok,
        })
        .filter(|tok| !tok.is_empty())
        .collect();

    let without_users = without_urls.into_iter().filter(|tok| !tok.starts_with('@'));

    let mut depunct = String::with_capacity(lower.len());
    for tok in without_users {
        for c in tok.chars() {
            if c.is_ascii_punctuation() {
                continue;
            }
            if c.is_ascii_lowercase() || c.is_ascii_digit() {
                depunct.push(c);
            } else {
                depunct.push(' ');
            }
        }
        depunct.push(' ');
    }

    depunct
        .split_whitespace()
        .map(collapse_runs)
        .filter(|tok| !tok.bytes().all(|b| b.is_ascii_digit()))
        .filter(|tok| !stopwords.contains(tok))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Maximal runs of `[a-z0-9_]`. Input is expected to be lowercase already;
/// uppercase ASCII is folded so the token invariant always holds.
pub fn tokenize(cleaned: &str) -> TokenList {
    let mut tokens = Vec::new();
    let mut current = String::new();
    for c in cleaned.chars() {
        let c = c.to_ascii_lowercase();
        if c.is_ascii() && is_word_byte(c as u8) {
            current.push(c);
        } else if !current.is_empty() {
            tokens.push(std::mem::take(&mut current));
        }
    }
    if !current.is_empty() {
        tokens.push(current);
    }
    TokenList(tokens)
}

/// Full pipeline: clean, tokenize, lemmatize, stem.
pub fn preprocess(raw: &str, stopwords: &StopwordList) -> TokenList {
    tokenize(&clean_text(raw, stopwords))
        .0
        .into_iter()
        .map(|t| stem_token(&lemmatize_token(&t)))
        .collect()
}
