// Cleaning, tokenizing, lemmatizing and stemming tweets, then encoding them
// against a small vocabulary.

use std::error::Error;

use sentiment_signals::features::{build_vocabulary, encode_binary, encode_sequence};
use sentiment_signals::textprep::{clean_text, lemmatize_token, preprocess, stem_token, tokenize, StopwordList};

const TWEETS: [&str; 4] = [
    "Loving the new $AAPL earnings!!! https://t.co/xyz @trader",
    "Sooooo disappointed, #TSLA dropped 7% today :(",
    "I'm buying more shares, feeling bullish",
    "Analysts were worried about falling margins",
];

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let stopwords = StopwordList::builtin();
    let mut corpus = Vec::new();
    for raw in TWEETS {
        let cleaned = clean_text(raw, &stopwords);
        let words = tokenize(&cleaned);
        let lemmas: Vec<String> = words.iter().map(lemmatize_token).collect();
        let stems: Vec<String> = lemmas.iter().map(|l| stem_token(l)).collect();
        println!("{raw}\n  cleaned: {cleaned}\n  lemmas:  {lemmas:?}\n  stems:   {stems:?}");
        let tokens = preprocess(raw, &stopwords);
        assert_eq!(tokens.tokens(), stems.as_slice());
        corpus.push(tokens);
    }

    let vocab = build_vocabulary(&corpus, 12)?;
    println!("vocabulary: {:?}", vocab.terms());
    let first = &corpus[0];
    println!("binary:   {:?}", encode_binary(first, &vocab).bits());
    println!("sequence: {:?}", encode_sequence(first, &vocab, 8).ids());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
