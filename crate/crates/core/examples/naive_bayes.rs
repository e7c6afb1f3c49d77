// Bernoulli naive Bayes on a synthetic labeled corpus.

use std::error::Error;

use sentiment_signals::corpus::Sentiment;
use sentiment_signals::features::{build_vocabulary, encode_binary};
use sentiment_signals::metrics::confusion;
use sentiment_signals::nb::{fit_nb, NbParams};
use sentiment_signals::synth::{training_corpus, SynthConfig};
use sentiment_signals::textprep::{preprocess, StopwordList};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let rows = training_corpus(&SynthConfig {
        n_train: 600,
        ..SynthConfig::default()
    });
    let stopwords = StopwordList::builtin();
    let tokens: Vec<_> = rows.iter().map(|r| preprocess(&r.full_text, &stopwords)).collect();
    let labels: Vec<Sentiment> = rows.iter().map(|r| r.label).collect();
    let (train_n, _) = (480, 120);

    let vocab = build_vocabulary(&tokens[..train_n], 500)?;
    let x: Vec<_> = tokens.iter().map(|t| encode_binary(t, &vocab)).collect();
    let model = fit_nb(&x[..train_n], &labels[..train_n], NbParams::default())?;

    let predicted = x[train_n..]
        .iter()
        .map(|v| model.predict(v).map(|p| p.label))
        .collect::<Result<Vec<_>, _>>()?;
    println!("{}", confusion(&labels[train_n..], &predicted)?);

    for text in ["what a great rally", "terrible losses again"] {
        let p = model.predict(&encode_binary(&preprocess(text, &stopwords), &vocab))?;
        println!("{text:?} -> {} (log posteriors {:.3?})", p.label, p.log_posterior);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
