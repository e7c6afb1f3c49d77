// Random forest of Gini CART trees on binary bag-of-words features.

use std::error::Error;

use sentiment_signals::corpus::Sentiment;
use sentiment_signals::features::{build_vocabulary, encode_binary};
use sentiment_signals::metrics::confusion;
use sentiment_signals::rf::{fit_forest, ForestParams};
use sentiment_signals::synth::{training_corpus, SynthConfig};
use sentiment_signals::textprep::{preprocess, StopwordList};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let rows = training_corpus(&SynthConfig {
        n_train: 600,
        seed: 3,
        ..SynthConfig::default()
    });
    let stopwords = StopwordList::builtin();
    let tokens: Vec<_> = rows.iter().map(|r| preprocess(&r.full_text, &stopwords)).collect();
    let labels: Vec<Sentiment> = rows.iter().map(|r| r.label).collect();
    let vocab = build_vocabulary(&tokens[..480], 500)?;
    let x: Vec<_> = tokens.iter().map(|t| encode_binary(t, &vocab)).collect();

    let forest = fit_forest(
        &x[..480],
        &labels[..480],
        ForestParams {
            n_estimators: 25,
            max_depth: 20,
            seed: 7,
            ..ForestParams::default()
        },
    )?;
    let depths: Vec<usize> = forest.trees().iter().map(|t| t.depth()).collect();
    println!("{} trees, mtry {}, depths {depths:?}", forest.trees().len(), forest.mtry());

    let predicted = x[480..]
        .iter()
        .map(|v| forest.predict(v).map(|p| p.label))
        .collect::<Result<Vec<_>, _>>()?;
    println!("{}", confusion(&labels[480..], &predicted)?);

    let vote = forest.predict(&encode_binary(&preprocess("strong gains, happy holders", &stopwords), &vocab))?;
    println!("votes [neg, pos] = {:?} -> {}", vote.votes, vote.label);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
