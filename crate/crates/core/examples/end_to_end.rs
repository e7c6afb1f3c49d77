// Synthetic fixture through train, label and signals, as the CLI does it.

use std::error::Error;

use sentiment_signals::pipeline::{cmd_label, cmd_signals, cmd_train, RunConfig, LABELED_FILE};
use sentiment_signals::signals::model_name;
use sentiment_signals::synth::{write_fixture, SynthConfig};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let root = std::env::temp_dir().join(format!("sentsig_end_to_end_{}", std::process::id()));
    let synth = SynthConfig {
        n_train: 500,
        days: 30,
        tweets_per_day: (10, 20),
        ..SynthConfig::default()
    };
    let fixture = root.join("fixture");
    write_fixture(&fixture, &synth)?;

    let base = RunConfig {
        models_dir: root.join("models"),
        out_dir: root.join("out"),
        tickers: synth.tickers.clone(),
        epochs: 1,
        n_estimators: 25,
        vocab_size: 500,
        ..RunConfig::default()
    };
    let summary = cmd_train(&RunConfig {
        tweets: Some(fixture.join("train.csv")),
        ..base.clone()
    })?;
    print!("{}", summary.report());
    let labeled = cmd_label(&RunConfig {
        tweets: Some(fixture.join("tweets.csv")),
        ..base.clone()
    })?;
    println!("labeled {} tweets", labeled.labeled);
    let signals = cmd_signals(&RunConfig {
        tweets: Some(base.out_dir.join(LABELED_FILE)),
        prices: Some(fixture.join("prices")),
        ..base
    })?;
    for t in &signals {
        for r in &t.correlations {
            println!("{} {:<4} r = {:?} (n = {})", t.ticker, model_name(r.model), r.pearson_r, r.n_pairs);
        }
    }
    std::fs::remove_dir_all(&root)?;
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
