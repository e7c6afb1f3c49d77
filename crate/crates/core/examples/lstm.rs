// Bidirectional LSTM classifier trained with Adam on padded token ids.

use std::error::Error;

use sentiment_signals::features::{build_vocabulary, encode_sequence};
use sentiment_signals::lstm::{evaluate, train, AdamConfig, LstmConfig, LstmNetwork, TrainConfig};
use sentiment_signals::synth::{training_corpus, SynthConfig};
use sentiment_signals::textprep::{preprocess, StopwordList};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let rows = training_corpus(&SynthConfig {
        n_train: 400,
        seed: 5,
        ..SynthConfig::default()
    });
    let stopwords = StopwordList::builtin();
    let tokens: Vec<_> = rows.iter().map(|r| preprocess(&r.full_text, &stopwords)).collect();
    let vocab = build_vocabulary(&tokens, 300)?;
    let max_length = 16;
    let data: Vec<_> = tokens
        .iter()
        .zip(&rows)
        .map(|(t, r)| (encode_sequence(t, &vocab, max_length), r.label))
        .collect();

    // a narrower network than the default keeps this quick
    let config = LstmConfig {
        embedding_dim: 16,
        hidden: 16,
        dense: 8,
        ..LstmConfig::new(vocab.len(), max_length)
    };
    let net = LstmNetwork::new(config, 1)?;
    let (before, _) = evaluate(&net, &data)?;
    let (net, history) = train(
        net,
        &data,
        &TrainConfig {
            epochs: 3,
            batch_size: 16,
            adam: AdamConfig {
                lr: 0.01,
                ..AdamConfig::default()
            },
            ..TrainConfig::default()
        },
    )?;
    println!("initial loss {before:.4}");
    for (i, e) in history.epochs.iter().enumerate() {
        println!(
            "epoch {}: loss {:.4} acc {:.3} val_loss {:.4} val_acc {:.3}",
            i + 1,
            e.loss,
            e.accuracy,
            e.val_loss.unwrap_or(f64::NAN),
            e.val_accuracy.unwrap_or(f64::NAN)
        );
    }
    let seq = encode_sequence(&preprocess("great quarter, very happy", &stopwords), &vocab, max_length);
    println!("P(positive) = {:.3}", net.forward(&seq)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
