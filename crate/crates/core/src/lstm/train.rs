//! Mini-batch training loop.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{bce_loss, Adam, AdamConfig, LstmNetwork, Params};
use crate::corpus::Sentiment;
use crate::error::{Error, Result};
use crate::features::TokenSequence;

/// Examples per gradient chunk. Chunks run in parallel and are summed in
/// order, so results do not depend on the thread count.
const GRAD_CHUNK: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrainConfig {
    pub epochs: usize,
    /// Trailing fraction of the data held out, in `[0, 0.5]`.
    pub validation_split: f64,
    pub batch_size: usize,
    pub adam: AdamConfig,
    pub seed: u64,
}

impl Default for TrainConfig {
    fn default() -> Self {
        TrainConfig {
            epochs: 2,
            validation_split: 0.1,
            batch_size: 32,
            adam: AdamConfig::default(),
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EpochStats {
    pub loss: f64,
    /// Fraction in `[0, 1]`.
    pub accuracy: f64,
    pub val_loss: Option<f64>,
    pub val_accuracy: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct TrainHistory {
    pub epochs: Vec<EpochStats>,
}

/// Mean loss and accuracy (threshold 0.5).
pub fn evaluate(net: &LstmNetwork, data: &[(TokenSequence, Sentiment)]) -> Result<(f64, f64)> {
    if data.is_empty() {
        return Err(Error::EmptyData);
    }
    let per_example: Vec<(f64, bool)> = data
        .par_iter()
        .map(|(seq, label)| {
            let p = net.forward(seq)?;
            let predicted = if p >= 0.5 {
                Sentiment::Positive
            } else {
                Sentiment::Negative
            };
            Ok((bce_loss(p, *label), predicted == *label))
        })
        .collect::<Result<_>>()?;
    let n = data.len() as f64;
    let loss = per_example.iter().map(|(l, _)| l).sum::<f64>() / n;
    let correct = per_example.iter().filter(|(_, ok)| *ok).count() as f64;
    Ok((loss, correct / n))
}

fn batch_gradient(net: &LstmNetwork, batch: &[&(TokenSequence, Sentiment)]) -> Result<Params> {
    let partials: Vec<Params> = batch
        .par_chunks(GRAD_CHUNK)
        .map(|chunk| {
            let mut g = net.params.zeros_like();
            for (seq, label) in chunk.iter().copied() {
                net.accumulate_gradient(seq, *label, &mut g)?;
            }
            Ok(g)
        })
        .collect::<Result<_>>()?;
    let mut parts = partials.into_iter();
    let mut total = parts.next().expect("non-empty batch");
    for p in parts {
        total.add_assign(&p);
    }
    total.scale(1.0 / batch.len() as f64);
    Ok(total)
}

/// Trains on mean binary cross-entropy with Adam. The last
/// `⌊validation_split · n⌋` examples are held out unshuffled; the rest is
/// reshuffled every epoch from a stream seeded with `config.seed`.
pub fn train(
    mut net: LstmNetwork,
    data: &[(TokenSequence, Sentiment)],
    config: &TrainConfig,
) -> Result<(LstmNetwork, TrainHistory)> {
    if data.is_empty() {
        return Err(Error::EmptyData);
    }
    if !(0.0..=0.5).contains(&config.validation_split) {
        return Err(Error::InvalidConfig(format!(
            "validation_split {} outside [0, 0.5]",
            config.validation_split
        )));
    }
    if config.batch_size == 0 {
        return Err(Error::InvalidConfig("batch_size must be positive".into()));
    }
    let n_val = (config.validation_split * data.len() as f64).floor() as usize;
    let (train_set, val_set) = data.split_at(data.len() - n_val);
    if train_set.is_empty() {
        return Err(Error::EmptyData);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut adam = Adam::new(config.adam, &net.params);
    let mut history = TrainHistory::default();
    for _ in 0..config.epochs {
        let mut order: Vec<usize> = (0..train_set.len()).collect();
        order.shuffle(&mut rng);
        for batch_idx in order.chunks(config.batch_size) {
            let batch: Vec<&(TokenSequence, Sentiment)> =
                batch_idx.iter().map(|&i| &train_set[i]).collect();
            let grad = batch_gradient(&net, &batch)?;
            adam.step(&mut net.params, &grad);
            if !net.params.is_finite() {
                return Err(Error::Invariant(format!(
                    "non-finite parameters after step {}",
                    adam.steps()
                )));
            }
        }
        let (loss, accuracy) = evaluate(&net, train_set)?;
        let (val_loss, val_accuracy) = if val_set.is_empty() {
            (None, None)
        } else {
            let (l, a) = evaluate(&net, val_set)?;
            (Some(l), Some(a))
        };
        history.epochs.push(EpochStats {
            loss,
            accuracy,
            val_loss,
            val_accuracy,
        });
    }
    Ok((net, history))
}
