//! Independent oracles and fixtures shared by the integration tests and the
//! acceptance suite. Each `check_*` returns a short summary on success.
#![allow(dead_code)]

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use chrono::{Duration, NaiveDate};
use num::{BigInt, BigRational, One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sentiment_signals::corpus::Sentiment;
use sentiment_signals::features::{BinaryVector, TokenSequence};
use sentiment_signals::lstm::{bce_loss, LstmConfig, LstmNetwork, Params, Tensor};
use sentiment_signals::nb::{fit_nb, NbParams};
use sentiment_signals::pipeline::{self, RunConfig};
use sentiment_signals::rf::{fit_forest, fit_tree, majority_vote, ForestParams, TreeParams};
use sentiment_signals::signals::{align, AlignMode, DailyReturn, DailySentiment, PerModel};
use sentiment_signals::synth::{write_fixture, SynthConfig};

pub type Check = Result<String, String>;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn label(b: bool) -> Sentiment {
    if b {
        Sentiment::Positive
    } else {
        Sentiment::Negative
    }
}

fn random_bits(rng: &mut ChaCha8Rng, n: usize) -> Vec<u8> {
    (0..n).map(|_| rng.gen_range(0..2u8)).collect()
}

// ---------------------------------------------------------------------------
// Bernoulli NB: exact rational posterior by direct product

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Unnormalized posterior P(c) · Π_j P(x_j | c), all in exact rationals.
pub fn nb_exact_posterior(x: &[Vec<u8>], y: &[u8], alpha: &BigRational, q: &[u8], class: u8) -> BigRational {
    let n = x.len() as i64;
    let rows: Vec<&Vec<u8>> = x.iter().zip(y).filter(|(_, &c)| c == class).map(|(r, _)| r).collect();
    let n_c = rows.len() as i64;
    if n_c == 0 {
        return BigRational::zero();
    }
    let two = ratio(2, 1);
    let mut p = ratio(n_c, n);
    for (j, &bit) in q.iter().enumerate() {
        let on = rows.iter().filter(|r| r[j] == 1).count() as i64;
        let p_on = (ratio(on, 1) + alpha) / (ratio(n_c, 1) + &two * alpha);
        p *= if bit == 1 { p_on } else { BigRational::one() - p_on };
    }
    p
}

pub fn nb_exact_label(x: &[Vec<u8>], y: &[u8], alpha: &BigRational, q: &[u8]) -> u8 {
    let p0 = nb_exact_posterior(x, y, alpha, q, 0);
    let p1 = nb_exact_posterior(x, y, alpha, q, 1);
    u8::from(p1 > p0)
}

/// Random corpora of at most 10 documents and 5 features; every query
/// vector in {0,1}^F is compared.
pub fn check_nb_oracle(n_corpora: usize, seed: u64) -> Check {
    let mut rng = rng(seed);
    let alphas = [(1, 1), (1, 2), (2, 1), (1, 10), (3, 2)];
    let (mut queries, mut ties) = (0, 0);
    for corpus in 0..n_corpora {
        let n_docs = rng.gen_range(1..=10);
        let n_feat = rng.gen_range(1..=5);
        let x: Vec<Vec<u8>> = (0..n_docs).map(|_| random_bits(&mut rng, n_feat)).collect();
        // Every third corpus is skewed so that single-class cases show up.
        let p_pos = if corpus % 3 == 0 { 0.9 } else { 0.5 };
        let y: Vec<u8> = (0..n_docs).map(|_| u8::from(rng.gen_bool(p_pos))).collect();
        let (an, ad) = alphas[rng.gen_range(0..alphas.len())];
        let model = fit_nb(
            &x.iter().map(|r| BinaryVector::new(r.clone())).collect::<Vec<_>>(),
            &y.iter().map(|&c| label(c == 1)).collect::<Vec<_>>(),
            NbParams {
                alpha: an as f64 / ad as f64,
                fit_prior: true,
            },
        )
        .map_err(|e| e.to_string())?;
        let alpha = ratio(an, ad);
        for mask in 0..(1u32 << n_feat) {
            let q: Vec<u8> = (0..n_feat).map(|j| ((mask >> j) & 1) as u8).collect();
            let got = model.predict(&BinaryVector::new(q.clone())).map_err(|e| e.to_string())?;
            let want = nb_exact_label(&x, &y, &alpha, &q);
            if nb_exact_posterior(&x, &y, &alpha, &q, 0) == nb_exact_posterior(&x, &y, &alpha, &q, 1) {
                ties += 1;
            }
            if got.label.as_u8() != want {
                return Err(format!(
                    "corpus {corpus}: x={x:?} y={y:?} alpha={an}/{ad} q={q:?}: got {} want {want} ({:?})",
                    got.label.as_u8(),
                    got.log_posterior
                ));
            }
            queries += 1;
        }
    }
    Ok(format!("{n_corpora} corpora, {queries} queries ({ties} exact ties), all argmax equal"))
}

// ---------------------------------------------------------------------------
// CART: exhaustive split search in exact rationals

#[derive(Debug)]
pub enum OracleTree {
    Leaf(u8),
    Split(usize, Box<OracleTree>, Box<OracleTree>),
}

impl OracleTree {
    pub fn predict(&self, x: &[u8]) -> u8 {
        match self {
            OracleTree::Leaf(c) => *c,
            OracleTree::Split(f, l, r) => {
                if x[*f] == 1 {
                    r.predict(x)
                } else {
                    l.predict(x)
                }
            }
        }
    }
}

fn gini_exact(rows: &[usize], y: &[u8]) -> BigRational {
    let n = rows.len() as i64;
    if n == 0 {
        return BigRational::zero();
    }
    let pos = rows.iter().filter(|&&r| y[r] == 1).count() as i64;
    let p1 = ratio(pos, n);
    let p0 = ratio(n - pos, n);
    BigRational::one() - &p0 * &p0 - &p1 * &p1
}

/// Greedy CART over every feature: weighted child Gini, lowest index on
/// ties, stop when pure, at max depth, or when no split lowers impurity.
pub fn cart_oracle(x: &[Vec<u8>], y: &[u8], rows: &[usize], depth: usize, max_depth: usize) -> OracleTree {
    let pos = rows.iter().filter(|&&r| y[r] == 1).count();
    let majority = u8::from(2 * pos > rows.len());
    if pos == 0 || pos == rows.len() || depth >= max_depth || rows.len() < 2 {
        return OracleTree::Leaf(majority);
    }
    let parent = gini_exact(rows, y);
    let n = ratio(rows.len() as i64, 1);
    let mut best: Option<(BigRational, usize)> = None;
    for f in 0..x[0].len() {
        let (right, left): (Vec<usize>, Vec<usize>) = rows.iter().partition(|&&r| x[r][f] == 1);
        if left.is_empty() || right.is_empty() {
            continue;
        }
        let w = (ratio(left.len() as i64, 1) * gini_exact(&left, y)
            + ratio(right.len() as i64, 1) * gini_exact(&right, y))
            / &n;
        if best.as_ref().map_or(true, |(b, _)| w < *b) {
            best = Some((w, f));
        }
    }
    match best {
        Some((w, f)) if w < parent => {
            let (right, left): (Vec<usize>, Vec<usize>) = rows.iter().partition(|&&r| x[r][f] == 1);
            OracleTree::Split(
                f,
                Box::new(cart_oracle(x, y, &left, depth + 1, max_depth)),
                Box::new(cart_oracle(x, y, &right, depth + 1, max_depth)),
            )
        }
        _ => OracleTree::Leaf(majority),
    }
}

/// Single trees at mtry = all features without bootstrap against the
/// exhaustive oracle, then forest votes against a per-tree vote count.
pub fn check_rf_oracle(n_datasets: usize, seed: u64) -> Check {
    let mut rng = rng(seed);
    let mut compared = 0;
    for ds in 0..n_datasets {
        let x: Vec<Vec<u8>> = (0..20).map(|_| random_bits(&mut rng, 4)).collect();
        // Labels follow a noisy rule so trees get some depth.
        let y: Vec<u8> = x
            .iter()
            .map(|r| u8::from((r[0] ^ r[2] == 1) != rng.gen_bool(0.15)))
            .collect();
        let xb: Vec<BinaryVector> = x.iter().map(|r| BinaryVector::new(r.clone())).collect();
        let yl: Vec<Sentiment> = y.iter().map(|&c| label(c == 1)).collect();
        for max_depth in [1, 2, 3, 60] {
            let tree = fit_tree(
                &xb,
                &yl,
                TreeParams {
                    max_depth,
                    mtry: 4,
                    min_samples_leaf: 1,
                },
                &mut ChaCha8Rng::seed_from_u64(ds as u64),
            )
            .map_err(|e| e.to_string())?;
            let rows: Vec<usize> = (0..x.len()).collect();
            let oracle = cart_oracle(&x, &y, &rows, 0, max_depth);
            for (i, r) in x.iter().enumerate() {
                let got = tree.predict(&xb[i]).as_u8();
                let want = oracle.predict(r);
                if got != want {
                    return Err(format!(
                        "dataset {ds} depth {max_depth} row {i}: tree {got} oracle {want}\nx={x:?}\ny={y:?}\ntree={tree:?}\noracle={oracle:?}"
                    ));
                }
                compared += 1;
            }
        }

        // Degenerate forest equals the single tree.
        let single = fit_forest(
            &xb,
            &yl,
            ForestParams {
                n_estimators: 1,
                mtry: Some(4),
                bootstrap: false,
                ..ForestParams::default()
            },
        )
        .map_err(|e| e.to_string())?;
        let rows: Vec<usize> = (0..x.len()).collect();
        let oracle = cart_oracle(&x, &y, &rows, 0, 60);
        for (i, r) in x.iter().enumerate() {
            if single.predict(&xb[i]).map_err(|e| e.to_string())?.label.as_u8() != oracle.predict(r) {
                return Err(format!("dataset {ds}: one-tree forest disagrees with oracle on row {i}"));
            }
        }

        let forest = fit_forest(
            &xb,
            &yl,
            ForestParams {
                n_estimators: rng.gen_range(1..=15),
                max_depth: 3,
                seed: ds as u64,
                ..ForestParams::default()
            },
        )
        .map_err(|e| e.to_string())?;
        for q in 0..16u8 {
            let qv = BinaryVector::new((0..4).map(|j| (q >> j) & 1).collect());
            let (mut neg, mut pos) = (0u32, 0u32);
            for t in forest.trees() {
                match t.predict(&qv) {
                    Sentiment::Positive => pos += 1,
                    Sentiment::Negative => neg += 1,
                }
            }
            let want = label(pos > neg);
            let got = forest.predict(&qv).map_err(|e| e.to_string())?;
            if got.label != want || got.votes != [neg, pos] {
                return Err(format!("dataset {ds} query {q}: forest {got:?}, oracle votes {neg}/{pos}"));
            }
            let _ = majority_vote(forest.trees().iter().map(|t| t.predict(&qv)));
        }
    }
    Ok(format!("{n_datasets} datasets, {compared} tree predictions and all forest votes agree"))
}

// ---------------------------------------------------------------------------
// LSTM: unrolled forward oracle and finite-difference gradient check

fn sig(x: f64) -> f64 {
    1.0 / (1.0 + (-x).exp())
}

/// Straight-line scalar forward pass read directly off the parameter
/// tensors, gates ordered input, forget, cell, output.
pub fn lstm_oracle_forward(p: &Params, cfg: &LstmConfig, ids: &[usize]) -> f64 {
    let (e, h) = (cfg.embedding_dim, cfg.hidden);
    let cell = |w: &Tensor, u: &Tensor, b: &Tensor, order: Vec<usize>| -> Vec<f64> {
        let mut hs = vec![0.0; h];
        let mut cs = vec![0.0; h];
        for id in order {
            let mut next_h = vec![0.0; h];
            let mut next_c = vec![0.0; h];
            for k in 0..h {
                let mut z = [0.0f64; 4];
                for (g, zg) in z.iter_mut().enumerate() {
                    let row = g * h + k;
                    let mut s = b.get(row, 0);
                    for j in 0..e {
                        s += w.get(row, j) * p.embedding.get(id, j);
                    }
                    for j in 0..h {
                        s += u.get(row, j) * hs[j];
                    }
                    *zg = s;
                }
                let i = sig(z[0]);
                let f = sig(z[1]);
                let g = z[2].tanh();
                let o = sig(z[3]);
                next_c[k] = f * cs[k] + i * g;
                next_h[k] = o * next_c[k].tanh();
            }
            hs = next_h;
            cs = next_c;
        }
        hs
    };
    let fwd = cell(&p.forward.w, &p.forward.u, &p.forward.b, ids.to_vec());
    let bwd = cell(&p.backward.w, &p.backward.u, &p.backward.b, ids.iter().rev().copied().collect());
    let concat: Vec<f64> = fwd.into_iter().chain(bwd).collect();
    let mut logit = p.dense2_b.get(0, 0);
    for r in 0..cfg.dense {
        let mut a = p.dense1_b.get(r, 0);
        for (j, v) in concat.iter().enumerate() {
            a += p.dense1_w.get(r, j) * v;
        }
        logit += p.dense2_w.get(0, r) * a.max(0.0);
    }
    sig(logit)
}

pub fn small_config() -> LstmConfig {
    LstmConfig {
        vocab_size: 5,
        embedding_dim: 3,
        max_length: 6,
        hidden: 2,
        dense: 2,
    }
}

/// Random parameters with a wider spread than the default initializer so
/// every gate and the ReLU see non-trivial inputs.
pub fn random_network(cfg: LstmConfig, seed: u64) -> LstmNetwork {
    let mut net = LstmNetwork::new(cfg, seed).expect("valid config");
    let mut rng = rng(seed ^ 0xabcdef);
    for t in net.params.tensors_mut() {
        for v in t.data_mut() {
            *v = rng.gen_range(-0.8..0.8);
        }
    }
    net
}

pub fn random_sequence(rng: &mut ChaCha8Rng, cfg: &LstmConfig) -> TokenSequence {
    let n = rng.gen_range(0..=cfg.max_length);
    let mut ids: Vec<usize> = (0..n).map(|_| rng.gen_range(1..=cfg.vocab_size)).collect();
    ids.resize(cfg.max_length, 0);
    TokenSequence::new(ids)
}

pub fn check_lstm_forward_oracle(n_nets: usize, seed: u64) -> Check {
    let cfg = small_config();
    let mut rng = rng(seed);
    let mut worst: f64 = 0.0;
    for k in 0..n_nets {
        let net = random_network(cfg, seed + k as u64);
        for _ in 0..10 {
            let seq = random_sequence(&mut rng, &cfg);
            let got = net.forward(&seq).map_err(|e| e.to_string())?;
            let want = lstm_oracle_forward(&net.params, &cfg, seq.ids());
            worst = worst.max((got - want).abs());
            if (got - want).abs() > 1e-10 {
                return Err(format!("net {k} seq {:?}: {got} vs oracle {want}", seq.ids()));
            }
            if (got >= 0.5) != (want >= 0.5) {
                return Err("label disagrees with oracle".into());
            }
        }
    }
    Ok(format!("{n_nets} networks x 10 inputs, max |diff| {worst:.1e}"))
}

/// Relative error with an absolute floor for near-zero gradients.
pub fn rel_err(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1e-6)
}

/// Central differences (h = 1e-5) of the total loss over every parameter.
pub fn check_gradients(cfg: LstmConfig, n_pairs: usize, seed: u64) -> Check {
    let mut rng = rng(seed);
    let net = random_network(cfg, seed);
    let n_params = net.params.n_params();
    if n_params > 500 {
        return Err(format!("network has {n_params} parameters, limit is 500"));
    }
    let data: Vec<(TokenSequence, Sentiment)> = (0..n_pairs)
        .map(|_| (random_sequence(&mut rng, &cfg), label(rng.gen_bool(0.5))))
        .collect();
    let (_, grad) = net.loss_and_gradient(&data).map_err(|e| e.to_string())?;
    let total_loss = |n: &LstmNetwork| -> f64 {
        data.iter()
            .map(|(s, y)| bce_loss(n.forward(s).expect("valid"), *y))
            .sum()
    };
    let h = 1e-5;
    let mut worst = (0.0, String::new());
    let mut probe = net.clone();
    for (ti, name) in sentiment_signals::lstm::TENSOR_NAMES.iter().enumerate() {
        let len = grad.tensors()[ti].data().len();
        for i in 0..len {
            let orig = probe.params.tensors()[ti].data()[i];
            probe.params.tensors_mut()[ti].data_mut()[i] = orig + h;
            let up = total_loss(&probe);
            probe.params.tensors_mut()[ti].data_mut()[i] = orig - h;
            let down = total_loss(&probe);
            probe.params.tensors_mut()[ti].data_mut()[i] = orig;
            let numeric = (up - down) / (2.0 * h);
            let analytic = grad.tensors()[ti].data()[i];
            let e = rel_err(analytic, numeric);
            if e > worst.0 {
                worst = (e, format!("{name}[{i}]: analytic {analytic:.10e} numeric {numeric:.10e}"));
            }
        }
    }
    if worst.0 < 1e-4 {
        Ok(format!("{n_params} parameters, {n_pairs} pairs, max rel err {:.2e}", worst.0))
    } else {
        Err(format!("max rel err {:.2e} at {}", worst.0, worst.1))
    }
}

// ---------------------------------------------------------------------------
// Alignment: literal loop of the reference semantics

/// For each return, scan sentiment days from the start; at the first day on
/// or after the return date, take the previous day if there is one, then
/// stop scanning.
pub fn align_hand_trace(returns: &[(NaiveDate, f64)], sentiment: &[(NaiveDate, f64)]) -> Vec<(NaiveDate, NaiveDate, f64, f64)> {
    let mut out = Vec::new();
    for &(rd, rv) in returns {
        for j in 0..sentiment.len() {
            if sentiment[j].0 >= rd {
                if j >= 1 {
                    out.push((sentiment[j - 1].0, rd, sentiment[j - 1].1, rv));
                }
                break;
            }
        }
    }
    out
}

/// Random calendars: tweet days with random gaps, returns on weekdays only,
/// and returns placed before the first and after the last tweet day.
pub fn random_calendar(rng: &mut ChaCha8Rng) -> (Vec<(NaiveDate, f64)>, Vec<(NaiveDate, f64)>) {
    let start = NaiveDate::from_ymd_opt(2020, 3, 1).unwrap() + Duration::days(rng.gen_range(0..7));
    let span = rng.gen_range(3..40);
    let mut sentiment = Vec::new();
    let mut returns = Vec::new();
    let lead = rng.gen_range(0..4);
    let tail = rng.gen_range(0..4);
    for i in -(lead as i64)..(span + tail) as i64 {
        let d = start + Duration::days(i);
        let in_span = i >= 0 && i < span as i64;
        if in_span && rng.gen_bool(0.75) {
            sentiment.push((d, rng.gen_range(-2.0..2.0)));
        }
        let weekday = !matches!(chrono::Datelike::weekday(&d), chrono::Weekday::Sat | chrono::Weekday::Sun);
        if weekday && rng.gen_bool(0.85) {
            returns.push((d, rng.gen_range(-5.0..5.0)));
        }
    }
    (returns, sentiment)
}

pub fn check_align_oracle(n_configs: usize, seed: u64) -> Check {
    let mut rng = rng(seed);
    let mut pairs = 0;
    let mut boundary = [false; 2];
    for c in 0..n_configs {
        let (returns, sentiment) = random_calendar(&mut rng);
        if let (Some(r0), Some(s0)) = (returns.first(), sentiment.first()) {
            boundary[0] |= r0.0 <= s0.0;
        }
        if let (Some(rn), Some(sn)) = (returns.last(), sentiment.last()) {
            boundary[1] |= rn.0 > sn.0;
        }
        let r: Vec<DailyReturn> = returns.iter().map(|&(date, value)| DailyReturn { date, value }).collect();
        let s: Vec<DailySentiment> = sentiment
            .iter()
            .map(|&(date, v)| DailySentiment {
                date,
                bullishness: PerModel { lstm: v, rf: -v, nb: 2.0 * v },
            })
            .collect();
        let got = align(&r, &s, AlignMode::Lagged).map_err(|e| e.to_string())?;
        let want = align_hand_trace(&returns, &sentiment);
        let got_t: Vec<_> = got
            .iter()
            .map(|p| (p.sentiment_date, p.return_date, p.bullishness.lstm, p.return_value))
            .collect();
        if got_t != want {
            return Err(format!("config {c}: got {got_t:?}\nwant {want:?}"));
        }
        if got.iter().any(|p| p.bullishness.rf != -p.bullishness.lstm || p.sentiment_date >= p.return_date) {
            return Err(format!("config {c}: pair carries wrong day or order"));
        }
        pairs += got.len();
    }
    if !(boundary[0] && boundary[1]) {
        return Err("boundary cases not exercised".into());
    }
    Ok(format!("{n_configs} calendars, {pairs} pairs, exact match"))
}

// ---------------------------------------------------------------------------
// Pipeline fixtures

pub struct PipelineRun {
    pub fixture: PathBuf,
    pub models: PathBuf,
    pub out: PathBuf,
    pub tickers: Vec<String>,
}

/// synth -> train -> label -> signals under `root`.
pub fn run_pipeline(root: &Path, synth: &SynthConfig, tweak: impl Fn(&mut RunConfig)) -> Result<PipelineRun, String> {
    let fixture = root.join("fixture");
    write_fixture(&fixture, synth).map_err(|e| e.to_string())?;
    let models = root.join("models");
    let out = root.join("out");
    let mut config = RunConfig {
        models_dir: models.clone(),
        out_dir: out.clone(),
        seed: synth.seed,
        tickers: synth.tickers.clone(),
        ..RunConfig::default()
    };
    tweak(&mut config);
    let e = |e: sentiment_signals::Error| e.to_string();
    pipeline::cmd_train(&RunConfig {
        tweets: Some(fixture.join("train.csv")),
        ..config.clone()
    })
    .map_err(e)?;
    pipeline::cmd_label(&RunConfig {
        tweets: Some(fixture.join("tweets.csv")),
        ..config.clone()
    })
    .map_err(e)?;
    pipeline::cmd_signals(&RunConfig {
        tweets: Some(out.join(pipeline::LABELED_FILE)),
        prices: Some(fixture.join("prices")),
        ..config
    })
    .map_err(e)?;
    Ok(PipelineRun {
        fixture,
        models,
        out,
        tickers: synth.tickers.clone(),
    })
}

/// Every file under `dir`, keyed by relative path.
pub fn snapshot(dir: &Path) -> BTreeMap<String, Vec<u8>> {
    fn walk(base: &Path, dir: &Path, out: &mut BTreeMap<String, Vec<u8>>) {
        let mut entries: Vec<_> = std::fs::read_dir(dir).unwrap().map(|e| e.unwrap().path()).collect();
        entries.sort();
        for p in entries {
            if p.is_dir() {
                walk(base, &p, out);
            } else {
                let rel = p.strip_prefix(base).unwrap().display().to_string();
                out.insert(rel, std::fs::read(&p).unwrap());
            }
        }
    }
    let mut out = BTreeMap::new();
    walk(dir, dir, &mut out);
    out
}

/// Reads a numeric CSV into named columns; `nan` parses as NaN.
pub fn read_columns(path: &Path) -> BTreeMap<String, Vec<String>> {
    let mut rdr = csv::Reader::from_path(path).unwrap();
    let headers: Vec<String> = rdr.headers().unwrap().iter().map(String::from).collect();
    let mut cols: BTreeMap<String, Vec<String>> = headers.iter().map(|h| (h.clone(), Vec::new())).collect();
    for rec in rdr.records() {
        let rec = rec.unwrap();
        for (h, v) in headers.iter().zip(rec.iter()) {
            cols.get_mut(h).unwrap().push(v.to_string());
        }
    }
    cols
}

pub fn numeric(col: &[String]) -> Vec<f64> {
    col.iter().map(|v| v.parse().unwrap()).collect()
}

/// Planted-token task: label is positive iff token id 1 occurs. Other tokens
/// are drawn from 2..=vocab, 3 to 12 of them, padded to `max_length`.
pub fn planted_dataset(n: usize, vocab: usize, max_length: usize, seed: u64) -> Vec<(TokenSequence, Sentiment)> {
    let mut r = rng(seed);
    (0..n)
        .map(|_| {
            let len = r.gen_range(3..=12);
            let mut ids: Vec<usize> = (0..len).map(|_| r.gen_range(2..=vocab)).collect();
            let positive = r.gen_bool(0.5);
            if positive {
                let at = r.gen_range(0..len);
                ids[at] = 1;
            }
            ids.resize(max_length, 0);
            let label = if positive { Sentiment::Positive } else { Sentiment::Negative };
            (TokenSequence::new(ids), label)
        })
        .collect()
}
