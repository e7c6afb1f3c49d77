//! The batch workflow: train the three classifiers, label a tweet corpus,
//! and turn labeled tweets plus prices into signals, correlations and
//! charts. Every command writes a manifest with its effective configuration
//! and the SHA-256 of each input file.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::chart::{LineChart, Series};
use crate::corpus::{
    load_classified_tweets, load_labeled_tweets, load_ohlc, load_unlabeled_tweets,
    write_classified_tweets, ClassifiedTweet, ModelLabels, Sentiment, SourceModel, TickerFilter,
    TweetRecord,
};
use crate::error::{Error, Result};
use crate::features::{build_vocabulary, encode_binary, encode_sequence, Vocabulary};
use crate::lstm::{train, AdamConfig, LstmConfig, LstmNetwork, TrainConfig, TrainHistory};
use crate::metrics::{confusion, ConfusionMatrix};
use crate::nb::{fit_nb, NbModel, NbParams};
use crate::rf::{fit_forest, Forest, ForestParams};
use crate::signals::{
    align, bullishness_series, correlation_report, model_name, return_series,
    write_aligned_csv, write_bullishness_csv, write_correlation_csv, AlignMode, AlignedPair,
    CorrelationRow, DailySentiment, MODELS,
};
use crate::synth::{write_fixture, SynthConfig};
use crate::textprep::{clean_text, preprocess, StopwordList, TokenList};

pub const VOCAB_FILE: &str = "vocab.txt";
pub const STOPWORDS_FILE: &str = "stopwords.txt";
pub const NB_FILE: &str = "nb.model";
pub const RF_FILE: &str = "rf.model";
pub const LSTM_FILE: &str = "lstm.model";
pub const LABELED_FILE: &str = "labeled.csv";

/// Effective configuration of a run. Defaults, then an optional TOML file,
/// then command-line flags.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub tweets: Option<PathBuf>,
    /// A single OHLC CSV, or a directory holding `<TICKER>.csv` files.
    pub prices: Option<PathBuf>,
    pub tickers: Vec<String>,
    /// Substring aliases per ticker; a ticker without an entry matches its
    /// own lowercase symbol.
    pub aliases: BTreeMap<String, Vec<String>>,
    pub stopwords: Option<PathBuf>,
    pub models_dir: PathBuf,
    pub out_dir: PathBuf,
    pub seed: u64,
    pub vocab_size: usize,
    pub max_length: usize,
    pub epochs: usize,
    pub batch_size: usize,
    pub learning_rate: f64,
    pub validation_split: f64,
    pub n_estimators: usize,
    pub max_depth: usize,
    pub alpha: f64,
    pub train_frac: f64,
    pub align: AlignMode,
    pub synth_days: usize,
    pub synth_train_rows: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            tweets: None,
            prices: None,
            tickers: Vec::new(),
            aliases: BTreeMap::new(),
            stopwords: None,
            models_dir: PathBuf::from("models"),
            out_dir: PathBuf::from("out"),
            seed: 42,
            vocab_size: crate::features::DEFAULT_MAX_TERMS,
            max_length: crate::features::DEFAULT_MAX_LENGTH,
            epochs: 2,
            batch_size: 32,
            learning_rate: 1e-3,
            validation_split: 0.1,
            n_estimators: crate::rf::DEFAULT_N_ESTIMATORS,
            max_depth: crate::rf::DEFAULT_MAX_DEPTH,
            alpha: crate::nb::DEFAULT_ALPHA,
            train_frac: 0.8,
            align: AlignMode::Lagged,
            synth_days: 90,
            synth_train_rows: 2000,
        }
    }
}

/// Keys accepted in a config file; all optional.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    tweets: Option<PathBuf>,
    prices: Option<PathBuf>,
    tickers: Option<Vec<String>>,
    aliases: Option<BTreeMap<String, Vec<String>>>,
    stopwords: Option<PathBuf>,
    models_dir: Option<PathBuf>,
    out_dir: Option<PathBuf>,
    seed: Option<u64>,
    vocab_size: Option<usize>,
    max_length: Option<usize>,
    epochs: Option<usize>,
    batch_size: Option<usize>,
    learning_rate: Option<f64>,
    validation_split: Option<f64>,
    n_estimators: Option<usize>,
    max_depth: Option<usize>,
    alpha: Option<f64>,
    train_frac: Option<f64>,
    align: Option<AlignMode>,
    synth_days: Option<usize>,
    synth_train_rows: Option<usize>,
}

macro_rules! overlay {
    ($dst:ident, $src:ident; $($field:ident),*) => {
        $(if let Some(v) = $src.$field { $dst.$field = v; })*
    };
}

impl RunConfig {
    /// Applies the keys of a TOML config file on top of `self`.
    pub fn merge_toml(&mut self, text: &str) -> Result<()> {
        let file: FileConfig =
            toml::from_str(text).map_err(|e| Error::InvalidConfig(e.message().to_string()))?;
        if file.tweets.is_some() {
            self.tweets = file.tweets;
        }
        if file.prices.is_some() {
            self.prices = file.prices;
        }
        if file.stopwords.is_some() {
            self.stopwords = file.stopwords;
        }
        overlay!(self, file; tickers, aliases, models_dir, out_dir, seed, vocab_size, max_length,
            epochs, batch_size, learning_rate, validation_split, n_estimators, max_depth, alpha,
            train_frac, align, synth_days, synth_train_rows);
        Ok(())
    }

    pub fn load_toml(&mut self, path: impl AsRef<Path>) -> Result<()> {
        self.merge_toml(&fs::read_to_string(path)?)
    }

    fn tweets_path(&self) -> Result<&Path> {
        self.tweets
            .as_deref()
            .ok_or_else(|| Error::InvalidConfig("--tweets is required".into()))
    }

    pub fn ticker_filters(&self) -> Result<Vec<TickerFilter>> {
        self.tickers
            .iter()
            .map(|t| {
                let found = self
                    .aliases
                    .iter()
                    .find(|(k, _)| k.eq_ignore_ascii_case(t))
                    .map(|(_, v)| v);
                match found {
                    Some(aliases) => TickerFilter::new(t, aliases),
                    None => Ok(TickerFilter::for_ticker(t)),
                }
            })
            .collect()
    }

    fn price_path(&self, ticker: &str) -> Result<PathBuf> {
        let prices = self
            .prices
            .as_deref()
            .ok_or_else(|| Error::InvalidConfig("--prices is required".into()))?;
        if prices.is_dir() {
            Ok(prices.join(format!("{ticker}.csv")))
        } else if self.tickers.len() == 1 {
            Ok(prices.to_path_buf())
        } else {
            Err(Error::InvalidConfig(
                "--prices must be a directory of <TICKER>.csv files when several tickers are given".into(),
            ))
        }
    }

    fn stopword_list(&self) -> Result<StopwordList> {
        match &self.stopwords {
            Some(p) => StopwordList::load(p),
            None => Ok(StopwordList::builtin()),
        }
    }
}

pub fn sha256_file(path: impl AsRef<Path>) -> Result<String> {
    Ok(format!("{:x}", Sha256::digest(fs::read(path)?)))
}

#[derive(Serialize)]
struct Manifest<'a> {
    command: &'a str,
    version: &'a str,
    config: &'a RunConfig,
    inputs: BTreeMap<String, String>,
    outputs: Vec<String>,
}

fn write_manifest(
    dir: &Path,
    command: &str,
    config: &RunConfig,
    inputs: &[&Path],
    outputs: &[PathBuf],
) -> Result<PathBuf> {
    let mut checksums = BTreeMap::new();
    for p in inputs {
        checksums.insert(p.display().to_string(), sha256_file(p)?);
    }
    let manifest = Manifest {
        command,
        version: env!("CARGO_PKG_VERSION"),
        config,
        inputs: checksums,
        outputs: outputs.iter().map(|p| p.display().to_string()).collect(),
    };
    let path = dir.join(format!("manifest.{command}.json"));
    let json = serde_json::to_string_pretty(&manifest)
        .map_err(|e| Error::Invariant(format!("manifest serialization: {e}")))?;
    fs::write(&path, json + "\n")?;
    Ok(path)
}

/// The three trained classifiers plus the text pipeline state they need.
#[derive(Debug, Clone)]
pub struct Models {
    pub stopwords: StopwordList,
    pub vocab: Vocabulary,
    pub nb: NbModel,
    pub forest: Forest,
    pub lstm: LstmNetwork,
}

impl Models {
    pub fn load(dir: impl AsRef<Path>) -> Result<Self> {
        let dir = dir.as_ref();
        let stopwords_path = dir.join(STOPWORDS_FILE);
        let stopwords = if stopwords_path.exists() {
            StopwordList::load(stopwords_path)?
        } else {
            StopwordList::builtin()
        };
        let models = Models {
            stopwords,
            vocab: Vocabulary::load(dir.join(VOCAB_FILE))?,
            nb: NbModel::load(dir.join(NB_FILE))?,
            forest: Forest::load(dir.join(RF_FILE))?,
            lstm: LstmNetwork::load(dir.join(LSTM_FILE))?,
        };
        for found in [
            models.nb.n_features(),
            models.forest.n_features(),
            models.lstm.config().vocab_size,
        ] {
            if found != models.vocab.len() {
                return Err(Error::DimensionMismatch {
                    expected: models.vocab.len(),
                    found,
                });
            }
        }
        Ok(models)
    }

    pub fn save(&self, dir: impl AsRef<Path>) -> Result<Vec<PathBuf>> {
        let dir = dir.as_ref();
        fs::create_dir_all(dir)?;
        let paths: Vec<PathBuf> = [STOPWORDS_FILE, VOCAB_FILE, NB_FILE, RF_FILE, LSTM_FILE]
            .iter()
            .map(|f| dir.join(f))
            .collect();
        let mut words: String = self.stopwords.iter().collect::<Vec<_>>().join("\n");
        words.push('\n');
        fs::write(&paths[0], words)?;
        self.vocab.save(&paths[1])?;
        self.nb.save(&paths[2])?;
        self.forest.save(&paths[3])?;
        self.lstm.save(&paths[4])?;
        Ok(paths)
    }

    pub fn tokens(&self, text: &str) -> TokenList {
        preprocess(text, &self.stopwords)
    }

    pub fn classify_tokens(&self, tokens: &TokenList) -> Result<ModelLabels> {
        let x = encode_binary(tokens, &self.vocab);
        let seq = encode_sequence(tokens, &self.vocab, self.lstm.config().max_length);
        Ok(ModelLabels {
            nb: Some(self.nb.predict(&x)?.label),
            rf: Some(self.forest.predict(&x)?.label),
            lstm: Some(self.lstm.predict_label(&seq, 0.5)?),
        })
    }

    pub fn classify(&self, text: &str) -> Result<ModelLabels> {
        self.classify_tokens(&self.tokens(text))
    }

    pub fn classify_all(&self, records: Vec<TweetRecord>) -> Result<Vec<ClassifiedTweet>> {
        records
            .into_par_iter()
            .map(|record| {
                let labels = self.classify(&record.full_text)?;
                Ok(ClassifiedTweet { record, labels })
            })
            .collect()
    }
}

#[derive(Debug, Clone)]
pub struct TrainSummary {
    pub n_train: usize,
    pub n_test: usize,
    pub skipped: usize,
    pub vocab_size: usize,
    pub nb: ConfusionMatrix,
    pub rf: ConfusionMatrix,
    pub lstm: ConfusionMatrix,
    pub lstm_history: TrainHistory,
}

impl TrainSummary {
    pub fn matrices(&self) -> [(SourceModel, ConfusionMatrix); 3] {
        [
            (SourceModel::Nb, self.nb),
            (SourceModel::Rf, self.rf),
            (SourceModel::Lstm, self.lstm),
        ]
    }

    pub fn report(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "train rows: {}\ntest rows: {}\nskipped input rows: {}\nvocabulary: {} terms",
            self.n_train, self.n_test, self.skipped, self.vocab_size
        );
        for (model, m) in self.matrices() {
            let _ = writeln!(s, "\n[{}]\n{m}", model_name(model));
        }
        let _ = writeln!(s, "\n[lstm training]");
        for (i, e) in self.lstm_history.epochs.iter().enumerate() {
            let _ = write!(s, "epoch {}: loss {:.4} accuracy {:.4}", i + 1, e.loss, e.accuracy);
            if let (Some(l), Some(a)) = (e.val_loss, e.val_accuracy) {
                let _ = write!(s, " val_loss {l:.4} val_accuracy {a:.4}");
            }
            s.push('\n');
        }
        s
    }

    pub fn metrics_csv(&self) -> String {
        let mut s = String::from("model,accuracy,tp,tn,fp,fn\n");
        for (model, m) in self.matrices() {
            let _ = writeln!(
                s,
                "{},{:.4},{},{},{},{}",
                model_name(model),
                m.accuracy(),
                m.tp,
                m.tn,
                m.fp,
                m.fn_
            );
        }
        s
    }
}

/// Seeded shuffle, then the first `⌊frac · n⌋` indices train.
pub fn split_indices(n: usize, frac: f64, seed: u64) -> Result<(Vec<usize>, Vec<usize>)> {
    if !(frac > 0.0 && frac < 1.0) {
        return Err(Error::InvalidSplit(format!(
            "train fraction {frac} leaves no test set (must be in (0, 1))"
        )));
    }
    let n_train = (frac * n as f64).floor() as usize;
    if n_train == 0 || n_train == n {
        return Err(Error::InvalidSplit(format!(
            "{n} rows at train fraction {frac} leave an empty side"
        )));
    }
    let mut idx: Vec<usize> = (0..n).collect();
    idx.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let test = idx.split_off(n_train);
    Ok((idx, test))
}

/// Fits all three models on `(tokens, label)` pairs.
pub fn fit_models(
    stopwords: StopwordList,
    tokens: &[TokenList],
    labels: &[Sentiment],
    config: &RunConfig,
) -> Result<(Models, TrainHistory)> {
    let vocab = build_vocabulary(tokens, config.vocab_size)?;
    let x: Vec<_> = tokens.par_iter().map(|t| encode_binary(t, &vocab)).collect();
    let nb = fit_nb(
        &x,
        labels,
        NbParams {
            alpha: config.alpha,
            fit_prior: true,
        },
    )?;
    let forest = fit_forest(
        &x,
        labels,
        ForestParams {
            n_estimators: config.n_estimators,
            max_depth: config.max_depth,
            seed: config.seed,
            ..ForestParams::default()
        },
    )?;
    let data: Vec<_> = tokens
        .iter()
        .zip(labels)
        .map(|(t, &y)| (encode_sequence(t, &vocab, config.max_length), y))
        .collect();
    let net = LstmNetwork::new(LstmConfig::new(vocab.len(), config.max_length), config.seed)?;
    let (lstm, history) = train(
        net,
        &data,
        &TrainConfig {
            epochs: config.epochs,
            validation_split: config.validation_split,
            batch_size: config.batch_size,
            adam: AdamConfig {
                lr: config.learning_rate,
                ..AdamConfig::default()
            },
            seed: config.seed,
        },
    )?;
    Ok((
        Models {
            stopwords,
            vocab,
            nb,
            forest,
            lstm,
        },
        history,
    ))
}

pub fn cmd_train(config: &RunConfig) -> Result<TrainSummary> {
    let tweets_path = config.tweets_path()?;
    if !(config.train_frac > 0.0 && config.train_frac < 1.0) {
        return Err(Error::InvalidSplit(format!(
            "train fraction {} leaves no test set (must be in (0, 1))",
            config.train_frac
        )));
    }
    let loaded = load_labeled_tweets(tweets_path)?;
    let stopwords = config.stopword_list()?;
    let tokens: Vec<TokenList> = loaded
        .rows
        .par_iter()
        .map(|t| preprocess(&t.record.full_text, &stopwords))
        .collect();
    let labels: Vec<Sentiment> = loaded.rows.iter().map(|t| t.label).collect();
    let (train_idx, test_idx) = split_indices(tokens.len(), config.train_frac, config.seed)?;

    let pick_tokens = |idx: &[usize]| -> Vec<TokenList> { idx.iter().map(|&i| tokens[i].clone()).collect() };
    let pick_labels = |idx: &[usize]| -> Vec<Sentiment> { idx.iter().map(|&i| labels[i]).collect() };
    let (models, history) =
        fit_models(stopwords, &pick_tokens(&train_idx), &pick_labels(&train_idx), config)?;

    let test_tokens = pick_tokens(&test_idx);
    let test_labels = pick_labels(&test_idx);
    let predicted: Vec<ModelLabels> = test_tokens
        .par_iter()
        .map(|t| models.classify_tokens(t))
        .collect::<Result<_>>()?;
    let column = |f: fn(&ModelLabels) -> Option<Sentiment>| -> Vec<Sentiment> {
        predicted.iter().map(|l| f(l).expect("all labels set")).collect()
    };
    let summary = TrainSummary {
        n_train: train_idx.len(),
        n_test: test_idx.len(),
        skipped: loaded.skipped,
        vocab_size: models.vocab.len(),
        nb: confusion(&test_labels, &column(|l| l.nb))?,
        rf: confusion(&test_labels, &column(|l| l.rf))?,
        lstm: confusion(&test_labels, &column(|l| l.lstm))?,
        lstm_history: history,
    };

    let dir = &config.models_dir;
    let mut outputs = models.save(dir)?;
    let report = dir.join("report.txt");
    fs::write(&report, summary.report())?;
    let metrics = dir.join("metrics.csv");
    fs::write(&metrics, summary.metrics_csv())?;
    outputs.extend([report, metrics]);
    let mut inputs = vec![tweets_path];
    if let Some(p) = &config.stopwords {
        inputs.push(p);
    }
    write_manifest(dir, "train", config, &inputs, &outputs)?;
    Ok(summary)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelSummary {
    pub skipped: usize,
    pub labeled: usize,
    pub output: PathBuf,
}

pub fn cmd_label(config: &RunConfig) -> Result<LabelSummary> {
    let tweets_path = config.tweets_path()?;
    let models = Models::load(&config.models_dir)?;
    let loaded = load_unlabeled_tweets(tweets_path)?;
    let filters = config.ticker_filters()?;
    let records: Vec<TweetRecord> = if filters.is_empty() {
        loaded.rows
    } else {
        loaded
            .rows
            .into_iter()
            .filter(|r| filters.iter().any(|f| f.matches(&r.full_text)))
            .collect()
    };
    if records.is_empty() {
        return Err(Error::EmptyDataset);
    }
    let classified = models.classify_all(records)?;
    fs::create_dir_all(&config.out_dir)?;
    let output = config.out_dir.join(LABELED_FILE);
    write_classified_tweets(fs::File::create(&output)?, &classified)?;
    let model_files: Vec<PathBuf> = [VOCAB_FILE, NB_FILE, RF_FILE, LSTM_FILE]
        .iter()
        .map(|f| config.models_dir.join(f))
        .collect();
    let mut inputs: Vec<&Path> = vec![tweets_path];
    inputs.extend(model_files.iter().map(PathBuf::as_path));
    write_manifest(&config.out_dir, "label", config, &inputs, std::slice::from_ref(&output))?;
    Ok(LabelSummary {
        skipped: loaded.skipped,
        labeled: classified.len(),
        output,
    })
}

#[derive(Debug, Clone)]
pub struct TickerSignals {
    pub ticker: String,
    pub n_tweets: usize,
    pub sentiment: Vec<DailySentiment>,
    pub pairs: Vec<AlignedPair>,
    pub correlations: Vec<CorrelationRow>,
    pub files: Vec<PathBuf>,
}

fn day_labels<I: IntoIterator<Item = chrono::NaiveDate>>(days: I) -> Vec<String> {
    days.into_iter().map(|d| d.format("%Y-%m-%d").to_string()).collect()
}

/// Bullishness of all three models per day.
pub fn bullishness_chart(ticker: &str, series: &[DailySentiment]) -> LineChart {
    let mut chart = LineChart::new(
        format!("{ticker}: daily bullishness by model"),
        "bullishness",
        day_labels(series.iter().map(|s| s.date)),
    );
    for model in MODELS {
        chart = chart.with_series(Series::new(
            model_name(model),
            series.iter().map(|s| s.bullishness.get(model)).collect(),
        ));
    }
    chart
}

/// One model's bullishness against the return it is paired with.
pub fn overlay_chart(ticker: &str, model: SourceModel, pairs: &[AlignedPair]) -> LineChart {
    LineChart::new(
        format!("{ticker}: {} bullishness vs return", model_name(model)),
        "bullishness / return (%)",
        day_labels(pairs.iter().map(|p| p.sentiment_date)),
    )
    .with_series(Series::new(
        format!("{} bullishness", model_name(model)),
        pairs.iter().map(|p| p.bullishness.get(model)).collect(),
    ))
    .with_series(Series::new(
        "return",
        pairs.iter().map(|p| p.return_value).collect(),
    ))
}

pub fn chart_file(model: Option<SourceModel>) -> String {
    match model {
        None => "bullishness.svg".into(),
        Some(m) => format!("{}_vs_return.svg", model_name(m)),
    }
}

fn ticker_signals(
    config: &RunConfig,
    tweets: &[ClassifiedTweet],
    filter: &TickerFilter,
) -> Result<(TickerSignals, PathBuf)> {
    let ticker = filter.ticker();
    let mine: Vec<ClassifiedTweet> = tweets
        .iter()
        .filter(|t| filter.matches(&t.record.full_text))
        .cloned()
        .collect();
    if mine.is_empty() {
        return Err(Error::EmptyDataset);
    }
    let sentiment = bullishness_series(&mine)?;
    let price_path = config.price_path(ticker)?;
    let returns = return_series(&load_ohlc(&price_path)?)?;
    let pairs = align(&returns, &sentiment, config.align)?;
    let correlations = correlation_report(&pairs);

    let dir = config.out_dir.join(ticker);
    fs::create_dir_all(&dir)?;
    let mut files = Vec::new();
    let mut emit = |name: String, write: &dyn Fn(fs::File) -> Result<()>| -> Result<()> {
        let path = dir.join(name);
        write(fs::File::create(&path)?)?;
        files.push(path);
        Ok(())
    };
    emit("bullishness.csv".into(), &|f| write_bullishness_csv(f, &sentiment))?;
    emit("aligned.csv".into(), &|f| write_aligned_csv(f, &pairs))?;
    emit("correlation.csv".into(), &|f| write_correlation_csv(f, &correlations))?;
    let svg = |chart: LineChart| move |mut f: fs::File| -> Result<()> {
        use std::io::Write;
        f.write_all(chart.to_svg().as_bytes())?;
        Ok(())
    };
    emit(chart_file(None), &svg(bullishness_chart(ticker, &sentiment)))?;
    for model in MODELS {
        emit(chart_file(Some(model)), &svg(overlay_chart(ticker, model, &pairs)))?;
    }
    Ok((
        TickerSignals {
            ticker: ticker.to_string(),
            n_tweets: mine.len(),
            sentiment,
            pairs,
            correlations,
            files,
        },
        price_path,
    ))
}

pub fn cmd_signals(config: &RunConfig) -> Result<Vec<TickerSignals>> {
    let tweets_path = config.tweets_path()?;
    let filters = config.ticker_filters()?;
    if filters.is_empty() {
        return Err(Error::InvalidConfig("--ticker is required".into()));
    }
    let tweets = load_classified_tweets(tweets_path)?.rows;
    let results: Vec<(TickerSignals, PathBuf)> = filters
        .par_iter()
        .map(|f| ticker_signals(config, &tweets, f))
        .collect::<Result<_>>()?;
    let mut inputs: Vec<&Path> = vec![tweets_path];
    inputs.extend(results.iter().map(|(_, p)| p.as_path()));
    let outputs: Vec<PathBuf> = results.iter().flat_map(|(s, _)| s.files.clone()).collect();
    write_manifest(&config.out_dir, "signals", config, &inputs, &outputs)?;
    Ok(results.into_iter().map(|(s, _)| s).collect())
}

/// Dumps the cleaned text and final tokens of every tweet.
pub fn cmd_preprocess(config: &RunConfig) -> Result<PathBuf> {
    let tweets_path = config.tweets_path()?;
    let stopwords = config.stopword_list()?;
    let loaded = load_unlabeled_tweets(tweets_path)?;
    fs::create_dir_all(&config.out_dir)?;
    let output = config.out_dir.join("tokens.csv");
    let mut wtr = csv::Writer::from_path(&output)?;
    wtr.write_record(["id", "cleaned", "tokens"])?;
    for r in &loaded.rows {
        let cleaned = clean_text(&r.full_text, &stopwords);
        let tokens = preprocess(&r.full_text, &stopwords);
        wtr.write_record([r.id.as_str(), cleaned.as_str(), &tokens.tokens().join(" ")])?;
    }
    wtr.flush()?;
    let mut inputs = vec![tweets_path];
    if let Some(p) = &config.stopwords {
        inputs.push(p);
    }
    write_manifest(&config.out_dir, "preprocess", config, &inputs, std::slice::from_ref(&output))?;
    Ok(output)
}

/// Writes a synthetic fixture under `out_dir`.
pub fn cmd_synth(config: &RunConfig) -> Result<PathBuf> {
    let mut synth = SynthConfig {
        seed: config.seed,
        days: config.synth_days,
        n_train: config.synth_train_rows,
        ..SynthConfig::default()
    };
    if !config.tickers.is_empty() {
        synth.tickers = config.tickers.clone();
    }
    write_fixture(&config.out_dir, &synth)?;
    let mut outputs = vec![config.out_dir.join("train.csv"), config.out_dir.join("tweets.csv")];
    outputs.extend(synth.tickers.iter().map(|t| config.out_dir.join("prices").join(format!("{t}.csv"))));
    write_manifest(&config.out_dir, "synth", config, &[], &outputs)?;
    Ok(config.out_dir.clone())
}
