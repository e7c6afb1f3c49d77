//! Synthetic fixtures: a labeled training corpus built from planted
//! polarity words, per-ticker stock tweets whose daily mix of positive and
//! negative tweets follows a latent sentiment, and price series whose
//! returns correlate with the previous day's latent sentiment.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use chrono::{Datelike, Duration, NaiveDate, Weekday};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::corpus::{write_ohlc, OhlcBar, Sentiment, TweetRecord};
use crate::error::Result;

pub const POSITIVE_WORDS: &[&str] = &[
    "bullish", "moon", "rally", "soar", "profit", "gain", "beat", "rocket", "upgrade", "strong",
    "breakout", "surge", "win", "love", "great", "buy", "green", "record", "outperform", "boom",
];

pub const NEGATIVE_WORDS: &[&str] = &[
    "bearish", "crash", "plunge", "loss", "miss", "dump", "downgrade", "weak", "fear", "sell",
    "red", "fraud", "terrible", "hate", "collapse", "lawsuit", "recall", "bankrupt", "short", "fail",
];

pub const NEUTRAL_WORDS: &[&str] = &[
    "market", "stock", "share", "price", "today", "week", "chart", "volume", "trade", "news",
    "earnings", "call", "option", "analyst", "watch", "report", "quarter", "open", "close",
    "session", "guidance", "investor", "fund", "position", "morning", "futures", "sector", "ceo",
    "product", "launch",
];

const CHATTER: &[&str] = &[
    "lunch was great today",
    "watching the game tonight",
    "coffee first then emails",
    "new phone who dis",
    "traffic is terrible this morning",
];

#[derive(Debug, Clone, PartialEq)]
pub struct SynthConfig {
    pub seed: u64,
    /// Rows in the labeled training corpus.
    pub n_train: usize,
    /// Calendar days of stock tweets.
    pub days: usize,
    pub start: NaiveDate,
    pub tickers: Vec<String>,
    /// Inclusive range of tweets per ticker per day.
    pub tweets_per_day: (usize, usize),
    /// Target correlation between a return and the previous tweet day's
    /// latent sentiment.
    pub correlation: f64,
    /// Skip Saturdays and Sundays in the price series.
    pub weekend_gaps: bool,
    /// Slope of the logistic map from latent sentiment to the share of
    /// positive tweets.
    pub sentiment_gain: f64,
    /// Probability that a tweet also carries one word of the opposite
    /// polarity.
    pub cross_word_rate: f64,
    /// Daily return standard deviation, in percent.
    pub volatility: f64,
}

impl Default for SynthConfig {
    fn default() -> Self {
        SynthConfig {
            seed: 42,
            n_train: 2000,
            days: 90,
            start: NaiveDate::from_ymd_opt(2020, 4, 1).expect("valid date"),
            tickers: vec!["AAPL".into(), "TSLA".into()],
            tweets_per_day: (30, 60),
            correlation: 0.8,
            weekend_gaps: true,
            sentiment_gain: 1.2,
            cross_word_rate: 0.15,
            volatility: 2.0,
        }
    }
}

/// Training row with the raw 0/4 label convention.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrainRow {
    pub id: String,
    pub created_at: NaiveDate,
    pub full_text: String,
    pub label: Sentiment,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TickerFixture {
    pub bars: Vec<OhlcBar>,
    /// Latent sentiment per tweet day.
    pub latent: Vec<(NaiveDate, f64)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MarketFixture {
    pub tweets: Vec<TweetRecord>,
    pub tickers: BTreeMap<String, TickerFixture>,
}

fn pick<'a>(rng: &mut ChaCha8Rng, words: &[&'a str]) -> &'a str {
    words.choose(rng).expect("non-empty word list")
}

/// Planted-polarity text: one to three words of the tweet's polarity, an
/// occasional opposite word, and neutral filler, in random order.
pub fn sentiment_text(rng: &mut ChaCha8Rng, label: Sentiment, cross_word_rate: f64) -> Vec<String> {
    let (own, other) = match label {
        Sentiment::Positive => (POSITIVE_WORDS, NEGATIVE_WORDS),
        Sentiment::Negative => (NEGATIVE_WORDS, POSITIVE_WORDS),
    };
    let mut words: Vec<String> = Vec::new();
    for _ in 0..rng.gen_range(1..=3) {
        words.push(pick(rng, own).to_string());
    }
    if rng.gen_bool(cross_word_rate) {
        words.push(pick(rng, other).to_string());
    }
    for _ in 0..rng.gen_range(2..=5) {
        words.push(pick(rng, NEUTRAL_WORDS).to_string());
    }
    words.shuffle(rng);
    words
}

/// Adds the noise a cleaner has to cope with: mentions, links, elongated
/// words and capitals.
fn decorate(rng: &mut ChaCha8Rng, mut words: Vec<String>) -> String {
    if rng.gen_bool(0.2) {
        words.insert(0, format!("@user{}", rng.gen_range(1..500)));
    }
    if rng.gen_bool(0.15) {
        words.push(format!("https://t.co/{:08x}", rng.gen::<u32>()));
    }
    if rng.gen_bool(0.1) {
        if let Some(w) = words.iter_mut().find(|w| {
            let b = w.as_bytes();
            b.len() > 3 && b[b.len() - 1] != b[b.len() - 2] && b.iter().all(u8::is_ascii_lowercase)
        }) {
            let last = w.pop().expect("non-empty");
            w.extend(std::iter::repeat_n(last, 4));
        }
    }
    if rng.gen_bool(0.1) {
        words.push(format!("{}", rng.gen_range(2..100)));
    }
    let mut text = words.join(" ");
    if rng.gen_bool(0.2) {
        text = text.to_uppercase();
    }
    if rng.gen_bool(0.3) {
        text.push_str(if rng.gen_bool(0.5) { "!!" } else { "." });
    }
    text
}

pub fn training_corpus(config: &SynthConfig) -> Vec<TrainRow> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    (0..config.n_train)
        .map(|i| {
            let label = if rng.gen_bool(0.5) {
                Sentiment::Positive
            } else {
                Sentiment::Negative
            };
            let words = sentiment_text(&mut rng, label, config.cross_word_rate);
            TrainRow {
                id: format!("tr{i:05}"),
                created_at: config.start - Duration::days(rng.gen_range(30..400)),
                full_text: decorate(&mut rng, words),
                label,
            }
        })
        .collect()
}

fn logistic(x: f64) -> f64 {
    1.0 / (1.0 + (-x).exp())
}

fn is_weekend(d: NaiveDate) -> bool {
    matches!(d.weekday(), Weekday::Sat | Weekday::Sun)
}

fn mention(rng: &mut ChaCha8Rng, ticker: &str) -> String {
    let t = ticker.to_lowercase();
    match rng.gen_range(0..3) {
        0 => format!("${t}"),
        1 => format!("#{t}"),
        _ => t,
    }
}

pub fn market(config: &SynthConfig) -> MarketFixture {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ 0x005e_ed0f_7a11);
    let days: Vec<NaiveDate> = (0..config.days)
        .map(|i| config.start + Duration::days(i as i64))
        .collect();
    let mut tweets = Vec::new();
    let mut tickers = BTreeMap::new();
    for ticker in &config.tickers {
        let latent: Vec<(NaiveDate, f64)> = days
            .iter()
            .map(|&d| (d, rng.sample::<f64, _>(StandardNormal)))
            .collect();
        for (day_idx, &(day, s)) in latent.iter().enumerate() {
            let p = logistic(config.sentiment_gain * s);
            let n = rng.gen_range(config.tweets_per_day.0..=config.tweets_per_day.1);
            for k in 0..n {
                let label = if rng.gen_bool(p) {
                    Sentiment::Positive
                } else {
                    Sentiment::Negative
                };
                let mut words = sentiment_text(&mut rng, label, config.cross_word_rate);
                let at = rng.gen_range(0..=words.len());
                words.insert(at, mention(&mut rng, ticker));
                tweets.push(TweetRecord {
                    id: format!("{}-{day_idx:03}-{k:03}", ticker.to_lowercase()),
                    created_at: day,
                    full_text: decorate(&mut rng, words),
                });
            }
        }

        // r_t = vol * (rho * s_prev + sqrt(1 - rho^2) * eps_t), where s_prev
        // is the latent sentiment of the calendar day before t.
        let rho = config.correlation.clamp(-1.0, 1.0);
        let mut bars = Vec::new();
        let mut close: f64 = 100.0;
        for (i, &(day, _)) in latent.iter().enumerate() {
            if config.weekend_gaps && is_weekend(day) {
                continue;
            }
            let open = if bars.is_empty() {
                close
            } else {
                let s_prev = latent[i - 1].1;
                let eps: f64 = rng.sample(StandardNormal);
                let r = config.volatility * (rho * s_prev + (1.0 - rho * rho).sqrt() * eps);
                let open = close * (1.0 + 0.002 * rng.sample::<f64, _>(StandardNormal));
                close *= (r / 100.0).exp();
                open
            };
            let spread = 1.0 + 0.01 * rng.gen::<f64>();
            bars.push(OhlcBar {
                date: day,
                open,
                high: open.max(close) * spread,
                low: open.min(close) / spread,
                close,
                adj_close: close,
                volume: rng.gen_range(1_000_000..50_000_000),
            });
        }
        tickers.insert(ticker.clone(), TickerFixture { bars, latent });
    }

    for (i, day) in days.iter().enumerate() {
        if i % 3 == 0 {
            tweets.push(TweetRecord {
                id: format!("chat-{i:03}"),
                created_at: *day,
                full_text: pick(&mut rng, CHATTER).to_string(),
            });
        }
    }
    tweets.sort_by(|a, b| a.created_at.cmp(&b.created_at).then_with(|| a.id.cmp(&b.id)));
    MarketFixture { tweets, tickers }
}

fn timestamp(rng: &mut ChaCha8Rng, day: NaiveDate) -> String {
    format!(
        "{}T{:02}:{:02}:{:02}Z",
        day.format("%Y-%m-%d"),
        rng.gen_range(0..24),
        rng.gen_range(0..60),
        rng.gen_range(0..60)
    )
}

pub fn write_training_csv(path: impl AsRef<Path>, rows: &[TrainRow]) -> Result<()> {
    let mut wtr = csv::Writer::from_path(path)?;
    wtr.write_record(["id", "created_at", "full_text", "label"])?;
    for r in rows {
        let raw = match r.label {
            Sentiment::Positive => "4",
            Sentiment::Negative => "0",
        };
        wtr.write_record([r.id.as_str(), &r.created_at.format("%Y-%m-%d").to_string(), &r.full_text, raw])?;
    }
    wtr.flush()?;
    Ok(())
}

/// Timestamps carry a random time of day so ingestion has to truncate.
pub fn write_tweets_csv(path: impl AsRef<Path>, tweets: &[TweetRecord], seed: u64) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut wtr = csv::Writer::from_path(path)?;
    wtr.write_record(["id", "created_at", "full_text"])?;
    for t in tweets {
        wtr.write_record([t.id.as_str(), &timestamp(&mut rng, t.created_at), &t.full_text])?;
    }
    wtr.flush()?;
    Ok(())
}

/// Writes `train.csv`, `tweets.csv` and `prices/<TICKER>.csv` under `dir`.
pub fn write_fixture(dir: impl AsRef<Path>, config: &SynthConfig) -> Result<MarketFixture> {
    let dir = dir.as_ref();
    fs::create_dir_all(dir.join("prices"))?;
    write_training_csv(dir.join("train.csv"), &training_corpus(config))?;
    let fixture = market(config);
    write_tweets_csv(dir.join("tweets.csv"), &fixture.tweets, config.seed)?;
    for (ticker, t) in &fixture.tickers {
        write_ohlc(fs::File::create(dir.join("prices").join(format!("{ticker}.csv")))?, &t.bars)?;
    }
    Ok(fixture)
}
