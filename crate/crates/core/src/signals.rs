//! Daily bullishness, daily log-returns, their alignment and correlation.
//!
//! ```text
//! B_t      = ln((1 + positive_t) / (1 + negative_t))
//! Return_t = 100 · (ln Close_t − ln Close_{t−1})
//! ```
//!
//! The lagged join pairs each return with the sentiment of the latest day
//! strictly before it: find the first sentiment day on or after the return
//! date and step back one.

use std::io;
use std::str::FromStr;

use chrono::NaiveDate;
use serde::{Deserialize, Serialize};

use crate::corpus::{group_by_day, ClassifiedTweet, OhlcBar, Sentiment, SourceModel};
use crate::error::{Error, Result};

/// The three classifiers, in report column order.
pub const MODELS: [SourceModel; 3] = [SourceModel::Lstm, SourceModel::Rf, SourceModel::Nb];

pub fn model_name(model: SourceModel) -> &'static str {
    match model {
        SourceModel::Lstm => "lstm",
        SourceModel::Rf => "rf",
        SourceModel::Nb => "nb",
        SourceModel::Gold => "gold",
    }
}

/// One value per classifier.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PerModel {
    pub lstm: f64,
    pub rf: f64,
    pub nb: f64,
}

impl PerModel {
    pub fn get(&self, model: SourceModel) -> f64 {
        match model {
            SourceModel::Lstm => self.lstm,
            SourceModel::Rf => self.rf,
            SourceModel::Nb => self.nb,
            SourceModel::Gold => panic!("no gold column"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DailySentiment {
    pub date: NaiveDate,
    pub bullishness: PerModel,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DailyReturn {
    pub date: NaiveDate,
    /// Percent log-return.
    pub value: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlignedPair {
    pub sentiment_date: NaiveDate,
    pub return_date: NaiveDate,
    pub bullishness: PerModel,
    pub return_value: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AlignMode {
    /// Latest sentiment day strictly before the return day.
    #[default]
    Lagged,
    /// Sentiment from the return's own day.
    SameDay,
}

impl FromStr for AlignMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lagged" => Ok(AlignMode::Lagged),
            "same-day" => Ok(AlignMode::SameDay),
            other => Err(Error::InvalidConfig(format!(
                "unknown alignment `{other}`, expected lagged or same-day"
            ))),
        }
    }
}

/// `ln(1 + pos) − ln(1 + neg)`; swapping the counts negates it exactly.
pub fn bullishness(pos: usize, neg: usize) -> f64 {
    ((1 + pos) as f64).ln() - ((1 + neg) as f64).ln()
}

fn day_score(
    tweets: &[&ClassifiedTweet],
    model: SourceModel,
    pick: impl Fn(&ClassifiedTweet) -> Option<Sentiment>,
) -> Result<f64> {
    let (mut pos, mut neg) = (0, 0);
    for t in tweets {
        match pick(t) {
            Some(Sentiment::Positive) => pos += 1,
            Some(Sentiment::Negative) => neg += 1,
            None => {
                return Err(Error::MissingModelLabel {
                    id: t.record.id.clone(),
                    model: model_name(model),
                })
            }
        }
    }
    Ok(bullishness(pos, neg))
}

/// Per-day bullishness for each classifier, sorted by date. Days without
/// tweets are absent.
pub fn bullishness_series(tweets: &[ClassifiedTweet]) -> Result<Vec<DailySentiment>> {
    group_by_day(tweets, |t| t.record.created_at)
        .into_iter()
        .map(|(date, day)| {
            Ok(DailySentiment {
                date,
                bullishness: PerModel {
                    lstm: day_score(&day, SourceModel::Lstm, |t| t.labels.lstm)?,
                    rf: day_score(&day, SourceModel::Rf, |t| t.labels.rf)?,
                    nb: day_score(&day, SourceModel::Nb, |t| t.labels.nb)?,
                },
            })
        })
        .collect()
}

/// `n` bars give `n − 1` returns, each dated by the later bar.
pub fn return_series(bars: &[OhlcBar]) -> Result<Vec<DailyReturn>> {
    if bars.len() < 2 {
        return Err(Error::TooFewBars);
    }
    if let Some(b) = bars.iter().find(|b| !(b.close > 0.0)) {
        return Err(Error::NonPositiveClose(b.date));
    }
    if bars.windows(2).any(|w| w[0].date >= w[1].date) {
        return Err(Error::UnsortedInput);
    }
    Ok(bars
        .windows(2)
        .map(|w| DailyReturn {
            date: w[1].date,
            value: (w[1].close.ln() - w[0].close.ln()) * 100.0,
        })
        .collect())
}

pub fn align(returns: &[DailyReturn], sentiment: &[DailySentiment], mode: AlignMode) -> Result<Vec<AlignedPair>> {
    if returns.windows(2).any(|w| w[0].date >= w[1].date)
        || sentiment.windows(2).any(|w| w[0].date >= w[1].date)
    {
        return Err(Error::UnsortedInput);
    }
    let pairs = returns.iter().filter_map(|r| {
        let j = sentiment.partition_point(|s| s.date < r.date);
        let s = match mode {
            AlignMode::Lagged => {
                if j == 0 || j == sentiment.len() {
                    return None;
                }
                &sentiment[j - 1]
            }
            AlignMode::SameDay => sentiment.get(j).filter(|s| s.date == r.date)?,
        };
        Some(AlignedPair {
            sentiment_date: s.date,
            return_date: r.date,
            bullishness: s.bullishness,
            return_value: r.value,
        })
    });
    Ok(pairs.collect())
}

/// Pearson product-moment correlation.
pub fn pearson(xs: &[f64], ys: &[f64]) -> Result<f64> {
    if xs.len() != ys.len() {
        return Err(Error::LengthMismatch {
            left: xs.len(),
            right: ys.len(),
        });
    }
    if xs.is_empty() {
        return Err(Error::EmptyInput);
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (x, y) in xs.iter().zip(ys) {
        let (dx, dy) = (x - mx, y - my);
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx == 0.0 || syy == 0.0 {
        return Err(Error::ZeroVariance);
    }
    Ok((sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationRow {
    pub model: SourceModel,
    /// `None` when either aligned series is constant or too short.
    pub pearson_r: Option<f64>,
    pub n_pairs: usize,
}

pub fn correlation_report(pairs: &[AlignedPair]) -> Vec<CorrelationRow> {
    let returns: Vec<f64> = pairs.iter().map(|p| p.return_value).collect();
    MODELS
        .iter()
        .map(|&model| {
            let b: Vec<f64> = pairs.iter().map(|p| p.bullishness.get(model)).collect();
            CorrelationRow {
                model,
                pearson_r: if pairs.len() >= 2 { pearson(&b, &returns).ok() } else { None },
                n_pairs: pairs.len(),
            }
        })
        .collect()
}

fn day(d: NaiveDate) -> String {
    d.format("%Y-%m-%d").to_string()
}

pub fn write_aligned_csv<W: io::Write>(writer: W, pairs: &[AlignedPair]) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(writer);
    wtr.write_record(["date", "lstm", "rf", "nb", "return"])?;
    for p in pairs {
        wtr.write_record([
            day(p.sentiment_date),
            p.bullishness.lstm.to_string(),
            p.bullishness.rf.to_string(),
            p.bullishness.nb.to_string(),
            p.return_value.to_string(),
        ])?;
    }
    wtr.flush()?;
    Ok(())
}

pub fn write_bullishness_csv<W: io::Write>(writer: W, series: &[DailySentiment]) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(writer);
    wtr.write_record(["date", "lstm", "rf", "nb"])?;
    for s in series {
        wtr.write_record([
            day(s.date),
            s.bullishness.lstm.to_string(),
            s.bullishness.rf.to_string(),
            s.bullishness.nb.to_string(),
        ])?;
    }
    wtr.flush()?;
    Ok(())
}

pub fn write_correlation_csv<W: io::Write>(writer: W, rows: &[CorrelationRow]) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(writer);
    wtr.write_record(["model", "pearson_r", "n_pairs"])?;
    for r in rows {
        wtr.write_record([
            model_name(r.model).to_string(),
            r.pearson_r.map_or_else(|| "nan".to_string(), |v| v.to_string()),
            r.n_pairs.to_string(),
        ])?;
    }
    wtr.flush()?;
    Ok(())
}
