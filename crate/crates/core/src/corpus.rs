//! Tweet and price ingestion.
//!
//! Tweets come from CSV files with header `id,created_at,full_text[,label]`.
//! Malformed tweet rows are counted and skipped; malformed price rows abort
//! the load, since a gap in the close series would corrupt every return
//! that follows it.

use std::collections::HashMap;
use std::fmt;
use std::io;
use std::path::Path;

use chrono::{DateTime, NaiveDate, Utc};

use crate::error::{Error, Result};

/// Binary sentiment. Raw corpora encode positive as `4`; it is folded into
/// `Positive` at ingestion and never stored.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sentiment {
    Negative = 0,
    Positive = 1,
}

impl Sentiment {
    pub fn as_u8(self) -> u8 {
        self as u8
    }

    pub fn from_u8(v: u8) -> Option<Self> {
        match v {
            0 => Some(Sentiment::Negative),
            1 => Some(Sentiment::Positive),
            _ => None,
        }
    }

    /// Parses a raw label cell: `0`, `1`, or the legacy positive code `4`.
    pub fn from_raw_label(raw: &str) -> Option<Self> {
        match raw.trim() {
            "0" => Some(Sentiment::Negative),
            "1" | "4" => Some(Sentiment::Positive),
            _ => None,
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            Sentiment::Negative => Sentiment::Positive,
            Sentiment::Positive => Sentiment::Negative,
        }
    }
}

impl fmt::Display for Sentiment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_u8())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SourceModel {
    Nb,
    Rf,
    Lstm,
    Gold,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TweetRecord {
    pub id: String,
    pub created_at: NaiveDate,
    pub full_text: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledTweet {
    pub record: TweetRecord,
    pub label: Sentiment,
    pub source_model: SourceModel,
}

/// Labels assigned to one tweet by each of the three classifiers.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ModelLabels {
    pub nb: Option<Sentiment>,
    pub rf: Option<Sentiment>,
    pub lstm: Option<Sentiment>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassifiedTweet {
    pub record: TweetRecord,
    pub labels: ModelLabels,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OhlcBar {
    pub date: NaiveDate,
    pub open: f64,
    pub high: f64,
    pub low: f64,
    pub close: f64,
    pub adj_close: f64,
    pub volume: u64,
}

/// Case-insensitive substring filter for one ticker.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TickerFilter {
    ticker: String,
    aliases: Vec<String>,
}

impl TickerFilter {
    pub fn new<I, S>(ticker: &str, aliases: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut out: Vec<String> = Vec::new();
        for alias in aliases {
            let alias = alias.as_ref().trim().to_lowercase();
            if alias.is_empty() {
                continue;
            }
            if !out.contains(&alias) {
                out.push(alias);
            }
        }
        if out.is_empty() {
            return Err(Error::InvalidConfig(format!(
                "ticker {ticker} needs at least one alias"
            )));
        }
        Ok(TickerFilter {
            ticker: ticker.to_string(),
            aliases: out,
        })
    }

    /// Bare lowercase symbol; it also covers `$sym` and `#sym` under
    /// substring matching.
    pub fn for_ticker(ticker: &str) -> Self {
        Self::new(ticker, [ticker]).expect("non-empty ticker")
    }

    pub fn ticker(&self) -> &str {
        &self.ticker
    }

    pub fn aliases(&self) -> &[String] {
        &self.aliases
    }

    pub fn matches(&self, text: &str) -> bool {
        let lower = text.to_lowercase();
        self.aliases.iter().any(|a| lower.contains(a.as_str()))
    }
}

/// Keeps records whose text contains any alias. Substring semantics, so
/// `fb` also matches `fbi`.
pub fn filter_by_ticker(records: &[TweetRecord], filter: &TickerFilter) -> Vec<TweetRecord> {
    records
        .iter()
        .filter(|r| filter.matches(&r.full_text))
        .cloned()
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct TweetSchema {
    pub with_labels: bool,
}

/// Rows that survived validation plus the number of skipped rows.
#[derive(Debug, Clone)]
pub struct Loaded<T> {
    pub rows: Vec<T>,
    pub skipped: usize,
}

/// Either shape a tweet row can take.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TweetRow {
    Unlabeled(TweetRecord),
    Labeled(LabeledTweet),
}

/// Accepts `YYYY-MM-DD` or an ISO-8601 timestamp; timestamps with an offset
/// are converted to UTC before truncation.
pub fn parse_day(raw: &str) -> Option<NaiveDate> {
    let raw = raw.trim();
    if let Ok(d) = NaiveDate::parse_from_str(raw, "%Y-%m-%d") {
        return Some(d);
    }
    if let Ok(ts) = DateTime::parse_from_rfc3339(raw) {
        return Some(ts.with_timezone(&Utc).date_naive());
    }
    if let Ok(ts) = DateTime::parse_from_str(raw, "%Y-%m-%d %H:%M:%S%:z") {
        return Some(ts.with_timezone(&Utc).date_naive());
    }
    let head = raw.get(..10)?;
    match raw.as_bytes().get(10) {
        Some(b'T') | Some(b' ') => NaiveDate::parse_from_str(head, "%Y-%m-%d").ok(),
        _ => None,
    }
}

fn column_index(headers: &csv::StringRecord, name: &str) -> Result<usize> {
    headers
        .iter()
        .position(|h| h.trim() == name)
        .ok_or_else(|| Error::MissingColumn(name.to_string()))
}

pub fn read_tweets<R: io::Read>(reader: R, schema: TweetSchema) -> Result<Loaded<TweetRow>> {
    let mut rdr = csv::ReaderBuilder::new().flexible(true).from_reader(reader);
    let headers = rdr.headers()?.clone();
    let id_col = column_index(&headers, "id")?;
    let date_col = column_index(&headers, "created_at")?;
    let text_col = column_index(&headers, "full_text")?;
    let label_col = if schema.with_labels {
        Some(column_index(&headers, "label")?)
    } else {
        None
    };

    let mut rows = Vec::new();
    let mut skipped = 0;
    for result in rdr.records() {
        let Ok(row) = result else {
            skipped += 1;
            continue;
        };
        let text = row.get(text_col).unwrap_or("");
        let date = row.get(date_col).and_then(parse_day);
        let (Some(date), false) = (date, text.trim().is_empty()) else {
            skipped += 1;
            continue;
        };
        let record = TweetRecord {
            id: row.get(id_col).unwrap_or("").to_string(),
            created_at: date,
            full_text: text.to_string(),
        };
        match label_col {
            None => rows.push(TweetRow::Unlabeled(record)),
            Some(col) => match row.get(col).and_then(Sentiment::from_raw_label) {
                Some(label) => rows.push(TweetRow::Labeled(LabeledTweet {
                    record,
                    label,
                    source_model: SourceModel::Gold,
                })),
                None => skipped += 1,
            },
        }
    }
    if rows.is_empty() {
        return Err(Error::EmptyDataset);
    }
    Ok(Loaded { rows, skipped })
}

pub fn load_tweets(path: impl AsRef<Path>, schema: TweetSchema) -> Result<Loaded<TweetRow>> {
    read_tweets(std::fs::File::open(path)?, schema)
}

/// Unlabeled tweets. A `label` column, if present, is ignored.
pub fn load_unlabeled_tweets(path: impl AsRef<Path>) -> Result<Loaded<TweetRecord>> {
    let loaded = load_tweets(path, TweetSchema { with_labels: false })?;
    Ok(Loaded {
        rows: loaded
            .rows
            .into_iter()
            .map(|r| match r {
                TweetRow::Unlabeled(t) => t,
                TweetRow::Labeled(l) => l.record,
            })
            .collect(),
        skipped: loaded.skipped,
    })
}

pub fn load_labeled_tweets(path: impl AsRef<Path>) -> Result<Loaded<LabeledTweet>> {
    let loaded = load_tweets(path, TweetSchema { with_labels: true })?;
    Ok(Loaded {
        rows: loaded
            .rows
            .into_iter()
            .filter_map(|r| match r {
                TweetRow::Labeled(l) => Some(l),
                TweetRow::Unlabeled(_) => None,
            })
            .collect(),
        skipped: loaded.skipped,
    })
}

pub const LABEL_COLUMNS: [&str; 3] = ["Label_nb", "Label_rf", "Label_lstm"];

pub fn write_classified_tweets<W: io::Write>(writer: W, tweets: &[ClassifiedTweet]) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(writer);
    wtr.write_record([
        "id",
        "created_at",
        "full_text",
        LABEL_COLUMNS[0],
        LABEL_COLUMNS[1],
        LABEL_COLUMNS[2],
    ])?;
    let cell = |s: Option<Sentiment>| s.map(|s| s.to_string()).unwrap_or_default();
    for t in tweets {
        wtr.write_record([
            t.record.id.clone(),
            t.record.created_at.format("%Y-%m-%d").to_string(),
            t.record.full_text.clone(),
            cell(t.labels.nb),
            cell(t.labels.rf),
            cell(t.labels.lstm),
        ])?;
    }
    wtr.flush()?;
    Ok(())
}

/// Reads the output of the labelling stage. Missing label cells are kept as
/// `None` so downstream aggregation can report which one is absent.
pub fn read_classified_tweets<R: io::Read>(reader: R) -> Result<Loaded<ClassifiedTweet>> {
    let mut rdr = csv::ReaderBuilder::new().flexible(true).from_reader(reader);
    let headers = rdr.headers()?.clone();
    let id_col = column_index(&headers, "id")?;
    let date_col = column_index(&headers, "created_at")?;
    let text_col = column_index(&headers, "full_text")?;
    let label_cols = [
        column_index(&headers, LABEL_COLUMNS[0])?,
        column_index(&headers, LABEL_COLUMNS[1])?,
        column_index(&headers, LABEL_COLUMNS[2])?,
    ];
    let mut rows = Vec::new();
    let mut skipped = 0;
    for result in rdr.records() {
        let Ok(row) = result else {
            skipped += 1;
            continue;
        };
        let text = row.get(text_col).unwrap_or("");
        let Some(date) = row.get(date_col).and_then(parse_day) else {
            skipped += 1;
            continue;
        };
        if text.trim().is_empty() {
            skipped += 1;
            continue;
        }
        let label = |i: usize| {
            row.get(label_cols[i])
                .and_then(|c| c.trim().parse::<u8>().ok())
                .and_then(Sentiment::from_u8)
        };
        rows.push(ClassifiedTweet {
            record: TweetRecord {
                id: row.get(id_col).unwrap_or("").to_string(),
                created_at: date,
                full_text: text.to_string(),
            },
            labels: ModelLabels {
                nb: label(0),
                rf: label(1),
                lstm: label(2),
            },
        });
    }
    if rows.is_empty() {
        return Err(Error::EmptyDataset);
    }
    Ok(Loaded { rows, skipped })
}

pub fn load_classified_tweets(path: impl AsRef<Path>) -> Result<Loaded<ClassifiedTweet>> {
    read_classified_tweets(std::fs::File::open(path)?)
}

const OHLC_COLUMNS: [&str; 7] = ["Date", "Open", "High", "Low", "Close", "Adj Close", "Volume"];

pub fn read_ohlc<R: io::Read>(reader: R) -> Result<Vec<OhlcBar>> {
    let mut rdr = csv::Reader::from_reader(reader);
    let headers = rdr.headers()?.clone();
    let mut cols = [0usize; 7];
    for (slot, name) in cols.iter_mut().zip(OHLC_COLUMNS) {
        *slot = column_index(&headers, name)?;
    }

    let mut bars = Vec::new();
    for (i, result) in rdr.records().enumerate() {
        let row_no = i + 2;
        let row = result?;
        let bad = |reason: String| Error::MalformedPriceRow {
            row: row_no,
            reason,
        };
        let cell = |k: usize| row.get(cols[k]).unwrap_or("").trim();
        let date = NaiveDate::parse_from_str(cell(0), "%Y-%m-%d")
            .map_err(|_| bad(format!("bad date `{}`", cell(0))))?;
        let price = |k: usize| -> Result<f64> {
            let v: f64 = cell(k)
                .parse()
                .map_err(|_| bad(format!("bad {} `{}`", OHLC_COLUMNS[k], cell(k))))?;
            if v.is_finite() {
                Ok(v)
            } else {
                Err(bad(format!("non-finite {}", OHLC_COLUMNS[k])))
            }
        };
        let (open, high, low, close, adj_close) = (price(1)?, price(2)?, price(3)?, price(4)?, price(5)?);
        if close <= 0.0 {
            return Err(Error::NonPositiveClose(date));
        }
        let volume = parse_volume(cell(6)).ok_or_else(|| bad(format!("bad volume `{}`", cell(6))))?;
        if !(low <= open.min(close) && open.max(close) <= high) {
            return Err(bad("low/open/close/high out of order".into()));
        }
        bars.push(OhlcBar {
            date,
            open,
            high,
            low,
            close,
            adj_close,
            volume,
        });
    }
    bars.sort_by_key(|b| b.date);
    if let Some(w) = bars.windows(2).find(|w| w[0].date == w[1].date) {
        return Err(Error::DuplicateDate(w[0].date));
    }
    Ok(bars)
}

fn parse_volume(raw: &str) -> Option<u64> {
    if let Ok(v) = raw.parse::<u64>() {
        return Some(v);
    }
    let v: f64 = raw.parse().ok()?;
    (v >= 0.0 && v.fract() == 0.0 && v < u64::MAX as f64).then_some(v as u64)
}

pub fn load_ohlc(path: impl AsRef<Path>) -> Result<Vec<OhlcBar>> {
    read_ohlc(std::fs::File::open(path)?)
}

pub fn write_ohlc<W: io::Write>(writer: W, bars: &[OhlcBar]) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(writer);
    wtr.write_record(OHLC_COLUMNS)?;
    for b in bars {
        wtr.write_record([
            b.date.format("%Y-%m-%d").to_string(),
            format!("{:.6}", b.open),
            format!("{:.6}", b.high),
            format!("{:.6}", b.low),
            format!("{:.6}", b.close),
            format!("{:.6}", b.adj_close),
            b.volume.to_string(),
        ])?;
    }
    wtr.flush()?;
    Ok(())
}

/// Groups records by calendar day, preserving first-seen order inside a day.
pub fn group_by_day<T, F>(items: &[T], day: F) -> Vec<(NaiveDate, Vec<&T>)>
where
    F: Fn(&T) -> NaiveDate,
{
    let mut index: HashMap<NaiveDate, usize> = HashMap::new();
    let mut groups: Vec<(NaiveDate, Vec<&T>)> = Vec::new();
    for item in items {
        let d = day(item);
        let slot = *index.entry(d).or_insert_with(|| {
            groups.push((d, Vec::new()));
            groups.len() - 1
        });
        groups[slot].1.push(item);
    }
    groups.sort_by_key(|(d, _)| *d);
    groups
}
