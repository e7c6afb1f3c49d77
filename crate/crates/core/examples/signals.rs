// Daily bullishness, log returns, lagged alignment, correlation and a chart,
// on a handful of hand-written tweets and prices.

use std::error::Error;

use chrono::NaiveDate;
use sentiment_signals::corpus::{ClassifiedTweet, ModelLabels, OhlcBar, Sentiment, TweetRecord};
use sentiment_signals::pipeline::overlay_chart;
use sentiment_signals::signals::{
    align, bullishness_series, correlation_report, return_series, AlignMode,
};
use sentiment_signals::corpus::SourceModel;

fn date(d: u32) -> NaiveDate {
    NaiveDate::from_ymd_opt(2020, 6, d).unwrap()
}

pub fn run_example() -> Result<(), Box<dyn Error>> {
    use Sentiment::{Negative as N, Positive as P};
    // (day, nb, rf, lstm)
    let labels = [
        (1, P, P, P), (1, P, N, P), (2, N, N, N), (3, P, P, P), (3, P, P, N), (3, P, P, P),
        (4, N, N, N), (4, N, P, N), (5, P, P, P), (6, N, N, N), (7, P, P, P), (8, N, N, P),
    ];
    let tweets: Vec<ClassifiedTweet> = labels
        .iter()
        .enumerate()
        .map(|(i, &(d, nb, rf, lstm))| ClassifiedTweet {
            record: TweetRecord {
                id: i.to_string(),
                created_at: date(d),
                full_text: String::new(),
            },
            labels: ModelLabels {
                nb: Some(nb),
                rf: Some(rf),
                lstm: Some(lstm),
            },
        })
        .collect();
    // June 6 and 7 2020 are a weekend
    let closes = [(1, 100.0), (2, 102.0), (3, 99.5), (4, 103.0), (5, 101.0), (8, 104.0), (9, 102.5)];
    let bars: Vec<OhlcBar> = closes
        .iter()
        .map(|&(d, c)| OhlcBar {
            date: date(d),
            open: c,
            high: c,
            low: c,
            close: c,
            adj_close: c,
            volume: 1000,
        })
        .collect();

    let sentiment = bullishness_series(&tweets)?;
    let returns = return_series(&bars)?;
    let pairs = align(&returns, &sentiment, AlignMode::Lagged)?;
    for p in &pairs {
        println!(
            "sentiment {} -> return {}: nb {:+.3} return {:+.3}%",
            p.sentiment_date, p.return_date, p.bullishness.nb, p.return_value
        );
    }
    for row in correlation_report(&pairs) {
        println!("{:?}: r = {:?} over {} pairs", row.model, row.pearson_r, row.n_pairs);
    }

    let path = std::env::temp_dir().join("sentsig_example_nb_vs_return.svg");
    std::fs::write(&path, overlay_chart("DEMO", SourceModel::Nb, &pairs).to_svg())?;
    println!("chart written to {}", path.display());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
