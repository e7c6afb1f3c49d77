use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use sentiment_signals::pipeline::{self, RunConfig};
use sentiment_signals::signals::{model_name, AlignMode};
use sentiment_signals::Error;

#[derive(Parser)]
#[command(name = "sentsig", version, about = "Tweet sentiment classifiers and bullishness/return signals")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Train NB, random forest and BiLSTM on a labeled tweet CSV
    Train(Opts),
    /// Label tweets with all three trained models
    Label(Opts),
    /// Bullishness, returns, aligned pairs, correlations and charts
    #[command(visible_alias = "correlate")]
    Signals(Opts),
    /// Dump cleaned text and tokens per tweet
    Preprocess(Opts),
    /// Write a synthetic fixture (train.csv, tweets.csv, prices/)
    Synth(Opts),
}

#[derive(Args)]
struct Opts {
    /// TOML file with defaults for any of the options below
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    tweets: Option<PathBuf>,
    /// OHLC CSV, or a directory of <TICKER>.csv files
    #[arg(long)]
    prices: Option<PathBuf>,
    /// Comma-separated ticker symbols
    #[arg(long, value_delimiter = ',')]
    ticker: Vec<String>,
    /// Comma-separated aliases for a single ticker
    #[arg(long, value_delimiter = ',')]
    aliases: Vec<String>,
    #[arg(long)]
    stopwords: Option<PathBuf>,
    #[arg(long)]
    models_dir: Option<PathBuf>,
    #[arg(long)]
    out_dir: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    vocab_size: Option<usize>,
    #[arg(long)]
    max_length: Option<usize>,
    #[arg(long)]
    epochs: Option<usize>,
    #[arg(long)]
    batch_size: Option<usize>,
    #[arg(long)]
    learning_rate: Option<f64>,
    #[arg(long)]
    n_estimators: Option<usize>,
    #[arg(long)]
    max_depth: Option<usize>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    train_frac: Option<f64>,
    /// lagged | same-day
    #[arg(long)]
    align: Option<AlignMode>,
    /// Calendar days of synthetic tweets
    #[arg(long)]
    days: Option<usize>,
}

impl Opts {
    fn resolve(self) -> Result<RunConfig, Error> {
        let mut c = RunConfig::default();
        if let Some(path) = &self.config {
            c.load_toml(path)?;
        }
        macro_rules! set {
            ($($flag:ident => $field:ident),*) => {
                $(if let Some(v) = self.$flag { c.$field = v; })*
            };
        }
        if self.tweets.is_some() {
            c.tweets = self.tweets;
        }
        if self.prices.is_some() {
            c.prices = self.prices;
        }
        if self.stopwords.is_some() {
            c.stopwords = self.stopwords;
        }
        set!(models_dir => models_dir, out_dir => out_dir, seed => seed, vocab_size => vocab_size,
            max_length => max_length, epochs => epochs, batch_size => batch_size,
            learning_rate => learning_rate, n_estimators => n_estimators, max_depth => max_depth,
            alpha => alpha, train_frac => train_frac, align => align, days => synth_days);
        if !self.ticker.is_empty() {
            c.tickers = self.ticker;
        }
        if !self.aliases.is_empty() {
            match c.tickers.as_slice() {
                [t] => {
                    c.aliases.insert(t.clone(), self.aliases);
                }
                _ => {
                    return Err(Error::InvalidConfig(
                        "--aliases needs exactly one --ticker; use a config file for several".into(),
                    ))
                }
            }
        }
        Ok(c)
    }
}

fn run(command: Command) -> Result<(), Error> {
    match command {
        Command::Train(o) => {
            let s = pipeline::cmd_train(&o.resolve()?)?;
            for (model, m) in s.matrices() {
                println!("{:<5} accuracy {:6.2}%", model_name(model), m.accuracy());
            }
        }
        Command::Label(o) => {
            let s = pipeline::cmd_label(&o.resolve()?)?;
            println!("labeled {} tweets ({} skipped) -> {}", s.labeled, s.skipped, s.output.display());
        }
        Command::Signals(o) => {
            for t in pipeline::cmd_signals(&o.resolve()?)? {
                for r in &t.correlations {
                    let r_text = r.pearson_r.map_or("nan".to_string(), |v| format!("{v:.4}"));
                    println!("{} {:<5} r = {r_text} (n = {})", t.ticker, model_name(r.model), r.n_pairs);
                }
            }
        }
        Command::Preprocess(o) => {
            println!("{}", pipeline::cmd_preprocess(&o.resolve()?)?.display());
        }
        Command::Synth(o) => {
            println!("{}", pipeline::cmd_synth(&o.resolve()?)?.display());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
