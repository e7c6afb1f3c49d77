//! Bernoulli Naive Bayes over binary bag-of-words features.
//!
//! Each class `c` keeps a prior `P(c)` and, per feature, the Laplace-smoothed
//! probability that the feature is present:
//!
//! ```text
//! P(x_i = 1 | c) = (count(x_i = 1, y = c) + alpha) / (count(y = c) + 2 alpha)
//! ```
//!
//! Prediction multiplies the per-feature terms for present *and* absent
//! features with the prior, all in log space.

use std::fmt::Write as _;
use std::path::Path;

use crate::corpus::Sentiment;
use crate::error::{Error, Result};
use crate::features::BinaryVector;

pub const DEFAULT_ALPHA: f64 = 1.0;
const NB_HEADER: &str = "sentiment-signals bernoulli-nb v1";

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NbParams {
    pub alpha: f64,
    /// Estimate class priors from label frequencies; otherwise uniform.
    pub fit_prior: bool,
}

impl Default for NbParams {
    fn default() -> Self {
        NbParams {
            alpha: DEFAULT_ALPHA,
            fit_prior: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NbModel {
    class_log_prior: [f64; 2],
    /// `[class][feature]` log P(x = 1 | class).
    log_prob_present: [Vec<f64>; 2],
    /// `[class][feature]` log P(x = 0 | class).
    log_prob_absent: [Vec<f64>; 2],
    alpha: f64,
    n_features: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NbPrediction {
    pub label: Sentiment,
    pub log_posterior: [f64; 2],
}

pub fn fit_nb(x: &[BinaryVector], y: &[Sentiment], params: NbParams) -> Result<NbModel> {
    if !(params.alpha > 0.0) || !params.alpha.is_finite() {
        return Err(Error::NonPositiveAlpha(params.alpha));
    }
    if x.len() != y.len() {
        return Err(Error::LengthMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    if x.is_empty() {
        return Err(Error::EmptyData);
    }
    let n_features = x[0].len();
    let mut class_count = [0u64; 2];
    let mut present = [vec![0u64; n_features], vec![0u64; n_features]];
    for (row, &label) in x.iter().zip(y) {
        if row.len() != n_features {
            return Err(Error::DimensionMismatch {
                expected: n_features,
                found: row.len(),
            });
        }
        let c = label.as_u8() as usize;
        class_count[c] += 1;
        for (count, &bit) in present[c].iter_mut().zip(row.bits()) {
            *count += bit as u64;
        }
    }

    let total = (class_count[0] + class_count[1]) as f64;
    let class_log_prior = if params.fit_prior {
        class_count.map(|n| (n as f64 / total).ln())
    } else {
        [0.5f64.ln(); 2]
    };

    let alpha = params.alpha;
    let mut log_prob_present: [Vec<f64>; 2] = Default::default();
    let mut log_prob_absent: [Vec<f64>; 2] = Default::default();
    for c in 0..2 {
        let denom = class_count[c] as f64 + 2.0 * alpha;
        let (p, a): (Vec<f64>, Vec<f64>) = present[c]
            .iter()
            .map(|&k| {
                let on = k as f64 + alpha;
                let off = (class_count[c] - k) as f64 + alpha;
                ((on / denom).ln(), (off / denom).ln())
            })
            .unzip();
        log_prob_present[c] = p;
        log_prob_absent[c] = a;
    }

    Ok(NbModel {
        class_log_prior,
        log_prob_present,
        log_prob_absent,
        alpha,
        n_features,
    })
}

impl NbModel {
    pub fn n_features(&self) -> usize {
        self.n_features
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn class_log_prior(&self) -> [f64; 2] {
        self.class_log_prior
    }

    pub fn log_prob_present(&self, class: Sentiment) -> &[f64] {
        &self.log_prob_present[class.as_u8() as usize]
    }

    pub fn log_prob_absent(&self, class: Sentiment) -> &[f64] {
        &self.log_prob_absent[class.as_u8() as usize]
    }

    pub fn predict(&self, x: &BinaryVector) -> Result<NbPrediction> {
        if x.len() != self.n_features {
            return Err(Error::DimensionMismatch {
                expected: self.n_features,
                found: x.len(),
            });
        }
        let mut log_posterior = self.class_log_prior;
        for (c, lp) in log_posterior.iter_mut().enumerate() {
            if *lp == f64::NEG_INFINITY {
                continue;
            }
            let on = &self.log_prob_present[c];
            let off = &self.log_prob_absent[c];
            for (i, &bit) in x.bits().iter().enumerate() {
                *lp += if bit == 1 { on[i] } else { off[i] };
            }
        }
        // Every term is <= 0, so rounding error grows with the magnitude of
        // the sum; differences inside that bound are exact ties.
        let [lp0, lp1] = log_posterior;
        let tol = 4.0 * f64::EPSILON * (self.n_features + 1) as f64 * lp0.abs().max(lp1.abs());
        let label = if lp1 - lp0 > tol || (lp0 == f64::NEG_INFINITY && lp1 > lp0) {
            Sentiment::Positive
        } else {
            Sentiment::Negative
        };
        Ok(NbPrediction {
            label,
            log_posterior,
        })
    }

    pub fn to_text(&self) -> String {
        fn row(out: &mut String, name: &str, values: &[f64]) {
            out.push_str(name);
            for v in values {
                write!(out, " {v:.16e}").unwrap();
            }
            out.push('\n');
        }
        let mut out = format!(
            "{NB_HEADER}\nn_features {} alpha {:.16e}\n",
            self.n_features, self.alpha
        );
        row(&mut out, "log_prior", &self.class_log_prior);
        for c in 0..2 {
            row(&mut out, &format!("log_present {c}"), &self.log_prob_present[c]);
            row(&mut out, &format!("log_absent {c}"), &self.log_prob_absent[c]);
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let bad = |reason: &str| Error::malformed("naive bayes model", reason);
        let mut lines = text.lines();
        let header = lines.next().unwrap_or("");
        if header != NB_HEADER {
            return Err(Error::ModelVersionMismatch {
                expected: NB_HEADER.into(),
                found: header.into(),
            });
        }
        let dims: Vec<&str> = lines.next().unwrap_or("").split(' ').collect();
        let (n_features, alpha) = match dims.as_slice() {
            ["n_features", n, "alpha", a] => (
                n.parse::<usize>().map_err(|_| bad("n_features"))?,
                a.parse::<f64>().map_err(|_| bad("alpha"))?,
            ),
            _ => return Err(bad("dimension line")),
        };
        let mut parse_row = |prefix: &str, len: usize| -> Result<Vec<f64>> {
            let line = lines.next().ok_or_else(|| bad("truncated file"))?;
            let rest = line
                .strip_prefix(prefix)
                .ok_or_else(|| bad(&format!("expected `{prefix}`")))?;
            let values = rest
                .split_whitespace()
                .map(|v| v.parse::<f64>().map_err(|_| bad("number")))
                .collect::<Result<Vec<_>>>()?;
            if values.len() != len {
                return Err(bad(&format!("`{prefix}` has {} values, expected {len}", values.len())));
            }
            Ok(values)
        };
        let prior = parse_row("log_prior", 2)?;
        let p0 = parse_row("log_present 0", n_features)?;
        let a0 = parse_row("log_absent 0", n_features)?;
        let p1 = parse_row("log_present 1", n_features)?;
        let a1 = parse_row("log_absent 1", n_features)?;
        Ok(NbModel {
            class_log_prior: [prior[0], prior[1]],
            log_prob_present: [p0, p1],
            log_prob_absent: [a0, a1],
            alpha,
            n_features,
        })
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_text())?;
        Ok(())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_text(&std::fs::read_to_string(path)?)
    }
}

pub fn predict_nb(model: &NbModel, x: &BinaryVector) -> Result<NbPrediction> {
    model.predict(x)
}
