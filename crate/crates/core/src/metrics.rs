use std::fmt;

use crate::corpus::Sentiment;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ConfusionMatrix {
    pub tp: usize,
    pub tn: usize,
    pub fp: usize,
    pub fn_: usize,
}

impl ConfusionMatrix {
    pub fn total(&self) -> usize {
        self.tp + self.tn + self.fp + self.fn_
    }

    /// Percentage of correct predictions, 0 to 100.
    pub fn accuracy(&self) -> f64 {
        100.0 * (self.tp + self.tn) as f64 / self.total() as f64
    }
}

/// Rows are actual classes, columns predicted ones.
impl fmt::Display for ConfusionMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{:>12} {:>10} {:>10}", "", "pred 0", "pred 1")?;
        writeln!(f, "{:>12} {:>10} {:>10}", "actual 0", self.tn, self.fp)?;
        writeln!(f, "{:>12} {:>10} {:>10}", "actual 1", self.fn_, self.tp)?;
        write!(f, "accuracy: {:.2}%", self.accuracy())
    }
}

pub fn confusion(y_true: &[Sentiment], y_pred: &[Sentiment]) -> Result<ConfusionMatrix> {
    if y_true.len() != y_pred.len() {
        return Err(Error::LengthMismatch {
            left: y_true.len(),
            right: y_pred.len(),
        });
    }
    if y_true.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut m = ConfusionMatrix::default();
    for (&t, &p) in y_true.iter().zip(y_pred) {
        match (t, p) {
            (Sentiment::Positive, Sentiment::Positive) => m.tp += 1,
            (Sentiment::Negative, Sentiment::Negative) => m.tn += 1,
            (Sentiment::Negative, Sentiment::Positive) => m.fp += 1,
            (Sentiment::Positive, Sentiment::Negative) => m.fn_ += 1,
        }
    }
    Ok(m)
}

pub fn accuracy(y_true: &[Sentiment], y_pred: &[Sentiment]) -> Result<f64> {
    Ok(confusion(y_true, y_pred)?.accuracy())
}
