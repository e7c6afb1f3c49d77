//! Tweet sentiment classifiers and daily sentiment/return signals.

pub mod chart;
pub mod corpus;
pub mod error;
pub mod features;
pub mod lstm;
pub mod metrics;
pub mod nb;
pub mod pipeline;
pub mod rf;
pub mod signals;
pub mod synth;
pub mod textprep;

pub use error::{Error, Result};
