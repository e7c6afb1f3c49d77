//! Bidirectional LSTM sentiment network.
//!
//! ```text
//! ids ─ embedding ─┬─ forward LSTM  (left → right) ─ h_fwd ─┐
//!                  └─ backward LSTM (right → left) ─ h_bwd ─┴─ concat ─ dense+ReLU ─ dense+sigmoid
//! ```
//!
//! Gates follow the usual recurrences with rows of the stacked weight
//! matrices laid out as `[input; forget; cell; output]`:
//!
//! ```text
//! i = σ(W_i x + U_i h + b_i)    f = σ(W_f x + U_f h + b_f)
//! g = tanh(W_g x + U_g h + b_g) o = σ(W_o x + U_o h + b_o)
//! c' = f ⊙ c + i ⊙ g            h' = o ⊙ tanh(c')
//! ```
//!
//! All arithmetic is `f64`. Gradients are exact (full backpropagation through
//! time over every position, padding included).

mod adam;
mod train;

use std::fmt::Write as _;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::corpus::Sentiment;
use crate::error::{Error, Result};
use crate::features::TokenSequence;

pub use adam::{Adam, AdamConfig};
pub use train::{evaluate, train, EpochStats, TrainConfig, TrainHistory};

pub const DEFAULT_EMBEDDING_DIM: usize = 32;
pub const DEFAULT_HIDDEN: usize = 64;
pub const DEFAULT_DENSE: usize = 24;
const LSTM_HEADER: &str = "sentiment-signals bilstm v1";
const BCE_EPS: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LstmConfig {
    /// Number of vocabulary terms; the embedding has one extra row for id 0.
    pub vocab_size: usize,
    pub embedding_dim: usize,
    pub max_length: usize,
    pub hidden: usize,
    pub dense: usize,
}

impl LstmConfig {
    pub fn new(vocab_size: usize, max_length: usize) -> Self {
        LstmConfig {
            vocab_size,
            embedding_dim: DEFAULT_EMBEDDING_DIM,
            max_length,
            hidden: DEFAULT_HIDDEN,
            dense: DEFAULT_DENSE,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.embedding_dim == 0 || self.max_length == 0 || self.hidden == 0 || self.dense == 0 {
            return Err(Error::InvalidConfig(format!("degenerate network shape {self:?}")));
        }
        Ok(())
    }
}

/// Row-major matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Tensor {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Tensor {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Tensor {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<f64>) -> Self {
        assert_eq!(data.len(), rows * cols, "tensor data length");
        Tensor { rows, cols, data }
    }

    fn uniform<R: Rng>(rows: usize, cols: usize, limit: f64, rng: &mut R) -> Self {
        let data = (0..rows * cols).map(|_| rng.gen_range(-limit..limit)).collect();
        Tensor { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [f64] {
        &mut self.data
    }

    pub fn row(&self, r: usize) -> &[f64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    fn row_mut(&mut self, r: usize) -> &mut [f64] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn get(&self, r: usize, c: usize) -> f64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: f64) {
        self.data[r * self.cols + c] = v;
    }

    fn add_assign(&mut self, other: &Tensor) {
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += b;
        }
    }

    fn scale(&mut self, k: f64) {
        for a in &mut self.data {
            *a *= k;
        }
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }
}

fn glorot_limit(fan_in: usize, fan_out: usize) -> f64 {
    (6.0 / (fan_in + fan_out) as f64).sqrt()
}

/// One direction's gate parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct CellParams {
    /// `4H × E` input weights.
    pub w: Tensor,
    /// `4H × H` recurrent weights.
    pub u: Tensor,
    /// `4H × 1`.
    pub b: Tensor,
}

impl CellParams {
    fn zeros(input: usize, hidden: usize) -> Self {
        CellParams {
            w: Tensor::zeros(4 * hidden, input),
            u: Tensor::zeros(4 * hidden, hidden),
            b: Tensor::zeros(4 * hidden, 1),
        }
    }

    fn init<R: Rng>(input: usize, hidden: usize, rng: &mut R) -> Self {
        let mut b = Tensor::zeros(4 * hidden, 1);
        for r in hidden..2 * hidden {
            b.data[r] = 1.0;
        }
        CellParams {
            w: Tensor::uniform(4 * hidden, input, glorot_limit(input, 4 * hidden), rng),
            u: Tensor::uniform(4 * hidden, hidden, glorot_limit(hidden, 4 * hidden), rng),
            b,
        }
    }

    pub fn hidden(&self) -> usize {
        self.u.cols
    }
}

/// Every trainable tensor. Also used for gradients and optimizer moments.
#[derive(Debug, Clone, PartialEq)]
pub struct Params {
    /// `(vocab_size + 1) × E`; row 0 belongs to the padding id.
    pub embedding: Tensor,
    pub forward: CellParams,
    pub backward: CellParams,
    /// `D × 2H`.
    pub dense1_w: Tensor,
    pub dense1_b: Tensor,
    /// `1 × D`.
    pub dense2_w: Tensor,
    pub dense2_b: Tensor,
}

pub const TENSOR_NAMES: [&str; 11] = [
    "embedding",
    "forward.w",
    "forward.u",
    "forward.b",
    "backward.w",
    "backward.u",
    "backward.b",
    "dense1.w",
    "dense1.b",
    "dense2.w",
    "dense2.b",
];

impl Params {
    fn zeros(cfg: &LstmConfig) -> Self {
        let (e, h, d) = (cfg.embedding_dim, cfg.hidden, cfg.dense);
        Params {
            embedding: Tensor::zeros(cfg.vocab_size + 1, e),
            forward: CellParams::zeros(e, h),
            backward: CellParams::zeros(e, h),
            dense1_w: Tensor::zeros(d, 2 * h),
            dense1_b: Tensor::zeros(d, 1),
            dense2_w: Tensor::zeros(1, d),
            dense2_b: Tensor::zeros(1, 1),
        }
    }

    pub fn zeros_like(&self) -> Self {
        let z = |t: &Tensor| Tensor::zeros(t.rows, t.cols);
        let zc = |c: &CellParams| CellParams {
            w: z(&c.w),
            u: z(&c.u),
            b: z(&c.b),
        };
        Params {
            embedding: z(&self.embedding),
            forward: zc(&self.forward),
            backward: zc(&self.backward),
            dense1_w: z(&self.dense1_w),
            dense1_b: z(&self.dense1_b),
            dense2_w: z(&self.dense2_w),
            dense2_b: z(&self.dense2_b),
        }
    }

    /// Tensors in `TENSOR_NAMES` order.
    pub fn tensors(&self) -> [&Tensor; 11] {
        [
            &self.embedding,
            &self.forward.w,
            &self.forward.u,
            &self.forward.b,
            &self.backward.w,
            &self.backward.u,
            &self.backward.b,
            &self.dense1_w,
            &self.dense1_b,
            &self.dense2_w,
            &self.dense2_b,
        ]
    }

    pub fn tensors_mut(&mut self) -> [&mut Tensor; 11] {
        [
            &mut self.embedding,
            &mut self.forward.w,
            &mut self.forward.u,
            &mut self.forward.b,
            &mut self.backward.w,
            &mut self.backward.u,
            &mut self.backward.b,
            &mut self.dense1_w,
            &mut self.dense1_b,
            &mut self.dense2_w,
            &mut self.dense2_b,
        ]
    }

    pub fn n_params(&self) -> usize {
        self.tensors().iter().map(|t| t.data.len()).sum()
    }

    pub fn add_assign(&mut self, other: &Params) {
        for (a, b) in self.tensors_mut().into_iter().zip(other.tensors()) {
            a.add_assign(b);
        }
    }

    pub fn scale(&mut self, k: f64) {
        for t in self.tensors_mut() {
            t.scale(k);
        }
    }

    pub fn is_finite(&self) -> bool {
        self.tensors().iter().all(|t| t.is_finite())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LstmNetwork {
    config: LstmConfig,
    pub params: Params,
}

fn sigmoid(x: f64) -> f64 {
    if x >= 0.0 {
        1.0 / (1.0 + (-x).exp())
    } else {
        let e = x.exp();
        e / (1.0 + e)
    }
}

/// Four running sums so the loop vectorizes.
fn dot(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = [0.0; 4];
    let (ca, cb) = (a.chunks_exact(4), b.chunks_exact(4));
    let tail: f64 = ca.remainder().iter().zip(cb.remainder()).map(|(x, y)| x * y).sum();
    for (x, y) in ca.zip(cb) {
        for k in 0..4 {
            acc[k] += x[k] * y[k];
        }
    }
    (acc[0] + acc[1]) + (acc[2] + acc[3]) + tail
}

fn axpy(alpha: f64, x: &[f64], y: &mut [f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}

/// Activations of one time step, kept for backpropagation.
struct Step {
    id: usize,
    gates: Vec<f64>,
    c: Vec<f64>,
    tanh_c: Vec<f64>,
    h: Vec<f64>,
}

fn run_cell(cell: &CellParams, embedding: &Tensor, ids: impl Iterator<Item = usize>) -> Vec<Step> {
    let hidden = cell.hidden();
    let mut h = vec![0.0; hidden];
    let mut c = vec![0.0; hidden];
    let mut steps = Vec::new();
    for id in ids {
        let x = embedding.row(id);
        let mut gates = vec![0.0; 4 * hidden];
        for (r, z) in gates.iter_mut().enumerate() {
            let pre = cell.b.data[r] + dot(cell.w.row(r), x) + dot(cell.u.row(r), &h);
            *z = if (2 * hidden..3 * hidden).contains(&r) {
                pre.tanh()
            } else {
                sigmoid(pre)
            };
        }
        let mut c_new = vec![0.0; hidden];
        let mut tanh_c = vec![0.0; hidden];
        let mut h_new = vec![0.0; hidden];
        for k in 0..hidden {
            let (i, f, g, o) = (
                gates[k],
                gates[hidden + k],
                gates[2 * hidden + k],
                gates[3 * hidden + k],
            );
            c_new[k] = f * c[k] + i * g;
            tanh_c[k] = c_new[k].tanh();
            h_new[k] = o * tanh_c[k];
        }
        c.clone_from(&c_new);
        h.clone_from(&h_new);
        steps.push(Step {
            id,
            gates,
            c: c_new,
            tanh_c,
            h: h_new,
        });
    }
    steps
}

/// Backpropagates `dh_last` through one direction's steps, accumulating
/// into that cell's gradients and the embedding gradient.
fn backprop_cell(
    cell: &CellParams,
    embedding: &Tensor,
    steps: &[Step],
    dh_last: &[f64],
    grad: &mut CellParams,
    grad_embedding: &mut Tensor,
) {
    let hidden = cell.hidden();
    let mut dh = dh_last.to_vec();
    let mut dc = vec![0.0; hidden];
    let zeros = vec![0.0; hidden];
    let mut dz = vec![0.0; 4 * hidden];
    for t in (0..steps.len()).rev() {
        let step = &steps[t];
        let (h_prev, c_prev) = if t == 0 {
            (&zeros, &zeros)
        } else {
            (&steps[t - 1].h, &steps[t - 1].c)
        };
        let gates = &step.gates;
        for k in 0..hidden {
            let (i, f, g, o) = (
                gates[k],
                gates[hidden + k],
                gates[2 * hidden + k],
                gates[3 * hidden + k],
            );
            let tc = step.tanh_c[k];
            let d_o = dh[k] * tc;
            dc[k] += dh[k] * o * (1.0 - tc * tc);
            let d_i = dc[k] * g;
            let d_g = dc[k] * i;
            let d_f = dc[k] * c_prev[k];
            dz[k] = d_i * i * (1.0 - i);
            dz[hidden + k] = d_f * f * (1.0 - f);
            dz[2 * hidden + k] = d_g * (1.0 - g * g);
            dz[3 * hidden + k] = d_o * o * (1.0 - o);
            dc[k] *= f;
        }
        let x = embedding.row(step.id);
        let mut dh_prev = vec![0.0; hidden];
        let dx = grad_embedding.row_mut(step.id);
        for (r, &d) in dz.iter().enumerate() {
            if d == 0.0 {
                continue;
            }
            axpy(d, x, grad.w.row_mut(r));
            axpy(d, h_prev, grad.u.row_mut(r));
            grad.b.data[r] += d;
            axpy(d, cell.w.row(r), dx);
            axpy(d, cell.u.row(r), &mut dh_prev);
        }
        dh = dh_prev;
    }
}

struct ForwardPass {
    fwd: Vec<Step>,
    bwd: Vec<Step>,
    concat: Vec<f64>,
    pre_relu: Vec<f64>,
    relu: Vec<f64>,
    logit: f64,
}

impl LstmNetwork {
    /// Seeded initialization: uniform(-0.05, 0.05) embeddings, Glorot-uniform
    /// weights, zero biases except forget-gate biases of one.
    pub fn new(config: LstmConfig, seed: u64) -> Result<Self> {
        config.validate()?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (e, h, d) = (config.embedding_dim, config.hidden, config.dense);
        let embedding = Tensor::uniform(config.vocab_size + 1, e, 0.05, &mut rng);
        let forward = CellParams::init(e, h, &mut rng);
        let backward = CellParams::init(e, h, &mut rng);
        let dense1_w = Tensor::uniform(d, 2 * h, glorot_limit(2 * h, d), &mut rng);
        let dense2_w = Tensor::uniform(1, d, glorot_limit(d, 1), &mut rng);
        Ok(LstmNetwork {
            config,
            params: Params {
                embedding,
                forward,
                backward,
                dense1_w,
                dense1_b: Tensor::zeros(d, 1),
                dense2_w,
                dense2_b: Tensor::zeros(1, 1),
            },
        })
    }

    /// All parameters zero.
    pub fn zeros(config: LstmConfig) -> Result<Self> {
        config.validate()?;
        Ok(LstmNetwork {
            params: Params::zeros(&config),
            config,
        })
    }

    /// Wraps explicit parameters; shapes must agree with `config`.
    pub fn from_params(config: LstmConfig, params: Params) -> Result<Self> {
        config.validate()?;
        let expected = Params::zeros(&config);
        for ((name, want), got) in TENSOR_NAMES.iter().zip(expected.tensors()).zip(params.tensors()) {
            if want.shape() != got.shape() {
                return Err(Error::malformed(
                    "lstm parameters",
                    format!("{name}: expected {:?}, found {:?}", want.shape(), got.shape()),
                ));
            }
        }
        Ok(LstmNetwork { config, params })
    }

    pub fn config(&self) -> &LstmConfig {
        &self.config
    }

    fn check_sequence(&self, seq: &TokenSequence) -> Result<()> {
        if seq.len() != self.config.max_length {
            return Err(Error::DimensionMismatch {
                expected: self.config.max_length,
                found: seq.len(),
            });
        }
        if let Some(&id) = seq.ids().iter().find(|&&id| id > self.config.vocab_size) {
            return Err(Error::IdOutOfRange {
                id,
                vocab_size: self.config.vocab_size,
            });
        }
        Ok(())
    }

    fn run(&self, seq: &TokenSequence) -> ForwardPass {
        let p = &self.params;
        let ids = seq.ids();
        let fwd = run_cell(&p.forward, &p.embedding, ids.iter().copied());
        let bwd = run_cell(&p.backward, &p.embedding, ids.iter().rev().copied());
        let h = self.config.hidden;
        let mut concat = vec![0.0; 2 * h];
        if let Some(last) = fwd.last() {
            concat[..h].copy_from_slice(&last.h);
        }
        if let Some(last) = bwd.last() {
            concat[h..].copy_from_slice(&last.h);
        }
        let pre_relu: Vec<f64> = (0..self.config.dense)
            .map(|r| p.dense1_b.data[r] + dot(p.dense1_w.row(r), &concat))
            .collect();
        let relu: Vec<f64> = pre_relu.iter().map(|&a| a.max(0.0)).collect();
        let logit = p.dense2_b.data[0] + dot(p.dense2_w.row(0), &relu);
        ForwardPass {
            fwd,
            bwd,
            concat,
            pre_relu,
            relu,
            logit,
        }
    }

    /// Probability of the positive class.
    pub fn forward(&self, seq: &TokenSequence) -> Result<f64> {
        self.check_sequence(seq)?;
        Ok(sigmoid(self.run(seq).logit))
    }

    pub fn predict_label(&self, seq: &TokenSequence, threshold: f64) -> Result<Sentiment> {
        Ok(if self.forward(seq)? >= threshold {
            Sentiment::Positive
        } else {
            Sentiment::Negative
        })
    }

    /// Loss of one example and its gradient, accumulated into `grad`.
    pub fn accumulate_gradient(
        &self,
        seq: &TokenSequence,
        label: Sentiment,
        grad: &mut Params,
    ) -> Result<f64> {
        self.check_sequence(seq)?;
        let pass = self.run(seq);
        let y = label.as_u8() as f64;
        let prob = sigmoid(pass.logit);
        let loss = bce_loss(prob, label);
        // d(BCE)/d(logit); zero where the clamp is active.
        let dlogit = if (BCE_EPS..=1.0 - BCE_EPS).contains(&prob) {
            prob - y
        } else {
            0.0
        };

        let p = &self.params;
        grad.dense2_b.data[0] += dlogit;
        axpy(dlogit, &pass.relu, grad.dense2_w.row_mut(0));

        let h = self.config.hidden;
        let mut dconcat = vec![0.0; 2 * h];
        for r in 0..self.config.dense {
            if pass.pre_relu[r] <= 0.0 {
                continue;
            }
            let da = dlogit * p.dense2_w.data[r];
            grad.dense1_b.data[r] += da;
            axpy(da, &pass.concat, grad.dense1_w.row_mut(r));
            axpy(da, p.dense1_w.row(r), &mut dconcat);
        }

        backprop_cell(
            &p.forward,
            &p.embedding,
            &pass.fwd,
            &dconcat[..h],
            &mut grad.forward,
            &mut grad.embedding,
        );
        backprop_cell(
            &p.backward,
            &p.embedding,
            &pass.bwd,
            &dconcat[h..],
            &mut grad.backward,
            &mut grad.embedding,
        );
        Ok(loss)
    }

    /// Summed loss over `data` with its exact gradient.
    pub fn loss_and_gradient(&self, data: &[(TokenSequence, Sentiment)]) -> Result<(f64, Params)> {
        let mut grad = self.params.zeros_like();
        let mut total = 0.0;
        for (seq, label) in data {
            total += self.accumulate_gradient(seq, *label, &mut grad)?;
        }
        Ok((total, grad))
    }

    pub fn to_text(&self) -> String {
        let c = &self.config;
        let mut out = format!(
            "{LSTM_HEADER}\nconfig vocab_size {} embedding_dim {} max_length {} hidden {} dense {}\n",
            c.vocab_size, c.embedding_dim, c.max_length, c.hidden, c.dense
        );
        for (name, t) in TENSOR_NAMES.iter().zip(self.params.tensors()) {
            writeln!(out, "tensor {name} {} {}", t.rows, t.cols).unwrap();
            for r in 0..t.rows {
                let row: Vec<String> = t.row(r).iter().map(|v| format!("{v:e}")).collect();
                out.push_str(&row.join(" "));
                out.push('\n');
            }
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let bad = |reason: String| Error::malformed("lstm network", reason);
        let mut lines = text.lines();
        let header = lines.next().unwrap_or("");
        if header != LSTM_HEADER {
            return Err(Error::ModelVersionMismatch {
                expected: LSTM_HEADER.into(),
                found: header.into(),
            });
        }
        let cfg_line: Vec<&str> = lines.next().unwrap_or("").split(' ').collect();
        let config = match cfg_line.as_slice() {
            ["config", "vocab_size", v, "embedding_dim", e, "max_length", m, "hidden", h, "dense", d] => {
                let num = |s: &str| s.parse::<usize>().map_err(|_| bad(format!("bad config value `{s}`")));
                LstmConfig {
                    vocab_size: num(v)?,
                    embedding_dim: num(e)?,
                    max_length: num(m)?,
                    hidden: num(h)?,
                    dense: num(d)?,
                }
            }
            _ => return Err(bad("config line".into())),
        };
        config.validate()?;
        let mut params = Params::zeros(&config);
        for (name, tensor) in TENSOR_NAMES.iter().zip(params.tensors_mut()) {
            let expected = format!("tensor {name} {} {}", tensor.rows, tensor.cols);
            let got = lines.next().unwrap_or("");
            if got != expected {
                return Err(bad(format!("expected `{expected}`, found `{got}`")));
            }
            for r in 0..tensor.rows {
                let line = lines.next().ok_or_else(|| bad(format!("{name} truncated")))?;
                let row = tensor.row_mut(r);
                let mut n = 0;
                for (slot, v) in row.iter_mut().zip(line.split(' ')) {
                    *slot = v.parse().map_err(|_| bad(format!("bad number `{v}` in {name}")))?;
                    n += 1;
                }
                if n != row.len() || line.split(' ').count() != row.len() {
                    return Err(bad(format!("{name} row {r} has wrong width")));
                }
            }
        }
        if lines.next().is_some() {
            return Err(bad("trailing content".into()));
        }
        Ok(LstmNetwork { config, params })
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_text())?;
        Ok(())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_text(&std::fs::read_to_string(path)?)
    }
}

/// Binary cross-entropy with the probability clamped to `[1e-12, 1 - 1e-12]`.
pub fn bce_loss(p: f64, y: Sentiment) -> f64 {
    let p = p.clamp(BCE_EPS, 1.0 - BCE_EPS);
    match y {
        Sentiment::Positive => -p.ln(),
        Sentiment::Negative => -(1.0 - p).ln(),
    }
}

pub fn forward(net: &LstmNetwork, seq: &TokenSequence) -> Result<f64> {
    net.forward(seq)
}

pub fn predict_label(net: &LstmNetwork, seq: &TokenSequence, threshold: f64) -> Result<Sentiment> {
    net.predict_label(seq, threshold)
}

#[cfg(test)]
mod tests {
    use super::*;
    use Sentiment::{Negative as N, Positive as P};

    fn tiny() -> LstmConfig {
        LstmConfig {
            vocab_size: 5,
            embedding_dim: 3,
            max_length: 4,
            hidden: 2,
            dense: 2,
        }
    }

    #[test]
    fn zero_network_outputs_half() {
        let net = LstmNetwork::zeros(tiny()).unwrap();
        let seq = TokenSequence::new(vec![1, 2, 3, 0]);
        assert_eq!(net.forward(&seq).unwrap(), 0.5);
        assert_eq!(net.predict_label(&seq, 0.5).unwrap(), P);
        assert_eq!(net.predict_label(&seq, 1.0).unwrap(), N);
    }

    #[test]
    fn zero_embeddings_make_input_irrelevant() {
        let mut net = LstmNetwork::new(tiny(), 9).unwrap();
        net.params.embedding = Tensor::zeros(6, 3);
        net.params.forward.b = Tensor::zeros(8, 1);
        net.params.backward.b = Tensor::zeros(8, 1);
        let pad = net.forward(&TokenSequence::new(vec![0; 4])).unwrap();
        let other = net.forward(&TokenSequence::new(vec![5, 3, 1, 2])).unwrap();
        assert_eq!(pad, other);
    }

    #[test]
    fn bce_values() {
        assert!((bce_loss(0.5, P) - std::f64::consts::LN_2).abs() < 1e-15);
        assert!((bce_loss(0.5, N) - std::f64::consts::LN_2).abs() < 1e-15);
        assert!((bce_loss(0.9, N) - 10f64.ln()).abs() < 1e-12);
        assert!(bce_loss(1.0, P) < 1e-11);
        assert!(bce_loss(0.0, N) < 1e-11);
        assert!((bce_loss(0.0, P) - 1e12f64.ln()).abs() < 1e-9);
    }

    #[test]
    fn input_validation() {
        let net = LstmNetwork::new(tiny(), 1).unwrap();
        assert!(matches!(
            net.forward(&TokenSequence::new(vec![6, 0, 0, 0])),
            Err(Error::IdOutOfRange { id: 6, .. })
        ));
        assert!(matches!(
            net.forward(&TokenSequence::new(vec![1, 2])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn output_strictly_inside_unit_interval() {
        let mut net = LstmNetwork::new(tiny(), 4).unwrap();
        net.params.dense2_b.data_mut()[0] = 30.0;
        let p = net.forward(&TokenSequence::new(vec![1, 1, 1, 1])).unwrap();
        assert!(p > 0.0 && p < 1.0);
    }

    #[test]
    fn init_shapes_and_forget_bias() {
        let net = LstmNetwork::new(LstmConfig::new(10, 6), 0).unwrap();
        let p = &net.params;
        assert_eq!(p.embedding.shape(), (11, 32));
        assert_eq!(p.forward.w.shape(), (256, 32));
        assert_eq!(p.forward.u.shape(), (256, 64));
        assert_eq!(p.dense1_w.shape(), (24, 128));
        assert_eq!(p.dense2_w.shape(), (1, 24));
        let b = p.forward.b.data();
        assert!(b[..64].iter().all(|&v| v == 0.0));
        assert!(b[64..128].iter().all(|&v| v == 1.0));
        assert!(b[128..].iter().all(|&v| v == 0.0));
        assert!(p.embedding.data().iter().all(|v| v.abs() <= 0.05));
    }

    #[test]
    fn text_round_trip_is_bit_exact() {
        let net = LstmNetwork::new(tiny(), 77).unwrap();
        let back = LstmNetwork::from_text(&net.to_text()).unwrap();
        assert_eq!(back, net);
        let seq = TokenSequence::new(vec![3, 1, 0, 0]);
        assert_eq!(back.forward(&seq).unwrap(), net.forward(&seq).unwrap());
    }

    #[test]
    fn gradient_matches_finite_difference_spot_check() {
        let mut net = LstmNetwork::new(tiny(), 5).unwrap();
        let data = vec![
            (TokenSequence::new(vec![1, 4, 2, 0]), P),
            (TokenSequence::new(vec![3, 3, 0, 0]), N),
        ];
        let (_, grad) = net.loss_and_gradient(&data).unwrap();
        let h = 1e-5;
        for (ti, idx) in [(0usize, 4usize), (1, 2), (2, 5), (7, 1), (9, 0), (10, 0)] {
            let orig = net.params.tensors()[ti].data()[idx];
            net.params.tensors_mut()[ti].data_mut()[idx] = orig + h;
            let (lp, _) = net.loss_and_gradient(&data).unwrap();
            net.params.tensors_mut()[ti].data_mut()[idx] = orig - h;
            let (lm, _) = net.loss_and_gradient(&data).unwrap();
            net.params.tensors_mut()[ti].data_mut()[idx] = orig;
            let numeric = (lp - lm) / (2.0 * h);
            let analytic = grad.tensors()[ti].data()[idx];
            assert!((numeric - analytic).abs() < 1e-7, "{}[{idx}]: {analytic} vs {numeric}", TENSOR_NAMES[ti]);
        }
    }
}
