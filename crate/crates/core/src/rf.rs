//! Random forest of CART trees over binary features.
//!
//! Every split tests a single feature, sending `x_f = 0` left and `x_f = 1`
//! right, and is chosen to minimize weighted Gini impurity among `mtry`
//! randomly sampled features. Each tree sees its own bootstrap sample drawn
//! from an RNG stream keyed by `(seed, tree index)`, so trees can be built
//! in any order or in parallel with identical results.

use std::fmt::Write as _;
use std::path::Path;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::corpus::Sentiment;
use crate::error::{Error, Result};
use crate::features::BinaryVector;

pub const DEFAULT_N_ESTIMATORS: usize = 200;
pub const DEFAULT_MAX_DEPTH: usize = 60;
const FOREST_HEADER: &str = "sentiment-signals random-forest v1";

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TreeNode {
    Leaf {
        label: Sentiment,
        class_counts: [u32; 2],
    },
    Split {
        feature: usize,
        /// Samples with the feature absent.
        left: Box<TreeNode>,
        /// Samples with the feature present.
        right: Box<TreeNode>,
    },
}

impl TreeNode {
    pub fn predict(&self, x: &BinaryVector) -> Sentiment {
        let mut node = self;
        loop {
            match node {
                TreeNode::Leaf { label, .. } => return *label,
                TreeNode::Split {
                    feature,
                    left,
                    right,
                } => node = if x.get(*feature) { right } else { left },
            }
        }
    }

    /// Length of the longest root-to-leaf path, counted in splits.
    pub fn depth(&self) -> usize {
        match self {
            TreeNode::Leaf { .. } => 0,
            TreeNode::Split { left, right, .. } => 1 + left.depth().max(right.depth()),
        }
    }

    pub fn n_leaves(&self) -> usize {
        match self {
            TreeNode::Leaf { .. } => 1,
            TreeNode::Split { left, right, .. } => left.n_leaves() + right.n_leaves(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TreeParams {
    pub max_depth: usize,
    pub mtry: usize,
    pub min_samples_leaf: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ForestParams {
    pub n_estimators: usize,
    pub max_depth: usize,
    /// Features examined per split; `None` means ⌈√n_features⌉.
    pub mtry: Option<usize>,
    pub min_samples_leaf: usize,
    pub bootstrap: bool,
    pub seed: u64,
}

impl Default for ForestParams {
    fn default() -> Self {
        ForestParams {
            n_estimators: DEFAULT_N_ESTIMATORS,
            max_depth: DEFAULT_MAX_DEPTH,
            mtry: None,
            min_samples_leaf: 1,
            bootstrap: true,
            seed: 0,
        }
    }
}

pub fn gini(counts: [u32; 2]) -> f64 {
    let n = (counts[0] + counts[1]) as f64;
    if n == 0.0 {
        return 0.0;
    }
    let p0 = counts[0] as f64 / n;
    let p1 = counts[1] as f64 / n;
    1.0 - p0 * p0 - p1 * p1
}

/// `Σ (a² + b²) / n` over the children of a split, as an exact fraction.
/// Weighted child Gini is `1 − purity / n_parent`, so lower impurity means
/// higher purity; integer cross-multiplication keeps ties exact.
#[derive(Debug, Clone, Copy)]
struct Purity {
    num: u128,
    den: u128,
}

impl Purity {
    fn squares(c: [u32; 2]) -> u128 {
        let (a, b) = (c[0] as u128, c[1] as u128);
        a * a + b * b
    }

    fn node(c: [u32; 2]) -> Self {
        Purity {
            num: Self::squares(c),
            den: (c[0] + c[1]) as u128,
        }
    }

    fn split(left: [u32; 2], right: [u32; 2]) -> Self {
        let nl = (left[0] + left[1]) as u128;
        let nr = (right[0] + right[1]) as u128;
        Purity {
            num: Self::squares(left) * nr + Self::squares(right) * nl,
            den: nl * nr,
        }
    }

    fn beats(self, other: Purity) -> bool {
        self.num * other.den > other.num * self.den
    }
}

fn majority(counts: [u32; 2]) -> Sentiment {
    if counts[1] > counts[0] {
        Sentiment::Positive
    } else {
        Sentiment::Negative
    }
}

struct TreeBuilder<'a, R> {
    x: &'a [BinaryVector],
    y: &'a [Sentiment],
    params: TreeParams,
    n_features: usize,
    rng: &'a mut R,
}

impl<R: Rng> TreeBuilder<'_, R> {
    fn counts(&self, samples: &[usize]) -> [u32; 2] {
        let mut c = [0u32; 2];
        for &s in samples {
            c[self.y[s].as_u8() as usize] += 1;
        }
        c
    }

    fn build(&mut self, samples: &[usize], depth: usize) -> TreeNode {
        let counts = self.counts(samples);
        let leaf = TreeNode::Leaf {
            label: majority(counts),
            class_counts: counts,
        };
        let min_leaf = self.params.min_samples_leaf.max(1);
        if counts[0] == 0
            || counts[1] == 0
            || depth >= self.params.max_depth
            || samples.len() < 2 * min_leaf
        {
            return leaf;
        }

        let mtry = self.params.mtry.clamp(1, self.n_features);
        let mut candidates = sample(self.rng, self.n_features, mtry).into_vec();
        candidates.sort_unstable();

        let mut best: Option<(Purity, usize)> = None;
        for &f in &candidates {
            let mut right = [0u32; 2];
            for &s in samples {
                if self.x[s].get(f) {
                    right[self.y[s].as_u8() as usize] += 1;
                }
            }
            let left = [counts[0] - right[0], counts[1] - right[1]];
            let (nl, nr) = ((left[0] + left[1]) as usize, (right[0] + right[1]) as usize);
            if nl < min_leaf || nr < min_leaf {
                continue;
            }
            let score = Purity::split(left, right);
            // Strict comparison keeps the lowest feature index on ties.
            if best.is_none_or(|(b, _)| score.beats(b)) {
                best = Some((score, f));
            }
        }

        match best {
            Some((score, feature)) if score.beats(Purity::node(counts)) => {
                let (right, left): (Vec<usize>, Vec<usize>) =
                    samples.iter().partition(|&&s| self.x[s].get(feature));
                TreeNode::Split {
                    feature,
                    left: Box::new(self.build(&left, depth + 1)),
                    right: Box::new(self.build(&right, depth + 1)),
                }
            }
            _ => leaf,
        }
    }
}

fn check_xy(x: &[BinaryVector], y: &[Sentiment]) -> Result<usize> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    let first = x.first().ok_or(Error::EmptyData)?;
    let n_features = first.len();
    if n_features == 0 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            found: 0,
        });
    }
    if let Some(bad) = x.iter().find(|r| r.len() != n_features) {
        return Err(Error::DimensionMismatch {
            expected: n_features,
            found: bad.len(),
        });
    }
    Ok(n_features)
}

/// Grows one tree on the given rows.
pub fn fit_tree<R: Rng>(
    x: &[BinaryVector],
    y: &[Sentiment],
    params: TreeParams,
    rng: &mut R,
) -> Result<TreeNode> {
    let n_features = check_xy(x, y)?;
    let samples: Vec<usize> = (0..x.len()).collect();
    Ok(fit_tree_on(x, y, &samples, n_features, params, rng))
}

fn fit_tree_on<R: Rng>(
    x: &[BinaryVector],
    y: &[Sentiment],
    samples: &[usize],
    n_features: usize,
    params: TreeParams,
    rng: &mut R,
) -> TreeNode {
    TreeBuilder {
        x,
        y,
        params,
        n_features,
        rng,
    }
    .build(samples, 0)
}

/// RNG stream for tree `t` of a forest seeded with `seed`.
pub fn tree_rng(seed: u64, t: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(t as u64);
    rng
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Forest {
    trees: Vec<TreeNode>,
    /// `mtry` is always resolved to `Some` once fitted.
    params: ForestParams,
    n_features: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ForestPrediction {
    pub label: Sentiment,
    /// `[negative votes, positive votes]`.
    pub votes: [u32; 2],
}

pub fn fit_forest(x: &[BinaryVector], y: &[Sentiment], params: ForestParams) -> Result<Forest> {
    let n_features = check_xy(x, y)?;
    if params.n_estimators == 0 {
        return Err(Error::InvalidConfig("n_estimators must be positive".into()));
    }
    let mtry = params
        .mtry
        .unwrap_or_else(|| (n_features as f64).sqrt().ceil() as usize)
        .clamp(1, n_features);
    let tree_params = TreeParams {
        max_depth: params.max_depth,
        mtry,
        min_samples_leaf: params.min_samples_leaf,
    };
    let n = x.len();
    let trees = (0..params.n_estimators)
        .into_par_iter()
        .map(|t| {
            let mut rng = tree_rng(params.seed, t);
            let samples: Vec<usize> = if params.bootstrap {
                (0..n).map(|_| rng.gen_range(0..n)).collect()
            } else {
                (0..n).collect()
            };
            fit_tree_on(x, y, &samples, n_features, tree_params, &mut rng)
        })
        .collect();
    Ok(Forest {
        trees,
        params: ForestParams {
            mtry: Some(mtry),
            ..params
        },
        n_features,
    })
}

impl Forest {
    pub fn trees(&self) -> &[TreeNode] {
        &self.trees
    }

    pub fn params(&self) -> &ForestParams {
        &self.params
    }

    pub fn mtry(&self) -> usize {
        self.params.mtry.unwrap_or(1)
    }

    pub fn n_features(&self) -> usize {
        self.n_features
    }

    pub fn predict(&self, x: &BinaryVector) -> Result<ForestPrediction> {
        if x.len() != self.n_features {
            return Err(Error::DimensionMismatch {
                expected: self.n_features,
                found: x.len(),
            });
        }
        Ok(majority_vote(self.trees.iter().map(|t| t.predict(x))))
    }

    pub fn to_text(&self) -> String {
        fn write_node(out: &mut String, node: &TreeNode) {
            match node {
                TreeNode::Leaf {
                    label,
                    class_counts,
                } => writeln!(out, "L {label} {} {}", class_counts[0], class_counts[1]).unwrap(),
                TreeNode::Split {
                    feature,
                    left,
                    right,
                } => {
                    writeln!(out, "S {feature}").unwrap();
                    write_node(out, left);
                    write_node(out, right);
                }
            }
        }
        let p = &self.params;
        let mut out = format!(
            "{FOREST_HEADER}\nn_estimators {} max_depth {} mtry {} min_samples_leaf {} bootstrap {} seed {} n_features {}\n",
            p.n_estimators,
            p.max_depth,
            self.mtry(),
            p.min_samples_leaf,
            p.bootstrap as u8,
            p.seed,
            self.n_features
        );
        for (i, tree) in self.trees.iter().enumerate() {
            writeln!(out, "tree {i}").unwrap();
            write_node(&mut out, tree);
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let bad = |reason: String| Error::malformed("random forest", reason);
        let mut lines = text.lines().peekable();
        let header = lines.next().unwrap_or("");
        if header != FOREST_HEADER {
            return Err(Error::ModelVersionMismatch {
                expected: FOREST_HEADER.into(),
                found: header.into(),
            });
        }
        let fields: Vec<&str> = lines.next().unwrap_or("").split(' ').collect();
        if fields.len() != 14 {
            return Err(bad("hyperparameter line".into()));
        }
        let get = |key: &str| -> Result<u64> {
            let pos = fields
                .iter()
                .step_by(2)
                .position(|k| *k == key)
                .ok_or_else(|| bad(format!("missing `{key}`")))?;
            fields[pos * 2 + 1]
                .parse()
                .map_err(|_| bad(format!("bad `{key}`")))
        };
        let params = ForestParams {
            n_estimators: get("n_estimators")? as usize,
            max_depth: get("max_depth")? as usize,
            mtry: Some(get("mtry")? as usize),
            min_samples_leaf: get("min_samples_leaf")? as usize,
            bootstrap: get("bootstrap")? == 1,
            seed: get("seed")?,
        };
        let n_features = get("n_features")? as usize;

        fn read_node<'a, I: Iterator<Item = &'a str>>(
            lines: &mut I,
            n_features: usize,
            depth_left: usize,
        ) -> Result<TreeNode> {
            let bad = |reason: String| Error::malformed("random forest", reason);
            let line = lines.next().ok_or_else(|| bad("truncated tree".into()))?;
            let parts: Vec<&str> = line.split(' ').collect();
            match parts.as_slice() {
                ["L", label, c0, c1] => {
                    let label = label
                        .parse::<u8>()
                        .ok()
                        .and_then(Sentiment::from_u8)
                        .ok_or_else(|| bad(format!("bad leaf `{line}`")))?;
                    let c0 = c0.parse().map_err(|_| bad(format!("bad leaf `{line}`")))?;
                    let c1 = c1.parse().map_err(|_| bad(format!("bad leaf `{line}`")))?;
                    Ok(TreeNode::Leaf {
                        label,
                        class_counts: [c0, c1],
                    })
                }
                ["S", feature] => {
                    let feature: usize = feature
                        .parse()
                        .map_err(|_| bad(format!("bad split `{line}`")))?;
                    if feature >= n_features {
                        return Err(bad(format!("split feature {feature} out of range")));
                    }
                    if depth_left == 0 {
                        return Err(bad("tree deeper than max_depth".into()));
                    }
                    let left = read_node(lines, n_features, depth_left - 1)?;
                    let right = read_node(lines, n_features, depth_left - 1)?;
                    Ok(TreeNode::Split {
                        feature,
                        left: Box::new(left),
                        right: Box::new(right),
                    })
                }
                _ => Err(bad(format!("unexpected line `{line}`"))),
            }
        }

        let mut trees = Vec::with_capacity(params.n_estimators);
        for i in 0..params.n_estimators {
            let expected = format!("tree {i}");
            if lines.next() != Some(expected.as_str()) {
                return Err(bad(format!("expected `{expected}`")));
            }
            trees.push(read_node(&mut lines, n_features, params.max_depth)?);
        }
        if lines.peek().is_some() {
            return Err(bad("trailing content".into()));
        }
        Ok(Forest {
            trees,
            params,
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

/// Majority of per-tree labels; an even split goes to negative.
pub fn majority_vote<I: IntoIterator<Item = Sentiment>>(labels: I) -> ForestPrediction {
    let mut votes = [0u32; 2];
    for l in labels {
        votes[l.as_u8() as usize] += 1;
    }
    ForestPrediction {
        label: majority(votes),
        votes,
    }
}

pub fn predict_forest(forest: &Forest, x: &BinaryVector) -> Result<ForestPrediction> {
    forest.predict(x)
}
