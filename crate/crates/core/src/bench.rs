//! Classification experiments over synthetic temporal graphs.
//!
//! A dataset holds two balanced classes of walk-generated temporal graphs.
//! Each graph is turned into a static representation, fingerprinted with
//! D-WL under one dictionary per dataset, and fed to an L2-regularized
//! logistic regression trained by full-batch gradient descent.

use std::fmt;
use std::fs;
use std::path::Path;
use std::str::FromStr;
use std::time::Instant;

use rand::prelude::*;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gen::{
    derived_seed, k_regular_random_graph, rng, shuffle_timestamps, two_community_graph, walk_temporal_graph, GenError,
    RngSeed, SigmaBias,
};
use crate::repr::{
    build_augmented_event_graph, build_compressed_augmented_event_graph, build_event_graph, build_time_aggregated,
    CompressOptions,
};
use crate::static_graph::StaticGraph;
use crate::temporal::{Delta, GraphError, TemporalGraph};
use crate::wl::{wl_fingerprint, ColorDictionary, WlOptions, DEFAULT_ITERATIONS};

#[derive(Debug, Error)]
pub enum BenchError {
    #[error(transparent)]
    Gen(#[from] GenError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("invalid config: {0}")]
    Config(String),
    #[error("labels must contain both classes")]
    SingleClass,
    #[error("{features} feature rows but {labels} labels")]
    LengthMismatch { features: usize, labels: usize },
    #[error("i/o error on {path}: {message}")]
    Io { path: String, message: String },
}

/// Shape of the random walks and base graphs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct WalkParams {
    /// Nodes of the regular base graph (per community for community datasets).
    pub nodes: usize,
    pub degree: usize,
    /// Cross edges between the two communities.
    pub bridges: usize,
    pub num_walks: usize,
    pub walk_len: usize,
}

impl Default for WalkParams {
    fn default() -> Self {
        WalkParams {
            nodes: 10,
            degree: 3,
            bridges: 2,
            num_walks: 500,
            walk_len: 2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DatasetKind {
    /// Class 1 has a fraction of its timestamps shuffled.
    ShuffledTimestamps,
    /// Classes differ in the community bias of their walks.
    CommunityBias,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetManifest {
    pub kind: DatasetKind,
    pub alpha: Option<f64>,
    pub sigmas: Option<(f64, f64)>,
    pub graphs_per_class: usize,
    pub walk: WalkParams,
    /// Seed of the dataset; the base graph uses it directly.
    pub seed: RngSeed,
    /// Seed of each graph, `seed ^ (index + 1)`.
    pub graph_seeds: Vec<RngSeed>,
    pub labels: Vec<u8>,
}

#[derive(Debug, Clone)]
pub struct Dataset {
    pub graphs: Vec<TemporalGraph>,
    pub labels: Vec<u8>,
    pub manifest: DatasetManifest,
}

fn labels_for(graphs_per_class: usize) -> Vec<u8> {
    let mut labels = vec![0; graphs_per_class];
    labels.resize(2 * graphs_per_class, 1);
    labels
}

fn graph_seeds(seed: RngSeed, count: usize) -> Vec<RngSeed> {
    (0..count).map(|i| derived_seed(seed, i + 1)).collect()
}

/// Class 0: plain walk graphs. Class 1: walk graphs with a fraction `alpha`
/// of timestamps shuffled. All graphs share one regular base graph.
pub fn make_dataset_a(
    alpha: f64,
    graphs_per_class: usize,
    walk: WalkParams,
    seed: RngSeed,
) -> Result<Dataset, BenchError> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(GenError::InvalidAlpha(alpha).into());
    }
    let base = k_regular_random_graph(walk.nodes, walk.degree, seed)?;
    let labels = labels_for(graphs_per_class);
    let seeds = graph_seeds(seed, labels.len());
    let graphs = seeds
        .par_iter()
        .zip(&labels)
        .map(|(&s, &label)| -> Result<TemporalGraph, GenError> {
            let mut r = rng(s);
            let g = walk_temporal_graph(&base, walk.num_walks, walk.walk_len, r.gen(), None)?;
            if label == 1 {
                shuffle_timestamps(&g, alpha, r.gen())
            } else {
                Ok(g)
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Dataset {
        graphs,
        manifest: DatasetManifest {
            kind: DatasetKind::ShuffledTimestamps,
            alpha: Some(alpha),
            sigmas: None,
            graphs_per_class,
            walk,
            seed,
            graph_seeds: seeds,
            labels: labels.clone(),
        },
        labels,
    })
}

/// Walks on a shared two-community graph, biased with `sigma_0` for class 0
/// and `sigma_1` for class 1.
pub fn make_dataset_b(
    sigma_0: f64,
    sigma_1: f64,
    graphs_per_class: usize,
    walk: WalkParams,
    seed: RngSeed,
) -> Result<Dataset, BenchError> {
    let (base, communities) = two_community_graph(walk.nodes, walk.nodes, walk.degree, walk.bridges, seed)?;
    let biases = [
        SigmaBias::new(communities.clone(), sigma_0)?,
        SigmaBias::new(communities, sigma_1)?,
    ];
    let labels = labels_for(graphs_per_class);
    let seeds = graph_seeds(seed, labels.len());
    let graphs = seeds
        .par_iter()
        .zip(&labels)
        .map(|(&s, &label)| walk_temporal_graph(&base, walk.num_walks, walk.walk_len, s, Some(&biases[label as usize])))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Dataset {
        graphs,
        manifest: DatasetManifest {
            kind: DatasetKind::CommunityBias,
            alpha: None,
            sigmas: Some((sigma_0, sigma_1)),
            graphs_per_class,
            walk,
            seed,
            graph_seeds: seeds,
            labels: labels.clone(),
        },
        labels,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Representation {
    CompressedAugmented,
    Augmented,
    Event,
    Aggregated,
}

impl Representation {
    pub const ALL: [Representation; 4] = [
        Representation::CompressedAugmented,
        Representation::Augmented,
        Representation::Event,
        Representation::Aggregated,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Representation::CompressedAugmented => "compressed_augmented",
            Representation::Augmented => "augmented",
            Representation::Event => "event",
            Representation::Aggregated => "aggregated",
        }
    }

    pub fn build(self, g: &TemporalGraph, delta: Delta) -> StaticGraph {
        match self {
            Representation::CompressedAugmented => {
                build_compressed_augmented_event_graph(g, delta, CompressOptions::default()).0
            }
            Representation::Augmented => build_augmented_event_graph(g, delta),
            Representation::Event => build_event_graph(g, delta),
            Representation::Aggregated => build_time_aggregated(g),
        }
    }
}

impl fmt::Display for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Representation {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Representation::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| format!("unknown representation `{s}`"))
    }
}

/// L1-normalized WL histograms, one row per graph, one column per color of
/// the shared dictionary.
pub fn featurize(
    graphs: &[TemporalGraph],
    delta: Delta,
    iterations: usize,
    representation: Representation,
    opts: WlOptions,
) -> Vec<Vec<f64>> {
    let statics: Vec<StaticGraph> = graphs.par_iter().map(|g| representation.build(g, delta)).collect();
    // sequential so color ids do not depend on scheduling
    let mut dict = ColorDictionary::new();
    let prints: Vec<_> = statics
        .iter()
        .map(|s| wl_fingerprint(s, iterations, &mut dict, opts))
        .collect();
    let dim = dict.len();
    prints
        .iter()
        .map(|p| {
            let mut row = vec![0.0; dim];
            let total = p.total() as f64;
            for (&c, &n) in &p.counts {
                row[c as usize] = n as f64 / total;
            }
            row
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TrainParams {
    /// Fraction of each class used for training.
    pub split: f64,
    pub epochs: usize,
    pub learning_rate: f64,
    pub weight_decay: f64,
}

impl Default for TrainParams {
    fn default() -> Self {
        TrainParams {
            split: 0.8,
            epochs: 300,
            learning_rate: 1.0,
            weight_decay: 1e-4,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainReport {
    pub accuracies: Vec<f64>,
    pub mean: f64,
    pub std: f64,
    /// Every feature is zero, so the classifier only sees class priors.
    pub degenerate: bool,
}

pub fn mean_std(xs: &[f64]) -> (f64, f64) {
    if xs.is_empty() {
        return (f64::NAN, f64::NAN);
    }
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n;
    (mean, var.sqrt())
}

/// Stratified train/test split. Each class contributes
/// `round(split * class size)` training indices.
pub fn stratified_split(labels: &[u8], split: f64, rng: &mut impl Rng) -> (Vec<usize>, Vec<usize>) {
    let (mut train, mut test) = (Vec::new(), Vec::new());
    for class in [0u8, 1] {
        let mut idx: Vec<usize> = (0..labels.len()).filter(|&i| labels[i] == class).collect();
        idx.shuffle(rng);
        let k = (split * idx.len() as f64).round() as usize;
        train.extend_from_slice(&idx[..k]);
        test.extend_from_slice(&idx[k..]);
    }
    train.sort_unstable();
    test.sort_unstable();
    (train, test)
}

struct Logistic {
    weights: Vec<f64>,
    bias: f64,
}

impl Logistic {
    fn score(&self, x: &[f64]) -> f64 {
        self.bias + self.weights.iter().zip(x).map(|(w, v)| w * v).sum::<f64>()
    }

    fn fit(xs: &[Vec<f64>], ys: &[f64], params: &TrainParams) -> Self {
        let dim = xs.first().map_or(0, Vec::len);
        let mut m = Logistic {
            weights: vec![0.0; dim],
            bias: 0.0,
        };
        let n = xs.len() as f64;
        // mean squared row norm bounds the curvature of the loss, so this
        // step is stable for learning_rate <= 4
        let curvature = 1.0 + xs.iter().map(|x| x.iter().map(|v| v * v).sum::<f64>()).sum::<f64>() / n;
        let step = params.learning_rate / curvature;
        let mut grad = vec![0.0; dim];
        for _ in 0..params.epochs {
            grad.iter_mut().for_each(|g| *g = 0.0);
            let mut grad_b = 0.0;
            for (x, &y) in xs.iter().zip(ys) {
                let p = 1.0 / (1.0 + (-m.score(x)).exp());
                let err = p - y;
                grad_b += err;
                for (g, v) in grad.iter_mut().zip(x) {
                    *g += err * v;
                }
            }
            for (w, g) in m.weights.iter_mut().zip(&grad) {
                *w -= step * (g / n + params.weight_decay * *w);
            }
            m.bias -= step * grad_b / n;
        }
        m
    }
}

// Center columns on the training mean and divide by one global scale. Colors
// seen in a single graph keep their small L1 mass instead of being blown up
// to unit variance, which would let the model memorize them. Columns constant
// on the training rows are dropped; their weights would stay zero anyway.
fn standardize(features: &[Vec<f64>], train: &[usize]) -> Vec<Vec<f64>> {
    let dim = features.first().map_or(0, Vec::len);
    let n = train.len() as f64;
    let mut means = vec![0.0; dim];
    for &i in train {
        for (m, v) in means.iter_mut().zip(&features[i]) {
            *m += v / n;
        }
    }
    let mut ss = vec![0.0; dim];
    for &i in train {
        for ((s, v), m) in ss.iter_mut().zip(&features[i]).zip(&means) {
            *s += (v - m).powi(2);
        }
    }
    let cols: Vec<(usize, f64)> = (0..dim).filter(|&j| ss[j] > 0.0).map(|j| (j, means[j])).collect();
    let sq: f64 = ss.iter().sum();
    let rms = (sq / n).sqrt();
    let scale = if rms > 1e-12 { 1.0 / rms } else { 0.0 };
    features
        .iter()
        .map(|row| cols.iter().map(|&(j, mean)| (row[j] - mean) * scale).collect())
        .collect()
}

/// Accuracy of a logistic-regression classifier over `runs` random
/// stratified splits.
pub fn train_eval(
    features: &[Vec<f64>],
    labels: &[u8],
    runs: usize,
    seed: RngSeed,
    params: &TrainParams,
) -> Result<TrainReport, BenchError> {
    if features.len() != labels.len() {
        return Err(BenchError::LengthMismatch {
            features: features.len(),
            labels: labels.len(),
        });
    }
    if !(labels.contains(&0) && labels.contains(&1)) {
        return Err(BenchError::SingleClass);
    }
    let degenerate = features.iter().flatten().all(|&v| v == 0.0);
    let accuracies = (0..runs)
        .map(|r| {
            let (train, test) = stratified_split(labels, params.split, &mut rng(derived_seed(seed, r)));
            let z = standardize(features, &train);
            let xs: Vec<Vec<f64>> = train.iter().map(|&i| z[i].clone()).collect();
            let ys: Vec<f64> = train.iter().map(|&i| labels[i] as f64).collect();
            let model = Logistic::fit(&xs, &ys, params);
            let correct = test
                .iter()
                .filter(|&&i| (model.score(&z[i]) > 0.0) == (labels[i] == 1))
                .count();
            correct as f64 / test.len().max(1) as f64
        })
        .collect::<Vec<_>>();
    let (mean, std) = mean_std(&accuracies);
    Ok(TrainReport {
        accuracies,
        mean,
        std,
        degenerate,
    })
}

/// Parameter cells of an experiment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum Grid {
    /// Shuffled-timestamp datasets, one cell per `alpha`.
    Alpha(Vec<f64>),
    /// Community-bias datasets, one cell per `(sigma_0, sigma_1)`.
    SigmaPairs(Vec<(f64, f64)>),
    /// Community-bias datasets over every ordered pair of the listed values.
    SigmaProduct(Vec<f64>),
}

impl Grid {
    /// `(param1, param2)` of every cell, in output order.
    pub fn cells(&self) -> Vec<(f64, Option<f64>)> {
        match self {
            Grid::Alpha(a) => a.iter().map(|&x| (x, None)).collect(),
            Grid::SigmaPairs(p) => p.iter().map(|&(a, b)| (a, Some(b))).collect(),
            Grid::SigmaProduct(v) => v.iter().flat_map(|&a| v.iter().map(move |&b| (a, Some(b)))).collect(),
        }
    }
}

fn default_runs() -> usize {
    25
}

fn default_graphs_per_class() -> usize {
    125
}

fn default_iterations() -> usize {
    DEFAULT_ITERATIONS
}

fn default_delta() -> i64 {
    1
}

fn default_representation() -> Representation {
    Representation::CompressedAugmented
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub grid: Grid,
    #[serde(default = "default_runs")]
    pub runs: usize,
    #[serde(default = "default_graphs_per_class")]
    pub graphs_per_class: usize,
    #[serde(default)]
    pub seed: RngSeed,
    #[serde(default = "default_representation")]
    pub representation: Representation,
    #[serde(default = "default_iterations")]
    pub iterations: usize,
    #[serde(default = "default_delta")]
    pub delta: i64,
    #[serde(default)]
    pub walk: WalkParams,
    #[serde(default)]
    pub train: TrainParams,
}

impl ExperimentConfig {
    pub fn new(grid: Grid) -> Self {
        ExperimentConfig {
            grid,
            runs: default_runs(),
            graphs_per_class: default_graphs_per_class(),
            seed: 0,
            representation: default_representation(),
            iterations: default_iterations(),
            delta: default_delta(),
            walk: WalkParams::default(),
            train: TrainParams::default(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self, BenchError> {
        let cfg: ExperimentConfig = serde_json::from_str(text).map_err(|e| BenchError::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), BenchError> {
        let bad = |m: String| Err(BenchError::Config(m));
        if self.runs == 0 {
            return bad("runs: must be at least 1".into());
        }
        if self.graphs_per_class < 2 {
            return bad("graphs_per_class: must be at least 2".into());
        }
        if self.delta < 1 {
            return bad(format!("delta: {} is below 1", self.delta));
        }
        if !(self.train.split > 0.0 && self.train.split < 1.0) {
            return bad(format!("train.split: {} outside (0, 1)", self.train.split));
        }
        if self.walk.walk_len == 0 {
            return bad("walk.walk_len: must be at least 1".into());
        }
        let cells = self.grid.cells();
        if cells.is_empty() {
            return bad("grid: no cells".into());
        }
        for (a, b) in cells {
            match b {
                None if !(0.0..=1.0).contains(&a) => return bad(format!("grid.alpha: {a} outside [0, 1]")),
                Some(b) => {
                    for s in [a, b] {
                        if !(s > -1.0 && s < 1.0) {
                            return bad(format!("grid: sigma {s} outside (-1, 1)"));
                        }
                    }
                }
                None => {}
            }
        }
        Ok(())
    }
}

/// Result of one grid cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub kind: DatasetKind,
    pub param1: f64,
    pub param2: Option<f64>,
    pub representation: Representation,
    pub delta: i64,
    pub iterations: usize,
    pub graphs_per_class: usize,
    pub walk: WalkParams,
    /// Dataset seed of each run.
    pub seeds: Vec<RngSeed>,
    pub accuracies: Vec<f64>,
    pub mean: f64,
    pub std: f64,
    pub degenerate_runs: usize,
    pub seconds: f64,
    pub error: Option<String>,
}

/// Run one cell: every run draws a fresh dataset from `config.seed ^ run` and
/// evaluates a single stratified split of it.
///
/// Runs with the same index use the same seed in every cell, so cells differ
/// only in their parameters.
pub fn run_cell(config: &ExperimentConfig, param1: f64, param2: Option<f64>) -> ExperimentReport {
    let start = Instant::now();
    let seeds: Vec<RngSeed> = (0..config.runs).map(|r| derived_seed(config.seed, r)).collect();
    let kind = if param2.is_some() {
        DatasetKind::CommunityBias
    } else {
        DatasetKind::ShuffledTimestamps
    };
    let outcome = (|| -> Result<(Vec<f64>, usize), BenchError> {
        let delta = Delta::new(config.delta)?;
        let mut accuracies = Vec::with_capacity(seeds.len());
        let mut degenerate = 0;
        for &s in &seeds {
            let ds = match param2 {
                None => make_dataset_a(param1, config.graphs_per_class, config.walk, s)?,
                Some(p2) => make_dataset_b(param1, p2, config.graphs_per_class, config.walk, s)?,
            };
            let x = featurize(
                &ds.graphs,
                delta,
                config.iterations,
                config.representation,
                WlOptions::default(),
            );
            let report = train_eval(&x, &ds.labels, 1, s, &config.train)?;
            degenerate += report.degenerate as usize;
            accuracies.extend(report.accuracies);
        }
        Ok((accuracies, degenerate))
    })();
    let (accuracies, degenerate_runs, error) = match outcome {
        Ok((a, d)) => (a, d, None),
        Err(e) => (Vec::new(), 0, Some(e.to_string())),
    };
    let (mean, std) = mean_std(&accuracies);
    ExperimentReport {
        kind,
        param1,
        param2,
        representation: config.representation,
        delta: config.delta,
        iterations: config.iterations,
        graphs_per_class: config.graphs_per_class,
        walk: config.walk,
        seeds,
        accuracies,
        mean,
        std,
        degenerate_runs,
        seconds: start.elapsed().as_secs_f64(),
        error,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridReport {
    pub config: ExperimentConfig,
    pub cells: Vec<ExperimentReport>,
}

/// Run every cell of the grid in parallel on the current rayon pool.
pub fn run_experiment_grid(config: &ExperimentConfig) -> Result<GridReport, BenchError> {
    config.validate()?;
    let cells = config
        .grid
        .cells()
        .into_par_iter()
        .map(|(a, b)| run_cell(config, a, b))
        .collect();
    Ok(GridReport {
        config: config.clone(),
        cells,
    })
}

fn fmt_opt(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.6}")
    } else {
        String::new()
    }
}

impl GridReport {
    /// `param1,param2,mean_acc,std_acc,runs,seconds`, one row per cell.
    /// Failed cells have empty accuracy fields.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["param1", "param2", "mean_acc", "std_acc", "runs", "seconds"])
            .expect("write to memory");
        for c in &self.cells {
            w.write_record([
                format!("{}", c.param1),
                c.param2.map(|p| p.to_string()).unwrap_or_default(),
                fmt_opt(c.mean),
                fmt_opt(c.std),
                c.accuracies.len().to_string(),
                format!("{:.3}", c.seconds),
            ])
            .expect("write to memory");
        }
        String::from_utf8(w.into_inner().expect("flush to memory")).expect("csv is utf-8")
    }

    /// Write `results.csv` and `cells/cell_NNN.json` under `dir`.
    pub fn write_to(&self, dir: &Path) -> Result<(), BenchError> {
        let io = |p: &Path, e: std::io::Error| BenchError::Io {
            path: p.display().to_string(),
            message: e.to_string(),
        };
        let cells_dir = dir.join("cells");
        fs::create_dir_all(&cells_dir).map_err(|e| io(&cells_dir, e))?;
        let csv_path = dir.join("results.csv");
        fs::write(&csv_path, self.to_csv()).map_err(|e| io(&csv_path, e))?;
        for (i, c) in self.cells.iter().enumerate() {
            let p = cells_dir.join(format!("cell_{i:03}.json"));
            let text = serde_json::to_string_pretty(c).expect("report serializes");
            fs::write(&p, text).map_err(|e| io(&p, e))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_walk() -> WalkParams {
        WalkParams {
            num_walks: 60,
            ..WalkParams::default()
        }
    }

    #[test]
    fn dataset_a_shape() {
        let ds = make_dataset_a(0.5, 4, small_walk(), 3).unwrap();
        assert_eq!(ds.graphs.len(), 8);
        assert_eq!(ds.labels, vec![0, 0, 0, 0, 1, 1, 1, 1]);
        assert!(ds.graphs.iter().all(|g| g.num_edges() == 120));
        assert_eq!(ds.manifest.graph_seeds.len(), 8);
        let again = make_dataset_a(0.5, 4, small_walk(), 3).unwrap();
        assert_eq!(ds.graphs, again.graphs);
    }

    #[test]
    fn dataset_a_alpha_zero_is_unshuffled() {
        let ds = make_dataset_a(0.0, 3, small_walk(), 1).unwrap();
        let base = k_regular_random_graph(10, 3, 1).unwrap();
        for (g, &s) in ds.graphs.iter().zip(&ds.manifest.graph_seeds) {
            let w = walk_temporal_graph(&base, 60, 2, rng(s).gen(), None).unwrap();
            assert_eq!(g, &w);
        }
    }

    #[test]
    fn dataset_b_shape() {
        let ds = make_dataset_b(0.0, 0.9, 3, small_walk(), 2).unwrap();
        assert_eq!(ds.graphs.len(), 6);
        assert!(ds.graphs.iter().all(|g| g.num_nodes() == 20));
        assert!(make_dataset_b(0.0, 1.0, 3, small_walk(), 2).is_err());
    }

    #[test]
    fn isomorphic_graphs_share_feature_rows() {
        let g = crate::fixtures::showcase();
        let h = g.relabel(&[3, 1, 4, 0, 2], |e| e.t + 10).unwrap();
        let x = featurize(
            &[g, h],
            Delta::new(2).unwrap(),
            3,
            Representation::CompressedAugmented,
            WlOptions::default(),
        );
        assert_eq!(x[0], x[1]);
        assert!((x[0].iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn split_is_stratified_and_disjoint() {
        let labels = labels_for(25);
        let (train, test) = stratified_split(&labels, 0.8, &mut rng(4));
        assert_eq!(train.len(), 40);
        assert_eq!(test.len(), 10);
        let mut all: Vec<usize> = train.iter().chain(&test).copied().collect();
        all.sort_unstable();
        assert_eq!(all, (0..50).collect::<Vec<_>>());
        assert_eq!(train.iter().filter(|&&i| labels[i] == 1).count(), 20);
    }

    #[test]
    fn separable_features_are_learned() {
        let labels = labels_for(10);
        let x: Vec<Vec<f64>> = labels.iter().map(|&l| vec![l as f64, 1.0 - l as f64]).collect();
        let r = train_eval(&x, &labels, 5, 1, &TrainParams::default()).unwrap();
        assert_eq!(r.mean, 1.0);
        assert!(!r.degenerate);
    }

    #[test]
    fn zero_features_are_flagged() {
        let labels = labels_for(5);
        let x = vec![vec![0.0; 3]; 10];
        let r = train_eval(&x, &labels, 2, 1, &TrainParams::default()).unwrap();
        assert!(r.degenerate);
        assert_eq!(r.accuracies.len(), 2);
        assert!(train_eval(&x, &[0; 10], 1, 1, &TrainParams::default()).is_err());
    }

    #[test]
    fn config_parsing() {
        let cfg = ExperimentConfig::from_json(r#"{"grid": {"alpha": [0.0, 0.5]}, "runs": 2}"#).unwrap();
        assert_eq!(cfg.grid.cells(), vec![(0.0, None), (0.5, None)]);
        assert_eq!(cfg.walk.num_walks, 500);
        let err = ExperimentConfig::from_json(r#"{"grid": {"alpha": [2.0]}}"#).unwrap_err();
        assert!(err.to_string().contains("grid.alpha"));
        let err = ExperimentConfig::from_json(r#"{"grid": {"alpha": [0.0]}, "runz": 1}"#).unwrap_err();
        assert!(err.to_string().contains("runz"));
        let cfg = ExperimentConfig::from_json(r#"{"grid": {"sigma_product": [0.0, 0.5, -0.5]}}"#).unwrap();
        assert_eq!(cfg.grid.cells().len(), 9);
    }

    #[test]
    fn grid_csv_has_one_row_per_cell() {
        let mut cfg = ExperimentConfig::new(Grid::Alpha(vec![0.0, 1.0]));
        cfg.runs = 2;
        cfg.graphs_per_class = 5;
        cfg.walk.num_walks = 30;
        let report = run_experiment_grid(&cfg).unwrap();
        let csv = report.to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "param1,param2,mean_acc,std_acc,runs,seconds");
        assert_eq!(lines.len(), 3);
        assert!(lines[1].starts_with("0,,"));
        assert!(report
            .cells
            .iter()
            .all(|c| c.error.is_none() && c.accuracies.len() == 2));
        let again = run_experiment_grid(&cfg).unwrap();
        assert_eq!(
            report.cells.iter().map(|c| &c.accuracies).collect::<Vec<_>>(),
            again.cells.iter().map(|c| &c.accuracies).collect::<Vec<_>>()
        );
    }
}
