//! Command-level plumbing behind the `symloss` binary: experiment
//! configuration, dataset ingestion and synthesis, and the four commands
//! (`symcheck`, `train`, `centroid`, `regress`) as library functions
//! returning exit codes.
//!
//! Exit-code contract: 0 success/pass, 1 check failure, 2 usage or config
//! error (commands surface these as `Err`), 3 numerical abort,
//! 4 degenerate problem.
//!
//! Config files are flat `key = value` lines with `#` comments; training
//! keys mirror the conventional hyperparameter names (`train batchsize`,
//! `total epoch`, `learning rate`, `momentum`, `weight decay`,
//! `gradient bound`, `scheduler`, `T_max`, `eta_min`, `step_size`,
//! `gamma`). The env var `SYMLOSS_SEED` overrides the config seed;
//! a `--seed` flag overrides both (flag > env > config).

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::centroid::{
    bias_features, closed_form_linear_solution, compute_centroid, centroid_to_csv,
    empirical_unhinged_loss_direct, empirical_unhinged_loss_via_trace, identity_features,
};
use crate::error::{Error, Result};
use crate::losses::{loss_by_name, LossSpec};
use crate::noise::{corrupt_labels, load_transition_csv, LabeledDataset, NoiseModel};
use crate::numerics::{derive_seed, dot, Matrix, Prng};
use crate::regression::{
    check_linear_symmetry, clip, closed_form_regression_weights, load_regression_csv,
    stationarity_residual, CorruptionDensity, RegressionLossKind,
};
use crate::training::{
    train, Activation, MlpModel, Schedule, ScoreNorm, TrainConfig, TrainRecord,
};
use crate::verify::{check_permutation_invariance, check_symmetry, CheckReport};

pub const REPORT_SCHEMA: &str = "symloss-report/1";

/// Seed stream ids for the independent randomness consumers of a run.
const INIT_STREAM: u64 = 1;
const NOISE_STREAM: u64 = 2;

/// Gaussian-blob synthesis parameters. Class centers sit on a circle of
/// radius `center_radius` in the first two dimensions (a line when
/// `dim == 1`); points add isotropic noise of the given stddev.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SyntheticSpec {
    pub num_classes: usize,
    pub per_class: usize,
    pub test_total: usize,
    pub dim: usize,
    pub center_radius: f64,
    pub stddev: f64,
    pub seed: u64,
}

impl SyntheticSpec {
    pub fn validate(&self) -> Result<()> {
        if self.num_classes < 2 || self.per_class == 0 || self.dim == 0 {
            return Err(Error::Config(
                "blobs need >= 2 classes, >= 1 point per class, dim >= 1".into(),
            ));
        }
        let positive = |v: f64| v.is_finite() && v > 0.0;
        if !positive(self.stddev) || !positive(self.center_radius) {
            return Err(Error::Config("blob stddev and center radius must be positive".into()));
        }
        Ok(())
    }
}

fn blob_center(c: usize, spec: &SyntheticSpec) -> Vec<f64> {
    let mut center = vec![0.0; spec.dim];
    if spec.dim == 1 {
        let t = c as f64 / (spec.num_classes - 1).max(1) as f64;
        center[0] = -spec.center_radius + 2.0 * spec.center_radius * t;
    } else {
        let theta = 2.0 * std::f64::consts::PI * c as f64 / spec.num_classes as f64;
        center[0] = spec.center_radius * theta.cos();
        center[1] = spec.center_radius * theta.sin();
    }
    center
}

/// Deterministic Gaussian-blob train/test pair. Train points come first in
/// the draw order (class-major), then test points.
pub fn gaussian_blobs(spec: &SyntheticSpec) -> Result<(LabeledDataset, LabeledDataset)> {
    spec.validate()?;
    let mut rng = Prng::from_seed(spec.seed);
    let c = spec.num_classes;
    let sample_class = |class: usize, count: usize, rng: &mut Prng| -> Vec<Vec<f64>> {
        let center = blob_center(class, spec);
        (0..count)
            .map(|_| {
                center
                    .iter()
                    .map(|&m| m + spec.stddev * rng.standard_normal())
                    .collect()
            })
            .collect()
    };
    let mut train_rows = Vec::new();
    let mut train_labels = Vec::new();
    for class in 0..c {
        for row in sample_class(class, spec.per_class, &mut rng) {
            train_rows.push(row);
            train_labels.push(class);
        }
    }
    let mut test_rows = Vec::new();
    let mut test_labels = Vec::new();
    for class in 0..c {
        let count = spec.test_total / c + usize::from(class < spec.test_total % c);
        for row in sample_class(class, count, &mut rng) {
            test_rows.push(row);
            test_labels.push(class);
        }
    }
    Ok((
        LabeledDataset::new(Matrix::from_rows(train_rows)?, train_labels, c)?,
        LabeledDataset::new(Matrix::from_rows(test_rows)?, test_labels, c)?,
    ))
}

/// Load a classification dataset from CSV with header
/// `f0,...,f{d-1},label`; the class count is `max(label) + 1`.
pub fn load_classification_csv(path: &Path) -> Result<LabeledDataset> {
    let text = std::fs::read_to_string(path)?;
    let mut lines = text.lines().enumerate();
    let (_, header) = lines
        .next()
        .ok_or_else(|| Error::Config(format!("{}: empty csv", path.display())))?;
    let cols: Vec<&str> = header.split(',').map(str::trim).collect();
    if cols.last() != Some(&"label") {
        return Err(Error::Config(format!(
            "{}: header must end with a 'label' column",
            path.display()
        )));
    }
    let d = cols.len() - 1;
    let mut rows = Vec::new();
    let mut labels = Vec::new();
    for (lineno, line) in lines {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let toks: Vec<&str> = line.split(',').map(str::trim).collect();
        if toks.len() != d + 1 {
            return Err(Error::Config(format!(
                "{} line {}: expected {} values",
                path.display(),
                lineno + 1,
                d + 1
            )));
        }
        let mut row = Vec::with_capacity(d);
        for tok in &toks[..d] {
            row.push(tok.parse::<f64>().map_err(|_| {
                Error::Config(format!("{} line {}: bad number {tok:?}", path.display(), lineno + 1))
            })?);
        }
        let label: usize = toks[d].parse().map_err(|_| {
            Error::Config(format!(
                "{} line {}: bad label {:?}",
                path.display(),
                lineno + 1,
                toks[d]
            ))
        })?;
        rows.push(row);
        labels.push(label);
    }
    if rows.is_empty() {
        return Err(Error::Config(format!("{}: no data rows", path.display())));
    }
    let num_classes = labels.iter().copied().max().unwrap() + 1;
    LabeledDataset::new(Matrix::from_rows(rows)?, labels, num_classes.max(2))
}

/// Write a classification dataset as CSV (inverse of
/// [`load_classification_csv`]).
pub fn classification_to_csv(data: &LabeledDataset) -> String {
    let d = data.dim();
    let mut out: String = (0..d)
        .map(|j| format!("f{j}"))
        .collect::<Vec<_>>()
        .join(",");
    out.push_str(",label\n");
    for i in 0..data.len() {
        for v in data.features.row(i) {
            out.push_str(&format!("{v},"));
        }
        out.push_str(&format!("{}\n", data.labels[i]));
    }
    out
}

/// Where the experiment's data comes from.
#[derive(Debug, Clone, PartialEq)]
pub enum DataSource {
    Blobs(SyntheticSpec),
    Csv { train: PathBuf, test: PathBuf },
}

/// Noise applied to the training labels before training.
#[derive(Debug, Clone, PartialEq)]
pub enum NoiseSpec {
    None,
    Symmetric { eta: f64 },
    Asymmetric { transition: PathBuf },
}

/// Network shape: hidden widths (empty for a linear model) + activation.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelSpec {
    pub hidden: Vec<usize>,
    pub activation: Activation,
    pub bias: bool,
}

/// Fully parsed experiment configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub dataset: DataSource,
    pub noise: NoiseSpec,
    pub model: ModelSpec,
    pub train: TrainConfig,
    pub output: PathBuf,
    pub plot: Option<PathBuf>,
}

struct KvMap {
    values: BTreeMap<String, String>,
    consumed: std::cell::RefCell<std::collections::BTreeSet<String>>,
}

impl KvMap {
    fn parse(text: &str) -> Result<Self> {
        let mut values = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::Config(format!("line {}: expected 'key = value'", lineno + 1))
            })?;
            let key = key.trim().to_string();
            if values.insert(key.clone(), value.trim().to_string()).is_some() {
                return Err(Error::Config(format!("duplicate key '{key}'")));
            }
        }
        Ok(KvMap {
            values,
            consumed: Default::default(),
        })
    }

    fn get(&self, key: &str) -> Option<&str> {
        let v = self.values.get(key).map(String::as_str);
        if v.is_some() {
            self.consumed.borrow_mut().insert(key.to_string());
        }
        v
    }

    fn require(&self, key: &str) -> Result<&str> {
        self.get(key)
            .ok_or_else(|| Error::Config(format!("missing required key '{key}'")))
    }

    fn parse_as<T: std::str::FromStr>(&self, key: &str) -> Result<Option<T>> {
        match self.get(key) {
            None => Ok(None),
            Some(v) => v
                .parse::<T>()
                .map(Some)
                .map_err(|_| Error::Config(format!("key '{key}': cannot parse {v:?}"))),
        }
    }

    fn require_as<T: std::str::FromStr>(&self, key: &str) -> Result<T> {
        self.require(key)?
            .parse::<T>()
            .map_err(|_| Error::Config(format!("key '{key}': cannot parse value")))
    }

    fn unknown_keys(&self) -> Vec<String> {
        let consumed = self.consumed.borrow();
        self.values
            .keys()
            .filter(|k| !consumed.contains(*k))
            .cloned()
            .collect()
    }
}

/// Parse the flat key = value experiment config. Unknown keys are errors.
pub fn parse_config(text: &str) -> Result<ExperimentConfig> {
    let kv = KvMap::parse(text)?;

    let dataset = match kv.require("dataset.source")? {
        "blobs" => DataSource::Blobs(SyntheticSpec {
            num_classes: kv.require_as("dataset.classes")?,
            per_class: kv.require_as("dataset.per_class")?,
            test_total: kv.require_as("dataset.test_total")?,
            dim: kv.require_as("dataset.dim")?,
            center_radius: kv.require_as("dataset.center_radius")?,
            stddev: kv.require_as("dataset.stddev")?,
            seed: kv.require_as("dataset.seed")?,
        }),
        "csv" => DataSource::Csv {
            train: PathBuf::from(kv.require("dataset.train")?),
            test: PathBuf::from(kv.require("dataset.test")?),
        },
        other => return Err(Error::Config(format!("dataset.source: unknown '{other}'"))),
    };

    let noise = match kv.get("noise.kind").unwrap_or("none") {
        "none" => NoiseSpec::None,
        "symmetric" => NoiseSpec::Symmetric {
            eta: kv.require_as("noise.eta")?,
        },
        "asymmetric" => NoiseSpec::Asymmetric {
            transition: PathBuf::from(kv.require("noise.transition")?),
        },
        other => return Err(Error::Config(format!("noise.kind: unknown '{other}'"))),
    };

    let hidden = match kv.get("model.hidden") {
        None | Some("") => Vec::new(),
        Some(list) => list
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Config(format!("model.hidden: bad width {t:?}")))
            })
            .collect::<Result<_>>()?,
    };
    let activation = match kv.get("model.activation").unwrap_or("relu") {
        "relu" => Activation::Relu,
        "tanh" => Activation::Tanh,
        "identity" => Activation::Identity,
        other => return Err(Error::Config(format!("model.activation: unknown '{other}'"))),
    };
    let model = ModelSpec {
        hidden,
        activation,
        bias: kv.parse_as::<bool>("model.bias")?.unwrap_or(true),
    };

    let loss = LossSpec {
        name: kv.require("loss")?.to_string(),
        q: kv.parse_as("q")?,
        alpha: kv.parse_as("alpha")?,
    };
    let score_norm = match kv.get("score_norm").unwrap_or("none") {
        "none" => ScoreNorm::None,
        "euclidean" => ScoreNorm::euclidean(),
        "batch_stats" => ScoreNorm::BatchStats,
        other => return Err(Error::Config(format!("score_norm: unknown '{other}'"))),
    };
    let schedule = match kv.get("scheduler").unwrap_or("constant") {
        "constant" => Schedule::Constant,
        "cosine" => Schedule::Cosine {
            t_max: kv.require_as("T_max")?,
            eta_min: kv.parse_as("eta_min")?.unwrap_or(0.0),
        },
        "steplr" => Schedule::Step {
            step_size: kv.require_as("step_size")?,
            gamma: kv.require_as("gamma")?,
        },
        other => return Err(Error::Config(format!("scheduler: unknown '{other}'"))),
    };
    let train = TrainConfig {
        epochs: kv.require_as("total epoch")?,
        batch_size: kv.require_as("train batchsize")?,
        lr: kv.require_as("learning rate")?,
        momentum: kv.parse_as("momentum")?.unwrap_or(0.0),
        weight_decay: kv.parse_as("weight decay")?.unwrap_or(0.0),
        grad_clip: kv.parse_as("gradient bound")?.unwrap_or(1e18),
        schedule,
        score_norm,
        seed: kv.parse_as("seed")?.unwrap_or(0),
        loss,
    };
    train.validate().map_err(|e| Error::Config(e.to_string()))?;

    let output = PathBuf::from(kv.require("output")?);
    let plot = kv.get("plot").map(PathBuf::from);

    let unknown = kv.unknown_keys();
    if !unknown.is_empty() {
        return Err(Error::Config(format!("unknown keys: {}", unknown.join(", "))));
    }
    Ok(ExperimentConfig {
        dataset,
        noise,
        model,
        train,
        output,
        plot,
    })
}

/// Seed precedence: explicit flag, then `SYMLOSS_SEED`, then config value.
pub fn resolve_seed(flag: Option<u64>, config_seed: u64) -> u64 {
    if let Some(s) = flag {
        return s;
    }
    if let Ok(env) = std::env::var("SYMLOSS_SEED") {
        if let Ok(s) = env.parse::<u64>() {
            return s;
        }
    }
    config_seed
}

#[derive(Serialize)]
struct ReportDocument<'a> {
    schema: &'a str,
    reports: &'a [CheckReport],
}

fn write_json(path: &Path, value: &impl Serialize) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)
        .map_err(|e| Error::Config(format!("serialization failed: {e}")))?;
    text.push('\n');
    std::fs::write(path, text)?;
    Ok(())
}

/// `symcheck`: run the symmetry and permutation-invariance checks on the
/// named loss. Exit 0 when every check passes, 1 otherwise.
pub fn cmd_symcheck(
    spec: &LossSpec,
    classes: usize,
    probes: usize,
    box_radius: f64,
    seed: u64,
    out: Option<&Path>,
) -> Result<(i32, Vec<CheckReport>)> {
    let loss = loss_by_name(spec, classes)?;
    let reports = vec![
        check_symmetry(&loss, probes, box_radius, 1e-8, seed),
        check_permutation_invariance(&loss, probes, 1e-10, seed),
    ];
    for rep in &reports {
        println!("{}", rep.summary_line());
    }
    if let Some(path) = out {
        write_json(
            path,
            &ReportDocument {
                schema: REPORT_SCHEMA,
                reports: &reports,
            },
        )?;
    }
    let code = if reports.iter().all(|r| r.passed) { 0 } else { 1 };
    Ok((code, reports))
}

/// `train`: corrupt, train, evaluate, and write the record JSON. Exit 0 on
/// success, 3 on a numerical abort (the partial record is still written).
pub fn cmd_train(config_path: &Path, seed_flag: Option<u64>) -> Result<(i32, TrainRecord)> {
    let text = std::fs::read_to_string(config_path)?;
    let mut config = parse_config(&text)?;
    config.train.seed = resolve_seed(seed_flag, config.train.seed);

    let (clean_train, test) = match &config.dataset {
        DataSource::Blobs(spec) => gaussian_blobs(spec)?,
        DataSource::Csv { train, test } => {
            let tr = load_classification_csv(train)?;
            let te = load_classification_csv(test)?;
            if te.dim() != tr.dim() {
                return Err(Error::Config("train/test csv dimension mismatch".into()));
            }
            // Align the class counts (labels may not cover every class in
            // both splits).
            let c = tr.num_classes.max(te.num_classes);
            (
                LabeledDataset::new(tr.features, tr.labels, c)?,
                LabeledDataset::new(te.features, te.labels, c)?,
            )
        }
    };

    let noisy_train = match &config.noise {
        NoiseSpec::None => clean_train,
        NoiseSpec::Symmetric { eta } => {
            let model = NoiseModel::symmetric(*eta)?;
            let mut rng = Prng::from_seed(derive_seed(config.train.seed, NOISE_STREAM));
            corrupt_labels(&clean_train, &model, &mut rng)?
        }
        NoiseSpec::Asymmetric { transition } => {
            let model = NoiseModel::asymmetric(load_transition_csv(transition)?)?;
            let mut rng = Prng::from_seed(derive_seed(config.train.seed, NOISE_STREAM));
            corrupt_labels(&clean_train, &model, &mut rng)?
        }
    };

    let mut dims = vec![noisy_train.dim()];
    dims.extend_from_slice(&config.model.hidden);
    dims.push(noisy_train.num_classes);
    let mut model = MlpModel::init(
        &dims,
        config.model.activation,
        config.model.bias,
        &mut Prng::from_seed(derive_seed(config.train.seed, INIT_STREAM)),
    )?;

    let (code, record) = match train(&mut model, &noisy_train, &test, &config.train) {
        Ok(record) => (0, record),
        Err(Error::TrainAbort { message, record }) => {
            eprintln!("training aborted: {message}");
            (3, *record)
        }
        Err(e) => return Err(e),
    };

    std::fs::write(&config.output, record.to_json())?;
    if let Some(plot) = &config.plot {
        let mut csv = String::from("epoch,mean_train_loss,train_accuracy,test_accuracy\n");
        for e in &record.epochs {
            csv.push_str(&format!(
                "{},{},{},{}\n",
                e.epoch, e.mean_train_loss, e.train_accuracy, e.test_accuracy
            ));
        }
        std::fs::write(plot, csv)?;
    }
    if let Some(last) = record.epochs.last() {
        println!("final clean test accuracy: {:.4}", last.test_accuracy);
    } else {
        println!("no epochs trained");
    }
    Ok((code, record))
}

#[derive(Debug, Serialize)]
pub struct CentroidSummary {
    pub schema: String,
    pub classes: usize,
    pub feature_dim: usize,
    pub mu_frobenius_norm: f64,
    pub kernel_alignment: f64,
    pub alignment_identity_residual: f64,
    pub trace_identity_residual: f64,
    pub radius: f64,
    pub degenerate: bool,
    pub centroid_csv: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub solution_csv: Option<String>,
}

/// `centroid`: compute the unhinged data centroid of a classification CSV,
/// the closed-form norm-constrained solution, the trace-identity residual,
/// and the linear-kernel alignment. Exit 4 on a degenerate (zero)
/// centroid.
pub fn cmd_centroid(
    dataset_path: &Path,
    radius: f64,
    with_bias: bool,
    out_dir: &Path,
) -> Result<(i32, CentroidSummary)> {
    let data = load_classification_csv(dataset_path)?;
    std::fs::create_dir_all(out_dir)?;
    let feature_map: fn(&[f64]) -> Vec<f64> = if with_bias {
        bias_features
    } else {
        identity_features
    };
    let cen = compute_centroid(&data, feature_map)?;

    let mu_norm = cen.mu.frobenius_norm();
    let align = crate::centroid::kernel_alignment(&data, |a, b| {
        dot(&feature_map(a), &feature_map(b))
    });
    let alignment_residual = (align - mu_norm * mu_norm).abs();

    // Probe the trace identity at a fixed pseudo-random W.
    let mut rng = Prng::from_seed(0);
    let mut probe = Matrix::zeros(cen.mu.rows(), cen.mu.cols());
    for v in probe.data_mut() {
        *v = rng.uniform_in(-1.0, 1.0);
    }
    let trace_residual = (empirical_unhinged_loss_via_trace(&probe, &cen)?
        - empirical_unhinged_loss_direct(&probe, &data, feature_map)?)
    .abs();

    let centroid_csv = out_dir.join("centroid.csv");
    std::fs::write(&centroid_csv, centroid_to_csv(&cen))?;

    let (degenerate, solution_csv) = match closed_form_linear_solution(&cen, radius) {
        Ok(w) => {
            let path = out_dir.join("solution.csv");
            std::fs::write(
                &path,
                centroid_to_csv(&crate::centroid::UnhingedCentroid { mu: w }),
            )?;
            (false, Some(path.display().to_string()))
        }
        Err(Error::Degenerate(msg)) => {
            eprintln!("degenerate: {msg}");
            (true, None)
        }
        Err(e) => return Err(e),
    };

    let summary = CentroidSummary {
        schema: REPORT_SCHEMA.into(),
        classes: data.num_classes,
        feature_dim: cen.mu.cols(),
        mu_frobenius_norm: mu_norm,
        kernel_alignment: align,
        alignment_identity_residual: alignment_residual,
        trace_identity_residual: trace_residual,
        radius,
        degenerate,
        centroid_csv: centroid_csv.display().to_string(),
        solution_csv,
    };
    write_json(&out_dir.join("summary.json"), &summary)?;
    println!(
        "centroid: ||mu||_F = {mu_norm:.6e}, alignment = {align:.6e}, trace residual = {trace_residual:.3e}"
    );
    Ok((if degenerate { 4 } else { 0 }, summary))
}

/// Density selection for `regress`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DensityArg {
    Uniform { half_width: f64 },
    Gaussian { mean: f64, sigma: f64 },
}

impl DensityArg {
    pub fn build(&self, nodes: usize) -> Result<CorruptionDensity> {
        match *self {
            DensityArg::Uniform { half_width } => {
                CorruptionDensity::uniform_with_nodes(half_width, nodes)
            }
            DensityArg::Gaussian { mean, sigma } => {
                CorruptionDensity::gaussian_with_nodes(mean, sigma, nodes)
            }
        }
    }
}

#[derive(Debug, Serialize)]
pub struct RegressSummary {
    pub schema: String,
    pub loss_kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
    pub lambda: f64,
    pub weights: Vec<f64>,
    pub stationarity_residual: f64,
    pub symmetry_check: CheckReport,
}

/// `regress`: closed-form regularized linear solution for the regression
/// unhinged loss (or its clipped variant), with a stationarity residual
/// and the linear-symmetry check for the chosen density. Exit 1 when the
/// symmetry check fails.
pub fn cmd_regress(
    dataset_path: &Path,
    kind: RegressionLossKind,
    lambda: f64,
    density: DensityArg,
    nodes: usize,
    out: Option<&Path>,
) -> Result<(i32, RegressSummary)> {
    let (features, targets) = load_regression_csv(dataset_path)?;
    let q = density.build(nodes)?;
    let weights =
        closed_form_regression_weights(&features, &targets, identity_features, lambda, kind)?;
    let residual =
        stationarity_residual(&weights, &features, &targets, identity_features, lambda, kind)?;
    let symmetry_check = match kind {
        RegressionLossKind::Unhinged => check_linear_symmetry(|y| -y, &q),
        RegressionLossKind::Clipped { delta } => check_linear_symmetry(|y| -clip(y, delta), &q),
    };
    let (kind_name, delta) = match kind {
        RegressionLossKind::Unhinged => ("unhinged".to_string(), None),
        RegressionLossKind::Clipped { delta } => ("clipped".to_string(), Some(delta)),
    };
    let summary = RegressSummary {
        schema: REPORT_SCHEMA.into(),
        loss_kind: kind_name,
        delta,
        lambda,
        weights,
        stationarity_residual: residual,
        symmetry_check,
    };
    if let Some(path) = out {
        write_json(path, &summary)?;
    }
    println!(
        "weights: {:?}, stationarity residual: {:.3e}, symmetry: {}",
        summary.weights,
        summary.stationarity_residual,
        if summary.symmetry_check.passed { "pass" } else { "fail" }
    );
    Ok((if summary.symmetry_check.passed { 0 } else { 1 }, summary))
}
