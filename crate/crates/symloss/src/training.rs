//! A small deterministic feedforward classifier and its training protocol:
//! SGD with momentum, classic L2 weight decay, global gradient-norm
//! clipping, cosine/step learning-rate schedules, and score-vector
//! normalization (Euclidean or batch statistics) ahead of the loss.
//!
//! Determinism contract: given an identical config (including its seed),
//! `train` produces a bit-identical [`TrainRecord`]. All reductions run in
//! index order and per-epoch shuffles derive from the run seed plus the
//! epoch index.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::losses::{loss_by_name, LossFunction, LossSpec};
use crate::noise::LabeledDataset;
use crate::numerics::{derive_seed, dot, norm2, Matrix, Prng};

/// Nonlinearity applied between layers, never after the last.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Activation {
    Relu,
    Tanh,
    Identity,
}

impl Activation {
    fn apply(self, x: f64) -> f64 {
        match self {
            Activation::Relu => x.max(0.0),
            Activation::Tanh => x.tanh(),
            Activation::Identity => x,
        }
    }

    // Derivative as a function of the pre-activation. relu'(0) = 0.
    fn derivative(self, x: f64) -> f64 {
        match self {
            Activation::Relu => {
                if x > 0.0 {
                    1.0
                } else {
                    0.0
                }
            }
            Activation::Tanh => {
                let t = x.tanh();
                1.0 - t * t
            }
            Activation::Identity => 1.0,
        }
    }
}

/// Feedforward network `d -> h_1 -> ... -> C` with optional biases.
#[derive(Debug, Clone, PartialEq)]
pub struct MlpModel {
    layer_dims: Vec<usize>,
    weights: Vec<Matrix>,
    biases: Option<Vec<Vec<f64>>>,
    activation: Activation,
}

impl MlpModel {
    /// All-zero parameters.
    pub fn zeros(layer_dims: &[usize], activation: Activation, with_bias: bool) -> Result<Self> {
        if layer_dims.len() < 2 {
            return Err(Error::InvalidArgument(
                "model needs at least an input and an output dimension".into(),
            ));
        }
        if layer_dims.contains(&0) {
            return Err(Error::InvalidArgument("zero-width layer".into()));
        }
        let weights = layer_dims
            .windows(2)
            .map(|w| Matrix::zeros(w[1], w[0]))
            .collect();
        let biases = with_bias.then(|| layer_dims[1..].iter().map(|&d| vec![0.0; d]).collect());
        Ok(MlpModel {
            layer_dims: layer_dims.to_vec(),
            weights,
            biases,
            activation,
        })
    }

    /// Seeded uniform initialization in `+-sqrt(6 / (fan_in + fan_out))`
    /// per layer; biases start at zero.
    pub fn init(
        layer_dims: &[usize],
        activation: Activation,
        with_bias: bool,
        rng: &mut Prng,
    ) -> Result<Self> {
        let mut model = MlpModel::zeros(layer_dims, activation, with_bias)?;
        for w in &mut model.weights {
            let bound = (6.0 / (w.cols() + w.rows()) as f64).sqrt();
            for v in w.data_mut() {
                *v = rng.uniform_in(-bound, bound);
            }
        }
        Ok(model)
    }

    pub fn layer_dims(&self) -> &[usize] {
        &self.layer_dims
    }

    pub fn num_layers(&self) -> usize {
        self.weights.len()
    }

    pub fn input_dim(&self) -> usize {
        self.layer_dims[0]
    }

    pub fn output_dim(&self) -> usize {
        *self.layer_dims.last().unwrap()
    }

    pub fn activation(&self) -> Activation {
        self.activation
    }

    pub fn weight(&self, layer: usize) -> &Matrix {
        &self.weights[layer]
    }

    pub fn weight_mut(&mut self, layer: usize) -> &mut Matrix {
        &mut self.weights[layer]
    }

    pub fn bias_mut(&mut self, layer: usize) -> Option<&mut Vec<f64>> {
        self.biases.as_mut().map(|b| &mut b[layer])
    }

    /// Raw score vector `z = f(x)`, before any normalization.
    pub fn forward(&self, x: &[f64]) -> Result<Vec<f64>> {
        let cache = self.forward_cached(x)?;
        Ok(cache.activations.last().unwrap().clone())
    }

    fn forward_cached(&self, x: &[f64]) -> Result<ForwardCache> {
        if x.len() != self.input_dim() {
            return Err(Error::DimensionMismatch(format!(
                "input has length {}, model expects {}",
                x.len(),
                self.input_dim()
            )));
        }
        let nl = self.num_layers();
        let mut activations = Vec::with_capacity(nl + 1);
        let mut pre_activations = Vec::with_capacity(nl);
        activations.push(x.to_vec());
        for l in 0..nl {
            let mut pre = self.weights[l].matvec(activations.last().unwrap())?;
            if let Some(biases) = &self.biases {
                for (p, b) in pre.iter_mut().zip(&biases[l]) {
                    *p += b;
                }
            }
            let next = if l + 1 == nl {
                pre.clone()
            } else {
                pre.iter().map(|&v| self.activation.apply(v)).collect()
            };
            pre_activations.push(pre);
            activations.push(next);
        }
        Ok(ForwardCache {
            activations,
            pre_activations,
        })
    }

    /// Layer count and the product of per-layer Frobenius norms of the
    /// weight matrices (an upper bound on the product of spectral norms;
    /// biases excluded).
    pub fn get_norm_stats(&self) -> (usize, f64) {
        let r = self.weights.iter().map(Matrix::frobenius_norm).product();
        (self.num_layers(), r)
    }

    fn apply_update(&mut self, direction: &ParamGrads, lr: f64) {
        for (w, g) in self.weights.iter_mut().zip(&direction.weights) {
            for (wv, gv) in w.data_mut().iter_mut().zip(g.data()) {
                *wv -= lr * gv;
            }
        }
        if let (Some(biases), Some(gb)) = (&mut self.biases, &direction.biases) {
            for (b, g) in biases.iter_mut().zip(gb) {
                for (bv, gv) in b.iter_mut().zip(g) {
                    *bv -= lr * gv;
                }
            }
        }
    }
}

struct ForwardCache {
    /// `activations[0] = x`, `activations[l+1]` the output of layer `l`;
    /// the last entry is the raw score vector.
    activations: Vec<Vec<f64>>,
    pre_activations: Vec<Vec<f64>>,
}

/// Per-parameter gradient (or momentum) buffers, shaped like the model.
#[derive(Debug, Clone)]
pub struct ParamGrads {
    pub weights: Vec<Matrix>,
    pub biases: Option<Vec<Vec<f64>>>,
}

impl ParamGrads {
    pub fn zeros_like(model: &MlpModel) -> Self {
        ParamGrads {
            weights: model
                .weights
                .iter()
                .map(|w| Matrix::zeros(w.rows(), w.cols()))
                .collect(),
            biases: model
                .biases
                .as_ref()
                .map(|bs| bs.iter().map(|b| vec![0.0; b.len()]).collect()),
        }
    }

    pub fn global_norm(&self) -> f64 {
        let mut acc = 0.0;
        for w in &self.weights {
            for v in w.data() {
                acc += v * v;
            }
        }
        if let Some(biases) = &self.biases {
            for b in biases {
                for v in b {
                    acc += v * v;
                }
            }
        }
        acc.sqrt()
    }

    pub fn scale(&mut self, s: f64) {
        for w in &mut self.weights {
            w.scale(s);
        }
        if let Some(biases) = &mut self.biases {
            for b in biases {
                for v in b.iter_mut() {
                    *v *= s;
                }
            }
        }
    }

    fn add_scaled(&mut self, other: &ParamGrads, s: f64) {
        for (a, b) in self.weights.iter_mut().zip(&other.weights) {
            for (av, bv) in a.data_mut().iter_mut().zip(b.data()) {
                *av += s * bv;
            }
        }
        if let (Some(ab), Some(bb)) = (&mut self.biases, &other.biases) {
            for (a, b) in ab.iter_mut().zip(bb) {
                for (av, bv) in a.iter_mut().zip(b) {
                    *av += s * bv;
                }
            }
        }
    }

    /// Classic L2 weight decay: `grad += wd * param` (weights only;
    /// biases are not decayed).
    fn add_weight_decay(&mut self, model: &MlpModel, wd: f64) {
        for (g, w) in self.weights.iter_mut().zip(&model.weights) {
            for (gv, wv) in g.data_mut().iter_mut().zip(w.data()) {
                *gv += wd * wv;
            }
        }
    }

    fn is_finite(&self) -> bool {
        self.weights.iter().all(|w| w.data().iter().all(|v| v.is_finite()))
            && self
                .biases
                .as_ref()
                .is_none_or(|bs| bs.iter().all(|b| b.iter().all(|v| v.is_finite())))
    }
}

/// Normalization applied to the raw score vector before the loss.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ScoreNorm {
    None,
    Euclidean { epsilon: f64 },
    /// Standardize each of the C score coordinates by mini-batch mean and
    /// (biased) variance with epsilon 1e-5 and no learned affine map;
    /// evaluation uses running statistics accumulated with momentum 0.1.
    BatchStats,
}

impl ScoreNorm {
    pub fn euclidean() -> Self {
        ScoreNorm::Euclidean { epsilon: 1e-5 }
    }
}

/// Running statistics for batch-stats normalization.
#[derive(Debug, Clone, PartialEq)]
pub struct BatchStatsState {
    pub running_mean: Vec<f64>,
    pub running_var: Vec<f64>,
    pub momentum: f64,
    pub epsilon: f64,
}

impl BatchStatsState {
    pub fn new(num_classes: usize) -> Self {
        BatchStatsState {
            running_mean: vec![0.0; num_classes],
            running_var: vec![1.0; num_classes],
            momentum: 0.1,
            epsilon: 1e-5,
        }
    }
}

/// Learning-rate schedule, applied per epoch index.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Schedule {
    Constant,
    /// `lr(t) = eta_min + (lr0 - eta_min) * (1 + cos(pi t / t_max)) / 2`.
    Cosine { t_max: usize, eta_min: f64 },
    /// `lr(t) = lr0 * gamma^(floor(t / step_size))`.
    Step { step_size: usize, gamma: f64 },
}

pub fn schedule_lr(schedule: &Schedule, lr0: f64, epoch: usize) -> f64 {
    match schedule {
        Schedule::Constant => lr0,
        Schedule::Cosine { t_max, eta_min } => {
            let t = epoch as f64 / (*t_max).max(1) as f64;
            eta_min + (lr0 - eta_min) * (1.0 + (std::f64::consts::PI * t).cos()) / 2.0
        }
        Schedule::Step { step_size, gamma } => {
            lr0 * gamma.powi((epoch / (*step_size).max(1)) as i32)
        }
    }
}

/// Full training configuration; serializes into the record snapshot.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainConfig {
    pub epochs: usize,
    pub batch_size: usize,
    pub lr: f64,
    pub momentum: f64,
    pub weight_decay: f64,
    pub grad_clip: f64,
    pub schedule: Schedule,
    pub score_norm: ScoreNorm,
    pub seed: u64,
    pub loss: LossSpec,
}

impl TrainConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.lr > 0.0 && self.lr.is_finite()) {
            return Err(Error::InvalidParameter(format!("lr must be positive, got {}", self.lr)));
        }
        if !(0.0..1.0).contains(&self.momentum) {
            return Err(Error::InvalidParameter(format!(
                "momentum must lie in [0, 1), got {}",
                self.momentum
            )));
        }
        if self.weight_decay < 0.0 {
            return Err(Error::InvalidParameter("weight_decay must be >= 0".into()));
        }
        if !(self.grad_clip > 0.0 && self.grad_clip.is_finite()) {
            return Err(Error::InvalidParameter(
                "grad_clip must be positive and finite (use a large value to disable)".into(),
            ));
        }
        if self.batch_size == 0 {
            return Err(Error::InvalidParameter("batch_size must be >= 1".into()));
        }
        Ok(())
    }
}

/// Per-epoch metrics.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EpochStats {
    pub epoch: usize,
    pub mean_train_loss: f64,
    pub train_accuracy: f64,
    pub test_accuracy: f64,
}

/// Diagnostics gathered during training but not serialized with the record.
#[derive(Debug, Clone, Default)]
pub struct TrainDiagnostics {
    /// Largest global gradient norm observed after clipping.
    pub max_postclip_grad_norm: f64,
    /// Largest Euclidean norm of a normalized score vector fed to the loss.
    pub max_normalized_score_norm: f64,
}

/// Training log: schema tag, config snapshot, and ordered per-epoch
/// metrics. Serializes to deterministic JSON.
#[derive(Debug, Clone, Serialize)]
pub struct TrainRecord {
    pub schema: String,
    pub config: TrainConfig,
    pub epochs: Vec<EpochStats>,
    #[serde(skip)]
    pub diagnostics: TrainDiagnostics,
}

pub const RECORD_SCHEMA: &str = "symloss-train-record/1";

impl TrainRecord {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("record serializes");
        s.push('\n');
        s
    }
}

/// Normalize one raw score vector in evaluation mode.
fn normalize_eval(z: &[f64], norm: &ScoreNorm, bn: Option<&BatchStatsState>) -> Vec<f64> {
    match norm {
        ScoreNorm::None => z.to_vec(),
        ScoreNorm::Euclidean { epsilon } => {
            let n = norm2(z).max(*epsilon);
            z.iter().map(|&v| v / n).collect()
        }
        ScoreNorm::BatchStats => {
            let state = bn.expect("batch-stats normalization needs running statistics");
            z.iter()
                .enumerate()
                .map(|(c, &v)| (v - state.running_mean[c]) / (state.running_var[c] + state.epsilon).sqrt())
                .collect()
        }
    }
}

/// Gradients of `loss(normalize(forward(x)), y)` with respect to every
/// parameter of the model, for the per-example normalizations. Returns the
/// loss value alongside. Batch-stats normalization couples the batch and is
/// served by [`backward_batch`].
pub fn backward(
    model: &MlpModel,
    x: &[f64],
    y: usize,
    loss: &LossFunction,
    score_norm: &ScoreNorm,
) -> Result<(f64, ParamGrads)> {
    if matches!(score_norm, ScoreNorm::BatchStats) {
        return Err(Error::InvalidArgument(
            "batch-stats normalization is defined per mini-batch; use backward_batch".into(),
        ));
    }
    let cache = model.forward_cached(x)?;
    let z = cache.activations.last().unwrap();
    let (value, dldz) = loss_pullback_per_example(z, y, loss, score_norm)?;
    let mut grads = ParamGrads::zeros_like(model);
    accumulate_example(model, &cache, &dldz, 1.0, &mut grads);
    Ok((value, grads))
}

/// Loss value and gradient with respect to the raw scores for the
/// per-example normalization paths.
fn loss_pullback_per_example(
    z: &[f64],
    y: usize,
    loss: &LossFunction,
    score_norm: &ScoreNorm,
) -> Result<(f64, Vec<f64>)> {
    match score_norm {
        ScoreNorm::None => Ok((loss.value(z, y)?, loss.gradient(z, y)?)),
        ScoreNorm::Euclidean { epsilon } => {
            let raw = norm2(z);
            let n = raw.max(*epsilon);
            let zhat: Vec<f64> = z.iter().map(|&v| v / n).collect();
            let value = loss.value(&zhat, y)?;
            let g = loss.gradient(&zhat, y)?;
            let dldz = if raw > *epsilon {
                let gz = dot(&g, z);
                let n3 = n * n * n;
                z.iter()
                    .zip(&g)
                    .map(|(&zj, &gj)| gj / n - zj * gz / n3)
                    .collect()
            } else {
                g.iter().map(|&gj| gj / epsilon).collect()
            };
            Ok((value, dldz))
        }
        ScoreNorm::BatchStats => unreachable!("handled by backward_batch"),
    }
}

/// Backpropagate one example's raw-score gradient (scaled by `weight`)
/// into the parameter accumulators.
fn accumulate_example(
    model: &MlpModel,
    cache: &ForwardCache,
    dldz: &[f64],
    weight: f64,
    grads: &mut ParamGrads,
) {
    let nl = model.num_layers();
    let mut delta: Vec<f64> = dldz.iter().map(|&v| v * weight).collect();
    for l in (0..nl).rev() {
        let input = &cache.activations[l];
        let gw = &mut grads.weights[l];
        for (i, &di) in delta.iter().enumerate() {
            let row = gw.row_mut(i);
            for (j, &aj) in input.iter().enumerate() {
                row[j] += di * aj;
            }
        }
        if let Some(gb) = &mut grads.biases {
            for (b, &d) in gb[l].iter_mut().zip(&delta) {
                *b += d;
            }
        }
        if l > 0 {
            let w = &model.weights[l];
            let mut prev = vec![0.0; w.cols()];
            for (i, &di) in delta.iter().enumerate() {
                let row = w.row(i);
                for (j, p) in prev.iter_mut().enumerate() {
                    *p += row[j] * di;
                }
            }
            let pre = &cache.pre_activations[l - 1];
            for (p, &x) in prev.iter_mut().zip(pre) {
                *p *= model.activation.derivative(x);
            }
            delta = prev;
        }
    }
}

/// Mean loss and mean parameter gradient over a mini-batch, handling all
/// three normalization modes. In batch-stats mode the batch statistics are
/// computed here and `bn_state`'s running statistics are updated.
///
/// Also reports the largest normalized-score norm seen in the batch.
pub fn backward_batch(
    model: &MlpModel,
    data: &LabeledDataset,
    indices: &[usize],
    loss: &LossFunction,
    score_norm: &ScoreNorm,
    mut bn_state: Option<&mut BatchStatsState>,
) -> Result<(f64, ParamGrads, f64)> {
    if indices.is_empty() {
        return Err(Error::InvalidArgument("empty mini-batch".into()));
    }
    let b = indices.len() as f64;
    let inv_b = 1.0 / b;
    let mut grads = ParamGrads::zeros_like(model);
    let mut mean_loss = 0.0;
    let mut max_zhat_norm: f64 = 0.0;

    match score_norm {
        ScoreNorm::None | ScoreNorm::Euclidean { .. } => {
            for &idx in indices {
                let x = data.features.row(idx);
                let y = data.labels[idx];
                let cache = model.forward_cached(x)?;
                let z = cache.activations.last().unwrap();
                let (value, dldz) = loss_pullback_per_example(z, y, loss, score_norm)?;
                let zhat_norm = match score_norm {
                    ScoreNorm::Euclidean { epsilon } => {
                        let raw = norm2(z);
                        raw / raw.max(*epsilon)
                    }
                    _ => norm2(z),
                };
                max_zhat_norm = max_zhat_norm.max(zhat_norm);
                mean_loss += value * inv_b;
                accumulate_example(model, &cache, &dldz, inv_b, &mut grads);
            }
        }
        ScoreNorm::BatchStats => {
            let state = bn_state
                .as_mut()
                .ok_or_else(|| Error::InvalidArgument("batch-stats normalization needs state".into()))?;
            let c = model.output_dim();
            let caches: Vec<ForwardCache> = indices
                .iter()
                .map(|&idx| model.forward_cached(data.features.row(idx)))
                .collect::<Result<_>>()?;
            // Mini-batch mean and biased variance per score coordinate.
            let mut mean = vec![0.0; c];
            for cache in &caches {
                for (m, &v) in mean.iter_mut().zip(cache.activations.last().unwrap()) {
                    *m += v * inv_b;
                }
            }
            let mut var = vec![0.0; c];
            for cache in &caches {
                for (k, &v) in cache.activations.last().unwrap().iter().enumerate() {
                    let d = v - mean[k];
                    var[k] += d * d * inv_b;
                }
            }
            let inv_std: Vec<f64> = var.iter().map(|&v| 1.0 / (v + state.epsilon).sqrt()).collect();
            let zhats: Vec<Vec<f64>> = caches
                .iter()
                .map(|cache| {
                    cache
                        .activations
                        .last()
                        .unwrap()
                        .iter()
                        .enumerate()
                        .map(|(k, &v)| (v - mean[k]) * inv_std[k])
                        .collect()
                })
                .collect();
            // dJ/dzhat with the 1/B of the batch mean folded in.
            let mut gs = Vec::with_capacity(indices.len());
            for (zhat, &idx) in zhats.iter().zip(indices) {
                let y = data.labels[idx];
                mean_loss += loss.value(zhat, y)? * inv_b;
                max_zhat_norm = max_zhat_norm.max(norm2(zhat));
                let mut g = loss.gradient(zhat, y)?;
                for v in &mut g {
                    *v *= inv_b;
                }
                gs.push(g);
            }
            // Standard batch-norm backward per coordinate.
            let mut g_mean = vec![0.0; c];
            let mut gz_mean = vec![0.0; c];
            for (g, zhat) in gs.iter().zip(&zhats) {
                for k in 0..c {
                    g_mean[k] += g[k] * inv_b;
                    gz_mean[k] += g[k] * zhat[k] * inv_b;
                }
            }
            for ((g, zhat), cache) in gs.iter().zip(&zhats).zip(&caches) {
                // dJ/dz for this example; the 1/B of the batch mean is
                // already inside g, g_mean and gz_mean.
                let dldz: Vec<f64> = (0..c)
                    .map(|k| inv_std[k] * (g[k] - g_mean[k] - zhat[k] * gz_mean[k]))
                    .collect();
                accumulate_example(model, cache, &dldz, 1.0, &mut grads);
            }
            // Update running statistics (biased variance, momentum 0.1).
            for k in 0..c {
                state.running_mean[k] =
                    (1.0 - state.momentum) * state.running_mean[k] + state.momentum * mean[k];
                state.running_var[k] =
                    (1.0 - state.momentum) * state.running_var[k] + state.momentum * var[k];
            }
        }
    }
    Ok((mean_loss, grads, max_zhat_norm))
}

/// Fraction of examples whose argmax (normalized) score equals the label;
/// ties break toward the lowest class index.
pub fn evaluate_accuracy(
    model: &MlpModel,
    data: &LabeledDataset,
    score_norm: &ScoreNorm,
    bn: Option<&BatchStatsState>,
) -> Result<f64> {
    let mut correct = 0usize;
    for i in 0..data.len() {
        let z = model.forward(data.features.row(i))?;
        let zhat = normalize_eval(&z, score_norm, bn);
        let mut best = 0usize;
        for (k, &v) in zhat.iter().enumerate() {
            if v > zhat[best] {
                best = k;
            }
        }
        if best == data.labels[i] {
            correct += 1;
        }
    }
    Ok(correct as f64 / data.len() as f64)
}

/// Mini-batch SGD with momentum over the configured number of epochs.
///
/// Per epoch: one seeded shuffle, then for each batch the mean gradient,
/// plus `wd * param`, clipped to `grad_clip` in global norm, folded into
/// the momentum buffer `v = momentum v + g` and applied as
/// `param -= lr(epoch) * v`. A non-finite loss aborts with the partial
/// record attached to the error.
pub fn train(
    model: &mut MlpModel,
    train_data: &LabeledDataset,
    test_data: &LabeledDataset,
    cfg: &TrainConfig,
) -> Result<TrainRecord> {
    cfg.validate()?;
    if train_data.dim() != test_data.dim() || train_data.num_classes != test_data.num_classes {
        return Err(Error::DimensionMismatch(
            "train and test datasets must share dimension and class count".into(),
        ));
    }
    if model.input_dim() != train_data.dim() || model.output_dim() != train_data.num_classes {
        return Err(Error::DimensionMismatch(format!(
            "model {:?} does not fit data with d={} C={}",
            model.layer_dims(),
            train_data.dim(),
            train_data.num_classes
        )));
    }
    let loss = loss_by_name(&cfg.loss, train_data.num_classes)?;
    let mut record = TrainRecord {
        schema: RECORD_SCHEMA.into(),
        config: cfg.clone(),
        epochs: Vec::with_capacity(cfg.epochs),
        diagnostics: TrainDiagnostics::default(),
    };
    let mut velocity = ParamGrads::zeros_like(model);
    let mut bn_state = matches!(cfg.score_norm, ScoreNorm::BatchStats)
        .then(|| BatchStatsState::new(train_data.num_classes));
    let n = train_data.len();

    for epoch in 0..cfg.epochs {
        let lr_t = schedule_lr(&cfg.schedule, cfg.lr, epoch);
        let mut order: Vec<usize> = (0..n).collect();
        Prng::from_seed(derive_seed(cfg.seed, SHUFFLE_STREAM_BASE + epoch as u64))
            .shuffle(&mut order);
        let mut epoch_loss = 0.0;
        for batch in order.chunks(cfg.batch_size) {
            let (mean_loss, mut grads, zhat_norm) = backward_batch(
                model,
                train_data,
                batch,
                &loss,
                &cfg.score_norm,
                bn_state.as_mut(),
            )?;
            record.diagnostics.max_normalized_score_norm = record
                .diagnostics
                .max_normalized_score_norm
                .max(zhat_norm);
            if !mean_loss.is_finite() || !grads.is_finite() {
                return Err(Error::TrainAbort {
                    message: format!("non-finite loss or gradient at epoch {epoch}"),
                    record: Box::new(record),
                });
            }
            epoch_loss += mean_loss * batch.len() as f64;
            grads.add_weight_decay(model, cfg.weight_decay);
            let gnorm = grads.global_norm();
            if gnorm > cfg.grad_clip {
                grads.scale(cfg.grad_clip / gnorm);
            }
            record.diagnostics.max_postclip_grad_norm = record
                .diagnostics
                .max_postclip_grad_norm
                .max(grads.global_norm());
            velocity.scale(cfg.momentum);
            velocity.add_scaled(&grads, 1.0);
            model.apply_update(&velocity, lr_t);
        }
        let train_accuracy =
            evaluate_accuracy(model, train_data, &cfg.score_norm, bn_state.as_ref())?;
        let test_accuracy =
            evaluate_accuracy(model, test_data, &cfg.score_norm, bn_state.as_ref())?;
        record.epochs.push(EpochStats {
            epoch,
            mean_train_loss: epoch_loss / n as f64,
            train_accuracy,
            test_accuracy,
        });
    }
    Ok(record)
}

// Epoch shuffles draw from stream ids at and above this base, keeping them
// independent of the init and noise streams (which use low stream ids).
const SHUFFLE_STREAM_BASE: u64 = 0x100;
