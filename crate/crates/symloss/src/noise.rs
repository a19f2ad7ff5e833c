//! Label-corruption machinery: symmetric and asymmetric noise injection,
//! and an exhaustive oracle for the corrupted-risk decomposition
//!
//! ```text
//! L_corrupted(h) = (p/C) E[ sum_k L(h(x), k) ] + (1 - p) L_clean(h)
//! ```
//!
//! which holds for every loss; symmetric losses make the first term
//! constant, so corrupted and clean risks share their minimizers.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::losses::LossFunction;
use crate::numerics::{Matrix, Prng};

/// Feature matrix with integer labels in `{0..C-1}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LabeledDataset {
    pub features: Matrix,
    pub labels: Vec<usize>,
    pub num_classes: usize,
}

impl LabeledDataset {
    pub fn new(features: Matrix, labels: Vec<usize>, num_classes: usize) -> Result<Self> {
        if features.rows() != labels.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} feature rows vs {} labels",
                features.rows(),
                labels.len()
            )));
        }
        if labels.is_empty() {
            return Err(Error::InvalidArgument("dataset must be nonempty".into()));
        }
        if let Some(&bad) = labels.iter().find(|&&l| l >= num_classes) {
            return Err(Error::InvalidLabel {
                label: bad,
                num_classes,
            });
        }
        Ok(LabeledDataset {
            features,
            labels,
            num_classes,
        })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.features.cols()
    }
}

/// Label-noise model: symmetric with rate `eta`, or asymmetric with a
/// row-stochastic class-transition matrix.
#[derive(Debug, Clone, PartialEq)]
pub enum NoiseModel {
    /// Each label flips to a uniformly-chosen different label with
    /// probability `eta`. Requires `eta < (C-1)/C`.
    Symmetric { eta: f64 },
    /// Label `j` is resampled from row `j` of the transition matrix.
    Asymmetric { transition: Matrix },
}

impl NoiseModel {
    pub fn symmetric(eta: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&eta) {
            return Err(Error::InvalidParameter(format!(
                "symmetric noise rate eta must lie in [0, 1), got {eta}"
            )));
        }
        Ok(NoiseModel::Symmetric { eta })
    }

    pub fn asymmetric(transition: Matrix) -> Result<Self> {
        validate_transition(&transition)?;
        Ok(NoiseModel::Asymmetric { transition })
    }
}

fn validate_transition(t: &Matrix) -> Result<()> {
    if t.rows() != t.cols() {
        return Err(Error::DimensionMismatch(format!(
            "transition matrix must be square, got {}x{}",
            t.rows(),
            t.cols()
        )));
    }
    for i in 0..t.rows() {
        let row = t.row(i);
        if row.iter().any(|&v| v < 0.0 || !v.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "transition row {i} has negative or non-finite entries"
            )));
        }
        let sum: f64 = row.iter().sum();
        if (sum - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidParameter(format!(
                "transition row {i} sums to {sum}, expected 1"
            )));
        }
    }
    Ok(())
}

/// Convert the flip rate `eta` to the uniform-resampling rate
/// `p = C eta / (C - 1)`.
pub fn eta_to_p(eta: f64, num_classes: usize) -> Result<f64> {
    let c = num_classes as f64;
    let max_eta = (c - 1.0) / c;
    if !(0.0..max_eta).contains(&eta) {
        return Err(Error::InvalidParameter(format!(
            "eta must lie in [0, {max_eta}) for {num_classes} classes, got {eta}"
        )));
    }
    Ok(c * eta / (c - 1.0))
}

/// Corrupt the labels of a dataset under a noise model. Features are left
/// untouched; the result is deterministic given the generator state.
///
/// Symmetric noise draws one uniform real per example in index order and,
/// when flipping, one categorical draw over the other `C - 1` labels.
/// Asymmetric noise draws one uniform real per example and walks the
/// cumulative transition row.
pub fn corrupt_labels(
    data: &LabeledDataset,
    model: &NoiseModel,
    rng: &mut Prng,
) -> Result<LabeledDataset> {
    let c = data.num_classes;
    let mut labels = data.labels.clone();
    match model {
        NoiseModel::Symmetric { eta } => {
            // Revalidate against this dataset's class count.
            eta_to_p(*eta, c)?;
            for label in labels.iter_mut() {
                let u = rng.uniform();
                if u < *eta {
                    let k = rng.below(c - 1);
                    *label = if k < *label { k } else { k + 1 };
                }
            }
        }
        NoiseModel::Asymmetric { transition } => {
            if transition.rows() != c {
                return Err(Error::DimensionMismatch(format!(
                    "transition matrix is {}x{} but dataset has {c} classes",
                    transition.rows(),
                    transition.cols()
                )));
            }
            for label in labels.iter_mut() {
                let u = rng.uniform();
                let row = transition.row(*label);
                let mut cum = 0.0;
                let mut chosen = c - 1;
                for (k, &pk) in row.iter().enumerate() {
                    cum += pk;
                    if u < cum {
                        chosen = k;
                        break;
                    }
                }
                *label = chosen;
            }
        }
    }
    LabeledDataset::new(data.features.clone(), labels, c)
}

/// Evaluate both sides of the corrupted-risk identity exactly, by
/// enumerating all `C` labels per point.
///
/// Each point is a score vector paired with its clean conditional label
/// distribution. Returns `(lhs, rhs)` where `lhs` is the risk under the
/// corrupted conditional `p * Uniform + (1 - p) * clean`, and `rhs` is
/// `(p/C) * E[sum_k L(z, k)] + (1 - p) * clean risk`, both averaged over
/// the points.
pub fn corrupted_risk_identity_oracle(
    loss: &LossFunction,
    points: &[(Vec<f64>, Vec<f64>)],
    p: f64,
) -> Result<(f64, f64)> {
    if !(0.0..1.0).contains(&p) {
        return Err(Error::InvalidParameter(format!(
            "resampling rate p must lie in [0, 1), got {p}"
        )));
    }
    let c = loss.num_classes();
    let n = points.len() as f64;
    let mut lhs = 0.0;
    let mut class_sum_term = 0.0;
    let mut clean = 0.0;
    for (z, dist) in points {
        if dist.len() != c {
            return Err(Error::DimensionMismatch(format!(
                "label distribution has length {}, expected {c}",
                dist.len()
            )));
        }
        let total: f64 = dist.iter().sum();
        if (total - 1.0).abs() > 1e-9 || dist.iter().any(|&d| d < 0.0) {
            return Err(Error::InvalidParameter(
                "clean label distribution must be a probability vector".into(),
            ));
        }
        let vals = loss.class_values(z)?;
        let mut point_lhs = 0.0;
        let mut point_clean = 0.0;
        let mut point_sum = 0.0;
        for k in 0..c {
            point_lhs += (p / c as f64 + (1.0 - p) * dist[k]) * vals[k];
            point_clean += dist[k] * vals[k];
            point_sum += vals[k];
        }
        lhs += point_lhs;
        clean += point_clean;
        class_sum_term += point_sum;
    }
    lhs /= n;
    clean /= n;
    class_sum_term /= n;
    let rhs = (p / c as f64) * class_sum_term + (1.0 - p) * clean;
    Ok((lhs, rhs))
}

/// Average clean risk of the oracle's point set (the `L_D(h)` term).
pub fn clean_risk(loss: &LossFunction, points: &[(Vec<f64>, Vec<f64>)]) -> Result<f64> {
    let mut clean = 0.0;
    for (z, dist) in points {
        let vals = loss.class_values(z)?;
        clean += dist.iter().zip(&vals).map(|(d, v)| d * v).sum::<f64>();
    }
    Ok(clean / points.len() as f64)
}

/// Load a `C x C` row-stochastic transition matrix from CSV (no header,
/// one row per line).
pub fn load_transition_csv(path: &std::path::Path) -> Result<Matrix> {
    let text = std::fs::read_to_string(path)?;
    let mut rows = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let row: Result<Vec<f64>> = line
            .split(',')
            .map(|tok| {
                tok.trim().parse::<f64>().map_err(|_| {
                    Error::Config(format!(
                        "transition csv line {}: bad number {tok:?}",
                        lineno + 1
                    ))
                })
            })
            .collect();
        rows.push(row?);
    }
    let m = Matrix::from_rows(rows)?;
    validate_transition(&m)?;
    Ok(m)
}
