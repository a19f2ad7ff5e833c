//! Symmetrization of regression losses with respect to a corruption
//! density, the regression unhinged loss, the clipped-Huber linearization,
//! closed-form regularized linear solutions, and the linear-symmetry
//! criterion.
//!
//! The continuous symmetry condition asks that `int q(y) L(z, y) dy` be
//! constant in `z`; subtracting that integral from any loss,
//!
//! ```text
//! L_sym(z, y) = L(z, y) - int q(t) L(z, t) dt,
//! ```
//!
//! produces the symmetric component of its unique decomposition. Integrals
//! are evaluated by Gauss-Legendre quadrature on uniform supports and
//! Gauss-Hermite (after a change of variables) for Gaussian densities,
//! 64 nodes by default.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::numerics::Matrix;
use crate::quadrature::{gauss_hermite, gauss_legendre};
use crate::verify::CheckReport;

pub const DEFAULT_QUADRATURE_NODES: usize = 64;

/// Supported corruption densities (independent of the input `x`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DensityKind {
    /// Uniform on `[-half_width, half_width]`.
    Uniform { half_width: f64 },
    /// Gaussian with the given mean and standard deviation.
    Gaussian { mean: f64, sigma: f64 },
}

/// A corruption density together with its quadrature rule, mapped into
/// target space so that `expectation(f)` approximates `int q(y) f(y) dy`
/// with probability weights summing to 1.
#[derive(Debug, Clone, PartialEq)]
pub struct CorruptionDensity {
    kind: DensityKind,
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl CorruptionDensity {
    pub fn uniform(half_width: f64) -> Result<Self> {
        Self::uniform_with_nodes(half_width, DEFAULT_QUADRATURE_NODES)
    }

    pub fn uniform_with_nodes(half_width: f64, n: usize) -> Result<Self> {
        if !(half_width > 0.0 && half_width.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "uniform half-width must be positive, got {half_width}"
            )));
        }
        let rule = gauss_legendre(n.max(1));
        // int_{-I}^{I} q(t) f(t) dt with q = 1/(2I), t = I x.
        let nodes = rule.nodes.iter().map(|&x| half_width * x).collect();
        let weights = rule.weights.iter().map(|&w| w / 2.0).collect();
        Ok(CorruptionDensity {
            kind: DensityKind::Uniform { half_width },
            nodes,
            weights,
        })
    }

    pub fn gaussian(mean: f64, sigma: f64) -> Result<Self> {
        Self::gaussian_with_nodes(mean, sigma, DEFAULT_QUADRATURE_NODES)
    }

    pub fn gaussian_with_nodes(mean: f64, sigma: f64, n: usize) -> Result<Self> {
        if !(sigma > 0.0 && sigma.is_finite()) || !mean.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "gaussian density needs finite mean and positive sigma, got N({mean}, {sigma}^2)"
            )));
        }
        let rule = gauss_hermite(n.max(1));
        // t = mean + sqrt(2) sigma x turns the Gaussian expectation into a
        // Hermite sum scaled by 1/sqrt(pi).
        let scale = std::f64::consts::SQRT_2 * sigma;
        let inv_sqrt_pi = 1.0 / std::f64::consts::PI.sqrt();
        let nodes = rule.nodes.iter().map(|&x| mean + scale * x).collect();
        let weights = rule.weights.iter().map(|&w| w * inv_sqrt_pi).collect();
        Ok(CorruptionDensity {
            kind: DensityKind::Gaussian { mean, sigma },
            nodes,
            weights,
        })
    }

    pub fn kind(&self) -> DensityKind {
        self.kind
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// `int q(y) f(y) dy` under this density's quadrature, in node order.
    pub fn expectation<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        let mut acc = 0.0;
        for (t, w) in self.nodes.iter().zip(&self.weights) {
            acc += w * f(*t);
        }
        acc
    }

    /// Whether the density is centered and symmetric about zero.
    pub fn is_centered_symmetric(&self) -> bool {
        match self.kind {
            DensityKind::Uniform { .. } => true,
            DensityKind::Gaussian { mean, .. } => mean == 0.0,
        }
    }
}

type ScalarLossFn = dyn Fn(f64, f64) -> f64 + Send + Sync;

/// A scalar regression loss `(z, y) -> value` with analytic `d/dz`.
#[derive(Clone)]
pub struct RegressionLoss {
    name: String,
    value_fn: Arc<ScalarLossFn>,
    grad_fn: Arc<ScalarLossFn>,
}

impl std::fmt::Debug for RegressionLoss {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("RegressionLoss").field("name", &self.name).finish()
    }
}

impl RegressionLoss {
    pub fn from_parts(
        name: impl Into<String>,
        value: impl Fn(f64, f64) -> f64 + Send + Sync + 'static,
        gradient_z: impl Fn(f64, f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        RegressionLoss {
            name: name.into(),
            value_fn: Arc::new(value),
            grad_fn: Arc::new(gradient_z),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn value(&self, z: f64, y: f64) -> f64 {
        (self.value_fn)(z, y)
    }

    pub fn gradient_z(&self, z: f64, y: f64) -> f64 {
        (self.grad_fn)(z, y)
    }
}

/// Squared error `(z - y)^2`.
pub fn squared_error() -> RegressionLoss {
    RegressionLoss::from_parts(
        "squared_error",
        |z, y| (z - y) * (z - y),
        |z, y| 2.0 * (z - y),
    )
}

/// Absolute error `|z - y|` (subgradient 0 at the kink).
pub fn absolute_error() -> RegressionLoss {
    RegressionLoss::from_parts(
        "absolute_error",
        |z, y| (z - y).abs(),
        |z, y| {
            if z > y {
                1.0
            } else if z < y {
                -1.0
            } else {
                0.0
            }
        },
    )
}

/// Huber parameter `delta > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HuberParams {
    delta: f64,
}

impl HuberParams {
    pub fn new(delta: f64) -> Result<Self> {
        if !(delta > 0.0 && delta.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "huber delta must be positive, got {delta}"
            )));
        }
        Ok(HuberParams { delta })
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }
}

/// Huber loss: quadratic within `delta` of the target, linear outside.
pub fn huber(params: HuberParams) -> RegressionLoss {
    let d = params.delta();
    RegressionLoss::from_parts(
        format!("huber[delta={d}]"),
        move |z, y| {
            let u = z - y;
            if u.abs() <= d {
                0.5 * u * u
            } else {
                d * u.abs() - 0.5 * d * d
            }
        },
        move |z, y| clip(z - y, d),
    )
}

/// The regression unhinged loss `-z * y`.
pub fn regression_unhinged() -> RegressionLoss {
    RegressionLoss::from_parts("regression_unhinged", |z, y| -z * y, |_z, y| -y)
}

/// Clamp `y` to `[-delta, delta]`.
pub fn clip(y: f64, delta: f64) -> f64 {
    y.clamp(-delta, delta)
}

/// Subtract `int q(t) L(z, t) dt` from the loss, producing the symmetric
/// component of its decomposition with respect to `q`.
///
/// The integral is probed for finiteness at a few `z` up front; a
/// divergent integrand (non-convergent quadrature) is rejected.
pub fn symmetrize_regression(
    base: &RegressionLoss,
    q: &CorruptionDensity,
) -> Result<RegressionLoss> {
    for z in [-1.0, 0.0, 1.0] {
        let probe = q.expectation(|t| base.value(z, t));
        if !probe.is_finite() {
            return Err(Error::NonFinite(format!(
                "integral of {} against the corruption density diverges",
                base.name()
            )));
        }
    }
    let value_base = base.clone();
    let grad_base = base.clone();
    let qv = q.clone();
    let qg = q.clone();
    Ok(RegressionLoss::from_parts(
        format!("sym({})", base.name()),
        move |z, y| value_base.value(z, y) - qv.expectation(|t| value_base.value(z, t)),
        move |z, y| grad_base.gradient_z(z, y) - qg.expectation(|t| grad_base.gradient_z(z, t)),
    ))
}

/// Linear approximation at `z = 0` of the symmetrized Huber loss for a
/// centered, symmetric corruption density: `-clip(y, delta) * z`.
pub fn linearized_symmetrized_huber(
    params: HuberParams,
    q: &CorruptionDensity,
) -> Result<RegressionLoss> {
    if !q.is_centered_symmetric() {
        return Err(Error::InvalidParameter(
            "the clipped linearization requires a centered, symmetric corruption density".into(),
        ));
    }
    let d = params.delta();
    Ok(RegressionLoss::from_parts(
        format!("linearized_sym_huber[delta={d}]"),
        move |z, y| -clip(y, d) * z,
        move |_z, y| -clip(y, d),
    ))
}

/// Which linear-loss coefficient function drives the closed-form solution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RegressionLossKind {
    /// `f(y) = y` (regression unhinged).
    Unhinged,
    /// `f(y) = clip(y, delta)` (linearized symmetrized Huber).
    Clipped { delta: f64 },
}

impl RegressionLossKind {
    fn apply(&self, y: f64) -> f64 {
        match self {
            RegressionLossKind::Unhinged => y,
            RegressionLossKind::Clipped { delta } => clip(y, *delta),
        }
    }
}

/// Closed-form minimizer of the l2-regularized linear objective
/// `(1/N) sum_i -f(y_i) w . psi(x_i) + (lambda/2) ||w||^2`:
///
/// ```text
/// w = (1 / (lambda N)) sum_i f(y_i) psi(x_i)
/// ```
pub fn closed_form_regression_weights<F>(
    features: &Matrix,
    targets: &[f64],
    feature_map: F,
    lambda: f64,
    kind: RegressionLossKind,
) -> Result<Vec<f64>>
where
    F: Fn(&[f64]) -> Vec<f64>,
{
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "lambda must be positive, got {lambda}"
        )));
    }
    if features.rows() != targets.len() || targets.is_empty() {
        return Err(Error::DimensionMismatch(format!(
            "{} feature rows vs {} targets",
            features.rows(),
            targets.len()
        )));
    }
    if let RegressionLossKind::Clipped { delta } = kind {
        HuberParams::new(delta)?;
    }
    let n = targets.len();
    let d = feature_map(features.row(0)).len();
    let mut w = vec![0.0; d];
    for (i, &target) in targets.iter().enumerate() {
        let psi = feature_map(features.row(i));
        let fy = kind.apply(target);
        for (wj, pj) in w.iter_mut().zip(&psi) {
            *wj += fy * pj;
        }
    }
    let scale = 1.0 / (lambda * n as f64);
    for wj in &mut w {
        *wj *= scale;
    }
    Ok(w)
}

/// Euclidean norm of the gradient of the regularized objective at `w`;
/// zero (up to rounding) at the closed-form solution.
pub fn stationarity_residual<F>(
    w: &[f64],
    features: &Matrix,
    targets: &[f64],
    feature_map: F,
    lambda: f64,
    kind: RegressionLossKind,
) -> Result<f64>
where
    F: Fn(&[f64]) -> Vec<f64>,
{
    let n = targets.len();
    let mut grad: Vec<f64> = w.iter().map(|&wj| lambda * wj).collect();
    for (i, &target) in targets.iter().enumerate() {
        let psi = feature_map(features.row(i));
        let fy = kind.apply(target);
        for (gj, pj) in grad.iter_mut().zip(&psi) {
            *gj -= fy * pj / n as f64;
        }
    }
    Ok(crate::numerics::norm2(&grad))
}

/// For a linear regression loss `f(y) * z`, symmetry with respect to `q`
/// holds if and only if `E_q[f] = 0`; this checks `|E_q[f]| < 1e-8`.
pub fn check_linear_symmetry<F: Fn(f64) -> f64>(f: F, q: &CorruptionDensity) -> CheckReport {
    let expectation = q.expectation(f);
    let tol = 1e-8;
    let violation = expectation.abs();
    CheckReport {
        check_name: "linear_symmetry".into(),
        loss_name: "f(y) * z".into(),
        passed: violation <= tol,
        worst_violation: violation,
        tolerance: tol,
        probe_count: q.node_count(),
        seed: 0,
        details: format!("E_q[f] = {expectation:.6e} under {:?}", q.kind()),
    }
}

/// Load a regression dataset from CSV with header `f0,...,f{d-1},target`.
pub fn load_regression_csv(path: &std::path::Path) -> Result<(Matrix, Vec<f64>)> {
    let text = std::fs::read_to_string(path)?;
    let mut lines = text.lines().enumerate();
    let (_, header) = lines
        .next()
        .ok_or_else(|| Error::Config("regression csv is empty".into()))?;
    let cols: Vec<&str> = header.split(',').map(str::trim).collect();
    if cols.last() != Some(&"target") {
        return Err(Error::Config(
            "regression csv header must end with a 'target' column".into(),
        ));
    }
    let d = cols.len() - 1;
    let mut rows = Vec::new();
    let mut targets = Vec::new();
    for (lineno, line) in lines {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let vals: Result<Vec<f64>> = line
            .split(',')
            .map(|tok| {
                tok.trim().parse::<f64>().map_err(|_| {
                    Error::Config(format!("csv line {}: bad number {tok:?}", lineno + 1))
                })
            })
            .collect();
        let vals = vals?;
        if vals.len() != d + 1 {
            return Err(Error::Config(format!(
                "csv line {}: expected {} values, got {}",
                lineno + 1,
                d + 1,
                vals.len()
            )));
        }
        targets.push(vals[d]);
        rows.push(vals[..d].to_vec());
    }
    if rows.is_empty() {
        return Err(Error::Config("regression csv has no data rows".into()));
    }
    Ok((Matrix::from_rows(rows)?, targets))
}
