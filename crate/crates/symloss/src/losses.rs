//! The loss-function zoo.
//!
//! A [`LossFunction`] bundles a value map `(z, y) -> f64`, an analytic
//! gradient `(z, y) -> Vec<f64>`, and metadata flags declaring which
//! properties the loss claims (symmetry, invariance to permutations,
//! monotonicity). The flags are claims to be verified by the `verify`
//! module, not trusted facts.
//!
//! The central operation is [`symmetrize`], which extracts the unique
//! symmetric component of any loss:
//!
//! ```text
//! L_sym(z, y) = L(z, y) - (1/C) * sum_k L(z, k)
//! ```
//!
//! Symmetrizing cross-entropy yields the multi-class unhinged loss
//! `-z_y + mean(z)`; symmetrizing the generalized cross-entropy yields
//! SGCE; both have direct closed-form constructors here alongside the
//! generic operator.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{dot, log_sum_exp, norm2, softmax};

/// Epsilon used to clamp the Euclidean norm in the cosine similarity loss,
/// shared with the score-normalization path.
pub const NORM_EPSILON: f64 = 1e-5;

/// Property claims attached to a loss, verified (not trusted) downstream.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LossMetadata {
    /// Claims `sum_k L(z, k)` is constant in `z`.
    pub claims_symmetric: bool,
    /// Claims `L(tau(z), tau(y)) = L(z, y)` for every permutation `tau`.
    pub claims_permutation_invariant: bool,
    /// Claims `L` is non-increasing in `z_y` with the other coordinates fixed.
    pub claims_non_increasing: bool,
}

type ValueFn = dyn Fn(&[f64], usize) -> f64 + Send + Sync;
type GradFn = dyn Fn(&[f64], usize) -> Vec<f64> + Send + Sync;
type ClassValuesFn = dyn Fn(&[f64]) -> Vec<f64> + Send + Sync;

/// A multi-class loss with analytic gradient and declared metadata.
///
/// Values are immutable after construction and cheap to clone (the
/// closures are shared), so a loss can be evaluated concurrently from many
/// threads.
#[derive(Clone)]
pub struct LossFunction {
    name: String,
    num_classes: usize,
    value_fn: Arc<ValueFn>,
    grad_fn: Arc<GradFn>,
    /// Optional batched fast path evaluating the loss at every label at
    /// once (shared softmax etc.). Must agree bit-for-bit with the per-label
    /// loop; `class_values_oracle` is the reference it is tested against.
    class_values_fn: Option<Arc<ClassValuesFn>>,
    metadata: LossMetadata,
}

impl std::fmt::Debug for LossFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("LossFunction")
            .field("name", &self.name)
            .field("num_classes", &self.num_classes)
            .field("metadata", &self.metadata)
            .finish()
    }
}

impl LossFunction {
    /// Assemble a loss from raw parts. The closures may assume `z.len() ==
    /// num_classes` and `y < num_classes`; the public accessors validate.
    pub fn from_parts(
        name: impl Into<String>,
        num_classes: usize,
        value: impl Fn(&[f64], usize) -> f64 + Send + Sync + 'static,
        gradient: impl Fn(&[f64], usize) -> Vec<f64> + Send + Sync + 'static,
        metadata: LossMetadata,
    ) -> Self {
        LossFunction {
            name: name.into(),
            num_classes,
            value_fn: Arc::new(value),
            grad_fn: Arc::new(gradient),
            class_values_fn: None,
            metadata,
        }
    }

    fn with_class_values(
        mut self,
        f: impl Fn(&[f64]) -> Vec<f64> + Send + Sync + 'static,
    ) -> Self {
        self.class_values_fn = Some(Arc::new(f));
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn num_classes(&self) -> usize {
        self.num_classes
    }

    pub fn metadata(&self) -> LossMetadata {
        self.metadata
    }

    fn check_inputs(&self, z: &[f64], y: usize) -> Result<()> {
        if z.len() != self.num_classes {
            return Err(Error::DimensionMismatch(format!(
                "loss {}: score vector has length {}, expected {}",
                self.name,
                z.len(),
                self.num_classes
            )));
        }
        if y >= self.num_classes {
            return Err(Error::InvalidLabel {
                label: y,
                num_classes: self.num_classes,
            });
        }
        Ok(())
    }

    /// Loss value at `(z, y)`.
    pub fn value(&self, z: &[f64], y: usize) -> Result<f64> {
        self.check_inputs(z, y)?;
        Ok((self.value_fn)(z, y))
    }

    /// Analytic gradient with respect to `z`.
    pub fn gradient(&self, z: &[f64], y: usize) -> Result<Vec<f64>> {
        self.check_inputs(z, y)?;
        Ok((self.grad_fn)(z, y))
    }

    /// Loss value at every label: `[L(z, 0), ..., L(z, C-1)]`.
    ///
    /// Uses the batched fast path when one is installed; otherwise falls
    /// back to the per-label loop.
    pub fn class_values(&self, z: &[f64]) -> Result<Vec<f64>> {
        if z.len() != self.num_classes {
            return Err(Error::DimensionMismatch(format!(
                "loss {}: score vector has length {}, expected {}",
                self.name,
                z.len(),
                self.num_classes
            )));
        }
        match &self.class_values_fn {
            Some(f) => Ok(f(z)),
            None => Ok(self.class_values_oracle(z)),
        }
    }

    /// Per-label reference loop for `class_values`, independent of any
    /// installed fast path.
    pub fn class_values_oracle(&self, z: &[f64]) -> Vec<f64> {
        (0..self.num_classes).map(|k| (self.value_fn)(z, k)).collect()
    }

    /// `sum_k L(z, k)` in index-ascending order.
    pub fn class_sum(&self, z: &[f64]) -> Result<f64> {
        Ok(self.class_values(z)?.iter().sum())
    }
}

/// Exponent parameter of the generalized cross-entropy family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SgceParams {
    q: f64,
}

impl SgceParams {
    pub fn new(q: f64) -> Result<Self> {
        if !(q > 0.0 && q <= 1.0) {
            return Err(Error::InvalidParameter(format!(
                "gce/sgce exponent q must lie in (0, 1], got {q}"
            )));
        }
        Ok(SgceParams { q })
    }

    pub fn q(&self) -> f64 {
        self.q
    }
}

/// Interpolation weight of the alpha-MAE family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AlphaMaeParams {
    alpha: f64,
}

impl AlphaMaeParams {
    pub fn new(alpha: f64) -> Result<Self> {
        if !(alpha >= 0.0 && alpha.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "alpha_mae weight alpha must be finite and >= 0, got {alpha}"
            )));
        }
        Ok(AlphaMaeParams { alpha })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }
}

/// Per-class concentration parameters of the Dirichlet-regularized loss,
/// restricted to input-independent values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DirichletParams {
    alpha: Vec<f64>,
}

impl DirichletParams {
    /// Constant-alpha shortcut: `alpha_k = alpha` for every class.
    pub fn constant(alpha: f64, num_classes: usize) -> Result<Self> {
        DirichletParams::per_class(vec![alpha; num_classes])
    }

    pub fn per_class(alpha: Vec<f64>) -> Result<Self> {
        if alpha.iter().any(|&a| a <= 0.0 || !a.is_finite()) {
            return Err(Error::InvalidParameter(
                "dirichlet concentration parameters must all be positive".into(),
            ));
        }
        Ok(DirichletParams { alpha })
    }

    pub fn alpha(&self) -> &[f64] {
        &self.alpha
    }
}

/// Backpropagate a gradient with respect to softmax probabilities through
/// the softmax map: `out_j = p_j * (dldp_j - sum_k p_k dldp_k)`.
fn softmax_pullback(p: &[f64], dldp: &[f64]) -> Vec<f64> {
    let inner = dot(p, dldp);
    p.iter().zip(dldp).map(|(&pj, &gj)| pj * (gj - inner)).collect()
}

/// Standard cross-entropy `-z_y + log sum_k exp(z_k)`, with gradient
/// `softmax(z) - e_y`.
pub fn cross_entropy(num_classes: usize) -> Result<LossFunction> {
    check_classes(num_classes)?;
    Ok(LossFunction::from_parts(
        "ce",
        num_classes,
        |z, y| -z[y] + log_sum_exp(z).expect("nonempty"),
        |z, y| {
            let mut g = softmax(z).expect("nonempty");
            g[y] -= 1.0;
            g
        },
        LossMetadata {
            claims_symmetric: false,
            claims_permutation_invariant: true,
            claims_non_increasing: true,
        },
    )
    .with_class_values(|z| {
        let lse = log_sum_exp(z).expect("nonempty");
        z.iter().map(|&zk| -zk + lse).collect()
    }))
}

/// Mean absolute error `1 - p(y|z)`. Symmetric: its class sum is the
/// constant `C - 1`.
pub fn mae(num_classes: usize) -> Result<LossFunction> {
    check_classes(num_classes)?;
    Ok(LossFunction::from_parts(
        "mae",
        num_classes,
        |z, y| 1.0 - softmax(z).expect("nonempty")[y],
        |z, y| {
            let p = softmax(z).expect("nonempty");
            let mut dldp = vec![0.0; p.len()];
            dldp[y] = -1.0;
            softmax_pullback(&p, &dldp)
        },
        LossMetadata {
            claims_symmetric: true,
            claims_permutation_invariant: true,
            claims_non_increasing: true,
        },
    )
    .with_class_values(|z| {
        let p = softmax(z).expect("nonempty");
        p.iter().map(|&pk| 1.0 - pk).collect()
    }))
}

/// Generalized cross-entropy `(1 - p(y|z)^q) / q` for `q` in (0, 1].
/// At `q = 1` this is exactly the MAE.
pub fn gce(num_classes: usize, params: SgceParams) -> Result<LossFunction> {
    check_classes(num_classes)?;
    let q = params.q();
    Ok(LossFunction::from_parts(
        format!("gce[q={q}]"),
        num_classes,
        move |z, y| {
            let p = softmax(z).expect("nonempty");
            (1.0 - p[y].powf(q)) / q
        },
        move |z, y| {
            let p = softmax(z).expect("nonempty");
            let mut dldp = vec![0.0; p.len()];
            dldp[y] = -p[y].powf(q - 1.0);
            softmax_pullback(&p, &dldp)
        },
        LossMetadata {
            claims_symmetric: false,
            claims_permutation_invariant: true,
            claims_non_increasing: true,
        },
    )
    .with_class_values(move |z| {
        let p = softmax(z).expect("nonempty");
        p.iter().map(|&pk| (1.0 - pk.powf(q)) / q).collect()
    }))
}

/// Mean squared error against the one-hot target through softmax:
/// `||e_y - s(z)||^2 = ||s(z)||^2 + 1 - 2 p(y|z)`.
pub fn mse_classification(num_classes: usize) -> Result<LossFunction> {
    check_classes(num_classes)?;
    Ok(LossFunction::from_parts(
        "mse",
        num_classes,
        |z, y| {
            let p = softmax(z).expect("nonempty");
            dot(&p, &p) + 1.0 - 2.0 * p[y]
        },
        |z, y| {
            let p = softmax(z).expect("nonempty");
            let mut dldp: Vec<f64> = p.iter().map(|&pk| 2.0 * pk).collect();
            dldp[y] -= 2.0;
            softmax_pullback(&p, &dldp)
        },
        LossMetadata {
            claims_symmetric: false,
            claims_permutation_invariant: true,
            claims_non_increasing: true,
        },
    )
    .with_class_values(|z| {
        let p = softmax(z).expect("nonempty");
        let nsq = dot(&p, &p);
        p.iter().map(|&pk| nsq + 1.0 - 2.0 * pk).collect()
    }))
}

/// Cosine similarity loss `1 - z_y / ||z||`, with the norm clamped at
/// [`NORM_EPSILON`] so `z = 0` gives value 1.
pub fn cosine_similarity_loss(num_classes: usize) -> Result<LossFunction> {
    check_classes(num_classes)?;
    Ok(LossFunction::from_parts(
        "cosine",
        num_classes,
        |z, y| {
            let n = norm2(z).max(NORM_EPSILON);
            1.0 - z[y] / n
        },
        |z, y| {
            let raw = norm2(z);
            if raw > NORM_EPSILON {
                let n3 = raw * raw * raw;
                (0..z.len())
                    .map(|j| {
                        let mut g = z[y] * z[j] / n3;
                        if j == y {
                            g -= 1.0 / raw;
                        }
                        g
                    })
                    .collect()
            } else {
                // Clamped region: value is affine, 1 - z_y / epsilon.
                let mut g = vec![0.0; z.len()];
                g[y] = -1.0 / NORM_EPSILON;
                g
            }
        },
        LossMetadata {
            claims_symmetric: false,
            claims_permutation_invariant: true,
            claims_non_increasing: true,
        },
    )
    .with_class_values(|z| {
        let n = norm2(z).max(NORM_EPSILON);
        z.iter().map(|&zk| 1.0 - zk / n).collect()
    }))
}

/// The multi-class unhinged loss `-z_y + (1/C) sum_k z_k`: linear,
/// symmetric, and with the constant gradient `(1/C) 1 - e_y`.
pub fn multiclass_unhinged(num_classes: usize) -> Result<LossFunction> {
    check_classes(num_classes)?;
    let c = num_classes as f64;
    Ok(LossFunction::from_parts(
        "unhinged",
        num_classes,
        move |z, y| {
            let mean: f64 = z.iter().sum::<f64>() / c;
            -z[y] + mean
        },
        move |z, y| {
            let mut g = vec![1.0 / c; z.len()];
            g[y] -= 1.0;
            g
        },
        LossMetadata {
            claims_symmetric: true,
            claims_permutation_invariant: true,
            claims_non_increasing: true,
        },
    )
    .with_class_values(move |z| {
        let mean: f64 = z.iter().sum::<f64>() / c;
        z.iter().map(|&zk| -zk + mean).collect()
    }))
}

/// Symmetrized generalized cross-entropy, the closed form of
/// `symmetrize(gce(q))`:
///
/// ```text
/// SGCE_q(z, y) = ((1/C) sum_k p_k^q - p_y^q) / q
/// ```
///
/// interpolating between the multi-class unhinged loss and the
/// (symmetrized) MAE.
pub fn sgce(num_classes: usize, params: SgceParams) -> Result<LossFunction> {
    check_classes(num_classes)?;
    let q = params.q();
    let c = num_classes as f64;
    Ok(LossFunction::from_parts(
        format!("sgce[q={q}]"),
        num_classes,
        move |z, y| {
            let p = softmax(z).expect("nonempty");
            let mean_pq: f64 = p.iter().map(|&pk| pk.powf(q)).sum::<f64>() / c;
            (mean_pq - p[y].powf(q)) / q
        },
        move |z, y| {
            let p = softmax(z).expect("nonempty");
            let mut dldp: Vec<f64> = p.iter().map(|&pk| pk.powf(q - 1.0) / c).collect();
            dldp[y] -= p[y].powf(q - 1.0);
            softmax_pullback(&p, &dldp)
        },
        LossMetadata {
            claims_symmetric: true,
            claims_permutation_invariant: true,
            claims_non_increasing: true,
        },
    )
    .with_class_values(move |z| {
        let p = softmax(z).expect("nonempty");
        let pq: Vec<f64> = p.iter().map(|&pk| pk.powf(q)).collect();
        let mean_pq: f64 = pq.iter().sum::<f64>() / c;
        pq.iter().map(|&t| (mean_pq - t) / q).collect()
    }))
}

/// alpha-MAE: `(1 - alpha) * unhinged + alpha * C * (1 - p(y|z))`.
///
/// `alpha` scales the curvature of the loss; at `alpha = 0` this is the
/// multi-class unhinged loss. For `alpha > 1` the loss is no longer
/// non-increasing in `z_y` (the negated unhinged term eventually wins),
/// which the metadata reflects.
pub fn alpha_mae(num_classes: usize, params: AlphaMaeParams) -> Result<LossFunction> {
    check_classes(num_classes)?;
    let a = params.alpha();
    let c = num_classes as f64;
    Ok(LossFunction::from_parts(
        format!("alpha_mae[alpha={a}]"),
        num_classes,
        move |z, y| {
            let mean: f64 = z.iter().sum::<f64>() / c;
            let p = softmax(z).expect("nonempty");
            (1.0 - a) * (-z[y] + mean) + a * c * (1.0 - p[y])
        },
        move |z, y| {
            let p = softmax(z).expect("nonempty");
            let mut dldp = vec![0.0; p.len()];
            dldp[y] = -1.0;
            let mae_grad = softmax_pullback(&p, &dldp);
            (0..p.len())
                .map(|j| {
                    let unh = 1.0 / c - if j == y { 1.0 } else { 0.0 };
                    (1.0 - a) * unh + a * c * mae_grad[j]
                })
                .collect()
        },
        LossMetadata {
            claims_symmetric: true,
            claims_permutation_invariant: true,
            claims_non_increasing: a <= 1.0,
        },
    )
    .with_class_values(move |z| {
        let mean: f64 = z.iter().sum::<f64>() / c;
        let p = softmax(z).expect("nonempty");
        (0..z.len())
            .map(|k| (1.0 - a) * (-z[k] + mean) + a * c * (1.0 - p[k]))
            .collect()
    }))
}

/// The symmetrization operator: the unique (up to constants) symmetric
/// component of `base`,
///
/// ```text
/// L_sym(z, y) = L(z, y) - (1/C) sum_k L(z, k).
/// ```
///
/// The class sum of the result is identically zero in exact arithmetic.
/// Computed by an explicit sum over the classes; losses with published
/// closed forms (unhinged, SGCE) have direct constructors instead.
pub fn symmetrize(base: &LossFunction) -> LossFunction {
    let c = base.num_classes() as f64;
    let value_base = base.clone();
    let grad_base = base.clone();
    let cv_base = base.clone();
    let meta = LossMetadata {
        claims_symmetric: true,
        claims_permutation_invariant: base.metadata().claims_permutation_invariant,
        // Not inherited: subtracting the class mean can break monotonicity
        // (e.g. the symmetrized cosine loss is increasing in z_y in places).
        claims_non_increasing: false,
    };
    LossFunction::from_parts(
        format!("sym({})", base.name()),
        base.num_classes(),
        move |z, y| {
            let vals = value_base.class_values(z).expect("validated length");
            let mean: f64 = vals.iter().sum::<f64>() / c;
            vals[y] - mean
        },
        move |z, y| {
            let cn = grad_base.num_classes();
            let mut mean_grad = vec![0.0; cn];
            for k in 0..cn {
                let gk = grad_base.gradient(z, k).expect("validated inputs");
                for (m, g) in mean_grad.iter_mut().zip(&gk) {
                    *m += g;
                }
            }
            for m in &mut mean_grad {
                *m /= c;
            }
            let gy = grad_base.gradient(z, y).expect("validated inputs");
            gy.iter().zip(&mean_grad).map(|(a, b)| a - b).collect()
        },
        meta,
    )
    .with_class_values(move |z| {
        let vals = cv_base.class_values(z).expect("validated length");
        let mean: f64 = vals.iter().sum::<f64>() / c;
        vals.iter().map(|&v| v - mean).collect()
    })
}

/// Dirichlet-regularized loss
/// `l_Dir(z, y) = l(z, y) + sum_k (alpha_k - 1) l(z, k)`.
///
/// With constant `alpha = (C-1)/C` this equals `symmetrize(base)` exactly;
/// for any other constant it is symmetric only if `base` already is.
pub fn dirichlet_loss(base: &LossFunction, params: &DirichletParams) -> Result<LossFunction> {
    let c = base.num_classes();
    if params.alpha().len() != c {
        return Err(Error::DimensionMismatch(format!(
            "dirichlet parameters: got {} values for {} classes",
            params.alpha().len(),
            c
        )));
    }
    let alpha = params.alpha().to_vec();
    let constant = alpha.windows(2).all(|w| w[0] == w[1]);
    let symmetrizing = constant && (alpha[0] - (c as f64 - 1.0) / c as f64).abs() < 1e-15;
    let meta = LossMetadata {
        claims_symmetric: base.metadata().claims_symmetric || symmetrizing,
        claims_permutation_invariant: base.metadata().claims_permutation_invariant && constant,
        claims_non_increasing: false,
    };
    let value_base = base.clone();
    let grad_base = base.clone();
    let cv_base = base.clone();
    let alpha_v = alpha.clone();
    let alpha_g = alpha.clone();
    let alpha_cv = alpha;
    let name = if constant {
        format!("dirichlet[alpha={}]({})", alpha_v[0], base.name())
    } else {
        format!("dirichlet({})", base.name())
    };
    Ok(LossFunction::from_parts(
        name,
        c,
        move |z, y| {
            let vals = value_base.class_values(z).expect("validated length");
            let reg: f64 = vals
                .iter()
                .zip(&alpha_v)
                .map(|(&v, &a)| (a - 1.0) * v)
                .sum();
            vals[y] + reg
        },
        move |z, y| {
            let mut out = grad_base.gradient(z, y).expect("validated inputs");
            for (k, &ak) in alpha_g.iter().enumerate() {
                let gk = grad_base.gradient(z, k).expect("validated inputs");
                for (o, g) in out.iter_mut().zip(&gk) {
                    *o += (ak - 1.0) * g;
                }
            }
            out
        },
        meta,
    )
    .with_class_values(move |z| {
        let vals = cv_base.class_values(z).expect("validated length");
        let reg: f64 = vals
            .iter()
            .zip(&alpha_cv)
            .map(|(&v, &a)| (a - 1.0) * v)
            .sum();
        vals.iter().map(|&v| v + reg).collect()
    }))
}

/// Odd part `(phi(z) - phi(-z)) / 2` of a binary potential, the symmetric
/// component of the binary odd/even decomposition.
pub fn binary_odd_part<F>(potential: F) -> impl Fn(f64) -> f64
where
    F: Fn(f64) -> f64,
{
    move |z| 0.5 * (potential(z) - potential(-z))
}

/// Parameters accepted by [`loss_by_name`]. Keys mirror the CLI surface:
/// `q` for gce/sgce, `alpha` for alpha_mae/dirichlet.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct LossSpec {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
}

impl LossSpec {
    pub fn named(name: impl Into<String>) -> Self {
        LossSpec {
            name: name.into(),
            q: None,
            alpha: None,
        }
    }

    pub fn with_q(mut self, q: f64) -> Self {
        self.q = Some(q);
        self
    }

    pub fn with_alpha(mut self, alpha: f64) -> Self {
        self.alpha = Some(alpha);
        self
    }
}

/// Build a loss from its string name and parameter map.
///
/// Known names: `ce`, `mae`, `gce`, `mse`, `cosine`, `unhinged`, `sgce`,
/// `alpha_mae`, `dirichlet` (Dirichlet-regularized cross-entropy with
/// constant concentration `alpha`).
pub fn loss_by_name(spec: &LossSpec, num_classes: usize) -> Result<LossFunction> {
    let need_q = || {
        spec.q.ok_or_else(|| {
            Error::InvalidParameter(format!("loss '{}' requires parameter q", spec.name))
        })
    };
    let need_alpha = || {
        spec.alpha.ok_or_else(|| {
            Error::InvalidParameter(format!("loss '{}' requires parameter alpha", spec.name))
        })
    };
    match spec.name.as_str() {
        "ce" => cross_entropy(num_classes),
        "mae" => mae(num_classes),
        "gce" => gce(num_classes, SgceParams::new(need_q()?)?),
        "mse" => mse_classification(num_classes),
        "cosine" => cosine_similarity_loss(num_classes),
        "unhinged" => multiclass_unhinged(num_classes),
        "sgce" => sgce(num_classes, SgceParams::new(need_q()?)?),
        "alpha_mae" => alpha_mae(num_classes, AlphaMaeParams::new(need_alpha()?)?),
        "dirichlet" => dirichlet_loss(
            &cross_entropy(num_classes)?,
            &DirichletParams::constant(need_alpha()?, num_classes)?,
        ),
        other => Err(Error::InvalidParameter(format!("unknown loss '{other}'"))),
    }
}

fn check_classes(num_classes: usize) -> Result<()> {
    if num_classes < 2 {
        return Err(Error::InvalidParameter(format!(
            "losses need at least 2 classes, got {num_classes}"
        )));
    }
    Ok(())
}
