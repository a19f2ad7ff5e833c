//! Class-code vectors, the unhinged multi-class data centroid, the trace
//! identity for the empirical unhinged loss, the closed-form
//! norm-constrained linear solution, and the kernel-alignment identity.
//!
//! The centroid `mu = (1/N) sum_i c_{y_i} psi(x_i)^T` fully characterizes
//! the unhinged loss landscape of a linear model: the empirical loss at
//! weights `W` is `-Trace(mu W^T)`, its gradient is the constant `-mu`,
//! and the norm-constrained minimizer is `r * mu / ||mu||_F`. The squared
//! Frobenius norm of `mu` equals the kernel alignment
//! `(1/N^2) sum_ij a_ij k(x_i, x_j)`.

use crate::error::{Error, Result};
use crate::noise::LabeledDataset;
use crate::numerics::Matrix;

/// Zero-sum class code `c_y`: entry `y` equals `(C-1)/C`, every other
/// entry `-1/C`.
pub fn class_code(y: usize, num_classes: usize) -> Result<Vec<f64>> {
    if y >= num_classes {
        return Err(Error::InvalidLabel {
            label: y,
            num_classes,
        });
    }
    let c = num_classes as f64;
    let mut v = vec![-1.0 / c; num_classes];
    v[y] = (c - 1.0) / c;
    Ok(v)
}

/// The unhinged multi-class data centroid, a `C x D` matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct UnhingedCentroid {
    pub mu: Matrix,
}

/// Identity feature map.
pub fn identity_features(x: &[f64]) -> Vec<f64> {
    x.to_vec()
}

/// Feature map appending a constant 1 coordinate, so a weight matrix over
/// it carries an implicit bias column.
pub fn bias_features(x: &[f64]) -> Vec<f64> {
    let mut v = x.to_vec();
    v.push(1.0);
    v
}

/// `mu = (1/N) sum_i c_{y_i} psi(x_i)^T`, accumulated in index order.
pub fn compute_centroid<F>(data: &LabeledDataset, feature_map: F) -> Result<UnhingedCentroid>
where
    F: Fn(&[f64]) -> Vec<f64>,
{
    let c = data.num_classes;
    let n = data.len();
    let d = feature_map(data.features.row(0)).len();
    let mut mu = Matrix::zeros(c, d);
    for i in 0..n {
        let psi = feature_map(data.features.row(i));
        if psi.len() != d {
            return Err(Error::DimensionMismatch(
                "feature map produced vectors of unequal length".into(),
            ));
        }
        let code = class_code(data.labels[i], c)?;
        for (k, &ck) in code.iter().enumerate() {
            let row = mu.row_mut(k);
            for (j, &pj) in psi.iter().enumerate() {
                row[j] += ck * pj;
            }
        }
    }
    mu.scale(1.0 / n as f64);
    Ok(UnhingedCentroid { mu })
}

/// Empirical unhinged loss of the linear model `W` via the trace identity
/// `(1/N) sum_i L(W psi(x_i), y_i) = -Trace(mu W^T)`.
pub fn empirical_unhinged_loss_via_trace(w: &Matrix, centroid: &UnhingedCentroid) -> Result<f64> {
    Ok(-centroid.mu.frobenius_dot(w)?)
}

/// Direct empirical unhinged loss, the loop the trace identity replaces.
pub fn empirical_unhinged_loss_direct<F>(
    w: &Matrix,
    data: &LabeledDataset,
    feature_map: F,
) -> Result<f64>
where
    F: Fn(&[f64]) -> Vec<f64>,
{
    let loss = crate::losses::multiclass_unhinged(data.num_classes)?;
    let mut acc = 0.0;
    for i in 0..data.len() {
        let z = w.matvec(&feature_map(data.features.row(i)))?;
        acc += loss.value(&z, data.labels[i])?;
    }
    Ok(acc / data.len() as f64)
}

/// Minimizer of the empirical unhinged loss under `||W||_F <= radius`:
/// `W = radius * mu / ||mu||_F`.
///
/// Errors with [`Error::Degenerate`] when `||mu||_F <= 1e-12`, where any
/// feasible `W` is a solution.
pub fn closed_form_linear_solution(
    centroid: &UnhingedCentroid,
    radius: f64,
) -> Result<Matrix> {
    if radius <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "radius must be positive, got {radius}"
        )));
    }
    let norm = centroid.mu.frobenius_norm();
    if norm <= 1e-12 {
        return Err(Error::Degenerate(
            "centroid is zero: any W satisfying the constraint is a solution".into(),
        ));
    }
    let mut w = centroid.mu.clone();
    w.scale(radius / norm);
    Ok(w)
}

/// Kernel alignment `(1/N^2) sum_ij a_ij k(x_i, x_j)` with
/// `a_ij = (C-1)/C` when the labels agree and `-1/C` otherwise.
///
/// For the linear kernel on the centroid's feature map this equals
/// `||mu||_F^2`. The kernel is assumed symmetric positive semidefinite on
/// the data; this is not checked.
pub fn kernel_alignment<K>(data: &LabeledDataset, kernel: K) -> f64
where
    K: Fn(&[f64], &[f64]) -> f64,
{
    let n = data.len();
    let c = data.num_classes as f64;
    let same = (c - 1.0) / c;
    let diff = -1.0 / c;
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            let a = if data.labels[i] == data.labels[j] {
                same
            } else {
                diff
            };
            acc += a * kernel(data.features.row(i), data.features.row(j));
        }
    }
    acc / (n as f64 * n as f64)
}

/// Write a centroid as CSV (`C` rows by `D` columns).
pub fn centroid_to_csv(centroid: &UnhingedCentroid) -> String {
    let mut out = String::new();
    for i in 0..centroid.mu.rows() {
        let row: Vec<String> = centroid.mu.row(i).iter().map(|v| format!("{v}")).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{dot, Prng};
    use approx::assert_abs_diff_eq;

    fn two_point_dataset() -> LabeledDataset {
        let features =
            Matrix::from_rows(vec![vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
        LabeledDataset::new(features, vec![0, 1], 2).unwrap()
    }

    #[test]
    fn class_code_cases() {
        assert_eq!(class_code(0, 2).unwrap(), vec![0.5, -0.5]);
        let c = class_code(2, 3).unwrap();
        assert_abs_diff_eq!(c[0], -1.0 / 3.0, epsilon = 1e-16);
        assert_abs_diff_eq!(c[1], -1.0 / 3.0, epsilon = 1e-16);
        assert_abs_diff_eq!(c[2], 2.0 / 3.0, epsilon = 1e-16);
        // Entries sum to zero; self inner product is (C-1)/C.
        for cc in 2..6 {
            for y in 0..cc {
                let v = class_code(y, cc).unwrap();
                assert_abs_diff_eq!(v.iter().sum::<f64>(), 0.0, epsilon = 1e-15);
                assert_abs_diff_eq!(
                    dot(&v, &v),
                    (cc as f64 - 1.0) / cc as f64,
                    epsilon = 1e-15
                );
            }
        }
        assert!(class_code(3, 3).is_err());
    }

    #[test]
    fn single_point_centroid() {
        let features = Matrix::from_rows(vec![vec![1.0, 0.0]]).unwrap();
        let data = LabeledDataset::new(features, vec![0], 2).unwrap();
        let cen = compute_centroid(&data, identity_features).unwrap();
        assert_abs_diff_eq!(cen.mu.get(0, 0), 0.5, epsilon = 1e-16);
        assert_abs_diff_eq!(cen.mu.get(0, 1), 0.0, epsilon = 1e-16);
        assert_abs_diff_eq!(cen.mu.get(1, 0), -0.5, epsilon = 1e-16);
        assert_abs_diff_eq!(cen.mu.get(1, 1), 0.0, epsilon = 1e-16);
    }

    #[test]
    fn two_point_centroid_and_friends() {
        let data = two_point_dataset();
        let cen = compute_centroid(&data, identity_features).unwrap();
        for (i, j, v) in [(0, 0, 0.25), (0, 1, -0.25), (1, 0, -0.25), (1, 1, 0.25)] {
            assert_abs_diff_eq!(cen.mu.get(i, j), v, epsilon = 1e-16);
        }
        assert_abs_diff_eq!(cen.mu.frobenius_norm(), 0.5, epsilon = 1e-15);
        // Trace identity at W = mu gives -||mu||^2 = -1/4.
        let loss = empirical_unhinged_loss_via_trace(&cen.mu, &cen).unwrap();
        assert_abs_diff_eq!(loss, -0.25, epsilon = 1e-15);
        // Closed form at radius 1 is 2 mu, with unit Frobenius norm.
        let w = closed_form_linear_solution(&cen, 1.0).unwrap();
        assert_abs_diff_eq!(w.get(0, 0), 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(w.frobenius_norm(), 1.0, epsilon = 1e-14);
        // Kernel identity: linear-kernel alignment equals ||mu||^2 = 1/4.
        let align = kernel_alignment(&data, dot);
        assert_abs_diff_eq!(align, 0.25, epsilon = 1e-15);
    }

    #[test]
    fn degenerate_centroid_cases() {
        // Identical features with balanced labels cancel exactly.
        let features =
            Matrix::from_rows(vec![vec![1.0, 2.0], vec![1.0, 2.0]]).unwrap();
        let data = LabeledDataset::new(features, vec![0, 1], 2).unwrap();
        let cen = compute_centroid(&data, identity_features).unwrap();
        assert!(cen.mu.frobenius_norm() <= 1e-12);
        match closed_form_linear_solution(&cen, 1.0) {
            Err(Error::Degenerate(_)) => {}
            other => panic!("expected degenerate error, got {other:?}"),
        }
        // Centroid column sums vanish for any dataset.
        let mut rng = Prng::from_seed(1);
        let rich = random_dataset(&mut rng, 20, 3, 4);
        let cen = compute_centroid(&rich, identity_features).unwrap();
        for j in 0..cen.mu.cols() {
            let col: f64 = (0..cen.mu.rows()).map(|i| cen.mu.get(i, j)).sum();
            assert_abs_diff_eq!(col, 0.0, epsilon = 1e-14);
        }
        // Alignment of the identical-feature balanced dataset is zero.
        assert_abs_diff_eq!(
            kernel_alignment(&data, dot),
            0.0,
            epsilon = 1e-15
        );
    }

    #[test]
    fn single_point_alignment() {
        let features = Matrix::from_rows(vec![vec![2.0, 1.0]]).unwrap();
        let data = LabeledDataset::new(features, vec![1], 3).unwrap();
        let k = |a: &[f64], b: &[f64]| dot(a, b);
        assert_abs_diff_eq!(
            kernel_alignment(&data, k),
            (2.0 / 3.0) * 5.0,
            epsilon = 1e-14
        );
    }

    fn random_dataset(rng: &mut Prng, n: usize, c: usize, d: usize) -> LabeledDataset {
        let mut features = Matrix::zeros(n, d);
        let mut labels = Vec::with_capacity(n);
        for i in 0..n {
            for j in 0..d {
                features.set(i, j, rng.uniform_in(-2.0, 2.0));
            }
            labels.push(rng.below(c));
        }
        LabeledDataset::new(features, labels, c).unwrap()
    }

    #[test]
    fn kernel_identity_on_random_datasets() {
        let mut rng = Prng::from_seed(2);
        for _ in 0..20 {
            let n = 2 + rng.below(49);
            let c = 2 + rng.below(4);
            let d = 1 + rng.below(8);
            let data = random_dataset(&mut rng, n, c, d);
            let cen = compute_centroid(&data, identity_features).unwrap();
            let align = kernel_alignment(&data, dot);
            let musq = cen.mu.frobenius_norm().powi(2);
            assert!(
                (align - musq).abs() < 1e-10,
                "alignment {align} vs ||mu||^2 {musq}"
            );
        }
    }

    #[test]
    fn trace_identity_on_random_pairs() {
        let mut rng = Prng::from_seed(3);
        for _ in 0..20 {
            let n = 1 + rng.below(30);
            let c = 2 + rng.below(3);
            let d = 1 + rng.below(5);
            let data = random_dataset(&mut rng, n, c, d);
            let cen = compute_centroid(&data, identity_features).unwrap();
            let mut w = Matrix::zeros(c, d);
            for v in w.data_mut() {
                *v = rng.uniform_in(-3.0, 3.0);
            }
            let via_trace = empirical_unhinged_loss_via_trace(&w, &cen).unwrap();
            let direct = empirical_unhinged_loss_direct(&w, &data, identity_features).unwrap();
            assert!(
                (via_trace - direct).abs() < 1e-10,
                "trace {via_trace} vs direct {direct}"
            );
        }
    }

    #[test]
    fn closed_form_beats_random_equal_norm_matrices() {
        let mut rng = Prng::from_seed(4);
        let data = random_dataset(&mut rng, 40, 3, 4);
        let cen = compute_centroid(&data, identity_features).unwrap();
        let radius = 2.0;
        let w_star = closed_form_linear_solution(&cen, radius).unwrap();
        let best = empirical_unhinged_loss_via_trace(&w_star, &cen).unwrap();
        for _ in 0..1000 {
            let mut w = Matrix::zeros(3, 4);
            for v in w.data_mut() {
                *v = rng.standard_normal();
            }
            let n = w.frobenius_norm();
            w.scale(radius / n);
            let loss = empirical_unhinged_loss_via_trace(&w, &cen).unwrap();
            assert!(loss > best, "random W at loss {loss} vs best {best}");
        }
    }

    #[test]
    fn radius_scaling_scales_solution() {
        let data = two_point_dataset();
        let cen = compute_centroid(&data, identity_features).unwrap();
        let w1 = closed_form_linear_solution(&cen, 1.0).unwrap();
        let w2 = closed_form_linear_solution(&cen, 2.0).unwrap();
        for (a, b) in w1.data().iter().zip(w2.data()) {
            assert_abs_diff_eq!(2.0 * a, *b, epsilon = 1e-14);
        }
        // Argmax predictions agree at any radius.
        for i in 0..data.len() {
            let z1 = w1.matvec(data.features.row(i)).unwrap();
            let z2 = w2.matvec(data.features.row(i)).unwrap();
            let am = |z: &[f64]| {
                z.iter()
                    .enumerate()
                    .max_by(|a, b| a.1.partial_cmp(b.1).unwrap())
                    .unwrap()
                    .0
            };
            assert_eq!(am(&z1), am(&z2));
        }
    }

    #[test]
    fn kkt_stationarity_of_closed_form() {
        // grad_W of the empirical loss is -mu everywhere; at the returned W
        // with lambda = ||mu|| / (2 radius) the Lagrangian gradient
        // -mu + 2 lambda W vanishes.
        let mut rng = Prng::from_seed(5);
        let data = random_dataset(&mut rng, 25, 4, 3);
        let cen = compute_centroid(&data, identity_features).unwrap();
        let radius = 1.5;
        let w = closed_form_linear_solution(&cen, radius).unwrap();
        let lambda = cen.mu.frobenius_norm() / (2.0 * radius);
        let mut worst: f64 = 0.0;
        for i in 0..w.rows() {
            for j in 0..w.cols() {
                let g = -cen.mu.get(i, j) + 2.0 * lambda * w.get(i, j);
                worst = worst.max(g.abs());
            }
        }
        assert!(worst < 1e-12, "stationarity residual {worst}");
    }

    #[test]
    fn equal_centroids_give_equal_losses() {
        // Two datasets with the same centroid induce the same empirical
        // unhinged loss at every W (the trace identity is exact).
        let a = two_point_dataset();
        // Duplicate every point: same centroid.
        let features = Matrix::from_rows(vec![
            vec![1.0, 0.0],
            vec![0.0, 1.0],
            vec![1.0, 0.0],
            vec![0.0, 1.0],
        ])
        .unwrap();
        let b = LabeledDataset::new(features, vec![0, 1, 0, 1], 2).unwrap();
        let ca = compute_centroid(&a, identity_features).unwrap();
        let cb = compute_centroid(&b, identity_features).unwrap();
        let mut rng = Prng::from_seed(6);
        for _ in 0..50 {
            let mut w = Matrix::zeros(2, 2);
            for v in w.data_mut() {
                *v = rng.uniform_in(-5.0, 5.0);
            }
            let la = empirical_unhinged_loss_via_trace(&w, &ca).unwrap();
            let lb = empirical_unhinged_loss_via_trace(&w, &cb).unwrap();
            assert!((la - lb).abs() < 1e-10);
        }
    }

    #[test]
    fn gradient_identity_matches_backward() {
        // The analytic gradient of the empirical unhinged loss w.r.t. W is
        // exactly -mu, independent of W: cross-check against the model
        // backward pass on a linear network.
        use crate::losses::LossSpec;
        use crate::training::{backward, Activation, MlpModel, ScoreNorm};
        let mut rng = Prng::from_seed(7);
        let data = random_dataset(&mut rng, 15, 3, 2);
        let cen = compute_centroid(&data, identity_features).unwrap();
        let model = MlpModel::zeros(&[2, 3], Activation::Identity, false).unwrap();
        let loss = crate::losses::loss_by_name(&LossSpec::named("unhinged"), 3).unwrap();
        let mut grad_sum = Matrix::zeros(3, 2);
        for i in 0..data.len() {
            let (_, g) = backward(
                &model,
                data.features.row(i),
                data.labels[i],
                &loss,
                &ScoreNorm::None,
            )
            .unwrap();
            for (acc, v) in grad_sum.data_mut().iter_mut().zip(g.weights[0].data()) {
                *acc += v / data.len() as f64;
            }
        }
        for (g, m) in grad_sum.data().iter().zip(cen.mu.data()) {
            assert!((g + m).abs() < 1e-12, "gradient {g} vs -mu {}", -m);
        }
    }

    #[test]
    fn bias_feature_map_appends_one() {
        let features = Matrix::from_rows(vec![vec![1.0, 0.0]]).unwrap();
        let data = LabeledDataset::new(features, vec![0], 2).unwrap();
        let cen = compute_centroid(&data, bias_features).unwrap();
        assert_eq!(cen.mu.cols(), 3);
        assert_abs_diff_eq!(cen.mu.get(0, 2), 0.5, epsilon = 1e-16);
    }
}
