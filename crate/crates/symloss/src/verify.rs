//! Numerical certification of loss-function properties: symmetry,
//! invariance to permutations, local equivalence to the multi-class
//! unhinged loss, remainder bounds for linear approximations, and a
//! midpoint-convexity refuter.
//!
//! The properties hold for all `z` in theory; sampling certifies them on a
//! compact box only, and every report states the box, probe count and
//! tolerance. `convexity_probe` is a refuter, not a prover: the absence of
//! witnesses is reported as "no violation found", never as "convex".

use serde::Serialize;

use crate::losses::LossFunction;
use crate::numerics::{dot, norm2, Prng};

/// Step for central finite differences on f64 (used whenever a check needs
/// a derivative the loss does not supply analytically).
pub const FD_STEP: f64 = 1e-6;

/// Outcome of one numerical check.
///
/// Invariant: `passed` if and only if `worst_violation <= tolerance`.
#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    #[serde(rename = "check")]
    pub check_name: String,
    #[serde(rename = "loss")]
    pub loss_name: String,
    pub passed: bool,
    pub worst_violation: f64,
    pub tolerance: f64,
    #[serde(rename = "probes")]
    pub probe_count: usize,
    pub seed: u64,
    pub details: String,
}

impl CheckReport {
    fn new(
        check_name: &str,
        loss_name: &str,
        worst_violation: f64,
        tolerance: f64,
        probe_count: usize,
        seed: u64,
        details: String,
    ) -> Self {
        CheckReport {
            check_name: check_name.into(),
            loss_name: loss_name.into(),
            passed: worst_violation <= tolerance,
            worst_violation,
            tolerance,
            probe_count,
            seed,
            details,
        }
    }

    /// One-line text summary.
    pub fn summary_line(&self) -> String {
        format!(
            "{} {} [{}] worst={:.3e} tol={:.1e} probes={} seed={} {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.check_name,
            self.loss_name,
            self.worst_violation,
            self.tolerance,
            self.probe_count,
            self.seed,
            self.details,
        )
    }
}

/// Check that `sum_k L(z, k)` is constant: the worst deviation of the
/// class sum from its value at `z = 0`, over `probes` points drawn
/// uniformly from `[-box_radius, box_radius]^C`.
pub fn check_symmetry(
    loss: &LossFunction,
    probes: usize,
    box_radius: f64,
    tol: f64,
    seed: u64,
) -> CheckReport {
    let c = loss.num_classes();
    let mut rng = Prng::from_seed(seed);
    let base: f64 = loss
        .class_values(&vec![0.0; c])
        .expect("length matches")
        .iter()
        .sum();
    let mut worst: f64 = 0.0;
    let mut diagnostic = None;
    for _ in 0..probes {
        let z = rng.uniform_box(c, box_radius);
        let sum: f64 = loss.class_values(&z).expect("length matches").iter().sum();
        if !sum.is_finite() {
            worst = f64::INFINITY;
            diagnostic = Some(format!("non-finite class sum at z = {z:?}"));
            break;
        }
        worst = worst.max((sum - base).abs());
    }
    let details = diagnostic.unwrap_or_else(|| {
        format!("class-sum deviation from z=0 over [-{box_radius},{box_radius}]^{c}")
    });
    CheckReport::new("symmetry", loss.name(), worst, tol, probes, seed, details)
}

/// Check `L(tau(z), tau(y)) = L(z, y)` for random permutations and probes.
pub fn check_permutation_invariance(
    loss: &LossFunction,
    probes: usize,
    tol: f64,
    seed: u64,
) -> CheckReport {
    let c = loss.num_classes();
    let mut rng = Prng::from_seed(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..probes {
        let z = rng.uniform_box(c, 10.0);
        let y = rng.below(c);
        let mut tau: Vec<usize> = (0..c).collect();
        rng.shuffle(&mut tau);
        let mut tz = vec![0.0; c];
        for (j, &tj) in tau.iter().enumerate() {
            tz[tj] = z[j];
        }
        let a = loss.value(&z, y).expect("validated");
        let b = loss.value(&tz, tau[y]).expect("validated");
        worst = worst.max((a - b).abs());
    }
    CheckReport::new(
        "permutation_invariance",
        loss.name(),
        worst,
        tol,
        probes,
        seed,
        format!("random permutations over [-10,10]^{c}"),
    )
}

/// The linearization of a loss at an anchor point: per-class gradients and
/// how well they match a common positive multiple of the unhinged
/// direction `(1/C) 1 - e_y`.
#[derive(Debug, Clone)]
pub struct LocalLinearization {
    /// `g_y = grad L(z, y)` at the anchor, one per class.
    pub gradients: Vec<Vec<f64>>,
    /// Norm of `sum_y g_y` (zero when the linearized loss is symmetric).
    pub class_sum_norm: f64,
    /// Cosine alignment of each `g_y` with the unhinged direction.
    pub alignments: Vec<f64>,
    /// Least-squares scalar `s_y` with `g_y ~ s_y * ((1/C) 1 - e_y)`.
    pub scalars: Vec<f64>,
    /// Mean of the per-class scalars (the "Constant" of the linear form).
    pub scalar_mean: f64,
    /// Smallest gradient norm across classes.
    pub min_gradient_norm: f64,
}

/// Compute the linearization diagnostics of `loss` at an arbitrary anchor.
pub fn local_linearization(loss: &LossFunction, anchor: &[f64]) -> LocalLinearization {
    let c = loss.num_classes();
    let mut gradients = Vec::with_capacity(c);
    for y in 0..c {
        gradients.push(loss.gradient(anchor, y).expect("validated"));
    }
    let mut class_sum = vec![0.0; c];
    for g in &gradients {
        for (s, v) in class_sum.iter_mut().zip(g) {
            *s += v;
        }
    }
    let mut alignments = Vec::with_capacity(c);
    let mut scalars = Vec::with_capacity(c);
    let mut min_norm = f64::INFINITY;
    for (y, g) in gradients.iter().enumerate() {
        let mut target = vec![1.0 / c as f64; c];
        target[y] -= 1.0;
        let tn = norm2(&target);
        let gn = norm2(g);
        min_norm = min_norm.min(gn);
        let inner = dot(g, &target);
        alignments.push(if gn > 0.0 { inner / (gn * tn) } else { 0.0 });
        scalars.push(inner / (tn * tn));
    }
    let scalar_mean = scalars.iter().sum::<f64>() / c as f64;
    LocalLinearization {
        gradients,
        class_sum_norm: norm2(&class_sum),
        alignments,
        scalars,
        scalar_mean,
        min_gradient_norm: min_norm,
    }
}

/// Check that the linearization of `loss` at `z' = anchor_value * 1` is
/// equivalent to the multi-class unhinged loss: every per-class gradient
/// must be the same positive multiple of `(1/C) 1 - e_y`, with cosine
/// alignment at least `1 - tol`.
///
/// The reported scalar is that common multiple. Positivity is required
/// because the loss is non-increasing; the sign is checked rather than
/// assumed. A gradient below 1e-12 in norm makes the linearization trivial
/// and the check inapplicable (reported as a critical point).
pub fn check_local_unhinged(loss: &LossFunction, anchor_value: f64, tol: f64) -> CheckReport {
    let anchor = vec![anchor_value; loss.num_classes()];
    check_local_unhinged_at(loss, &anchor, tol)
}

/// [`check_local_unhinged`] at an arbitrary anchor point. Away from the
/// equal-component line the linearization of a symmetric loss stays
/// symmetric but can fail invariance to permutations, which this check
/// then flags.
pub fn check_local_unhinged_at(loss: &LossFunction, anchor: &[f64], tol: f64) -> CheckReport {
    let c = loss.num_classes();
    let lin = local_linearization(loss, anchor);
    if lin.min_gradient_norm < 1e-12 {
        return CheckReport::new(
            "local_unhinged",
            loss.name(),
            f64::INFINITY,
            tol,
            c,
            0,
            "critical point: gradient vanishes at the anchor, linearization trivial".into(),
        );
    }
    let mut worst: f64 = 0.0;
    for &a in &lin.alignments {
        worst = worst.max(1.0 - a);
    }
    let symmetric_lin = lin.class_sum_norm < 1e-9;
    if lin.scalar_mean <= 0.0 {
        worst = f64::INFINITY;
    } else {
        for &s in &lin.scalars {
            worst = worst.max((s / lin.scalar_mean - 1.0).abs());
        }
    }
    let verdict = if worst <= tol {
        format!(
            "gradients equal {:.6e} * ((1/C)1 - e_y) at every class",
            lin.scalar_mean
        )
    } else if symmetric_lin {
        "linearization is symmetric but not permutation-invariant: \
         per-class gradients are not a common multiple of the unhinged direction"
            .to_string()
    } else {
        "linearization is neither symmetric nor a multiple of the unhinged direction".to_string()
    };
    CheckReport::new(
        "local_unhinged",
        loss.name(),
        worst,
        tol,
        c,
        0,
        format!("anchor {anchor:?}; scalar {:.6e}; {verdict}", lin.scalar_mean),
    )
}

/// Estimate the spectral norm of the Hessian of `loss(., y)` at `z` by
/// central finite differences of the analytic gradient plus power
/// iteration on the symmetrized matrix.
pub fn hessian_spectral_norm(loss: &LossFunction, z: &[f64], y: usize) -> f64 {
    let c = loss.num_classes();
    let h = 1e-5;
    // Column i: (grad(z + h e_i) - grad(z - h e_i)) / (2h).
    let mut cols = Vec::with_capacity(c);
    let mut zp = z.to_vec();
    for i in 0..c {
        zp[i] = z[i] + h;
        let gp = loss.gradient(&zp, y).expect("validated");
        zp[i] = z[i] - h;
        let gm = loss.gradient(&zp, y).expect("validated");
        zp[i] = z[i];
        cols.push(
            gp.iter()
                .zip(&gm)
                .map(|(a, b)| (a - b) / (2.0 * h))
                .collect::<Vec<f64>>(),
        );
    }
    // Symmetrize and power-iterate.
    let mut hmat = vec![vec![0.0; c]; c];
    for i in 0..c {
        for j in 0..c {
            hmat[i][j] = 0.5 * (cols[j][i] + cols[i][j]);
        }
    }
    let mut v: Vec<f64> = (0..c).map(|i| 1.0 + 0.01 * i as f64).collect();
    let mut lambda = 0.0;
    for _ in 0..200 {
        let mut w = vec![0.0; c];
        for i in 0..c {
            w[i] = dot(&hmat[i], &v);
        }
        let n = norm2(&w);
        if n < 1e-300 {
            return 0.0;
        }
        for x in &mut w {
            *x /= n;
        }
        lambda = n;
        v = w;
    }
    lambda
}

/// Check the remainder bound `|L(z,y) - L(0,y) - grad L(0,y)^T z| <=
/// (beta/2) ||z||^2` over random probes in `[-box_radius, box_radius]^C`.
///
/// When `beta_estimate` is absent it is estimated as the maximum
/// finite-difference Hessian spectral norm over the probe points and the
/// scaled points `t*z`, `t in {1/4, 1/2, 3/4, 1}`, so the segments joining
/// the origin to each probe are covered. Passes when the worst violation
/// is at most 1e-9 (slack for float rounding in the linear identity).
pub fn check_remainder_bound(
    loss: &LossFunction,
    beta_estimate: Option<f64>,
    probes: usize,
    box_radius: f64,
    seed: u64,
) -> CheckReport {
    let c = loss.num_classes();
    let mut rng = Prng::from_seed(seed);
    let zs: Vec<Vec<f64>> = (0..probes).map(|_| rng.uniform_box(c, box_radius)).collect();

    let beta = match beta_estimate {
        Some(b) => b,
        None => {
            let mut best: f64 = 0.0;
            for z in &zs {
                for t in [0.25, 0.5, 0.75, 1.0] {
                    let zt: Vec<f64> = z.iter().map(|v| v * t).collect();
                    for y in 0..c {
                        best = best.max(hessian_spectral_norm(loss, &zt, y));
                    }
                }
            }
            best
        }
    };

    let origin = vec![0.0; c];
    let l0: Vec<f64> = (0..c)
        .map(|y| loss.value(&origin, y).expect("validated"))
        .collect();
    let g0: Vec<Vec<f64>> = (0..c)
        .map(|y| loss.gradient(&origin, y).expect("validated"))
        .collect();

    let mut worst = f64::NEG_INFINITY;
    for z in &zs {
        let zz = dot(z, z);
        for y in 0..c {
            let remainder =
                (loss.value(z, y).expect("validated") - l0[y] - dot(&g0[y], z)).abs();
            worst = worst.max(remainder - 0.5 * beta * zz);
        }
    }
    CheckReport::new(
        "remainder_bound",
        loss.name(),
        worst,
        1e-9,
        probes,
        seed,
        format!(
            "beta = {beta:.6e}{}; box [-{box_radius},{box_radius}]^{c}",
            if beta_estimate.is_some() {
                " (supplied)"
            } else {
                " (max FD Hessian spectral norm over segment-sampled probes)"
            }
        ),
    )
}

/// Midpoint-convexity sampler. A "violation" is a triple with
/// `L((z+z')/2, y) > (L(z,y) + L(z',y))/2 + 1e-10`; `passed` means no
/// violation was found, which is evidence, not a proof, of convexity.
pub fn convexity_probe(loss: &LossFunction, probes: usize, seed: u64) -> CheckReport {
    let c = loss.num_classes();
    let mut rng = Prng::from_seed(seed);
    let tol = 1e-10;
    let mut worst = f64::NEG_INFINITY;
    let mut witness = None;
    for _ in 0..probes {
        let z1 = rng.uniform_box(c, 10.0);
        let z2 = rng.uniform_box(c, 10.0);
        let y = rng.below(c);
        let mid: Vec<f64> = z1.iter().zip(&z2).map(|(a, b)| 0.5 * (a + b)).collect();
        let excess = loss.value(&mid, y).expect("validated")
            - 0.5 * (loss.value(&z1, y).expect("validated")
                + loss.value(&z2, y).expect("validated"));
        if excess > worst {
            worst = excess;
            if excess > tol {
                witness = Some((z1.clone(), z2.clone(), y));
            }
        }
    }
    let details = match witness {
        Some((z1, z2, y)) => format!(
            "midpoint-convexity violation witness at y={y}, z={z1:?}, z'={z2:?}"
        ),
        None => format!(
            "no violation found within {probes} probes in [-10,10]^{c} (not a convexity proof)"
        ),
    };
    CheckReport::new("convexity_probe", loss.name(), worst, tol, probes, seed, details)
}

/// Worst relative error between the analytic gradient and a central
/// finite-difference gradient over random probes.
///
/// The per-component error is `|a - f| / max(|a|, |f|, 1e-2)`; the floor
/// absorbs finite-difference round-off on large loss values while still
/// exposing wrong gradients of any meaningful size.
pub fn gradient_check(loss: &LossFunction, probes: usize, box_radius: f64, seed: u64) -> CheckReport {
    let c = loss.num_classes();
    let mut rng = Prng::from_seed(seed);
    let h = FD_STEP;
    let mut worst: f64 = 0.0;
    for _ in 0..probes {
        let z = rng.uniform_box(c, box_radius);
        let y = rng.below(c);
        let analytic = loss.gradient(&z, y).expect("validated");
        let mut zp = z.clone();
        for i in 0..c {
            zp[i] = z[i] + h;
            let fp = loss.value(&zp, y).expect("validated");
            zp[i] = z[i] - h;
            let fm = loss.value(&zp, y).expect("validated");
            zp[i] = z[i];
            let fd = (fp - fm) / (2.0 * h);
            let denom = analytic[i].abs().max(fd.abs()).max(1e-2);
            worst = worst.max((analytic[i] - fd).abs() / denom);
        }
    }
    CheckReport::new(
        "gradient_fd",
        loss.name(),
        worst,
        1e-5,
        probes,
        seed,
        format!("central differences, h = {h:.0e}, box [-{box_radius},{box_radius}]^{c}"),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::losses::{
        alpha_mae, cosine_similarity_loss, cross_entropy, dirichlet_loss, gce, mae,
        mse_classification, multiclass_unhinged, sgce, symmetrize, AlphaMaeParams,
        DirichletParams, LossFunction, LossMetadata, SgceParams,
    };
    use crate::numerics::Prng;

    fn full_zoo(c: usize) -> Vec<LossFunction> {
        let mut zoo = vec![
            cross_entropy(c).unwrap(),
            mae(c).unwrap(),
            gce(c, SgceParams::new(0.5).unwrap()).unwrap(),
            gce(c, SgceParams::new(0.65).unwrap()).unwrap(),
            mse_classification(c).unwrap(),
            cosine_similarity_loss(c).unwrap(),
            multiclass_unhinged(c).unwrap(),
            symmetrize(&mse_classification(c).unwrap()),
            symmetrize(&cosine_similarity_loss(c).unwrap()),
        ];
        for q in [0.2, 0.65, 1.0] {
            zoo.push(sgce(c, SgceParams::new(q).unwrap()).unwrap());
        }
        for a in [0.0, 0.25, 1.0, 2.0, 4.0] {
            zoo.push(alpha_mae(c, AlphaMaeParams::new(a).unwrap()).unwrap());
        }
        zoo.push(
            dirichlet_loss(
                &cross_entropy(c).unwrap(),
                &DirichletParams::constant((c as f64 - 1.0) / c as f64, c).unwrap(),
            )
            .unwrap(),
        );
        zoo
    }

    #[test]
    fn symmetry_check_basic_outcomes() {
        let unh = multiclass_unhinged(4).unwrap();
        let rep = check_symmetry(&unh, 2000, 10.0, 1e-10, 0);
        assert!(rep.passed, "{}", rep.summary_line());

        let ce = cross_entropy(3).unwrap();
        let rep = check_symmetry(&ce, 200, 10.0, 1e-8, 0);
        assert!(!rep.passed);
        // Direct witness: the CE class sum differs between z = 0 and (1,0,0).
        let s0 = ce.class_sum(&[0.0; 3]).unwrap();
        let s1 = ce.class_sum(&[1.0, 0.0, 0.0]).unwrap();
        assert!((s0 - s1).abs() > 1e-2);

        let s = sgce(10, SgceParams::new(0.65).unwrap()).unwrap();
        let rep = check_symmetry(&s, 2000, 10.0, 1e-8, 0);
        assert!(rep.passed, "{}", rep.summary_line());
    }

    #[test]
    fn symmetry_of_every_symmetrized_base() {
        for c in [2usize, 3, 7] {
            for base in [
                cross_entropy(c).unwrap(),
                mae(c).unwrap(),
                gce(c, SgceParams::new(0.5).unwrap()).unwrap(),
                mse_classification(c).unwrap(),
                cosine_similarity_loss(c).unwrap(),
            ] {
                let sym = symmetrize(&base);
                let rep = check_symmetry(&sym, 1000, 10.0, 1e-8, 1);
                assert!(rep.passed, "{}", rep.summary_line());
            }
        }
    }

    #[test]
    fn permutation_invariance_outcomes() {
        let ce = cross_entropy(4).unwrap();
        assert!(check_permutation_invariance(&ce, 1000, 1e-10, 2).passed);

        // The label-weighted linear loss -(y+1) z_y breaks the invariance.
        let c = 3;
        let weighted = LossFunction::from_parts(
            "label_weighted_linear",
            c,
            |z, y| -((y + 1) as f64) * z[y],
            move |z, y| {
                let mut g = vec![0.0; z.len()];
                g[y] = -((y + 1) as f64);
                g
            },
            LossMetadata {
                claims_symmetric: false,
                claims_permutation_invariant: false,
                claims_non_increasing: true,
            },
        );
        assert!(!check_permutation_invariance(&weighted, 1000, 1e-10, 2).passed);
    }

    /// Three-class linear loss that is symmetric and non-increasing but not
    /// permutation-invariant, hence not equivalent to the unhinged.
    fn lopsided_linear() -> LossFunction {
        let rows = [
            vec![-1.0, 1.0, 1.0],
            vec![1.0, -1.0, 0.0],
            vec![0.0, 0.0, -1.0],
        ];
        let rows_v = rows.clone();
        LossFunction::from_parts(
            "lopsided_linear",
            3,
            move |z, y| crate::numerics::dot(&rows_v[y], z),
            move |_z, y| rows[y].clone(),
            LossMetadata {
                claims_symmetric: true,
                claims_permutation_invariant: false,
                claims_non_increasing: true,
            },
        )
    }

    #[test]
    fn lopsided_linear_separates_the_two_checks() {
        let loss = lopsided_linear();
        assert!(check_symmetry(&loss, 1000, 10.0, 1e-10, 3).passed);
        assert!(!check_permutation_invariance(&loss, 1000, 1e-10, 3).passed);
        assert!(!check_local_unhinged(&loss, 0.0, 1e-8).passed);
    }

    #[test]
    fn local_unhinged_at_equal_components() {
        let ce = cross_entropy(3).unwrap();
        let rep = check_local_unhinged(&ce, 0.0, 1e-8);
        assert!(rep.passed, "{}", rep.summary_line());
        let lin = local_linearization(&ce, &[0.0; 3]);
        assert!((lin.scalar_mean - 1.0).abs() < 1e-12);

        // MAE at the origin: scalar is the common gradient multiple, which
        // finite differences confirm equals 1/C at the uniform softmax.
        let m = mae(3).unwrap();
        let rep = check_local_unhinged(&m, 0.0, 1e-8);
        assert!(rep.passed);
        let lin = local_linearization(&m, &[0.0; 3]);
        let h = 1e-6;
        let fd = (m.value(&[h, 0.0, 0.0], 0).unwrap() - m.value(&[-h, 0.0, 0.0], 0).unwrap())
            / (2.0 * h);
        // fd is the y-component of g_0 = s * (1/C - 1).
        let scalar_from_fd = fd / (1.0 / 3.0 - 1.0);
        assert!((lin.scalar_mean - scalar_from_fd).abs() < 1e-6);
        assert!((lin.scalar_mean - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn local_unhinged_fails_off_axis_for_mae() {
        let m = mae(3).unwrap();
        let rep = check_local_unhinged_at(&m, &[1.0, 0.0, 0.0], 1e-8);
        assert!(!rep.passed);
        assert!(
            rep.details.contains("not permutation-invariant"),
            "details: {}",
            rep.details
        );
    }

    #[test]
    fn local_unhinged_critical_point_reported() {
        // A constant loss has zero gradient everywhere.
        let constant = LossFunction::from_parts(
            "constant",
            3,
            |_z, _y| 1.0,
            |z, _y| vec![0.0; z.len()],
            LossMetadata {
                claims_symmetric: true,
                claims_permutation_invariant: true,
                claims_non_increasing: true,
            },
        );
        let rep = check_local_unhinged(&constant, 0.0, 1e-8);
        assert!(!rep.passed);
        assert!(rep.details.contains("critical point"));
    }

    #[test]
    fn prop3_composite_property_over_zoo() {
        // Any loss passing both symmetry and permutation invariance with a
        // nonzero gradient at c*1 must linearize to the unhinged there.
        for loss in full_zoo(3) {
            let sym = check_symmetry(&loss, 1000, 5.0, 1e-8, 4);
            let perm = check_permutation_invariance(&loss, 1000, 1e-10, 4);
            if !(sym.passed && perm.passed) {
                continue;
            }
            for anchor in [-1.0, 0.0, 1.0] {
                let lin = local_linearization(&loss, &[anchor; 3]);
                if lin.min_gradient_norm < 1e-12 {
                    continue;
                }
                let rep = check_local_unhinged(&loss, anchor, 1e-8);
                assert!(
                    rep.passed,
                    "loss {} anchor {anchor}: {}",
                    loss.name(),
                    rep.summary_line()
                );
            }
        }
    }

    #[test]
    fn remainder_bound_outcomes() {
        let unh = multiclass_unhinged(5).unwrap();
        let rep = check_remainder_bound(&unh, Some(0.0), 200, 10.0, 5);
        assert!(rep.passed, "{}", rep.summary_line());

        let ce = cross_entropy(3).unwrap();
        let rep = check_remainder_bound(&ce, Some(0.0), 200, 10.0, 5);
        assert!(!rep.passed);
        let rep = check_remainder_bound(&ce, None, 100, 5.0, 5);
        assert!(rep.passed, "{}", rep.summary_line());
    }

    #[test]
    fn remainder_bound_alpha_scaling() {
        // The curvature of alpha-MAE is alpha * C times the MAE curvature,
        // so the beta estimated at alpha = 1 bounds alpha = 2 after doubling.
        let c = 3;
        let a1 = alpha_mae(c, AlphaMaeParams::new(1.0).unwrap()).unwrap();
        let a2 = alpha_mae(c, AlphaMaeParams::new(2.0).unwrap()).unwrap();
        let mut rng = Prng::from_seed(6);
        let mut beta1: f64 = 0.0;
        for _ in 0..60 {
            let z = rng.uniform_box(c, 5.0);
            for t in [0.25, 0.5, 0.75, 1.0] {
                let zt: Vec<f64> = z.iter().map(|v| v * t).collect();
                for y in 0..c {
                    beta1 = beta1.max(hessian_spectral_norm(&a1, &zt, y));
                }
            }
        }
        let rep = check_remainder_bound(&a2, Some(2.0 * beta1), 200, 5.0, 6);
        assert!(rep.passed, "{}", rep.summary_line());
    }

    #[test]
    fn convexity_probe_outcomes() {
        let unh = multiclass_unhinged(3).unwrap();
        assert!(convexity_probe(&unh, 2000, 7).passed);

        let ce = cross_entropy(3).unwrap();
        assert!(convexity_probe(&ce, 2000, 7).passed);

        // Every implemented symmetric loss except the unhinged has a
        // non-convexity witness; sym-MAE is the canonical case.
        let sym_mae = symmetrize(&mae(3).unwrap());
        let rep = convexity_probe(&sym_mae, 10_000, 7);
        assert!(!rep.passed, "{}", rep.summary_line());
        assert!(rep.details.contains("witness"));
    }

    #[test]
    fn gradient_check_over_zoo() {
        for c in [2usize, 3, 10] {
            for loss in full_zoo(c) {
                let rep = gradient_check(&loss, 200, 3.0, 8);
                assert!(rep.passed, "{}", rep.summary_line());
            }
        }
    }

    #[test]
    fn symmetrize_is_idempotent_and_decomposition_exact() {
        let mut rng = Prng::from_seed(9);
        for c in [2usize, 4] {
            for base in [cross_entropy(c).unwrap(), mse_classification(c).unwrap()] {
                let sym = symmetrize(&base);
                let sym2 = symmetrize(&sym);
                for _ in 0..200 {
                    let z = rng.uniform_box(c, 10.0);
                    let y = rng.below(c);
                    let d = (sym.value(&z, y).unwrap() - sym2.value(&z, y).unwrap()).abs();
                    assert!(d < 1e-12);
                    // The removed component is class-insensitive: the
                    // remainder L - L_sym must not depend on y.
                    let r0 = base.value(&z, 0).unwrap() - sym.value(&z, 0).unwrap();
                    let ry = base.value(&z, y).unwrap() - sym.value(&z, y).unwrap();
                    assert!((r0 - ry).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn metadata_claims_hold_for_zoo() {
        for c in [2usize, 3, 5] {
            for loss in full_zoo(c) {
                let meta = loss.metadata();
                if meta.claims_symmetric {
                    let rep = check_symmetry(&loss, 1000, 10.0, 1e-8, 10);
                    assert!(rep.passed, "{}", rep.summary_line());
                }
                if meta.claims_permutation_invariant {
                    let rep = check_permutation_invariance(&loss, 1000, 1e-10, 10);
                    assert!(rep.passed, "{}", rep.summary_line());
                }
            }
        }
    }

    #[test]
    fn non_increasing_claims_hold_on_monotone_probes() {
        let mut rng = Prng::from_seed(12);
        for c in [2usize, 4] {
            for loss in full_zoo(c) {
                if !loss.metadata().claims_non_increasing {
                    continue;
                }
                for _ in 0..300 {
                    let z = rng.uniform_box(c, 8.0);
                    let y = rng.below(c);
                    let mut z2 = z.clone();
                    z2[y] += rng.uniform_in(0.0, 4.0);
                    let v1 = loss.value(&z, y).unwrap();
                    let v2 = loss.value(&z2, y).unwrap();
                    assert!(
                        v2 <= v1 + 1e-12,
                        "loss {} increased from {v1} to {v2}",
                        loss.name()
                    );
                }
            }
        }
    }

    #[test]
    fn report_serializes_with_documented_keys() {
        let rep = check_symmetry(&multiclass_unhinged(3).unwrap(), 10, 10.0, 1e-10, 0);
        let json = serde_json::to_value(&rep).unwrap();
        for key in [
            "check",
            "loss",
            "passed",
            "worst_violation",
            "tolerance",
            "probes",
            "seed",
            "details",
        ] {
            assert!(json.get(key).is_some(), "missing key {key}");
        }
    }
}
