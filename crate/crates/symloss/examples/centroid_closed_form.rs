//! The unhinged data centroid and its identities.
//!
//! For a linear model under the multi-class unhinged loss, the empirical
//! loss is `-Trace(mu W^T)`, the gradient is the constant `-mu`, the
//! norm-constrained minimizer is `radius * mu / ||mu||`, and `||mu||^2`
//! equals the kernel alignment `(1/N^2) sum_ij a_ij k(x_i, x_j)`.
//!
//! ```bash
//! cargo run --release --example centroid_closed_form
//! ```

use symloss::centroid::{
    class_code, closed_form_linear_solution, compute_centroid, empirical_unhinged_loss_direct,
    empirical_unhinged_loss_via_trace, identity_features, kernel_alignment,
};
use symloss::noise::LabeledDataset;
use symloss::numerics::{dot, Matrix, Prng};

fn main() {
    println!("class codes c_y (entries sum to 0):");
    for y in 0..3 {
        println!("  c_{y} = {:?}", class_code(y, 3).unwrap());
    }

    // The worked two-point dataset.
    let features = Matrix::from_rows(vec![vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
    let toy = LabeledDataset::new(features, vec![0, 1], 2).unwrap();
    let cen = compute_centroid(&toy, identity_features).unwrap();
    println!("\ntwo-point dataset x1=(1,0) y=0, x2=(0,1) y=1:");
    println!("  mu = [{:?}, {:?}]", cen.mu.row(0), cen.mu.row(1));
    println!("  ||mu||_F = {}", cen.mu.frobenius_norm());
    println!(
        "  loss at W = mu via trace: {}",
        empirical_unhinged_loss_via_trace(&cen.mu, &cen).unwrap()
    );
    let w = closed_form_linear_solution(&cen, 1.0).unwrap();
    println!("  closed form at radius 1: [{:?}, {:?}]", w.row(0), w.row(1));
    println!(
        "  linear-kernel alignment = {} (equals ||mu||^2)",
        kernel_alignment(&toy, dot)
    );

    // A random dataset: trace identity and the optimality of the closed form.
    let mut rng = Prng::from_seed(3);
    let n = 40;
    let (c, d) = (3, 4);
    let mut feats = Matrix::zeros(n, d);
    for i in 0..n {
        for j in 0..d {
            feats.set(i, j, rng.uniform_in(-2.0, 2.0));
        }
    }
    let labels: Vec<usize> = (0..n).map(|_| rng.below(c)).collect();
    let data = LabeledDataset::new(feats, labels, c).unwrap();
    let cen = compute_centroid(&data, identity_features).unwrap();
    let mut probe = Matrix::zeros(c, d);
    for v in probe.data_mut() {
        *v = rng.uniform_in(-1.0, 1.0);
    }
    println!("\nrandom dataset (N = {n}, C = {c}, d = {d}):");
    println!(
        "  trace identity: -Trace(mu W^T) = {:+.9} vs direct loop = {:+.9}",
        empirical_unhinged_loss_via_trace(&probe, &cen).unwrap(),
        empirical_unhinged_loss_direct(&probe, &data, identity_features).unwrap()
    );
    let radius = 1.0;
    let w_star = closed_form_linear_solution(&cen, radius).unwrap();
    let best = empirical_unhinged_loss_via_trace(&w_star, &cen).unwrap();
    let mut beaten = 0;
    for _ in 0..1000 {
        let mut wr = Matrix::zeros(c, d);
        for v in wr.data_mut() {
            *v = rng.standard_normal();
        }
        let norm = wr.frobenius_norm();
        wr.scale(radius / norm);
        if empirical_unhinged_loss_via_trace(&wr, &cen).unwrap() <= best {
            beaten += 1;
        }
    }
    println!(
        "  closed-form loss {best:+.6}; random equal-norm W matching or beating it: {beaten}/1000"
    );
    println!(
        "  alignment identity residual: {:.2e}",
        (kernel_alignment(&data, dot) - cen.mu.frobenius_norm().powi(2)).abs()
    );
}
