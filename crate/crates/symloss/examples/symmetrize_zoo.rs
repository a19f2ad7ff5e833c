//! The symmetrization operator and the loss family it generates.
//!
//! Prints the class sum of each loss at a few score vectors (constant for
//! symmetric losses, varying otherwise) and demonstrates the two closed
//! forms: symmetrized cross-entropy is the multi-class unhinged loss, and
//! symmetrized MSE is an affine image of the MAE.
//!
//! ```bash
//! cargo run --release --example symmetrize_zoo
//! ```

use symloss::losses::{
    alpha_mae, binary_odd_part, cross_entropy, dirichlet_loss, gce, mae, mse_classification,
    multiclass_unhinged, sgce, symmetrize, AlphaMaeParams, DirichletParams, SgceParams,
};
use symloss::numerics::Prng;

fn main() {
    let c = 4;
    let probes: Vec<Vec<f64>> = {
        let mut rng = Prng::from_seed(0);
        (0..3).map(|_| rng.uniform_box(c, 5.0)).collect()
    };

    let zoo = vec![
        cross_entropy(c).unwrap(),
        mae(c).unwrap(),
        gce(c, SgceParams::new(0.5).unwrap()).unwrap(),
        mse_classification(c).unwrap(),
        multiclass_unhinged(c).unwrap(),
        sgce(c, SgceParams::new(0.65).unwrap()).unwrap(),
        alpha_mae(c, AlphaMaeParams::new(2.0).unwrap()).unwrap(),
        symmetrize(&cross_entropy(c).unwrap()),
        symmetrize(&mse_classification(c).unwrap()),
        dirichlet_loss(
            &cross_entropy(c).unwrap(),
            &DirichletParams::constant((c as f64 - 1.0) / c as f64, c).unwrap(),
        )
        .unwrap(),
    ];

    println!("class sums at three random score vectors (C = {c}):");
    println!("{:<28} {:>12} {:>12} {:>12}  symmetric?", "loss", "z1", "z2", "z3");
    for loss in &zoo {
        let sums: Vec<f64> = probes.iter().map(|z| loss.class_sum(z).unwrap()).collect();
        println!(
            "{:<28} {:>12.6} {:>12.6} {:>12.6}  {}",
            loss.name(),
            sums[0],
            sums[1],
            sums[2],
            if loss.metadata().claims_symmetric { "yes" } else { "no" }
        );
    }

    println!("\nsymmetrize(ce) vs unhinged at a random probe:");
    let sym_ce = symmetrize(&cross_entropy(c).unwrap());
    let unh = multiclass_unhinged(c).unwrap();
    let z = &probes[0];
    for y in 0..c {
        println!(
            "  y = {y}: sym(ce) = {:+.9}, unhinged = {:+.9}",
            sym_ce.value(z, y).unwrap(),
            unh.value(z, y).unwrap()
        );
    }

    println!("\nsymmetrize(mse) vs 2 * mae + 2/C - 2:");
    let sym_mse = symmetrize(&mse_classification(c).unwrap());
    let m = mae(c).unwrap();
    let shift = 2.0 / c as f64 - 2.0;
    for y in 0..c {
        println!(
            "  y = {y}: sym(mse) = {:+.9}, affine mae = {:+.9}",
            sym_mse.value(z, y).unwrap(),
            2.0 * m.value(z, y).unwrap() + shift
        );
    }

    println!("\nbinary odd part of the logistic potential (equals -z/2):");
    let odd = binary_odd_part(|z: f64| (1.0 + (-z).exp()).ln());
    for z in [-2.0, -0.5, 0.5, 2.0] {
        println!("  odd({z:+.1}) = {:+.6}", odd(z));
    }
}
