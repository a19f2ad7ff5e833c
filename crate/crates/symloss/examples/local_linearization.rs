//! Linear approximations at equal-component anchors.
//!
//! At any point `c * 1` the gradient of a symmetric, permutation-invariant
//! loss is a common positive multiple of the unhinged direction
//! `(1/C) 1 - e_y`, so the loss is locally the multi-class unhinged loss.
//! Cross-entropy, though not symmetric, shares this linearization (it is
//! "locally symmetric"), which is one reason early-stopped CE training
//! already shows some noise robustness.
//!
//! Away from the equal-component line the linearization of a symmetric
//! loss stays symmetric but can lose permutation invariance; the MAE at
//! (1, 0, 0) is the canonical example.
//!
//! ```bash
//! cargo run --release --example local_linearization
//! ```

use symloss::losses::{alpha_mae, cross_entropy, gce, mae, sgce, AlphaMaeParams, SgceParams};
use symloss::verify::{check_local_unhinged, check_local_unhinged_at, local_linearization};

fn main() {
    let c = 3;
    let zoo = vec![
        cross_entropy(c).unwrap(),
        mae(c).unwrap(),
        gce(c, SgceParams::new(0.65).unwrap()).unwrap(),
        sgce(c, SgceParams::new(0.65).unwrap()).unwrap(),
        alpha_mae(c, AlphaMaeParams::new(2.0).unwrap()).unwrap(),
    ];

    println!("linearization at anchors c * 1 (C = {c}); the scalar is the common");
    println!("positive multiple of the unhinged direction:");
    for loss in &zoo {
        for anchor in [-1.0, 0.0, 1.0] {
            let rep = check_local_unhinged(loss, anchor, 1e-8);
            let lin = local_linearization(loss, &vec![anchor; c]);
            println!(
                "  {:<22} anchor {anchor:+.0}: {} scalar {:+.6}",
                loss.name(),
                if rep.passed { "unhinged-equivalent," } else { "NOT equivalent,     " },
                lin.scalar_mean
            );
        }
    }

    println!("\nmae at the non-equal anchor (1, 0, 0):");
    let m = mae(c).unwrap();
    let rep = check_local_unhinged_at(&m, &[1.0, 0.0, 0.0], 1e-8);
    println!("  {}", rep.summary_line());
    let lin = local_linearization(&m, &[1.0, 0.0, 0.0]);
    println!("  class-sum norm of the gradients: {:.3e} (symmetric linearization)", lin.class_sum_norm);
    for (y, g) in lin.gradients.iter().enumerate() {
        println!("  grad at y = {y}: {g:?}");
    }
}
