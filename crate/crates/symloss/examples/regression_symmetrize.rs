//! Symmetrization for regression under a corruption density.
//!
//! The continuous analogue of the class-sum condition asks that
//! `int q(y) L(z, y) dy` be constant in `z`. Subtracting that integral
//! symmetrizes any loss; for the squared error under uniform[-1, 1] the
//! result has the closed form `-2zy + y^2 - 1/3`, whose z-part is the
//! regression unhinged loss `-zy`. The symmetrized Huber loss has no
//! closed form, but its linearization at 0 is the clipped unhinged
//! `-clip(y, delta) * z`, and clipped targets drive the closed-form
//! ridge-like solution.
//!
//! ```bash
//! cargo run --release --example regression_symmetrize
//! ```

use symloss::numerics::Matrix;
use symloss::regression::{
    check_linear_symmetry, clip, closed_form_regression_weights, huber,
    linearized_symmetrized_huber, regression_unhinged, squared_error, stationarity_residual,
    symmetrize_regression, CorruptionDensity, HuberParams, RegressionLossKind,
};

fn main() {
    let uniform = CorruptionDensity::uniform(1.0).unwrap();
    let gaussian = CorruptionDensity::gaussian(0.0, 1.0).unwrap();

    println!("symmetrized squared error under uniform[-1,1] vs -2zy + y^2 - 1/3:");
    let sym_sq = symmetrize_regression(&squared_error(), &uniform).unwrap();
    for (z, y) in [(1.0, 1.0), (-2.0, 0.5), (3.0, -1.0)] {
        println!(
            "  L_sym({z:+.1}, {y:+.1}) = {:+.9} (closed form {:+.9})",
            sym_sq.value(z, y),
            -2.0 * z * y + y * y - 1.0 / 3.0
        );
    }

    println!("\ncontinuous symmetry: int q(y) L_sym(z, y) dy across z:");
    for base in [squared_error(), huber(HuberParams::new(1.0).unwrap())] {
        let sym = symmetrize_regression(&base, &gaussian).unwrap();
        let vals: Vec<f64> = [-5.0, 0.0, 5.0]
            .iter()
            .map(|&z| gaussian.expectation(|y| sym.value(z, y)))
            .collect();
        println!("  {}: {vals:?}", sym.name());
    }

    println!("\nlinearized symmetrized Huber (delta = 1) vs FD of the numeric symmetrization:");
    let params = HuberParams::new(1.0).unwrap();
    let lin = linearized_symmetrized_huber(params, &gaussian).unwrap();
    let sym_huber = symmetrize_regression(&huber(params), &gaussian).unwrap();
    let h = 1e-5;
    for y in [-2.0, -0.5, 0.5, 2.0] {
        let fd = (sym_huber.value(h, y) - sym_huber.value(-h, y)) / (2.0 * h);
        println!(
            "  y = {y:+.1}: -clip(y, 1) = {:+.6}, FD slope = {fd:+.6}, lin grad = {:+.6}",
            -clip(y, 1.0),
            lin.gradient_z(0.0, y)
        );
    }

    println!("\nregression unhinged -zy at (2, 3): {}", regression_unhinged().value(2.0, 3.0));

    println!("\nclosed-form weights on the one-point dataset x = 2, y = 3, lambda = 1:");
    let features = Matrix::from_rows(vec![vec![2.0]]).unwrap();
    let targets = [3.0];
    for kind in [RegressionLossKind::Unhinged, RegressionLossKind::Clipped { delta: 1.0 }] {
        let w = closed_form_regression_weights(&features, &targets, |x| x.to_vec(), 1.0, kind)
            .unwrap();
        let res = stationarity_residual(&w, &features, &targets, |x| x.to_vec(), 1.0, kind)
            .unwrap();
        println!("  {kind:?}: w = {w:?}, stationarity residual {res:.2e}");
    }

    println!("\nlinear-symmetry criterion E_q[f] = 0:");
    for (name, rep) in [
        ("f(y) = y under N(0,1)", check_linear_symmetry(|y| y, &gaussian)),
        ("f(y) = clip(y, 0.7) under uniform", check_linear_symmetry(|y| clip(y, 0.7), &uniform)),
        ("f(y) = y^2 under N(0,1)", check_linear_symmetry(|y| y * y, &gaussian)),
    ] {
        println!("  {name}: {}", rep.summary_line());
    }
}
