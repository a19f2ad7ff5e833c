//! The corrupted-risk decomposition, enumerated exactly.
//!
//! Under uniform label resampling with rate p, the risk on corrupted
//! labels splits into `(p/C) E[sum_k L] + (1 - p) * clean risk` for every
//! loss. For symmetric losses the first term is constant, so corrupted-
//! and clean-risk minimizers coincide -- shown here on a finite hypothesis
//! grid.
//!
//! ```bash
//! cargo run --release --example noise_identity
//! ```

use symloss::losses::{cross_entropy, multiclass_unhinged, sgce, SgceParams};
use symloss::noise::{clean_risk, corrupted_risk_identity_oracle, eta_to_p};
use symloss::numerics::Prng;

fn random_points(c: usize, n: usize, seed: u64) -> Vec<(Vec<f64>, Vec<f64>)> {
    let mut rng = Prng::from_seed(seed);
    (0..n)
        .map(|_| {
            let z = rng.uniform_box(c, 5.0);
            let mut d: Vec<f64> = (0..c).map(|_| rng.uniform() + 1e-3).collect();
            let s: f64 = d.iter().sum();
            for v in &mut d {
                *v /= s;
            }
            (z, d)
        })
        .collect()
}

fn main() {
    let c = 4;
    println!("flip rate eta vs resampling rate p = C eta / (C - 1), C = 10:");
    for eta in [0.0, 0.4, 0.8] {
        println!("  eta = {eta:.1}  ->  p = {:.6}", eta_to_p(eta, 10).unwrap());
    }

    let points = random_points(c, 100, 1);
    let ce = cross_entropy(c).unwrap();
    let unh = multiclass_unhinged(c).unwrap();

    println!("\nidentity residual |lhs - rhs| over 100 points (holds for every loss):");
    for loss in [&ce, &unh] {
        for p in [0.0, 0.3, 0.6, 0.89] {
            let (lhs, rhs) = corrupted_risk_identity_oracle(loss, &points, p).unwrap();
            println!(
                "  {:<10} p = {p:.2}: lhs = {lhs:+.6}, rhs = {rhs:+.6}, residual = {:.2e}",
                loss.name(),
                (lhs - rhs).abs()
            );
        }
    }

    println!("\nfor the unhinged (class sum 0) the corrupted risk is exactly (1-p) * clean:");
    let clean = clean_risk(&unh, &points).unwrap();
    for p in [0.3, 0.6, 0.89] {
        let (lhs, _) = corrupted_risk_identity_oracle(&unh, &points, p).unwrap();
        println!(
            "  p = {p:.2}: corrupted = {lhs:+.6}, (1-p) * clean = {:+.6}",
            (1.0 - p) * clean
        );
    }

    // Argmin preservation on a finite hypothesis grid.
    let loss = sgce(c, SgceParams::new(0.65).unwrap()).unwrap();
    let mut rng = Prng::from_seed(2);
    let hypotheses: Vec<Vec<(Vec<f64>, Vec<f64>)>> = (0..8)
        .map(|_| {
            points
                .iter()
                .map(|(_, d)| (rng.uniform_box(c, 5.0), d.clone()))
                .collect()
        })
        .collect();
    println!("\nargmin over 8 hypotheses under sgce(0.65):");
    for p in [0.0, 0.3, 0.6, 0.89] {
        let risks: Vec<f64> = hypotheses
            .iter()
            .map(|h| corrupted_risk_identity_oracle(&loss, h, p).unwrap().0)
            .collect();
        let argmin = risks
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.partial_cmp(b.1).unwrap())
            .unwrap()
            .0;
        println!("  p = {p:.2}: argmin = hypothesis {argmin}");
    }
    println!("(the argmin is invariant in p: symmetric losses ignore uniform corruption)");
}
