//! Noisy-label robustness experiment on Gaussian blobs.
//!
//! Trains a small MLP on three well-separated 2-d blobs, once on clean
//! labels and once with 40% symmetric label noise, for cross-entropy and
//! for three symmetric losses (multi-class unhinged, SGCE, alpha-MAE).
//! The clean-test accuracy drop between the two runs is the robustness
//! signal.
//!
//! At this learning rate the protocol is identical across losses, and the
//! noise is what separates them: cross-entropy trains perfectly on clean
//! labels but its unbounded per-example gradients destabilize under 40%
//! label noise, while the symmetric losses (with Euclidean score
//! normalization) hold their clean-test accuracy.
//!
//! ```bash
//! cargo run --release --example train_blobs            # 2 seeds (quick)
//! cargo run --release --example train_blobs -- 5       # seeds 0..4
//! ```

use symloss::cli::{gaussian_blobs, SyntheticSpec};
use symloss::losses::LossSpec;
use symloss::noise::{corrupt_labels, NoiseModel};
use symloss::numerics::{derive_seed, Prng};
use symloss::training::{train, Activation, MlpModel, Schedule, ScoreNorm, TrainConfig};

fn run_once(loss: &LossSpec, norm: ScoreNorm, eta: f64, seed: u64) -> f64 {
    let spec = SyntheticSpec {
        num_classes: 3,
        per_class: 1000,
        test_total: 1000,
        dim: 2,
        center_radius: 4.0,
        stddev: 0.8,
        seed: 12345,
    };
    let (clean_train, test) = gaussian_blobs(&spec).expect("valid spec");
    let train_data = if eta > 0.0 {
        let model = NoiseModel::symmetric(eta).expect("valid eta");
        let mut rng = Prng::from_seed(derive_seed(seed, 2));
        corrupt_labels(&clean_train, &model, &mut rng).expect("corruption")
    } else {
        clean_train
    };
    let cfg = TrainConfig {
        epochs: 60,
        batch_size: 16,
        lr: 0.1,
        momentum: 0.9,
        weight_decay: 0.0,
        grad_clip: 5.0,
        schedule: Schedule::Cosine {
            t_max: 60,
            eta_min: 0.0,
        },
        score_norm: norm,
        seed,
        loss: loss.clone(),
    };
    let mut model = MlpModel::init(
        &[2, 32, 32, 3],
        Activation::Relu,
        true,
        &mut Prng::from_seed(derive_seed(seed, 1)),
    )
    .expect("valid dims");
    let record = train(&mut model, &train_data, &test, &cfg).expect("training runs");
    record.epochs.last().expect("at least one epoch").test_accuracy
}

fn main() {
    let seeds: u64 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(2);
    let losses: [(&str, LossSpec, ScoreNorm); 4] = [
        ("ce", LossSpec::named("ce"), ScoreNorm::None),
        ("unhinged", LossSpec::named("unhinged"), ScoreNorm::euclidean()),
        ("sgce(0.65)", LossSpec::named("sgce").with_q(0.65), ScoreNorm::euclidean()),
        (
            "alpha_mae(2.0)",
            LossSpec::named("alpha_mae").with_alpha(2.0),
            ScoreNorm::euclidean(),
        ),
    ];
    println!("{:<15} {:>10} {:>10} {:>8}", "loss", "clean", "eta=0.4", "drop");
    let start = std::time::Instant::now();
    for (name, spec, norm) in &losses {
        let mut clean_acc = 0.0;
        let mut noisy_acc = 0.0;
        for seed in 0..seeds {
            clean_acc += run_once(spec, *norm, 0.0, seed) / seeds as f64;
            noisy_acc += run_once(spec, *norm, 0.4, seed) / seeds as f64;
        }
        println!(
            "{:<15} {:>10.4} {:>10.4} {:>8.4}",
            name,
            clean_acc,
            noisy_acc,
            clean_acc - noisy_acc
        );
    }
    println!("elapsed: {:.1?}", start.elapsed());
}
