//! Binary-level tests of the `symloss` CLI: exit codes, emitted JSON, and
//! the seed-precedence contract.

use std::path::Path;
use std::process::{Command, Output};

fn symloss(args: &[&str]) -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_symloss"));
    cmd.args(args);
    cmd
}

fn run(cmd: &mut Command) -> Output {
    cmd.output().expect("binary runs")
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

fn train_config(dir: &Path, loss_lines: &str, noise_eta: f64, epochs: usize, seed: u64) -> String {
    format!(
        "dataset.source = blobs\n\
         dataset.classes = 3\n\
         dataset.per_class = 200\n\
         dataset.test_total = 150\n\
         dataset.dim = 2\n\
         dataset.center_radius = 4.0\n\
         dataset.stddev = 0.8\n\
         dataset.seed = 11\n\
         noise.kind = symmetric\n\
         noise.eta = {noise_eta}\n\
         model.hidden = 16\n\
         model.activation = relu\n\
         model.bias = true\n\
         {loss_lines}\n\
         train batchsize = 32\n\
         total epoch = {epochs}\n\
         learning rate = 0.05\n\
         momentum = 0.9\n\
         weight decay = 0.0001\n\
         gradient bound = 5.0\n\
         scheduler = cosine\n\
         T_max = {epochs}\n\
         eta_min = 0.0\n\
         seed = {seed}\n\
         output = {}\n",
        dir.join("record.json").display()
    )
}

#[test]
fn symcheck_exit_codes_match_symmetry() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.json");

    let out = run(symloss(&["symcheck", "--loss", "unhinged", "--classes", "10"]).arg("--out").arg(&report));
    assert_eq!(exit_code(&out), 0, "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(doc["schema"], "symloss-report/1");
    assert!(doc["reports"].as_array().unwrap().iter().all(|r| r["passed"] == true));

    let out = run(symloss(&["symcheck", "--loss", "ce", "--classes", "10"]).arg("--out").arg(&report));
    assert_eq!(exit_code(&out), 1);
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    let symmetry = doc["reports"]
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["check"] == "symmetry")
        .expect("symmetry report present");
    assert_eq!(symmetry["passed"], false);

    let out = run(&mut symloss(&[
        "symcheck", "--loss", "sgce", "--q", "0.65", "--classes", "100",
    ]));
    assert_eq!(exit_code(&out), 0);

    let out = run(&mut symloss(&["symcheck", "--loss", "bogus", "--classes", "3"]));
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn train_clean_blobs_reach_high_accuracy() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = train_config(dir.path(), "loss = ce", 0.0, 20, 0);
    cfg.push_str(&format!("plot = {}\n", dir.path().join("curves.csv").display()));
    let path = dir.path().join("run.cfg");
    std::fs::write(&path, cfg).unwrap();
    let out = run(&mut symloss(&["train", path.to_str().unwrap()]));
    assert_eq!(exit_code(&out), 0, "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let record: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("record.json")).unwrap())
            .unwrap();
    assert_eq!(record["schema"], "symloss-train-record/1");
    let epochs = record["epochs"].as_array().unwrap();
    assert_eq!(epochs.len(), 20);
    let final_acc = epochs.last().unwrap()["test_accuracy"].as_f64().unwrap();
    assert!(final_acc > 0.95, "final accuracy {final_acc}");

    // Plot CSV: header plus one row per epoch.
    let plot = std::fs::read_to_string(dir.path().join("curves.csv")).unwrap();
    let mut lines = plot.lines();
    assert_eq!(
        lines.next(),
        Some("epoch,mean_train_loss,train_accuracy,test_accuracy")
    );
    assert_eq!(lines.count(), 20);
}

#[test]
fn train_zero_epochs_yields_empty_record() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = train_config(dir.path(), "loss = ce", 0.0, 0, 0);
    let path = dir.path().join("run.cfg");
    std::fs::write(&path, cfg).unwrap();
    let out = run(&mut symloss(&["train", path.to_str().unwrap()]));
    assert_eq!(exit_code(&out), 0);
    let record: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("record.json")).unwrap())
            .unwrap();
    assert!(record["epochs"].as_array().unwrap().is_empty());
}

#[test]
fn train_noisy_comparison_writes_both_records() {
    let dir = tempfile::tempdir().unwrap();
    for (name, lines) in [("ce", "loss = ce"), ("amae", "loss = alpha_mae\nalpha = 2.0\nscore_norm = euclidean")] {
        let mut cfg = train_config(dir.path(), lines, 0.4, 5, 1);
        cfg = cfg.replace("record.json", &format!("record_{name}.json"));
        let path = dir.path().join(format!("{name}.cfg"));
        std::fs::write(&path, cfg).unwrap();
        let out = run(&mut symloss(&["train", path.to_str().unwrap()]));
        assert_eq!(exit_code(&out), 0, "stderr: {}", String::from_utf8_lossy(&out.stderr));
        assert!(dir.path().join(format!("record_{name}.json")).exists());
    }
}

#[test]
fn train_is_deterministic_at_process_level() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = train_config(dir.path(), "loss = sgce\nq = 0.65\nscore_norm = euclidean", 0.4, 3, 7);
    let path = dir.path().join("run.cfg");
    std::fs::write(&path, cfg).unwrap();
    let out = run(&mut symloss(&["train", path.to_str().unwrap()]));
    assert_eq!(exit_code(&out), 0);
    let a = std::fs::read(dir.path().join("record.json")).unwrap();
    let out = run(&mut symloss(&["train", path.to_str().unwrap()]));
    assert_eq!(exit_code(&out), 0);
    let b = std::fs::read(dir.path().join("record.json")).unwrap();
    assert_eq!(a, b);
}

#[test]
fn seed_precedence_flag_env_config() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = train_config(dir.path(), "loss = ce", 0.0, 1, 5);
    let path = dir.path().join("run.cfg");
    std::fs::write(&path, cfg).unwrap();
    let recorded_seed = |out_dir: &Path| -> u64 {
        let record: serde_json::Value =
            serde_json::from_str(&std::fs::read_to_string(out_dir.join("record.json")).unwrap())
                .unwrap();
        record["config"]["seed"].as_u64().unwrap()
    };

    // Config only.
    let out = run(&mut symloss(&["train", path.to_str().unwrap()]));
    assert_eq!(exit_code(&out), 0);
    assert_eq!(recorded_seed(dir.path()), 5);

    // Env overrides config.
    let out = run(symloss(&["train", path.to_str().unwrap()]).env("SYMLOSS_SEED", "77"));
    assert_eq!(exit_code(&out), 0);
    assert_eq!(recorded_seed(dir.path()), 77);

    // Flag overrides env.
    let out = run(symloss(&["train", path.to_str().unwrap(), "--seed", "123"])
        .env("SYMLOSS_SEED", "77"));
    assert_eq!(exit_code(&out), 0);
    assert_eq!(recorded_seed(dir.path()), 123);
}

#[test]
fn train_config_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.cfg");
    std::fs::write(&path, "dataset.source = blobs\n").unwrap();
    let out = run(&mut symloss(&["train", path.to_str().unwrap()]));
    assert_eq!(exit_code(&out), 2);

    let out = run(&mut symloss(&["train", "/definitely/not/there.cfg"]));
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn train_numerical_abort_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = train_config(dir.path(), "loss = unhinged", 0.0, 4, 0)
        .replace("learning rate = 0.05", "learning rate = 1e280")
        .replace("gradient bound = 5.0", "gradient bound = 1e17");
    let path = dir.path().join("run.cfg");
    std::fs::write(&path, cfg).unwrap();
    let out = run(&mut symloss(&["train", path.to_str().unwrap()]));
    assert_eq!(exit_code(&out), 3, "stderr: {}", String::from_utf8_lossy(&out.stderr));
    // The partial record is still written as a diagnostic.
    assert!(dir.path().join("record.json").exists());
}

#[test]
fn centroid_two_point_toy() {
    let dir = tempfile::tempdir().unwrap();
    let data = dir.path().join("toy.csv");
    std::fs::write(&data, "f0,f1,label\n1.0,0.0,0\n0.0,1.0,1\n").unwrap();
    let out_dir = dir.path().join("out");
    let out = run(symloss(&["centroid", data.to_str().unwrap(), "--radius", "1.0"])
        .arg("--out-dir")
        .arg(&out_dir));
    assert_eq!(exit_code(&out), 0, "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let summary: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out_dir.join("summary.json")).unwrap())
            .unwrap();
    assert!((summary["mu_frobenius_norm"].as_f64().unwrap() - 0.5).abs() < 1e-12);
    assert!((summary["kernel_alignment"].as_f64().unwrap() - 0.25).abs() < 1e-12);
    assert!(summary["trace_identity_residual"].as_f64().unwrap() < 1e-10);
    assert_eq!(summary["degenerate"], false);

    let mu_csv = std::fs::read_to_string(out_dir.join("centroid.csv")).unwrap();
    let rows: Vec<Vec<f64>> = mu_csv
        .lines()
        .map(|l| l.split(',').map(|t| t.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows, vec![vec![0.25, -0.25], vec![-0.25, 0.25]]);
}

#[test]
fn centroid_degenerate_exits_4() {
    let dir = tempfile::tempdir().unwrap();
    let data = dir.path().join("flat.csv");
    std::fs::write(&data, "f0,f1,label\n1.0,2.0,0\n1.0,2.0,1\n").unwrap();
    let out_dir = dir.path().join("out");
    let out = run(symloss(&["centroid", data.to_str().unwrap()]).arg("--out-dir").arg(&out_dir));
    assert_eq!(exit_code(&out), 4);
    let summary: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out_dir.join("summary.json")).unwrap())
            .unwrap();
    assert_eq!(summary["degenerate"], true);
}

#[test]
fn regress_closed_form_examples() {
    let dir = tempfile::tempdir().unwrap();
    let data = dir.path().join("one.csv");
    std::fs::write(&data, "f0,target\n2.0,3.0\n").unwrap();
    let out_path = dir.path().join("regress.json");

    let out = run(symloss(&[
        "regress",
        data.to_str().unwrap(),
        "--lambda",
        "1.0",
        "--density",
        "gaussian",
        "--sigma",
        "1.0",
    ])
    .arg("--out")
    .arg(&out_path));
    assert_eq!(exit_code(&out), 0, "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let summary: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    assert!((summary["weights"][0].as_f64().unwrap() - 6.0).abs() < 1e-12);
    assert!(summary["stationarity_residual"].as_f64().unwrap() < 1e-10);
    assert_eq!(summary["symmetry_check"]["passed"], true);

    let out = run(symloss(&[
        "regress",
        data.to_str().unwrap(),
        "--loss-kind",
        "clipped",
        "--delta",
        "1.0",
        "--lambda",
        "1.0",
        "--density",
        "uniform",
        "--width",
        "1.0",
    ])
    .arg("--out")
    .arg(&out_path));
    assert_eq!(exit_code(&out), 0);
    let summary: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    assert!((summary["weights"][0].as_f64().unwrap() - 2.0).abs() < 1e-12);

    // Nonpositive lambda is a usage error.
    let out = run(&mut symloss(&[
        "regress",
        data.to_str().unwrap(),
        "--lambda",
        "0.0",
        "--density",
        "gaussian",
        "--sigma",
        "1.0",
    ]));
    assert_eq!(exit_code(&out), 2);

    // A non-centered density makes the unhinged coefficient asymmetric.
    let out = run(&mut symloss(&[
        "regress",
        data.to_str().unwrap(),
        "--lambda",
        "1.0",
        "--density",
        "gaussian",
        "--sigma",
        "1.0",
        "--mean",
        "0.5",
    ]));
    assert_eq!(exit_code(&out), 1);
}
