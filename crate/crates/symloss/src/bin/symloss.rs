//! Thin command-line front end over the `symloss` library.
//!
//! Exit codes: 0 success/pass, 1 check failure, 2 usage/config error,
//! 3 numerical abort, 4 degenerate problem.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use symloss::cli::{cmd_centroid, cmd_regress, cmd_symcheck, cmd_train, DensityArg};
use symloss::losses::LossSpec;
use symloss::regression::RegressionLossKind;

#[derive(Parser)]
#[command(
    name = "symloss",
    about = "Symmetric loss functions for noisy-label learning: property checks, \
             training experiments, data centroids, and regression solutions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run symmetry and permutation-invariance checks on a named loss.
    Symcheck {
        /// Loss name: ce, mae, gce, mse, cosine, unhinged, sgce, alpha_mae, dirichlet.
        #[arg(long)]
        loss: String,
        /// Exponent for gce/sgce.
        #[arg(long)]
        q: Option<f64>,
        /// Weight for alpha_mae, or concentration for dirichlet.
        #[arg(long)]
        alpha: Option<f64>,
        /// Number of classes.
        #[arg(long)]
        classes: usize,
        #[arg(long, default_value_t = 10_000)]
        probes: usize,
        /// Half-width of the probe box.
        #[arg(long, default_value_t = 10.0)]
        box_radius: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the JSON report document here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Corrupt, train, evaluate per a config file; write the record JSON.
    Train {
        config: PathBuf,
        /// Overrides SYMLOSS_SEED and the config seed.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Unhinged data centroid, closed-form linear solution, trace and
    /// kernel-alignment identities for a classification CSV.
    Centroid {
        dataset: PathBuf,
        /// Frobenius-norm budget of the closed-form solution.
        #[arg(long, default_value_t = 1.0)]
        radius: f64,
        /// Append a constant-1 feature (implicit bias column).
        #[arg(long)]
        bias: bool,
        #[arg(long, default_value = "centroid_out")]
        out_dir: PathBuf,
    },
    /// Closed-form regularized linear regression under the unhinged or
    /// clipped coefficient, with a linear-symmetry check.
    Regress {
        dataset: PathBuf,
        /// "unhinged" or "clipped".
        #[arg(long, default_value = "unhinged")]
        loss_kind: String,
        /// Clip threshold (required for --loss-kind clipped).
        #[arg(long)]
        delta: Option<f64>,
        #[arg(long)]
        lambda: f64,
        /// "uniform" or "gaussian".
        #[arg(long, default_value = "gaussian")]
        density: String,
        /// Half-width of the uniform density support.
        #[arg(long)]
        width: Option<f64>,
        /// Gaussian standard deviation.
        #[arg(long)]
        sigma: Option<f64>,
        /// Gaussian mean.
        #[arg(long, default_value_t = 0.0)]
        mean: f64,
        /// Quadrature node count.
        #[arg(long, default_value_t = 64)]
        nodes: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn run(cli: Cli) -> symloss::Result<i32> {
    match cli.command {
        Command::Symcheck {
            loss,
            q,
            alpha,
            classes,
            probes,
            box_radius,
            seed,
            out,
        } => {
            let spec = LossSpec { name: loss, q, alpha };
            let (code, _) = cmd_symcheck(&spec, classes, probes, box_radius, seed, out.as_deref())?;
            Ok(code)
        }
        Command::Train { config, seed } => {
            let (code, _) = cmd_train(&config, seed)?;
            Ok(code)
        }
        Command::Centroid {
            dataset,
            radius,
            bias,
            out_dir,
        } => {
            let (code, _) = cmd_centroid(&dataset, radius, bias, &out_dir)?;
            Ok(code)
        }
        Command::Regress {
            dataset,
            loss_kind,
            delta,
            lambda,
            density,
            width,
            sigma,
            mean,
            nodes,
            out,
        } => {
            let kind = match loss_kind.as_str() {
                "unhinged" => RegressionLossKind::Unhinged,
                "clipped" => RegressionLossKind::Clipped {
                    delta: delta.ok_or_else(|| {
                        symloss::Error::InvalidParameter(
                            "--loss-kind clipped requires --delta".into(),
                        )
                    })?,
                },
                other => {
                    return Err(symloss::Error::InvalidParameter(format!(
                        "unknown loss kind '{other}'"
                    )))
                }
            };
            let density = match density.as_str() {
                "uniform" => DensityArg::Uniform {
                    half_width: width.ok_or_else(|| {
                        symloss::Error::InvalidParameter("--density uniform requires --width".into())
                    })?,
                },
                "gaussian" => DensityArg::Gaussian {
                    mean,
                    sigma: sigma.ok_or_else(|| {
                        symloss::Error::InvalidParameter(
                            "--density gaussian requires --sigma".into(),
                        )
                    })?,
                },
                other => {
                    return Err(symloss::Error::InvalidParameter(format!(
                        "unknown density '{other}'"
                    )))
                }
            };
            let (code, _) = cmd_regress(&dataset, kind, lambda, density, nodes, out.as_deref())?;
            Ok(code)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
