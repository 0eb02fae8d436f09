//! Experiment harness CLI: run the categorization studies, sweep their
//! parameters, and inspect tree snapshots.

mod config;
mod figures;
mod inspect;
mod output;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use cobweb_sims::{run_experiment, ExperimentReport, Summary};

use config::{parse_either, resolve, Overrides};

#[derive(Parser)]
#[command(
    name = "cobweb",
    about = "Concept-formation categorization experiments",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Default)]
struct CommonOpts {
    /// Smoothing pseudocount (defaults to the experiment's value)
    #[arg(long)]
    alpha: Option<f64>,
    /// Best-first expansion budget
    #[arg(long)]
    max_nodes: Option<usize>,
    /// Number of simulated participants
    #[arg(long)]
    participants: Option<u32>,
    /// Master seed; participant i uses seed + i
    #[arg(long)]
    seed: Option<u64>,
    /// Output directory (default: $COBWEB_OUT_DIR or ./out)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Label draw for "either" cards: per-presentation or per-item
    #[arg(long, value_parser = parse_either)]
    either_labels: Option<cobweb_sims::EitherMode>,
    /// key=value config file; flags win over file entries
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Run one experiment and write results.csv, summary.json, a first-
    /// participant tree snapshot, and the figure analogues
    Run {
        /// hayes-roth, medin-1, medin-2, or smith-minda
        experiment: String,
        #[command(flatten)]
        opts: CommonOpts,
    },
    /// Run an experiment once per parameter value and tabulate the outcomes
    Sweep {
        /// hayes-roth, medin-1, medin-2, or smith-minda
        experiment: String,
        /// alpha or max-nodes
        #[arg(long)]
        param: String,
        /// Comma-separated list of values
        #[arg(long, value_delimiter = ',', required = true)]
        values: Vec<String>,
        #[command(flatten)]
        opts: CommonOpts,
    },
    /// Pretty-print a tree snapshot
    Inspect {
        snapshot: PathBuf,
        /// How many values to list per attribute
        #[arg(long, default_value_t = 3)]
        top: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Run { experiment, opts } => cmd_run(&experiment, opts),
        Command::Sweep {
            experiment,
            param,
            values,
            opts,
        } => cmd_sweep(&experiment, &param, &values, opts),
        Command::Inspect { snapshot, top } => cmd_inspect(&snapshot, top),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}

fn overrides_of(opts: &CommonOpts) -> Overrides {
    Overrides {
        alpha: opts.alpha,
        max_nodes: opts.max_nodes,
        participants: opts.participants,
        seed: opts.seed,
        out: opts.out.clone(),
        either_labels: opts.either_labels,
    }
}

fn cmd_run(experiment: &str, opts: CommonOpts) -> Result<()> {
    let resolved = resolve(experiment, overrides_of(&opts), opts.config.as_deref())?;
    let report = run_experiment(resolved.experiment, &resolved.params);
    let dir = &resolved.out_dir;
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;

    output::write_results_csv(&dir.join("results.csv"), &report)?;
    output::write_summary_json(&dir.join("summary.json"), &report)?;
    output::write_snapshot(&dir.join("tree_p0.json"), &report)?;
    for (name, svg) in output::figures(&report) {
        fs::write(dir.join(name), svg).with_context(|| format!("writing {name}"))?;
    }

    println!(
        "{}: {} participants, {} result rows, mean training runs {:.2}",
        report.experiment,
        resolved.params.participants,
        report.row_count,
        report.mean_training_runs
    );
    for (name, ok) in effect_lines(&report) {
        println!("  {} {name}", if ok { "pass" } else { "FAIL" });
    }
    println!("wrote {}", dir.display());
    Ok(())
}

fn cmd_sweep(experiment: &str, param: &str, values: &[String], opts: CommonOpts) -> Result<()> {
    if values.is_empty() {
        bail!("sweep needs at least one value");
    }
    if !matches!(param, "alpha" | "max-nodes") {
        bail!("unknown sweep parameter `{param}` (alpha or max-nodes)");
    }
    let resolved = resolve(experiment, overrides_of(&opts), opts.config.as_deref())?;
    fs::create_dir_all(&resolved.out_dir)
        .with_context(|| format!("creating {}", resolved.out_dir.display()))?;

    let mut table =
        String::from("param,value,mean_training_runs,effects_pass,transition_segment\n");
    println!(
        "{:>10} {:>10} {:>10} {:>13} {:>19}",
        "param", "value", "mean_runs", "effects_pass", "transition_segment"
    );
    for value in values {
        let mut params = resolved.params;
        match param {
            "alpha" => {
                params.alpha = value
                    .parse()
                    .with_context(|| format!("bad alpha value `{value}`"))?;
                if params.alpha <= 0.0 {
                    bail!("alpha must be positive, got {value}");
                }
            }
            _ => {
                params.max_nodes = value
                    .parse()
                    .with_context(|| format!("bad max-nodes value `{value}`"))?;
                if params.max_nodes == 0 {
                    bail!("max-nodes must be at least 1");
                }
            }
        }
        let report = run_experiment(resolved.experiment, &params);
        let pass = effect_lines(&report).iter().all(|(_, ok)| *ok);
        let transition = match &report.summary {
            Summary::SmithMinda(s) => s
                .checks
                .transition_segment
                .map(|t| t.to_string())
                .unwrap_or_else(|| "none".into()),
            _ => String::new(),
        };
        println!(
            "{:>10} {:>10} {:>10.2} {:>13} {:>19}",
            param, value, report.mean_training_runs, pass, transition
        );
        table.push_str(&format!(
            "{param},{value},{},{pass},{transition}\n",
            report.mean_training_runs
        ));
    }
    let path = resolved.out_dir.join("sweep.csv");
    fs::write(&path, table).with_context(|| format!("writing {}", path.display()))?;
    println!("wrote {}", path.display());
    Ok(())
}

fn cmd_inspect(path: &std::path::Path, top: usize) -> Result<()> {
    print!("{}", inspect::inspect(path, top)?);
    Ok(())
}

/// The effect checks an experiment is expected to show, as printable lines.
fn effect_lines(report: &ExperimentReport) -> Vec<(&'static str, bool)> {
    match &report.summary {
        Summary::HayesRoth(s) => vec![
            ("prototypes classified best", s.checks.prototypes_highest),
            (
                "one-transform above two-transform",
                s.checks.one_transform_above_two_transform,
            ),
            (
                "classification blind to frequency",
                s.checks.freq_gap_below_tolerance,
            ),
            (
                "recognition favors practiced items",
                s.checks.recognition_f10_above_f1 && s.checks.recognition_cis_disjoint,
            ),
        ],
        Summary::Medin1(s) => vec![
            ("prototypes 6 and 10 on top", s.checks.prototypes_top_two),
            ("item 10 above item 6", s.checks.item10_above_item6),
            (
                "item 15 least accurate trained",
                s.checks.item15_least_accurate_trained,
            ),
            (
                "novel A beats matched novel B",
                s.checks.all_novel_pairs_hold,
            ),
        ],
        Summary::Medin2(s) => vec![("item 7 above item 4", s.checks.item7_above_item4)],
        Summary::SmithMinda(s) => vec![
            (
                "exceptions start below chance",
                s.checks.seg1_exception_below_half,
            ),
            (
                "no early exception improvement",
                s.checks.early_change_below_tolerance,
            ),
            (
                "exceptions mastered by the end",
                s.checks.seg10_exception_above_half,
            ),
            (
                "transition around halfway",
                s.checks.transition_between_3_and_9,
            ),
        ],
    }
}
