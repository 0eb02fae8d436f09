//! Report files: results.csv, summary.json, first-participant snapshot, and
//! the figure analogues for each experiment.

use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use cobweb_sims::{CiStat, ExperimentReport, Summary};

use crate::figures::{bar_chart, line_chart, Bar, Series};

pub fn write_results_csv(path: &Path, report: &ExperimentReport) -> Result<()> {
    let mut out = String::from("participant,item_id,item_type,phase,p_reference,loglik\n");
    for row in &report.rows {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            row.participant, row.item_id, row.item_type, row.phase, row.p_reference, row.loglik
        ));
    }
    fs::write(path, out).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

pub fn write_summary_json(path: &Path, report: &ExperimentReport) -> Result<()> {
    let mut body = serde_json::to_string_pretty(report)?;
    body.push('\n');
    fs::write(path, body).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

pub fn write_snapshot(path: &Path, report: &ExperimentReport) -> Result<()> {
    let tree = report
        .first_tree
        .as_ref()
        .expect("experiment runs keep the first tree");
    fs::write(path, tree.snapshot()).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

/// Figure analogues, as (file name, svg body) pairs.
pub fn figures(report: &ExperimentReport) -> Vec<(&'static str, String)> {
    match &report.summary {
        Summary::HayesRoth(s) => {
            let class_order = [
                "c-proto",
                "1t-f1",
                "1t-f10",
                "2t-f1",
                "either-old",
                "either-new",
                "either-proto",
                "neither-proto",
            ];
            let class_bars: Vec<Bar> = class_order
                .iter()
                .map(|t| stat_bar(t, &s.classification[*t], "#9ecae1"))
                .collect();
            let recog_order = [
                "1t-f10",
                "either-old",
                "c-proto",
                "1t-f1",
                "2t-f1",
                "either-proto",
                "either-new",
                "neither-proto",
            ];
            let (lo, hi) = spread(recog_order.iter().map(|t| &s.recognition[*t]));
            let recog_bars: Vec<Bar> = recog_order
                .iter()
                .map(|t| stat_bar(t, &s.recognition[*t], "#a1d99b"))
                .collect();
            vec![
                (
                    "fig_classification.svg",
                    bar_chart(
                        "Classification by item type",
                        "P(reference category)",
                        0.0,
                        1.0,
                        &class_bars,
                    ),
                ),
                (
                    "fig_recognition.svg",
                    bar_chart(
                        "Recognition score by item type",
                        "weighted log-likelihood",
                        lo,
                        hi,
                        &recog_bars,
                    ),
                ),
            ]
        }
        Summary::Medin1(s) => vec![(
            "fig_accuracy.svg",
            item_accuracy_chart(
                "Category accuracy by item",
                &[
                    ("6", "train-a"),
                    ("7", "train-a"),
                    ("9", "train-a"),
                    ("10", "train-b"),
                    ("15", "train-b"),
                    ("16", "train-b"),
                    ("5", "novel-a"),
                    ("13", "novel-a"),
                    ("4", "novel-a"),
                    ("3", "novel-b"),
                    ("8", "novel-b"),
                    ("14", "novel-b"),
                ],
                &s.accuracy_by_item,
            ),
        )],
        Summary::Medin2(s) => vec![(
            "fig_accuracy.svg",
            item_accuracy_chart(
                "Category accuracy by item",
                &[
                    ("4", "train-a"),
                    ("7", "train-a"),
                    ("15", "train-a"),
                    ("13", "train-a"),
                    ("5", "train-a"),
                    ("12", "train-b"),
                    ("2", "train-b"),
                    ("14", "train-b"),
                    ("10", "train-b"),
                    ("1", "novel-a"),
                    ("6", "novel-a"),
                    ("9", "novel-a"),
                    ("11", "novel-a"),
                    ("3", "novel-b"),
                    ("8", "novel-b"),
                    ("16", "novel-b"),
                ],
                &s.accuracy_by_item,
            ),
        )],
        Summary::SmithMinda(s) => {
            let segments = s.exception_curve.len();
            let ticks: Vec<String> = (1..=segments).map(|i| i.to_string()).collect();
            let mut series: Vec<Series> = Vec::new();
            for (item, curve) in &s.item_curves {
                let is_a = item.starts_with('a');
                // plot P(category A): the stored curves are own-category
                let ys: Vec<f64> = curve
                    .iter()
                    .map(|&p| if is_a { p } else { 1.0 - p })
                    .collect();
                series.push(Series {
                    label: item.clone(),
                    ys,
                    stroke: if item.ends_with("exc") {
                        "#d62728"
                    } else if is_a {
                        "#74a9cf"
                    } else {
                        "#404040"
                    },
                    dashed: item.ends_with("exc"),
                });
            }
            vec![(
                "fig_segments.svg",
                line_chart(
                    "P(category A) per item across training segments",
                    "P(category A)",
                    "segment",
                    &ticks,
                    0.0,
                    1.0,
                    &series,
                ),
            )]
        }
    }
}

fn stat_bar(label: &str, stat: &CiStat, fill: &'static str) -> Bar {
    Bar {
        label: label.to_string(),
        mean: stat.mean,
        lo: stat.lo,
        hi: stat.hi,
        fill,
    }
}

fn spread<'a>(stats: impl Iterator<Item = &'a CiStat>) -> (f64, f64) {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for s in stats {
        lo = lo.min(s.lo);
        hi = hi.max(s.hi);
    }
    let pad = 0.08 * (hi - lo).max(1e-9);
    (lo - pad, hi + pad)
}

fn item_accuracy_chart(
    title: &str,
    order: &[(&str, &str)],
    stats: &std::collections::BTreeMap<String, CiStat>,
) -> String {
    let bars: Vec<Bar> = order
        .iter()
        .map(|(id, kind)| {
            let fill = match *kind {
                "train-a" => "#deebf7",
                "train-b" => "#636363",
                "novel-a" => "#9ecae1",
                _ => "#252525",
            };
            let mut bar = stat_bar(id, &stats[*id], fill);
            bar.label = format!("{id} ({kind})");
            bar
        })
        .collect();
    bar_chart(title, "P(own category)", 0.0, 1.0, &bars)
}
