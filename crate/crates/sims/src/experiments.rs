//! Experiment definitions, default protocol parameters, and the summary
//! statistics each report carries.

use std::collections::BTreeMap;

use cobweb::ConceptTree;
use serde::Serialize;

use crate::protocol::{run_participant, EitherMode, ProtocolParams, StoppingRule, TrialRow};
use crate::stats::{ci95, CiStat};
use crate::stimuli::{
    gen_hayes_roth, gen_medin_exp1, gen_medin_exp2, gen_smith_minda, StimulusSet,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Experiment {
    HayesRoth,
    Medin1,
    Medin2,
    SmithMinda,
}

impl Experiment {
    pub const ALL: [Experiment; 4] = [
        Experiment::HayesRoth,
        Experiment::Medin1,
        Experiment::Medin2,
        Experiment::SmithMinda,
    ];

    pub fn id(&self) -> &'static str {
        match self {
            Experiment::HayesRoth => "hayes-roth",
            Experiment::Medin1 => "medin-1",
            Experiment::Medin2 => "medin-2",
            Experiment::SmithMinda => "smith-minda",
        }
    }

    pub fn parse(s: &str) -> Option<Experiment> {
        Experiment::ALL.into_iter().find(|e| e.id() == s)
    }

    /// The protocol each experiment ran under: participant counts, smoothing,
    /// inference budget, and stopping rules.
    pub fn default_protocol(&self, master_seed: u64) -> ProtocolParams {
        let (participants, alpha, stopping, blocks_per_segment) = match self {
            Experiment::HayesRoth => (54, 1.0, StoppingRule::FixedRuns(1), None),
            Experiment::Medin1 => (
                32,
                0.1,
                StoppingRule::CleanRuns {
                    required: 2,
                    cap: 20,
                },
                None,
            ),
            Experiment::Medin2 => (
                32,
                0.1,
                StoppingRule::CleanRuns {
                    required: 1,
                    cap: 16,
                },
                None,
            ),
            Experiment::SmithMinda => (16, 2.0, StoppingRule::FixedRuns(40), Some(4)),
        };
        ProtocolParams {
            participants,
            alpha,
            max_nodes: 100,
            stopping,
            blocks_per_segment,
            master_seed,
            either_mode: EitherMode::PerPresentation,
        }
    }

    pub fn stimuli(&self, seed: u64) -> StimulusSet {
        match self {
            Experiment::HayesRoth => gen_hayes_roth(seed),
            Experiment::Medin1 => gen_medin_exp1(),
            Experiment::Medin2 => gen_medin_exp2(),
            Experiment::SmithMinda => gen_smith_minda(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ExperimentReport {
    pub experiment: String,
    pub params: ProtocolParams,
    pub mean_training_runs: f64,
    pub row_count: usize,
    pub summary: Summary,
    #[serde(skip)]
    pub rows: Vec<TrialRow>,
    /// The first participant's trained tree, kept for snapshot export.
    #[serde(skip)]
    pub first_tree: Option<ConceptTree<f64>>,
}

#[derive(Debug, Serialize)]
#[serde(untagged)]
pub enum Summary {
    HayesRoth(HayesRothSummary),
    Medin1(Medin1Summary),
    Medin2(Medin2Summary),
    SmithMinda(SmithMindaSummary),
}

impl Summary {
    pub fn as_hayes_roth(&self) -> Option<&HayesRothSummary> {
        match self {
            Summary::HayesRoth(s) => Some(s),
            _ => None,
        }
    }

    pub fn as_medin1(&self) -> Option<&Medin1Summary> {
        match self {
            Summary::Medin1(s) => Some(s),
            _ => None,
        }
    }

    pub fn as_medin2(&self) -> Option<&Medin2Summary> {
        match self {
            Summary::Medin2(s) => Some(s),
            _ => None,
        }
    }

    pub fn as_smith_minda(&self) -> Option<&SmithMindaSummary> {
        match self {
            Summary::SmithMinda(s) => Some(s),
            _ => None,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct HayesRothSummary {
    /// Per item type: reference-category probability over participants.
    pub classification: BTreeMap<String, CiStat>,
    /// Per item type: recognition log-likelihood over participants.
    pub recognition: BTreeMap<String, CiStat>,
    pub checks: HayesRothChecks,
}

#[derive(Debug, Serialize)]
pub struct HayesRothChecks {
    /// Unseen club prototypes beat every trained club item type.
    pub prototypes_highest: bool,
    /// One-transform types (both frequencies) beat two-transform items.
    pub one_transform_above_two_transform: bool,
    /// |mean(1t seen 10x) - mean(1t seen once)| on classification.
    pub freq_gap: f64,
    pub freq_gap_below_tolerance: bool,
    /// Ten-times-practiced items score higher recognition log-likelihood.
    pub recognition_f10_above_f1: bool,
    pub recognition_cis_disjoint: bool,
}

#[derive(Debug, Serialize)]
pub struct Medin1Summary {
    /// Per item id: probability of the item's own category.
    pub accuracy_by_item: BTreeMap<String, CiStat>,
    pub checks: Medin1Checks,
}

#[derive(Debug, Serialize)]
pub struct NovelPair {
    pub novel_a: String,
    pub novel_b: String,
    pub a_mean: f64,
    pub b_mean: f64,
    pub holds: bool,
}

#[derive(Debug, Serialize)]
pub struct Medin1Checks {
    /// Items 6 and 10 (the prototypes) take the two best trained accuracies.
    pub prototypes_top_two: bool,
    pub item10_above_item6: bool,
    pub item15_least_accurate_trained: bool,
    pub novel_pairs: Vec<NovelPair>,
    pub all_novel_pairs_hold: bool,
    pub all_effects_hold: bool,
}

#[derive(Debug, Serialize)]
pub struct Medin2Summary {
    pub accuracy_by_item: BTreeMap<String, CiStat>,
    pub checks: Medin2Checks,
}

#[derive(Debug, Serialize)]
pub struct Medin2Checks {
    pub item7_mean: f64,
    pub item4_mean: f64,
    pub item7_above_item4: bool,
}

#[derive(Debug, Serialize)]
pub struct SmithMindaSummary {
    /// Mean own-category probability of the exception items, per segment.
    pub exception_curve: Vec<CiStat>,
    /// Mean own-category probability per item and segment.
    pub item_curves: BTreeMap<String, Vec<f64>>,
    pub checks: SmithMindaChecks,
}

#[derive(Debug, Serialize)]
pub struct SmithMindaChecks {
    pub seg1_exception_below_half: bool,
    /// Exception accuracy change from segment 1 to segment 3.
    pub early_change: f64,
    pub early_change_below_tolerance: bool,
    pub seg10_exception_above_half: bool,
    /// First segment whose mean exception accuracy exceeds one half.
    pub transition_segment: Option<u32>,
    pub transition_between_3_and_9: bool,
}

/// Runs every participant of an experiment and assembles the report.
pub fn run_experiment(exp: Experiment, params: &ProtocolParams) -> ExperimentReport {
    assert!(
        params.participants >= 2,
        "summaries need at least two participants"
    );
    let stimuli = exp.stimuli(params.master_seed);
    let mut rows: Vec<TrialRow> = Vec::new();
    let mut runs: Vec<f64> = Vec::new();
    let mut first_tree = None;
    for i in 0..params.participants {
        let result = run_participant(&stimuli, params, i);
        if i == 0 {
            first_tree = Some(result.tree);
        }
        runs.push(f64::from(result.runs_completed));
        rows.extend(result.rows);
    }
    let mean_training_runs = runs.iter().sum::<f64>() / runs.len() as f64;
    let summary = match exp {
        Experiment::HayesRoth => Summary::HayesRoth(summarize_hayes_roth(&rows)),
        Experiment::Medin1 => Summary::Medin1(summarize_medin1(&rows)),
        Experiment::Medin2 => Summary::Medin2(summarize_medin2(&rows)),
        Experiment::SmithMinda => Summary::SmithMinda(summarize_smith_minda(&rows)),
    };
    ExperimentReport {
        experiment: exp.id().to_string(),
        params: *params,
        mean_training_runs,
        row_count: rows.len(),
        summary,
        rows,
        first_tree,
    }
}

/// Per-participant means of `value` over the rows each participant
/// contributes under `key`, collected per key.
fn participant_means<K: Ord + Clone>(
    rows: &[TrialRow],
    key: impl Fn(&TrialRow) -> K,
    value: impl Fn(&TrialRow) -> f64,
) -> BTreeMap<K, Vec<f64>> {
    let mut acc: BTreeMap<(K, u32), (f64, u32)> = BTreeMap::new();
    for row in rows {
        let slot = acc.entry((key(row), row.participant)).or_insert((0.0, 0));
        slot.0 += value(row);
        slot.1 += 1;
    }
    let mut out: BTreeMap<K, Vec<f64>> = BTreeMap::new();
    for ((k, _), (sum, n)) in acc {
        out.entry(k).or_default().push(sum / f64::from(n));
    }
    out
}

fn ci_map<K: Ord + Clone + ToString>(means: &BTreeMap<K, Vec<f64>>) -> BTreeMap<String, CiStat> {
    means
        .iter()
        .map(|(k, v)| (k.to_string(), ci95(v).expect("two or more participants")))
        .collect()
}

fn summarize_hayes_roth(rows: &[TrialRow]) -> HayesRothSummary {
    let class_means = participant_means(rows, |r| r.item_type.clone(), |r| r.p_reference);
    let recog_means = participant_means(rows, |r| r.item_type.clone(), |r| r.loglik);
    let classification = ci_map(&class_means);
    let recognition = ci_map(&recog_means);

    let mean_of = |map: &BTreeMap<String, CiStat>, t: &str| map[t].mean;
    let proto = mean_of(&classification, "c-proto");
    let t1f1 = mean_of(&classification, "1t-f1");
    let t1f10 = mean_of(&classification, "1t-f10");
    let t2 = mean_of(&classification, "2t-f1");

    let freq_gap = (t1f10 - t1f1).abs();
    let rec10 = &recognition["1t-f10"];
    let rec1 = &recognition["1t-f1"];
    let checks = HayesRothChecks {
        prototypes_highest: proto > t1f1 && proto > t1f10 && proto > t2,
        one_transform_above_two_transform: t1f1 > t2 && t1f10 > t2,
        freq_gap,
        freq_gap_below_tolerance: freq_gap < 0.05,
        recognition_f10_above_f1: rec10.mean > rec1.mean,
        recognition_cis_disjoint: rec10.lo > rec1.hi,
    };
    HayesRothSummary {
        classification,
        recognition,
        checks,
    }
}

fn summarize_medin1(rows: &[TrialRow]) -> Medin1Summary {
    let means = participant_means(rows, |r| r.item_id.clone(), |r| r.p_reference);
    let accuracy_by_item = ci_map(&means);
    let acc = |id: &str| accuracy_by_item[id].mean;

    let trained = ["6", "7", "9", "10", "15", "16"];
    let mut ranked: Vec<&str> = trained.to_vec();
    ranked.sort_by(|a, b| acc(b).partial_cmp(&acc(a)).expect("finite accuracies"));
    let top_two = [ranked[0], ranked[1]];
    let prototypes_top_two = top_two.contains(&"6") && top_two.contains(&"10");
    let item15_least_accurate_trained = *ranked.last().unwrap() == "15";

    let pairs = [("5", "3"), ("13", "8"), ("4", "14")];
    let novel_pairs: Vec<NovelPair> = pairs
        .into_iter()
        .map(|(a, b)| NovelPair {
            novel_a: a.to_string(),
            novel_b: b.to_string(),
            a_mean: acc(a),
            b_mean: acc(b),
            holds: acc(a) > acc(b),
        })
        .collect();
    let all_novel_pairs_hold = novel_pairs.iter().all(|p| p.holds);
    let item10_above_item6 = acc("10") > acc("6");
    let checks = Medin1Checks {
        prototypes_top_two,
        item10_above_item6,
        item15_least_accurate_trained,
        all_effects_hold: prototypes_top_two
            && item10_above_item6
            && item15_least_accurate_trained
            && all_novel_pairs_hold,
        novel_pairs,
        all_novel_pairs_hold,
    };
    Medin1Summary {
        accuracy_by_item,
        checks,
    }
}

fn summarize_medin2(rows: &[TrialRow]) -> Medin2Summary {
    let means = participant_means(rows, |r| r.item_id.clone(), |r| r.p_reference);
    let accuracy_by_item = ci_map(&means);
    let item7_mean = accuracy_by_item["7"].mean;
    let item4_mean = accuracy_by_item["4"].mean;
    Medin2Summary {
        checks: Medin2Checks {
            item7_mean,
            item4_mean,
            item7_above_item4: item7_mean > item4_mean,
        },
        accuracy_by_item,
    }
}

fn segment_index(phase: &str) -> u32 {
    phase
        .strip_prefix("seg")
        .and_then(|s| s.parse().ok())
        .expect("segment phase")
}

fn summarize_smith_minda(rows: &[TrialRow]) -> SmithMindaSummary {
    let segments = rows
        .iter()
        .map(|r| segment_index(&r.phase))
        .max()
        .expect("segment rows");

    let item_seg_means = participant_means(
        rows,
        |r| (r.item_id.clone(), segment_index(&r.phase)),
        |r| r.p_reference,
    );
    let mut item_curves: BTreeMap<String, Vec<f64>> = BTreeMap::new();
    for ((item, seg), means) in &item_seg_means {
        let curve = item_curves
            .entry(item.clone())
            .or_insert_with(|| vec![0.0; segments as usize]);
        curve[(*seg - 1) as usize] = means.iter().sum::<f64>() / means.len() as f64;
    }

    let exception_rows: Vec<TrialRow> = rows
        .iter()
        .filter(|r| r.item_type == "exception")
        .cloned()
        .collect();
    let exc_means = participant_means(
        &exception_rows,
        |r| segment_index(&r.phase),
        |r| r.p_reference,
    );
    let exception_curve: Vec<CiStat> = (1..=segments)
        .map(|s| ci95(&exc_means[&s]).expect("two or more participants"))
        .collect();

    let transition_segment = exception_curve
        .iter()
        .position(|c| c.mean > 0.5)
        .map(|i| i as u32 + 1);
    let early_change =
        exception_curve[2.min(exception_curve.len() - 1)].mean - exception_curve[0].mean;
    let checks = SmithMindaChecks {
        seg1_exception_below_half: exception_curve[0].mean < 0.5,
        early_change,
        early_change_below_tolerance: early_change < 0.1,
        seg10_exception_above_half: exception_curve.last().unwrap().mean > 0.5,
        transition_segment,
        transition_between_3_and_9: transition_segment.is_some_and(|s| (3..=9).contains(&s)),
    };
    SmithMindaSummary {
        exception_curve,
        item_curves,
        checks,
    }
}
