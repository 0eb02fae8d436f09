//! The simulation engine: one simulated participant owns one tree and runs
//! the training/test protocol of an experiment.
//!
//! Every run shuffles the training deck with the participant's generator,
//! classifies each card before training on it (feedback-style), and applies
//! the stopping rule on whole-run correctness. Test queries never train the
//! tree; only its value registries may grow from fresh distractors.

use cobweb::{ConceptTree, Instance, PredictedDistribution, RawValue};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::stimuli::{LabelSpec, Reference, StimulusSet, TestCard};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum StoppingRule {
    /// Always run exactly this many passes (blocks) over the deck.
    FixedRuns(u32),
    /// Stop after `required` consecutive error-free runs, or at `cap` runs.
    CleanRuns { required: u32, cap: u32 },
}

/// Whether "either"-labeled cards re-draw their label at every presentation
/// or keep one draw per item for the whole participant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EitherMode {
    PerPresentation,
    PerItem,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProtocolParams {
    pub participants: u32,
    pub alpha: f64,
    pub max_nodes: usize,
    pub stopping: StoppingRule,
    /// For segment-based recording: predictions for the whole test deck are
    /// taken every this-many runs.
    pub blocks_per_segment: Option<u32>,
    pub master_seed: u64,
    pub either_mode: EitherMode,
}

/// One row of raw results: a test (or segment) query by one participant.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialRow {
    pub participant: u32,
    pub item_id: String,
    pub item_type: String,
    pub phase: String,
    pub p_reference: f64,
    pub loglik: f64,
}

#[derive(Debug, Clone)]
pub struct ParticipantResult {
    pub participant: u32,
    pub runs_completed: u32,
    pub rows: Vec<TrialRow>,
    pub tree: ConceptTree<f64>,
}

/// Runs one simulated participant through the whole protocol.
pub fn run_participant(
    stimuli: &StimulusSet,
    params: &ProtocolParams,
    participant: u32,
) -> ParticipantResult {
    let mut rng =
        ChaCha8Rng::seed_from_u64(params.master_seed.wrapping_add(u64::from(participant)));
    let mut tree = ConceptTree::new(stimuli.schema.clone(), params.alpha, params.max_nodes)
        .expect("valid protocol parameters");

    // per-item either labels, drawn once up front when that mode is active
    let mut fixed_either: Vec<(String, String)> = Vec::new();
    if params.either_mode == EitherMode::PerItem {
        for card in &stimuli.train {
            if let LabelSpec::Either(options) = &card.label {
                if !fixed_either.iter().any(|(id, _)| id == &card.item_id) {
                    let pick = options[rng.random_range(0..options.len())].clone();
                    fixed_either.push((card.item_id.clone(), pick));
                }
            }
        }
    }

    let (cap, required_clean) = match params.stopping {
        StoppingRule::FixedRuns(n) => (n, u32::MAX),
        StoppingRule::CleanRuns { required, cap } => (cap, required),
    };

    let mut rows: Vec<TrialRow> = Vec::new();
    let mut order: Vec<usize> = (0..stimuli.train.len()).collect();
    let mut runs = 0u32;
    let mut clean_streak = 0u32;
    loop {
        runs += 1;
        order.shuffle(&mut rng);
        let mut errors = 0u32;
        for &i in &order {
            let card = &stimuli.train[i];
            let (label, acceptable): (String, Vec<&str>) = match &card.label {
                LabelSpec::Fixed(l) => (l.clone(), vec![l.as_str()]),
                LabelSpec::Either(options) => {
                    let drawn = match params.either_mode {
                        EitherMode::PerPresentation => {
                            options[rng.random_range(0..options.len())].clone()
                        }
                        EitherMode::PerItem => fixed_either
                            .iter()
                            .find(|(id, _)| id == &card.item_id)
                            .map(|(_, l)| l.clone())
                            .expect("either label drawn at setup"),
                    };
                    (drawn, options.iter().map(String::as_str).collect())
                }
            };

            let predicted = classify(&mut tree, &card.features, stimuli, &mut rng);
            if !acceptable.contains(&predicted.as_str()) {
                errors += 1;
            }

            let mut values: Vec<(String, RawValue<f64>)> = card
                .features
                .iter()
                .map(|(a, v)| (a.clone(), RawValue::sym(v.clone())))
                .collect();
            values.push((stimuli.label_attr.to_string(), RawValue::sym(label)));
            let inst = tree.prepare(values).expect("training card fits schema");
            tree.ifit(&inst);
        }

        if let Some(block) = params.blocks_per_segment {
            if runs.is_multiple_of(block) {
                let segment = runs / block;
                for card in &stimuli.test {
                    rows.push(eval_test_card(
                        &mut tree,
                        stimuli,
                        card,
                        participant,
                        format!("seg{segment}"),
                    ));
                }
            }
        }

        if errors == 0 {
            clean_streak += 1;
        } else {
            clean_streak = 0;
        }
        if clean_streak >= required_clean || runs >= cap {
            break;
        }
    }

    if params.blocks_per_segment.is_none() {
        let trained = tree.training_count();
        // test cards are presented shuffled, like the training runs; with
        // fresh distractors this also spreads registry growth evenly over
        // the deck instead of favoring late positions
        let mut test_order: Vec<usize> = (0..stimuli.test.len()).collect();
        test_order.shuffle(&mut rng);
        for &i in &test_order {
            rows.push(eval_test_card(
                &mut tree,
                stimuli,
                &stimuli.test[i],
                participant,
                "test".to_string(),
            ));
        }
        debug_assert_eq!(tree.training_count(), trained, "testing must not train");
    }

    ParticipantResult {
        participant,
        runs_completed: runs,
        rows,
        tree,
    }
}

/// Predicts the label for a feature list and takes the argmax, breaking
/// exact ties (and the empty-tree case) with the participant's generator.
pub fn classify(
    tree: &mut ConceptTree<f64>,
    features: &[(String, String)],
    stimuli: &StimulusSet,
    rng: &mut ChaCha8Rng,
) -> String {
    if tree.is_untrained() {
        return stimuli.label_values[rng.random_range(0..stimuli.label_values.len())].clone();
    }
    let q = prepare_query(tree, features);
    let dist = tree
        .predict(&q, stimuli.label_attr)
        .expect("trained tree predicts labels");
    let best = dist.argmax();
    match best.len() {
        0 => unreachable!("categorical prediction always has values"),
        1 => best[0].to_string(),
        n => best[rng.random_range(0..n)].to_string(),
    }
}

fn prepare_query(tree: &mut ConceptTree<f64>, features: &[(String, String)]) -> Instance<f64> {
    let values: Vec<(String, RawValue<f64>)> = features
        .iter()
        .map(|(a, v)| (a.clone(), RawValue::sym(v.clone())))
        .collect();
    tree.prepare(values).expect("query fits schema")
}

fn eval_test_card(
    tree: &mut ConceptTree<f64>,
    stimuli: &StimulusSet,
    card: &TestCard,
    participant: u32,
    phase: String,
) -> TrialRow {
    let q = prepare_query(tree, &card.features);
    let dist = tree
        .predict(&q, stimuli.label_attr)
        .expect("trained tree predicts labels");
    let p_reference = match &card.reference {
        Reference::Label(v) => dist.prob_of(v),
        Reference::AnyOf(vs) => vs.iter().map(|v| dist.prob_of(v)).sum(),
    };
    let loglik = tree.score_loglik(&q).expect("trained tree scores");
    if let PredictedDistribution::Categorical { probs, .. } = &dist {
        debug_assert!((probs.iter().map(|(_, p)| p).sum::<f64>() - 1.0).abs() < 1e-9);
    }
    TrialRow {
        participant,
        item_id: card.item_id.clone(),
        item_type: card.item_type.clone(),
        phase,
        p_reference,
        loglik,
    }
}
