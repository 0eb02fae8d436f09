//! Property suite: normalization, brute-force equivalence of the partition
//! objective, best-first replay, incremental-statistics oracles, count
//! conservation, and snapshot identity.
//!
//! The oracles here are written independently of the library internals: they
//! read raw counts off the tree and redo the arithmetic with plain loops.

use std::collections::BTreeMap;

use proptest::prelude::*;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use cobweb::{
    cat_prob, partition_mi, pmi, AttrKind, AttributeSchema, CategoricalCounts, ConceptNode,
    ConceptStats, ConceptTree, EvalParams, Instance, InstanceValue, RawValue,
};

const FLOOR: f64 = 1e-3;

// ---------------------------------------------------------------------------
// independent oracles

fn oracle_cat_prob(count: u64, total: u64, alpha: f64, k: usize) -> f64 {
    (count as f64 + alpha) / (total as f64 + alpha * k as f64)
}

fn oracle_loglik(
    stats: &ConceptStats<f64>,
    x: &Instance<f64>,
    schema: &AttributeSchema,
    alpha: f64,
) -> f64 {
    let mut total = 0.0;
    for (id, value) in x.present() {
        match value {
            InstanceValue::Categorical(v) => {
                let c = stats.attr(id).as_categorical();
                let k = schema.registry_len(id);
                total += oracle_cat_prob(c.count_of(*v), c.total(), alpha, k).ln();
            }
            InstanceValue::Continuous(v) => {
                let g = stats.attr(id).as_gaussian();
                let var = if g.n() <= 1 {
                    FLOOR
                } else {
                    (g.m2() / g.n() as f64).max(FLOOR)
                };
                let d = *v - g.mean();
                total += -0.5 * ((2.0 * std::f64::consts::PI * var).ln() + d * d / var);
            }
        }
    }
    total
}

/// Straight double-sum over children and registry values, plus the Gaussian
/// entropy difference, written without any shared helpers.
fn oracle_partition_mi(
    children: &[&ConceptStats<f64>],
    schema: &AttributeSchema,
    alpha: f64,
) -> f64 {
    let total: u64 = children.iter().map(|c| c.count()).sum();
    let mut mi = 0.0;
    for id in schema.attr_ids() {
        match schema.kind(id) {
            AttrKind::Categorical => {
                let k = schema.registry_len(id);
                if k == 0 {
                    continue;
                }
                for v in 0..k as u32 {
                    let mut mixture = 0.0;
                    for c in children {
                        let w = c.count() as f64 / total as f64;
                        let cc = c.attr(id).as_categorical();
                        mixture += w * oracle_cat_prob(cc.count_of(v), cc.total(), alpha, k);
                    }
                    for c in children {
                        let w = c.count() as f64 / total as f64;
                        let cc = c.attr(id).as_categorical();
                        let p = oracle_cat_prob(cc.count_of(v), cc.total(), alpha, k);
                        mi += w * p * (p / mixture).ln();
                    }
                }
            }
            AttrKind::Continuous => {
                let mut mean = 0.0;
                let mut second = 0.0;
                let mut child_entropy = 0.0;
                for c in children {
                    let w = c.count() as f64 / total as f64;
                    let g = c.attr(id).as_gaussian();
                    let var = if g.n() <= 1 {
                        FLOOR
                    } else {
                        (g.m2() / g.n() as f64).max(FLOOR)
                    };
                    mean += w * g.mean();
                    second += w * (var + g.mean() * g.mean());
                    child_entropy += w * 0.5 * var.ln();
                }
                let mix_var = (second - mean * mean).max(FLOOR);
                mi += 0.5 * mix_var.ln() - child_entropy;
            }
        }
    }
    mi
}

// ---------------------------------------------------------------------------
// fixtures

fn mixed_schema() -> AttributeSchema {
    AttributeSchema::new([
        ("a", AttrKind::Categorical),
        ("b", AttrKind::Categorical),
        ("c", AttrKind::Categorical),
        ("x", AttrKind::Continuous),
    ])
    .unwrap()
}

/// Builds a tree by ifit-ing the given coded instances. Each code is
/// (a, b, c, x) with small categorical pools.
fn build_tree(items: &[(u8, u8, u8, i8)], alpha: f64, max_nodes: usize) -> ConceptTree<f64> {
    let mut tree = ConceptTree::new(mixed_schema(), alpha, max_nodes).unwrap();
    for &(a, b, c, x) in items {
        let inst = tree
            .prepare([
                ("a", RawValue::sym(format!("a{}", a % 4))),
                ("b", RawValue::sym(format!("b{}", b % 3))),
                ("c", RawValue::sym(format!("c{}", c % 4))),
                ("x", RawValue::num(f64::from(x))),
            ])
            .unwrap();
        tree.ifit(&inst);
    }
    tree
}

fn item_strategy() -> impl Strategy<Value = (u8, u8, u8, i8)> {
    (0u8..4, 0u8..3, 0u8..4, -4i8..4)
}

// ---------------------------------------------------------------------------
// properties

proptest! {
    #[test]
    fn cat_prob_normalizes(
        counts in proptest::collection::vec(0u64..50, 1..6),
        alpha in 0.01f64..5.0,
        extra in 0usize..3,
    ) {
        let mut cc = CategoricalCounts::default();
        for (v, &n) in counts.iter().enumerate() {
            for _ in 0..n {
                cc.observe(v as u32);
            }
        }
        let k = counts.len() + extra;
        let sum: f64 = (0..k as u32).map(|v| cat_prob(&cc, v, alpha, k)).sum();
        prop_assert!((sum - 1.0).abs() < 1e-9);
    }

    #[test]
    fn partition_mi_matches_brute_force_and_is_nonnegative(
        child_items in proptest::collection::vec(
            proptest::collection::vec(item_strategy(), 1..6),
            2..5,
        ),
        alpha in 0.05f64..3.0,
    ) {
        // build child summaries over a shared schema (3 categorical + 1
        // continuous, trimmed to <=3 categorical by ignoring none here; the
        // registry sizes stay small)
        let mut tree = ConceptTree::new(mixed_schema(), alpha, 10).unwrap();
        let mut children: Vec<ConceptStats<f64>> = Vec::new();
        for items in &child_items {
            let mut stats = ConceptStats::empty(tree.schema());
            for &(a, b, c, x) in items {
                let inst = tree
                    .prepare([
                        ("a", RawValue::sym(format!("a{}", a % 4))),
                        ("b", RawValue::sym(format!("b{}", b % 3))),
                        ("c", RawValue::sym(format!("c{}", c % 4))),
                        ("x", RawValue::num(f64::from(x))),
                    ])
                    .unwrap();
                stats.observe(&inst);
            }
            children.push(stats);
        }
        let refs: Vec<&ConceptStats<f64>> = children.iter().collect();
        let p = EvalParams { schema: tree.schema(), alpha, variance_floor: FLOOR };
        let got = partition_mi(&refs, &p);
        let want = oracle_partition_mi(&refs, tree.schema(), alpha);
        prop_assert!((got - want).abs() < 1e-9, "got {got}, oracle {want}");
        prop_assert!(got >= -1e-12, "mi must be non-negative, got {got}");
    }

    #[test]
    fn pmi_of_root_is_zero_on_random_trees(
        items in proptest::collection::vec(item_strategy(), 1..30),
        query in item_strategy(),
    ) {
        let mut tree = build_tree(&items, 0.5, 100);
        let q = tree
            .prepare([
                ("a", RawValue::sym(format!("a{}", query.0 % 4))),
                ("x", RawValue::num(f64::from(query.3))),
            ])
            .unwrap();
        let p = tree.eval_params();
        let score = pmi(tree.root(), tree.root(), &q, &p);
        prop_assert_eq!(score.value, 0.0);
    }

    #[test]
    fn expansion_replays_as_best_first(
        items in proptest::collection::vec(item_strategy(), 1..40),
        query in item_strategy(),
        budget in 1usize..60,
    ) {
        let mut tree = build_tree(&items, 0.5, budget);
        let q = tree
            .prepare([
                ("a", RawValue::sym(format!("a{}", query.0 % 4))),
                ("b", RawValue::sym(format!("b{}", query.1 % 3))),
            ])
            .unwrap();
        let set = tree.expand(&q).unwrap();
        prop_assert!(set.entries.len() <= budget);

        // independent replay with a naive frontier
        let schema = tree.schema();
        let alpha = tree.alpha();
        let mut by_id: BTreeMap<u64, &ConceptNode<f64>> = BTreeMap::new();
        tree.root().walk(&mut |n| {
            by_id.insert(n.id.0, n);
        });
        let mut frontier: Vec<&ConceptNode<f64>> = vec![tree.root()];
        for entry in &set.entries {
            // the popped node must maximize the oracle loglik on the frontier
            let best = frontier
                .iter()
                .map(|n| (oracle_loglik(&n.stats, &q, schema, alpha), n.id))
                .fold(f64::NEG_INFINITY, |acc, (ll, _)| acc.max(ll));
            let popped = by_id[&entry.id.0];
            let popped_ll = oracle_loglik(&popped.stats, &q, schema, alpha);
            prop_assert!(
                (popped_ll - best).abs() < 1e-9,
                "popped {popped_ll}, frontier max {best}"
            );
            prop_assert!((popped_ll - entry.loglik.value()).abs() < 1e-9);
            let pos = frontier
                .iter()
                .position(|n| n.id == entry.id)
                .expect("expanded node was on the frontier");
            frontier.remove(pos);
            frontier.extend(popped.children.iter());
        }

        // weights: non-negative, sum to one
        let sum: f64 = set.entries.iter().map(|e| e.weight).sum();
        prop_assert!((sum - 1.0).abs() < 1e-12);
        prop_assert!(set.entries.iter().all(|e| e.weight >= 0.0));

        // with a budget covering the whole tree, everything is expanded
        if budget >= tree.node_count() {
            prop_assert_eq!(set.entries.len(), tree.node_count());
        }

        // determinism: the same query yields the identical expansion
        let again = tree.expand(&q).unwrap();
        prop_assert_eq!(&set, &again);
    }

    #[test]
    fn welford_matches_two_pass(xs in proptest::collection::vec(-1e3f64..1e3, 2..400)) {
        let mut g = cobweb::GaussianStats::<f64>::default();
        for &x in &xs {
            g.observe(x);
        }
        let n = xs.len() as f64;
        let mean = xs.iter().sum::<f64>() / n;
        let m2 = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>();
        prop_assert!((g.mean() - mean).abs() <= 1e-10 * mean.abs().max(1.0));
        prop_assert!((g.m2() - m2).abs() <= 1e-10 * m2.abs().max(1.0));
    }

    #[test]
    fn snapshot_round_trips_random_trees(
        items in proptest::collection::vec(item_strategy(), 1..40),
    ) {
        let tree = build_tree(&items, 1.0, 50);
        let bytes = tree.snapshot();
        let back = ConceptTree::<f64>::restore(&bytes).unwrap();
        prop_assert_eq!(&tree, &back);
        prop_assert_eq!(bytes, back.snapshot());
    }
}

// ---------------------------------------------------------------------------
// deterministic long-stream checks

#[test]
fn welford_long_stream_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(10_007);
    let xs: Vec<f64> = (0..10_000).map(|_| rng.random_range(-50.0..50.0)).collect();
    let mut g = cobweb::GaussianStats::<f64>::default();
    for &x in &xs {
        g.observe(x);
    }
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let m2 = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>();
    assert!((g.mean() - mean).abs() <= 1e-10 * mean.abs().max(1.0));
    assert!((g.m2() - m2).abs() <= 1e-10 * m2);
}

#[test]
fn counts_conserve_after_a_thousand_random_ifits() {
    let mut rng = ChaCha8Rng::seed_from_u64(40_487);
    let mut tree = ConceptTree::new(mixed_schema(), 0.8, 100).unwrap();
    for i in 0..1000u64 {
        let inst = tree
            .prepare([
                ("a", RawValue::sym(format!("a{}", rng.random_range(0..4)))),
                ("b", RawValue::sym(format!("b{}", rng.random_range(0..3)))),
                ("c", RawValue::sym(format!("c{}", rng.random_range(0..4)))),
                ("x", RawValue::num(rng.random_range(-4.0..4.0))),
            ])
            .unwrap();
        tree.ifit(&inst);
        assert_eq!(tree.training_count(), i + 1);
    }
    tree.check_invariants().expect("structural invariants hold");

    // a big organically grown tree must also survive a snapshot round trip
    let bytes = tree.snapshot();
    let back = ConceptTree::<f64>::restore(&bytes).unwrap();
    assert_eq!(tree, back);
}

#[test]
fn partition_mi_frozen_two_child_example() {
    // children {a:2, b:1} and {a:1, b:3}, alpha 0.5, K 2; the double-sum
    // oracle gives 0.05316408867556199
    let mut tree = ConceptTree::<f64>::new(
        AttributeSchema::new([("f", AttrKind::Categorical)]).unwrap(),
        0.5,
        10,
    )
    .unwrap();
    let xa = tree.prepare([("f", RawValue::sym("a"))]).unwrap();
    let xb = tree.prepare([("f", RawValue::sym("b"))]).unwrap();
    let mut left = ConceptStats::<f64>::empty(tree.schema());
    let mut right = ConceptStats::<f64>::empty(tree.schema());
    for _ in 0..2 {
        left.observe(&xa);
    }
    left.observe(&xb);
    right.observe(&xa);
    for _ in 0..3 {
        right.observe(&xb);
    }
    let p = EvalParams {
        schema: tree.schema(),
        alpha: 0.5,
        variance_floor: FLOOR,
    };
    let got = partition_mi(&[&left, &right], &p);
    let oracle = oracle_partition_mi(&[&left, &right], tree.schema(), 0.5);
    assert!((got - oracle).abs() < 1e-12);
    assert!((got - 0.05316408867556199).abs() < 1e-12);
}
