//! Incremental training.
//!
//! `ifit` sorts one instance down the tree. At each branch it scores four
//! candidate restructurings of the children — insert, new, merge, split — by
//! the mutual information of the hypothetical partition, normalized by its
//! child count, and applies the best. Raw mutual information always grows
//! under fragmentation, so the per-child average is what trades breadth
//! against purity and lets intermediate concepts form. Every candidate
//! configuration accounts for the incoming instance exactly once, so scores
//! are comparable.

use crate::prob::{instance_loglik, partition_mi, EvalParams};
use crate::scalar::Real;
use crate::schema::{AttributeSchema, Instance};
use crate::stats::ConceptStats;
use crate::tree::{ConceptNode, ConceptTree, NodeId, NodeIdGen};

/// One of the four structural operators, with the children it targets
/// (indices into the node's child list).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OperatorKind {
    /// Add the instance to an existing child.
    Insert { child: usize },
    /// Give the instance a fresh singleton child.
    New,
    /// Fuse the two most similar children; the originals become the fusion's
    /// children and the instance goes into the fusion.
    Merge { first: usize, second: usize },
    /// Replace a child by its own children, promoting them.
    Split { child: usize },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OperatorChoice<F> {
    pub kind: OperatorKind,
    /// Partition mutual information of the hypothetical child configuration,
    /// per child.
    pub score: F,
}

fn config_score<F: Real>(config: &[&ConceptStats<F>], p: &EvalParams<'_, F>) -> F {
    partition_mi(config, p) / F::from_size(config.len())
}

/// Scores all four candidate operations at a node with at least two
/// children, in tie-break priority order: insert, merge, split, new.
pub fn candidate_operations<F: Real>(
    node: &ConceptNode<F>,
    x: &Instance<F>,
    p: &EvalParams<'_, F>,
) -> Vec<OperatorChoice<F>> {
    assert!(
        node.children.len() >= 2,
        "operator evaluation needs at least two children"
    );
    let (best, second) = rank_children(node, x, p);

    let mut out = Vec::with_capacity(4);

    // insert: x joins the most similar child
    {
        let mut host = node.children[best].stats.clone();
        host.observe(x);
        let config: Vec<&ConceptStats<F>> = node
            .children
            .iter()
            .enumerate()
            .map(|(i, c)| if i == best { &host } else { &c.stats })
            .collect();
        out.push(OperatorChoice {
            kind: OperatorKind::Insert { child: best },
            score: config_score(&config, p),
        });
    }

    // merge: the two most similar children fused, x included in the fusion
    {
        let mut fused =
            ConceptStats::merged(&node.children[best].stats, &node.children[second].stats);
        fused.observe(x);
        let mut config: Vec<&ConceptStats<F>> = vec![&fused];
        config.extend(
            node.children
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != best && *i != second)
                .map(|(_, c)| &c.stats),
        );
        out.push(OperatorChoice {
            kind: OperatorKind::Merge {
                first: best,
                second,
            },
            score: config_score(&config, p),
        });
    }

    // split: the most similar child replaced by its children, with x then
    // inserted into the best of the promoted grandchildren. Splitting a leaf
    // is a dead candidate.
    {
        let target = &node.children[best];
        let score = if target.is_leaf() {
            F::neg_infinity()
        } else {
            let grand_best = target
                .children
                .iter()
                .enumerate()
                .map(|(i, g)| (i, instance_loglik(&g.stats, x, p).value(), g.id))
                .fold(None::<(usize, F, NodeId)>, |acc, cur| match acc {
                    None => Some(cur),
                    Some(best) if better(cur.1, cur.2, best.1, best.2) => Some(cur),
                    Some(best) => Some(best),
                })
                .expect("non-leaf has children")
                .0;
            let mut host = target.children[grand_best].stats.clone();
            host.observe(x);
            let mut config: Vec<&ConceptStats<F>> = node
                .children
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != best)
                .map(|(_, c)| &c.stats)
                .collect();
            config.extend(target.children.iter().enumerate().map(|(i, g)| {
                if i == grand_best {
                    &host
                } else {
                    &g.stats
                }
            }));
            config_score(&config, p)
        };
        out.push(OperatorChoice {
            kind: OperatorKind::Split { child: best },
            score,
        });
    }

    // new: x becomes its own child
    {
        let mut fresh = ConceptStats::empty(p.schema);
        fresh.observe(x);
        let mut config: Vec<&ConceptStats<F>> = node.children.iter().map(|c| &c.stats).collect();
        config.push(&fresh);
        out.push(OperatorChoice {
            kind: OperatorKind::New,
            score: config_score(&config, p),
        });
    }

    out
}

/// The operator whose hypothetical configuration maximizes partition mutual
/// information. Ties go to the earlier candidate in priority order
/// (insert > merge > split > new).
pub fn evaluate_operators<F: Real>(
    node: &ConceptNode<F>,
    x: &Instance<F>,
    p: &EvalParams<'_, F>,
) -> OperatorChoice<F> {
    candidate_operations(node, x, p)
        .into_iter()
        .reduce(|best, cand| if cand.score > best.score { cand } else { best })
        .expect("four candidates")
}

/// Ranks children by log p(x|child), ties broken toward the lower node id.
/// Returns the indices of the best and second-best children.
fn rank_children<F: Real>(
    node: &ConceptNode<F>,
    x: &Instance<F>,
    p: &EvalParams<'_, F>,
) -> (usize, usize) {
    let scored: Vec<(F, NodeId)> = node
        .children
        .iter()
        .map(|c| (instance_loglik(&c.stats, x, p).value(), c.id))
        .collect();
    let mut order: Vec<usize> = (0..scored.len()).collect();
    order.sort_by(|&a, &b| {
        scored[b]
            .0
            .partial_cmp(&scored[a].0)
            .expect("loglik is never NaN")
            .then(scored[a].1.cmp(&scored[b].1))
    });
    (order[0], order[1])
}

fn better<F: Real>(ll_a: F, id_a: NodeId, ll_b: F, id_b: NodeId) -> bool {
    match ll_a.partial_cmp(&ll_b).expect("loglik is never NaN") {
        std::cmp::Ordering::Greater => true,
        std::cmp::Ordering::Less => false,
        std::cmp::Ordering::Equal => id_a < id_b,
    }
}

/// Absorbs an instance at a childless node. An instance identical to
/// everything the leaf has seen just increments the counts; anything else
/// forks the leaf into two children, one carrying the old statistics and one
/// holding the newcomer.
pub(crate) fn fringe_expand<F: Real>(
    node: &mut ConceptNode<F>,
    x: &Instance<F>,
    schema: &AttributeSchema,
    ids: &mut NodeIdGen,
) -> NodeId {
    debug_assert!(node.is_leaf() && node.count() >= 1);
    if node.stats.matches_exactly(x) {
        node.stats.observe(x);
        return node.id;
    }
    let old = ConceptNode::with_stats(ids.next(), node.stats.clone());
    let fresh = ConceptNode::singleton(ids.next(), schema, x);
    let fresh_id = fresh.id;
    node.stats.observe(x);
    node.children = vec![old, fresh];
    fresh_id
}

impl<F: Real> ConceptTree<F> {
    /// Incrementally fits one instance, restructuring greedily along the
    /// descent path. Returns the id of the node that finally absorbed the
    /// instance. The instance must have been prepared against this tree.
    pub fn ifit(&mut self, x: &Instance<F>) -> NodeId {
        let (root, schema, mut ids, alpha, variance_floor) = self.learn_parts();
        let p = EvalParams {
            schema,
            alpha,
            variance_floor,
        };
        let leaf = descend(root, x, &p, schema, &mut ids);
        self.store_next_id(ids);
        leaf
    }
}

fn descend<F: Real>(
    node: &mut ConceptNode<F>,
    x: &Instance<F>,
    p: &EvalParams<'_, F>,
    schema: &AttributeSchema,
    ids: &mut NodeIdGen,
) -> NodeId {
    if node.is_leaf() {
        if node.count() == 0 {
            // the empty root absorbs the very first instance
            node.stats.observe(x);
            return node.id;
        }
        return fringe_expand(node, x, schema, ids);
    }

    node.stats.observe(x);
    loop {
        let choice = evaluate_operators(node, x, p);
        match choice.kind {
            OperatorKind::Insert { child } => {
                return descend(&mut node.children[child], x, p, schema, ids);
            }
            OperatorKind::New => {
                let fresh = ConceptNode::singleton(ids.next(), schema, x);
                let id = fresh.id;
                node.children.push(fresh);
                return id;
            }
            OperatorKind::Merge { first, second } => {
                let at = merge_children(node, first, second, ids);
                let id = descend(&mut node.children[at], x, p, schema, ids);
                collapse_single_child(node);
                return id;
            }
            OperatorKind::Split { child } => {
                let target = node.children.remove(child);
                node.children.splice(child..child, target.children);
                // re-evaluate the operators against the promoted children
            }
        }
    }
}

/// Fuses children `i` and `j` into a new node that adopts both. Returns the
/// index of the fusion within the (shortened) child list.
fn merge_children<F: Real>(
    node: &mut ConceptNode<F>,
    i: usize,
    j: usize,
    ids: &mut NodeIdGen,
) -> usize {
    debug_assert!(i != j);
    let (lo, hi) = (i.min(j), i.max(j));
    let high = node.children.remove(hi);
    let low = node.children.remove(lo);
    let mut fused =
        ConceptNode::with_stats(ids.next(), ConceptStats::merged(&low.stats, &high.stats));
    // keep the similarity order: best child first
    if lo == i {
        fused.children = vec![low, high];
    } else {
        fused.children = vec![high, low];
    }
    node.children.insert(lo, fused);
    lo
}

/// A node left with exactly one child adopts that child's children; the
/// intermediate is spliced out. Statistics are unchanged because a sole
/// child carries exactly its parent's counts.
fn collapse_single_child<F: Real>(node: &mut ConceptNode<F>) {
    if node.children.len() == 1 {
        let only = node.children.pop().expect("one child");
        node.children = only.children;
    }
}
