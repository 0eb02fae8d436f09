//! Best-first querying.
//!
//! A query expands concepts in order of log p(x|c) — equivalent to ordering
//! by PMI, since p(x) is shared — under the `max_nodes` budget, then weights
//! the expanded concepts by their normalized PMI. Normalization happens in
//! probability space: weights are proportional to exp(PMI), which is the
//! posterior over the expanded concepts under a uniform prior, so every
//! activated concept contributes in proportion to how well it explains the
//! query. Predictions and likelihood scores are mixtures under those
//! weights.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{CobwebError, Result};
use crate::prob::{cat_prob, instance_loglik, LogProb};
use crate::scalar::Real;
use crate::schema::{AttrKind, Instance};
use crate::tree::{ConceptNode, ConceptTree, NodeId};

/// One expanded concept: its likelihood for the query, its PMI against the
/// root, and its share of the prediction mixture.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpansionEntry<F> {
    pub id: NodeId,
    pub loglik: LogProb<F>,
    pub pmi: F,
    pub weight: F,
}

/// The concepts visited by best-first search for one query, in expansion
/// order.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpansionSet<F> {
    pub entries: Vec<ExpansionEntry<F>>,
    pub budget_used: usize,
}

/// Normalizes PMI scores into mixture weights in probability space:
/// `w_i ∝ exp(pmi_i)`, computed stably against the maximum score. Since
/// p(x) is shared, the weights equal the posterior over the expanded
/// concepts under a uniform prior, `p(x|c_i) / Σ_j p(x|c_j)`.
pub fn weights_from_pmi<F: Real>(pmis: &[F]) -> Vec<F> {
    assert!(!pmis.is_empty(), "weights need at least one entry");
    let top = pmis
        .iter()
        .copied()
        .fold(F::neg_infinity(), |a, b| a.max(b));
    let scaled: Vec<F> = pmis.iter().map(|&v| (v - top).exp()).collect();
    let total: F = scaled.iter().copied().sum();
    scaled.into_iter().map(|v| v / total).collect()
}

/// A predicted distribution for one attribute: a mixture of the expanded
/// concepts' distributions.
#[derive(Debug, Clone, PartialEq)]
pub enum PredictedDistribution<F> {
    Categorical {
        attribute: String,
        /// Probability per registry value, in registry order; sums to 1.
        probs: Vec<(String, F)>,
    },
    Continuous {
        attribute: String,
        mean: F,
        variance: F,
    },
}

impl<F: Real> PredictedDistribution<F> {
    pub fn attribute(&self) -> &str {
        match self {
            PredictedDistribution::Categorical { attribute, .. } => attribute,
            PredictedDistribution::Continuous { attribute, .. } => attribute,
        }
    }

    /// Probability of one categorical value; zero for values outside the
    /// registry.
    pub fn prob_of(&self, value: &str) -> F {
        match self {
            PredictedDistribution::Categorical { probs, .. } => probs
                .iter()
                .find(|(name, _)| name == value)
                .map(|(_, p)| *p)
                .unwrap_or_else(F::zero),
            PredictedDistribution::Continuous { .. } => F::zero(),
        }
    }

    /// The highest-probability values (more than one on an exact tie).
    pub fn argmax(&self) -> Vec<&str> {
        match self {
            PredictedDistribution::Categorical { probs, .. } => {
                let mut best: Vec<&str> = Vec::new();
                let mut top = F::neg_infinity();
                for (name, p) in probs {
                    if *p > top {
                        top = *p;
                        best.clear();
                        best.push(name);
                    } else if *p == top {
                        best.push(name);
                    }
                }
                best
            }
            PredictedDistribution::Continuous { .. } => Vec::new(),
        }
    }
}

struct FrontierItem<'t, F> {
    loglik: F,
    node: &'t ConceptNode<F>,
}

impl<F: Real> PartialEq for FrontierItem<'_, F> {
    fn eq(&self, other: &Self) -> bool {
        self.loglik == other.loglik && self.node.id == other.node.id
    }
}

impl<F: Real> Eq for FrontierItem<'_, F> {}

impl<F: Real> Ord for FrontierItem<'_, F> {
    fn cmp(&self, other: &Self) -> Ordering {
        // max-heap: higher loglik first, then lower node id
        self.loglik
            .partial_cmp(&other.loglik)
            .expect("loglik is never NaN")
            .then_with(|| other.node.id.cmp(&self.node.id))
    }
}

impl<F: Real> PartialOrd for FrontierItem<'_, F> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<F: Real> ConceptTree<F> {
    /// Best-first expansion for a (possibly partial) query instance. Only
    /// the attributes present in the query enter the likelihoods.
    pub fn expand(&self, x: &Instance<F>) -> Result<ExpansionSet<F>> {
        Ok(self.expand_nodes(x)?.0)
    }

    fn expand_nodes(&self, x: &Instance<F>) -> Result<(ExpansionSet<F>, Vec<&ConceptNode<F>>)> {
        if self.is_untrained() {
            return Err(CobwebError::EmptyModel);
        }
        let p = self.eval_params();
        let root_ll = instance_loglik(&self.root().stats, x, &p).value();

        let mut frontier = BinaryHeap::new();
        frontier.push(FrontierItem {
            loglik: root_ll,
            node: self.root(),
        });
        let mut entries = Vec::new();
        let mut nodes = Vec::new();
        while let Some(item) = frontier.pop() {
            entries.push(ExpansionEntry {
                id: item.node.id,
                loglik: LogProb::new(item.loglik),
                pmi: item.loglik - root_ll,
                weight: F::zero(),
            });
            nodes.push(item.node);
            if entries.len() >= self.max_nodes() {
                break;
            }
            for child in &item.node.children {
                frontier.push(FrontierItem {
                    loglik: instance_loglik(&child.stats, x, &p).value(),
                    node: child,
                });
            }
        }

        let pmis: Vec<F> = entries.iter().map(|e| e.pmi).collect();
        for (entry, w) in entries.iter_mut().zip(weights_from_pmi(&pmis)) {
            entry.weight = w;
        }
        let budget_used = entries.len();
        Ok((
            ExpansionSet {
                entries,
                budget_used,
            },
            nodes,
        ))
    }

    /// Predicts a missing attribute as the PMI-weighted mixture of the
    /// expanded concepts' distributions.
    pub fn predict(&self, x: &Instance<F>, target: &str) -> Result<PredictedDistribution<F>> {
        let attr = self
            .schema()
            .attr_id(target)
            .ok_or_else(|| CobwebError::UnknownAttribute(target.to_string()))?;
        if x.has(attr) {
            return Err(CobwebError::Config(format!(
                "target attribute `{target}` must be missing from the query"
            )));
        }
        let (set, nodes) = self.expand_nodes(x)?;
        let p = self.eval_params();
        match self.schema().kind(attr) {
            AttrKind::Categorical => {
                let k = self.schema().registry_len(attr);
                if k == 0 {
                    return Err(CobwebError::Config(format!(
                        "no values observed yet for attribute `{target}`"
                    )));
                }
                let mut probs = vec![F::zero(); k];
                for (entry, node) in set.entries.iter().zip(&nodes) {
                    let counts = node.stats.attr(attr).as_categorical();
                    for (v, slot) in probs.iter_mut().enumerate() {
                        *slot += entry.weight * cat_prob(counts, v as u32, p.alpha, k);
                    }
                }
                let named = probs
                    .into_iter()
                    .enumerate()
                    .map(|(v, p)| (self.schema().value_name(attr, v as u32).to_string(), p))
                    .collect();
                Ok(PredictedDistribution::Categorical {
                    attribute: target.to_string(),
                    probs: named,
                })
            }
            AttrKind::Continuous => {
                let mut mean = F::zero();
                let mut second = F::zero();
                for (entry, node) in set.entries.iter().zip(&nodes) {
                    let g = node.stats.attr(attr).as_gaussian();
                    let var = g.variance(p.variance_floor);
                    mean += entry.weight * g.mean();
                    second += entry.weight * (var + g.mean() * g.mean());
                }
                Ok(PredictedDistribution::Continuous {
                    attribute: target.to_string(),
                    mean,
                    variance: (second - mean * mean).max(F::zero()),
                })
            }
        }
    }

    /// The PMI-weighted sum of log p(x|c) over the expanded concepts; used
    /// as a recognition proxy.
    pub fn score_loglik(&self, x: &Instance<F>) -> Result<F> {
        let set = self.expand(x)?;
        Ok(set
            .entries
            .iter()
            .map(|e| e.weight * e.loglik.value())
            .sum())
    }
}
