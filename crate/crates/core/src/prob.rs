//! Closed-form probability math: smoothed likelihoods, log p(x|c), pointwise
//! mutual information, and the partition mutual information that drives
//! operator selection.
//!
//! Everything is in natural-log units. Attributes are treated as independent
//! within a concept, so instance log-likelihoods are sums of per-attribute
//! terms. Smoothing keeps categorical masses positive and the variance floor
//! keeps Gaussian densities finite, so no query ever scores negative
//! infinity.

use serde::{Deserialize, Serialize};

use crate::scalar::Real;
use crate::schema::{AttrKind, AttributeSchema, Instance, InstanceValue};
use crate::stats::{CategoricalCounts, ConceptStats, GaussianStats};
use crate::tree::{ConceptNode, NodeId};

/// The tree-level parameters every probability evaluation needs.
#[derive(Debug, Clone, Copy)]
pub struct EvalParams<'a, F> {
    pub schema: &'a AttributeSchema,
    pub alpha: F,
    pub variance_floor: F,
}

/// A log-probability (or log-density). Densities may exceed zero in log
/// units; the invariant that matters is that the value is never NaN.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LogProb<F>(F);

impl<F: Real> LogProb<F> {
    pub fn new(value: F) -> Self {
        debug_assert!(!value.is_nan(), "log-probability must not be NaN");
        LogProb(value)
    }

    pub fn value(self) -> F {
        self.0
    }
}

/// PMI of a concept against an instance, relative to the concept that
/// supplies the marginal p(x) — the root, the one concept covering all data.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PmiScore<F> {
    pub value: F,
    pub reference: NodeId,
}

/// Smoothed categorical probability `(count(v) + alpha) / (n + alpha * k)`,
/// where `k` is the registry size at evaluation time. Unseen values get the
/// bare pseudocount.
pub fn cat_prob<F: Real>(counts: &CategoricalCounts, value: u32, alpha: F, k: usize) -> F {
    assert!(k >= 1, "registry must contain at least one value");
    assert!(alpha > F::zero(), "alpha must be positive");
    (F::from_count(counts.count_of(value)) + alpha)
        / (F::from_count(counts.total()) + alpha * F::from_size(k))
}

/// Log-density of the concept's Gaussian at `value`, with the population
/// variance floored (singletons sit exactly on the floor).
pub fn gauss_logpdf<F: Real>(stats: &GaussianStats<F>, value: F, variance_floor: F) -> LogProb<F> {
    assert!(
        variance_floor > F::zero(),
        "variance floor must be positive"
    );
    let var = stats.variance(variance_floor);
    let two = F::from_size(2);
    let diff = value - stats.mean();
    LogProb::new(-((two * F::PI() * var).ln() + diff * diff / var) / two)
}

/// log p(x|c): the sum of per-attribute log-probabilities over the
/// attributes present in `x`. Missing attributes contribute nothing.
pub fn instance_loglik<F: Real>(
    stats: &ConceptStats<F>,
    x: &Instance<F>,
    p: &EvalParams<'_, F>,
) -> LogProb<F> {
    let mut total = F::zero();
    for (id, value) in x.present() {
        match value {
            InstanceValue::Categorical(v) => {
                let counts = stats.attr(id).as_categorical();
                let k = p.schema.registry_len(id);
                total += cat_prob(counts, *v, p.alpha, k).ln();
            }
            InstanceValue::Continuous(v) => {
                let g = stats.attr(id).as_gaussian();
                total += gauss_logpdf(g, *v, p.variance_floor).value();
            }
        }
    }
    LogProb::new(total)
}

/// PMI(c, x) = log p(x|c) - log p(x), with p(x) taken from the root concept.
pub fn pmi<F: Real>(
    node: &ConceptNode<F>,
    root: &ConceptNode<F>,
    x: &Instance<F>,
    p: &EvalParams<'_, F>,
) -> PmiScore<F> {
    let node_ll = instance_loglik(&node.stats, x, p).value();
    let root_ll = instance_loglik(&root.stats, x, p).value();
    PmiScore {
        value: node_ll - root_ll,
        reference: root.id,
    }
}

/// Mutual information between a hypothetical partition into `children` and
/// the instance attributes, summed over attributes.
///
/// Categorical attributes use the smoothed per-child distributions against
/// their own mixture, which keeps each term non-negative. Continuous
/// attributes use the difference of Gaussian differential entropies between
/// the moment-matched mixture and the children, with all variances floored.
pub fn partition_mi<F: Real>(children: &[&ConceptStats<F>], p: &EvalParams<'_, F>) -> F {
    assert!(
        !children.is_empty(),
        "partition requires at least one child"
    );
    let total: u64 = children.iter().map(|c| c.count()).sum();
    assert!(total > 0, "partition requires observed instances");
    let total = F::from_count(total);
    let weights: Vec<F> = children
        .iter()
        .map(|c| F::from_count(c.count()) / total)
        .collect();

    let two = F::from_size(2);
    let mut mi = F::zero();
    for id in p.schema.attr_ids() {
        match p.schema.kind(id) {
            AttrKind::Categorical => {
                let k = p.schema.registry_len(id);
                if k == 0 {
                    continue;
                }
                // p(v|c) per child, then the children mixture as p̄(v).
                let probs: Vec<Vec<F>> = children
                    .iter()
                    .map(|c| {
                        let counts = c.attr(id).as_categorical();
                        (0..k as u32)
                            .map(|v| cat_prob(counts, v, p.alpha, k))
                            .collect()
                    })
                    .collect();
                let mut mixture = vec![F::zero(); k];
                for (w, row) in weights.iter().zip(&probs) {
                    for (m, &q) in mixture.iter_mut().zip(row) {
                        *m += *w * q;
                    }
                }
                for (w, row) in weights.iter().zip(&probs) {
                    for (&q, &m) in row.iter().zip(&mixture) {
                        mi += *w * q * (q / m).ln();
                    }
                }
            }
            AttrKind::Continuous => {
                let vars: Vec<F> = children
                    .iter()
                    .map(|c| c.attr(id).as_gaussian().variance(p.variance_floor))
                    .collect();
                let means: Vec<F> = children
                    .iter()
                    .map(|c| c.attr(id).as_gaussian().mean())
                    .collect();
                let mix_mean: F = weights.iter().zip(&means).map(|(&w, &m)| w * m).sum();
                let second_moment: F = weights
                    .iter()
                    .zip(&vars)
                    .zip(&means)
                    .map(|((&w, &v), &m)| w * (v + m * m))
                    .sum();
                let mix_var = (second_moment - mix_mean * mix_mean).max(p.variance_floor);
                let child_entropy: F = weights
                    .iter()
                    .zip(&vars)
                    .map(|(&w, &v)| w * v.ln() / two)
                    .sum();
                mi += mix_var.ln() / two - child_entropy;
            }
        }
    }
    mi
}
