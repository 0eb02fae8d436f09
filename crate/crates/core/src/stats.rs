//! Per-concept sufficient statistics.
//!
//! Each concept keeps one statistic per schema attribute: value counts for
//! categorical attributes, an incremental Gaussian (count, mean, sum of
//! squared deviations) for continuous ones. Statistics are additive, which is
//! what makes merge hypotheticals cheap to score.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::scalar::Real;
use crate::schema::{AttrKind, AttributeSchema, Instance, InstanceValue};

/// Value counts for one categorical attribute.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CategoricalCounts {
    #[serde(with = "count_map")]
    counts: BTreeMap<u32, u64>,
    total: u64,
}

/// Snapshot representation of the count map. Keys go through strings so the
/// document survives serde's internal buffering of flattened fields.
mod count_map {
    use std::collections::BTreeMap;

    use serde::de::Error;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(
        map: &BTreeMap<u32, u64>,
        serializer: S,
    ) -> Result<S::Ok, S::Error> {
        serializer.collect_map(map.iter().map(|(k, v)| (k.to_string(), v)))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        deserializer: D,
    ) -> Result<BTreeMap<u32, u64>, D::Error> {
        let raw: BTreeMap<String, u64> = Deserialize::deserialize(deserializer)?;
        raw.into_iter()
            .map(|(k, v)| {
                k.parse::<u32>()
                    .map(|k| (k, v))
                    .map_err(|e| D::Error::custom(format!("bad value index `{k}`: {e}")))
            })
            .collect()
    }
}

impl CategoricalCounts {
    pub fn observe(&mut self, value: u32) {
        *self.counts.entry(value).or_insert(0) += 1;
        self.total += 1;
    }

    pub fn add(&mut self, other: &CategoricalCounts) {
        for (&v, &n) in &other.counts {
            *self.counts.entry(v).or_insert(0) += n;
        }
        self.total += other.total;
    }

    pub fn count_of(&self, value: u32) -> u64 {
        self.counts.get(&value).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, u64)> + '_ {
        self.counts.iter().map(|(&v, &n)| (v, n))
    }

    /// True when every observation landed on `value`.
    pub fn concentrated_on(&self, value: u32) -> bool {
        self.total > 0 && self.count_of(value) == self.total
    }
}

/// Incremental Gaussian statistics, updated by the single-pass
/// (count, mean, m2) recurrence.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GaussianStats<F> {
    n: u64,
    mean: F,
    m2: F,
}

impl<F: Real> Default for GaussianStats<F> {
    fn default() -> Self {
        GaussianStats {
            n: 0,
            mean: F::zero(),
            m2: F::zero(),
        }
    }
}

impl<F: Real> GaussianStats<F> {
    pub fn observe(&mut self, x: F) {
        self.n += 1;
        let delta = x - self.mean;
        self.mean += delta / F::from_count(self.n);
        self.m2 += delta * (x - self.mean);
    }

    /// Pools two summaries as if their streams had been concatenated.
    pub fn add(&mut self, other: &GaussianStats<F>) {
        if other.n == 0 {
            return;
        }
        if self.n == 0 {
            *self = other.clone();
            return;
        }
        let n1 = F::from_count(self.n);
        let n2 = F::from_count(other.n);
        let n = n1 + n2;
        let delta = other.mean - self.mean;
        self.mean = (n1 * self.mean + n2 * other.mean) / n;
        self.m2 = self.m2 + other.m2 + delta * delta * n1 * n2 / n;
        self.n += other.n;
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn mean(&self) -> F {
        self.mean
    }

    pub fn m2(&self) -> F {
        self.m2
    }

    /// Population variance `m2 / n`, floored; the floor alone for n <= 1.
    pub fn variance(&self, floor: F) -> F {
        if self.n <= 1 {
            floor
        } else {
            (self.m2 / F::from_count(self.n)).max(floor)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AttributeStats<F> {
    Categorical(CategoricalCounts),
    Gaussian(GaussianStats<F>),
}

impl<F: Real> AttributeStats<F> {
    fn empty_for(kind: AttrKind) -> Self {
        match kind {
            AttrKind::Categorical => AttributeStats::Categorical(CategoricalCounts::default()),
            AttrKind::Continuous => AttributeStats::Gaussian(GaussianStats::default()),
        }
    }

    pub fn as_categorical(&self) -> &CategoricalCounts {
        match self {
            AttributeStats::Categorical(c) => c,
            AttributeStats::Gaussian(_) => panic!("attribute is continuous"),
        }
    }

    pub fn as_gaussian(&self) -> &GaussianStats<F> {
        match self {
            AttributeStats::Gaussian(g) => g,
            AttributeStats::Categorical(_) => panic!("attribute is categorical"),
        }
    }
}

/// The summary a concept stores: how many instances it absorbed and one
/// statistic per attribute.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConceptStats<F> {
    count: u64,
    #[serde(rename = "dists")]
    attrs: Vec<AttributeStats<F>>,
}

impl<F: Real> ConceptStats<F> {
    pub fn empty(schema: &AttributeSchema) -> Self {
        ConceptStats {
            count: 0,
            attrs: schema
                .attr_ids()
                .map(|id| AttributeStats::empty_for(schema.kind(id)))
                .collect(),
        }
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn attr(&self, id: crate::schema::AttrId) -> &AttributeStats<F> {
        &self.attrs[id.0]
    }

    pub fn attrs(&self) -> &[AttributeStats<F>] {
        &self.attrs
    }

    /// Folds one instance into the summary. Attributes missing from `x` are
    /// left untouched.
    pub fn observe(&mut self, x: &Instance<F>) {
        self.count += 1;
        for (id, value) in x.present() {
            match (&mut self.attrs[id.0], value) {
                (AttributeStats::Categorical(c), InstanceValue::Categorical(v)) => c.observe(*v),
                (AttributeStats::Gaussian(g), InstanceValue::Continuous(x)) => g.observe(*x),
                _ => unreachable!("instance kind checked at interning"),
            }
        }
    }

    /// Pools this summary with another, as for a merge hypothetical.
    pub fn add(&mut self, other: &ConceptStats<F>) {
        self.count += other.count;
        for (mine, theirs) in self.attrs.iter_mut().zip(&other.attrs) {
            match (mine, theirs) {
                (AttributeStats::Categorical(a), AttributeStats::Categorical(b)) => a.add(b),
                (AttributeStats::Gaussian(a), AttributeStats::Gaussian(b)) => a.add(b),
                _ => unreachable!("schemas match within one tree"),
            }
        }
    }

    pub fn merged(a: &ConceptStats<F>, b: &ConceptStats<F>) -> Self {
        let mut m = a.clone();
        m.add(b);
        m
    }

    /// Whether the summary is consistent with having seen only copies of `x`:
    /// every categorical count concentrated on x's value, every Gaussian
    /// degenerate at x's value, and attributes absent from `x` unobserved.
    pub fn matches_exactly(&self, x: &Instance<F>) -> bool {
        for (i, stats) in self.attrs.iter().enumerate() {
            let value = x.get(crate::schema::AttrId(i));
            let ok = match (stats, value) {
                (AttributeStats::Categorical(c), Some(InstanceValue::Categorical(v))) => {
                    c.concentrated_on(*v)
                }
                (AttributeStats::Categorical(c), None) => c.total() == 0,
                (AttributeStats::Gaussian(g), Some(InstanceValue::Continuous(v))) => {
                    g.n() > 0 && g.m2() == F::zero() && g.mean() == *v
                }
                (AttributeStats::Gaussian(g), None) => g.n() == 0,
                _ => false,
            };
            if !ok {
                return false;
            }
        }
        true
    }
}
