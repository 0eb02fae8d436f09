//! The concept taxonomy: nodes, the tree, and snapshot serialization.

use serde::{de::DeserializeOwned, Deserialize, Serialize};

use crate::error::{CobwebError, Result};
use crate::prob::EvalParams;
use crate::scalar::Real;
use crate::schema::{AttrKind, AttributeSchema, Instance, InstanceValue, RawValue};
use crate::stats::{AttributeStats, ConceptStats};

pub const DEFAULT_VARIANCE_FLOOR: f64 = 1e-3;

/// Stable identifier of a concept node. Ids are assigned monotonically so
/// snapshots reproduce exactly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NodeId(pub u64);

#[derive(Debug)]
pub(crate) struct NodeIdGen(u64);

impl NodeIdGen {
    pub(crate) fn next(&mut self) -> NodeId {
        let id = NodeId(self.0);
        self.0 += 1;
        id
    }
}

/// One concept: a statistics summary plus ordered children. Leaves hold
/// (approximately) single stored exemplars; interior nodes act as prototypes
/// for everything beneath them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConceptNode<F> {
    pub id: NodeId,
    #[serde(flatten)]
    pub stats: ConceptStats<F>,
    pub children: Vec<ConceptNode<F>>,
}

impl<F: Real> ConceptNode<F> {
    pub(crate) fn empty(id: NodeId, schema: &AttributeSchema) -> Self {
        ConceptNode {
            id,
            stats: ConceptStats::empty(schema),
            children: Vec::new(),
        }
    }

    pub(crate) fn singleton(id: NodeId, schema: &AttributeSchema, x: &Instance<F>) -> Self {
        let mut node = ConceptNode::empty(id, schema);
        node.stats.observe(x);
        node
    }

    pub(crate) fn with_stats(id: NodeId, stats: ConceptStats<F>) -> Self {
        ConceptNode {
            id,
            stats,
            children: Vec::new(),
        }
    }

    pub fn count(&self) -> u64 {
        self.stats.count()
    }

    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }

    /// Nodes in this subtree, including self.
    pub fn size(&self) -> usize {
        1 + self.children.iter().map(ConceptNode::size).sum::<usize>()
    }

    pub fn walk<'a>(&'a self, f: &mut impl FnMut(&'a ConceptNode<F>)) {
        f(self);
        for child in &self.children {
            child.walk(f);
        }
    }
}

/// A concept-formation tree together with the schema and the two knobs the
/// model exposes: the smoothing pseudocount `alpha` and the inference budget
/// `max_nodes`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConceptTree<F> {
    schema: AttributeSchema,
    alpha: F,
    max_nodes: usize,
    variance_floor: F,
    next_id: u64,
    root: ConceptNode<F>,
}

impl<F: Real> ConceptTree<F> {
    pub fn new(schema: AttributeSchema, alpha: F, max_nodes: usize) -> Result<Self> {
        if !alpha.is_finite() || alpha <= F::zero() {
            return Err(CobwebError::Config(format!(
                "alpha must be positive and finite, got {alpha}"
            )));
        }
        if max_nodes < 1 {
            return Err(CobwebError::Config("max_nodes must be at least 1".into()));
        }
        let root = ConceptNode::empty(NodeId(0), &schema);
        Ok(ConceptTree {
            schema,
            alpha,
            max_nodes,
            variance_floor: F::from_f64(DEFAULT_VARIANCE_FLOOR).expect("floor fits"),
            next_id: 1,
            root,
        })
    }

    pub fn set_variance_floor(&mut self, floor: F) -> Result<()> {
        if !floor.is_finite() || floor <= F::zero() {
            return Err(CobwebError::Config(format!(
                "variance floor must be positive and finite, got {floor}"
            )));
        }
        self.variance_floor = floor;
        Ok(())
    }

    pub fn schema(&self) -> &AttributeSchema {
        &self.schema
    }

    pub fn alpha(&self) -> F {
        self.alpha
    }

    pub fn max_nodes(&self) -> usize {
        self.max_nodes
    }

    pub fn variance_floor(&self) -> F {
        self.variance_floor
    }

    pub fn root(&self) -> &ConceptNode<F> {
        &self.root
    }

    /// Total instances absorbed so far.
    pub fn training_count(&self) -> u64 {
        self.root.count()
    }

    pub fn is_untrained(&self) -> bool {
        self.root.count() == 0
    }

    pub fn node_count(&self) -> usize {
        self.root.size()
    }

    pub fn eval_params(&self) -> EvalParams<'_, F> {
        EvalParams {
            schema: &self.schema,
            alpha: self.alpha,
            variance_floor: self.variance_floor,
        }
    }

    pub(crate) fn learn_parts(
        &mut self,
    ) -> (&mut ConceptNode<F>, &AttributeSchema, NodeIdGen, F, F) {
        let gen = NodeIdGen(self.next_id);
        (
            &mut self.root,
            &self.schema,
            gen,
            self.alpha,
            self.variance_floor,
        )
    }

    pub(crate) fn store_next_id(&mut self, gen: NodeIdGen) {
        self.next_id = gen.0;
    }

    /// Interns a raw attribute-value list against this tree's schema,
    /// growing categorical registries with any novel symbols.
    pub fn prepare<S: AsRef<str>>(
        &mut self,
        values: impl IntoIterator<Item = (S, RawValue<F>)>,
    ) -> Result<Instance<F>> {
        let mut x = Instance::new(self.schema.len());
        for (name, value) in values {
            let name = name.as_ref();
            let id = self
                .schema
                .attr_id(name)
                .ok_or_else(|| CobwebError::UnknownAttribute(name.to_string()))?;
            match (self.schema.kind(id), value) {
                (AttrKind::Categorical, RawValue::Symbol(s)) => {
                    let v = self.schema.intern_value(id, &s);
                    x.set(id, InstanceValue::Categorical(v));
                }
                (AttrKind::Continuous, RawValue::Number(n)) => {
                    if n.is_nan() {
                        return Err(CobwebError::Config(format!(
                            "attribute `{name}` given a NaN value"
                        )));
                    }
                    x.set(id, InstanceValue::Continuous(n));
                }
                (AttrKind::Categorical, RawValue::Number(_)) => {
                    return Err(CobwebError::KindMismatch {
                        attribute: name.to_string(),
                        expected: "categorical",
                    })
                }
                (AttrKind::Continuous, RawValue::Symbol(_)) => {
                    return Err(CobwebError::KindMismatch {
                        attribute: name.to_string(),
                        expected: "continuous",
                    })
                }
            }
        }
        Ok(x)
    }

    /// Checks the structural invariants of the whole tree, returning a
    /// description of the first violation found.
    pub fn check_invariants(&self) -> std::result::Result<(), String> {
        check_node(&self.root, &self.schema)
    }
}

impl<F: Real + Serialize + DeserializeOwned> ConceptTree<F> {
    /// Serializes the tree as a self-contained JSON document: the schema
    /// block first, then the recursive node blocks {id, count, dists,
    /// children}. Gaussian statistics keep full decimal precision.
    pub fn snapshot(&self) -> Vec<u8> {
        serde_json::to_vec(self).expect("tree serializes")
    }

    pub fn restore(bytes: &[u8]) -> Result<Self> {
        let tree: ConceptTree<F> =
            serde_json::from_slice(bytes).map_err(|e| CobwebError::from_json(e, bytes))?;
        if !tree.alpha.is_finite() || tree.alpha <= F::zero() {
            return Err(CobwebError::Config(
                "snapshot has non-positive alpha".into(),
            ));
        }
        if tree.max_nodes < 1 {
            return Err(CobwebError::Config("snapshot has zero max_nodes".into()));
        }
        Ok(tree)
    }
}

fn check_node<F: Real>(
    node: &ConceptNode<F>,
    schema: &AttributeSchema,
) -> std::result::Result<(), String> {
    if node.children.len() == 1 {
        return Err(format!("node {:?} has exactly one child", node.id));
    }
    if !node.children.is_empty() {
        let child_total: u64 = node.children.iter().map(|c| c.count()).sum();
        if child_total != node.count() {
            return Err(format!(
                "node {:?} count {} != children total {}",
                node.id,
                node.count(),
                child_total
            ));
        }
        for id in schema.attr_ids() {
            if schema.kind(id) != AttrKind::Categorical {
                // Gaussian summaries aggregate by construction; only the
                // sample sizes can be cross-checked exactly.
                let n: u64 = node
                    .children
                    .iter()
                    .map(|c| c.stats.attr(id).as_gaussian().n())
                    .sum();
                if n != node.stats.attr(id).as_gaussian().n() {
                    return Err(format!(
                        "node {:?} gaussian n mismatch on {}",
                        node.id,
                        schema.name(id)
                    ));
                }
                continue;
            }
            let parent = node.stats.attr(id).as_categorical();
            for v in 0..schema.registry_len(id) as u32 {
                let child_sum: u64 = node
                    .children
                    .iter()
                    .map(|c| c.stats.attr(id).as_categorical().count_of(v))
                    .sum();
                if child_sum != parent.count_of(v) {
                    return Err(format!(
                        "node {:?} attr {} value {} count {} != children sum {}",
                        node.id,
                        schema.name(id),
                        v,
                        parent.count_of(v),
                        child_sum
                    ));
                }
            }
        }
    }
    for attr in node.stats.attrs() {
        if let AttributeStats::Gaussian(g) = attr {
            if g.m2() < F::zero() {
                return Err(format!("node {:?} has negative m2", node.id));
            }
        }
    }
    for child in &node.children {
        check_node(child, schema)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schema::AttrKind;

    fn schema() -> AttributeSchema {
        AttributeSchema::new([
            ("color", AttrKind::Categorical),
            ("size", AttrKind::Continuous),
        ])
        .unwrap()
    }

    #[test]
    fn new_tree_is_empty() {
        let tree = ConceptTree::<f64>::new(schema(), 0.1, 100).unwrap();
        assert_eq!(tree.training_count(), 0);
        assert!(tree.root().is_leaf());
        assert_eq!(tree.node_count(), 1);
    }

    #[test]
    fn rejects_bad_config() {
        assert!(ConceptTree::<f64>::new(schema(), 0.0, 100).is_err());
        assert!(ConceptTree::<f64>::new(schema(), -1.0, 100).is_err());
        assert!(ConceptTree::<f64>::new(schema(), 1.0, 0).is_err());
        let mut t = ConceptTree::<f64>::new(schema(), 1.0, 1).unwrap();
        assert!(t.set_variance_floor(0.0).is_err());
        assert!(t.set_variance_floor(1e-6).is_ok());
    }

    #[test]
    fn prepare_validates_names_and_kinds() {
        let mut tree = ConceptTree::<f64>::new(schema(), 1.0, 10).unwrap();
        assert!(matches!(
            tree.prepare([("shape", RawValue::sym("round"))]),
            Err(CobwebError::UnknownAttribute(_))
        ));
        assert!(matches!(
            tree.prepare([("color", RawValue::num(1.0))]),
            Err(CobwebError::KindMismatch { .. })
        ));
        assert!(matches!(
            tree.prepare([("size", RawValue::sym("big"))]),
            Err(CobwebError::KindMismatch { .. })
        ));
        let x = tree
            .prepare([
                ("color", RawValue::sym("red")),
                ("size", RawValue::num(2.0)),
            ])
            .unwrap();
        assert_eq!(x.present_count(), 2);
    }

    #[test]
    fn empty_tree_round_trips() {
        let tree = ConceptTree::<f64>::new(schema(), 0.5, 7).unwrap();
        let bytes = tree.snapshot();
        let back = ConceptTree::<f64>::restore(&bytes).unwrap();
        assert_eq!(tree, back);
    }

    #[test]
    fn truncated_snapshot_is_a_parse_error() {
        let tree = ConceptTree::<f64>::new(schema(), 0.5, 7).unwrap();
        let mut bytes = tree.snapshot();
        bytes.truncate(bytes.len() / 2);
        match ConceptTree::<f64>::restore(&bytes) {
            Err(CobwebError::Snapshot { offset, .. }) => {
                assert!(offset <= bytes.len());
            }
            other => panic!("expected parse error, got {other:?}"),
        }
    }
}
