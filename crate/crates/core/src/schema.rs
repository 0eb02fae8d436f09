//! Attribute schemas and instances.
//!
//! A schema declares the attributes an instance may carry. Categorical
//! attributes own a value registry: the ordered set of distinct symbols
//! observed so far. The registry only ever grows, and its insertion order is
//! what makes runs reproducible. Its current size is the `K` used for
//! pseudocount smoothing, so a symbol first seen at query time immediately
//! contributes smoothing mass.

use serde::{Deserialize, Serialize};

use crate::error::{CobwebError, Result};
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AttrKind {
    Categorical,
    Continuous,
}

/// Index of an attribute within its schema.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AttrId(pub usize);

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct AttributeDef {
    name: String,
    kind: AttrKind,
    /// Registry of observed symbols, in first-encounter order. Always empty
    /// for continuous attributes.
    values: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AttributeSchema {
    attributes: Vec<AttributeDef>,
}

impl AttributeSchema {
    pub fn new<S: Into<String>>(attrs: impl IntoIterator<Item = (S, AttrKind)>) -> Result<Self> {
        let attributes: Vec<AttributeDef> = attrs
            .into_iter()
            .map(|(name, kind)| AttributeDef {
                name: name.into(),
                kind,
                values: Vec::new(),
            })
            .collect();
        if attributes.is_empty() {
            return Err(CobwebError::Config("schema has no attributes".into()));
        }
        for (i, a) in attributes.iter().enumerate() {
            if attributes[..i].iter().any(|b| b.name == a.name) {
                return Err(CobwebError::Config(format!(
                    "duplicate attribute name `{}`",
                    a.name
                )));
            }
        }
        Ok(AttributeSchema { attributes })
    }

    pub fn len(&self) -> usize {
        self.attributes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.attributes.is_empty()
    }

    pub fn attr_id(&self, name: &str) -> Option<AttrId> {
        self.attributes
            .iter()
            .position(|a| a.name == name)
            .map(AttrId)
    }

    pub fn name(&self, id: AttrId) -> &str {
        &self.attributes[id.0].name
    }

    pub fn kind(&self, id: AttrId) -> AttrKind {
        self.attributes[id.0].kind
    }

    pub fn attr_ids(&self) -> impl Iterator<Item = AttrId> {
        (0..self.attributes.len()).map(AttrId)
    }

    /// Number of distinct symbols observed for a categorical attribute; the
    /// `K` of the smoothing formula. Zero for continuous attributes.
    pub fn registry_len(&self, id: AttrId) -> usize {
        self.attributes[id.0].values.len()
    }

    pub fn value_index(&self, id: AttrId, symbol: &str) -> Option<u32> {
        self.attributes[id.0]
            .values
            .iter()
            .position(|v| v == symbol)
            .map(|i| i as u32)
    }

    pub fn value_name(&self, id: AttrId, index: u32) -> &str {
        &self.attributes[id.0].values[index as usize]
    }

    pub fn value_names(&self, id: AttrId) -> impl Iterator<Item = &str> {
        self.attributes[id.0].values.iter().map(|s| s.as_str())
    }

    /// Interns `symbol`, growing the registry if it is new.
    pub fn intern_value(&mut self, id: AttrId, symbol: &str) -> u32 {
        if let Some(i) = self.value_index(id, symbol) {
            return i;
        }
        let def = &mut self.attributes[id.0];
        def.values.push(symbol.to_string());
        (def.values.len() - 1) as u32
    }
}

/// A raw attribute value, before interning against a schema.
#[derive(Debug, Clone, PartialEq)]
pub enum RawValue<F> {
    Symbol(String),
    Number(F),
}

impl<F> RawValue<F> {
    pub fn sym(s: impl Into<String>) -> Self {
        RawValue::Symbol(s.into())
    }

    pub fn num(x: F) -> Self {
        RawValue::Number(x)
    }
}

/// An interned value within an instance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InstanceValue<F> {
    Categorical(u32),
    Continuous(F),
}

/// A (possibly partial) attribute-value list interned against one tree's
/// schema. Absent attributes are genuinely missing, not sentinels.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance<F> {
    values: Vec<Option<InstanceValue<F>>>,
}

impl<F: Real> Instance<F> {
    pub(crate) fn new(width: usize) -> Self {
        Instance {
            values: vec![None; width],
        }
    }

    pub(crate) fn set(&mut self, id: AttrId, value: InstanceValue<F>) {
        self.values[id.0] = Some(value);
    }

    pub fn get(&self, id: AttrId) -> Option<&InstanceValue<F>> {
        self.values[id.0].as_ref()
    }

    pub fn has(&self, id: AttrId) -> bool {
        self.values[id.0].is_some()
    }

    /// Iterates the attributes present in this instance.
    pub fn present(&self) -> impl Iterator<Item = (AttrId, &InstanceValue<F>)> {
        self.values
            .iter()
            .enumerate()
            .filter_map(|(i, v)| v.as_ref().map(|v| (AttrId(i), v)))
    }

    pub fn present_count(&self) -> usize {
        self.values.iter().filter(|v| v.is_some()).count()
    }

    pub fn is_blank(&self) -> bool {
        self.present_count() == 0
    }

    /// A copy with one attribute removed; used to hold out a prediction
    /// target.
    pub fn without(&self, id: AttrId) -> Instance<F> {
        let mut copy = self.clone();
        copy.values[id.0] = None;
        copy
    }
}
