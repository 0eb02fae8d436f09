//! Incremental concept formation over attribute-value instances.
//!
//! The tree sorts each training instance down a hierarchy of probabilistic
//! concepts, choosing at every branch among four restructuring operators
//! (insert, new, merge, split) by the mutual information between the
//! resulting child partition and the instance attributes. Queries run a
//! best-first expansion ranked by log p(x|c) under a node budget and combine
//! the expanded concepts' predictions with normalized pointwise-mutual-
//! information weights.
//!
//! The numeric side is generic over the scalar type (`f32` or `f64`) through
//! [`Real`]; the concrete aliases below cover the common cases.
//!
//! ```
//! use cobweb::{AttrKind, AttributeSchema, ConceptTree64, RawValue};
//!
//! let schema = AttributeSchema::new([
//!     ("color", AttrKind::Categorical),
//!     ("size", AttrKind::Continuous),
//! ])
//! .unwrap();
//! let mut tree = ConceptTree64::new(schema, 1.0, 100).unwrap();
//! let x = tree
//!     .prepare([("color", RawValue::sym("green")), ("size", RawValue::num(2.4))])
//!     .unwrap();
//! tree.ifit(&x);
//! assert_eq!(tree.training_count(), 1);
//! ```

pub mod error;
pub mod infer;
pub mod learn;
pub mod prob;
mod scalar;
pub mod schema;
pub mod stats;
pub mod tree;

pub use error::{CobwebError, Result};
pub use infer::{weights_from_pmi, ExpansionEntry, ExpansionSet, PredictedDistribution};
pub use learn::{candidate_operations, evaluate_operators, OperatorChoice, OperatorKind};
pub use prob::{
    cat_prob, gauss_logpdf, instance_loglik, partition_mi, pmi, EvalParams, LogProb, PmiScore,
};
pub use scalar::Real;
pub use schema::{AttrId, AttrKind, AttributeSchema, Instance, InstanceValue, RawValue};
pub use stats::{AttributeStats, CategoricalCounts, ConceptStats, GaussianStats};
pub use tree::{ConceptNode, ConceptTree, NodeId, DEFAULT_VARIANCE_FLOOR};

/// Single-precision tree.
pub type ConceptTree32 = tree::ConceptTree<f32>;
/// Double-precision tree, the default choice.
pub type ConceptTree64 = tree::ConceptTree<f64>;
