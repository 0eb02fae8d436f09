//! Stimulus sets for the three experiments.

use cobweb::AttributeSchema;

mod hayes_roth;
mod medin;
mod smith_minda;

pub use hayes_roth::gen_hayes_roth;
pub use medin::{gen_medin_exp1, gen_medin_exp2};
pub use smith_minda::gen_smith_minda;

pub mod hayes_roth_audit {
    //! Structural facts about the club-membership deck, for tests.
    pub use super::hayes_roth::{
        class_vector, prototype_of, shared_features, CLUB1, CLUB2, NEITHER,
    };
}

pub mod smith_minda_audit {
    //! The raw item tables of the nonsense-word task, for tests.
    pub use super::smith_minda::{a_items, b_items};
}

/// How a training card is labeled: a fixed category, or one drawn from a set
/// of equally acceptable categories at presentation time.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LabelSpec {
    Fixed(String),
    /// Any of these labels earns positive feedback; training draws one.
    Either(Vec<String>),
}

/// What counts as the reference category when scoring a test query.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Reference {
    Label(String),
    /// The reference probability is the sum over these labels.
    AnyOf(Vec<String>),
}

#[derive(Debug, Clone)]
pub struct TrainingCard {
    pub item_id: String,
    pub item_type: String,
    pub features: Vec<(String, String)>,
    pub label: LabelSpec,
}

#[derive(Debug, Clone)]
pub struct TestCard {
    pub item_id: String,
    pub item_type: String,
    pub features: Vec<(String, String)>,
    pub reference: Reference,
}

/// One experiment's materials: the schema template (cloned per simulated
/// participant so registries grow from scratch), the ordered training deck,
/// and the test deck.
#[derive(Debug, Clone)]
pub struct StimulusSet {
    pub name: &'static str,
    pub schema: AttributeSchema,
    pub label_attr: &'static str,
    /// Labels a participant can guess before any training.
    pub label_values: Vec<String>,
    pub train: Vec<TrainingCard>,
    pub test: Vec<TestCard>,
}

impl StimulusSet {
    /// Distinct training item ids, in first appearance order.
    pub fn train_item_ids(&self) -> Vec<&str> {
        let mut ids: Vec<&str> = Vec::new();
        for card in &self.train {
            if !ids.contains(&card.item_id.as_str()) {
                ids.push(&card.item_id);
            }
        }
        ids
    }
}
