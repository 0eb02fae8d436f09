//! The six-letter nonsense-word task: 14 items over six boolean slots, seven
//! per category, not linearly separable.
//!
//! Category A holds the all-zero prototype, five one-bit "standards", and one
//! "exception" that shares only a single bit with its own prototype. Category
//! B mirrors the structure around the all-one prototype. The two exception
//! slots are chosen so no word carries both labels: the B standards are the
//! complements of the A standards except where that would collide with the A
//! exception, which frees exactly one one-bit word to act as the B exception.

use cobweb::{AttrKind, AttributeSchema};

use super::{LabelSpec, Reference, StimulusSet, TestCard, TrainingCard};

pub const SLOTS: [&str; 6] = ["p1", "p2", "p3", "p4", "p5", "p6"];
pub const LABEL: &str = "category";

const A_ITEMS: [(&str, [u8; 6]); 7] = [
    ("a-proto", [0, 0, 0, 0, 0, 0]),
    ("a-std-1", [1, 0, 0, 0, 0, 0]),
    ("a-std-2", [0, 1, 0, 0, 0, 0]),
    ("a-std-3", [0, 0, 1, 0, 0, 0]),
    ("a-std-4", [0, 0, 0, 1, 0, 0]),
    ("a-std-5", [0, 0, 0, 0, 1, 0]),
    ("a-exc", [1, 1, 1, 1, 0, 1]),
];

const B_ITEMS: [(&str, [u8; 6]); 7] = [
    ("b-proto", [1, 1, 1, 1, 1, 1]),
    ("b-std-1", [0, 1, 1, 1, 1, 1]),
    ("b-std-2", [1, 0, 1, 1, 1, 1]),
    ("b-std-3", [1, 1, 0, 1, 1, 1]),
    ("b-std-4", [1, 1, 1, 0, 1, 1]),
    ("b-std-5", [1, 1, 1, 1, 1, 0]),
    ("b-exc", [0, 0, 0, 0, 0, 1]),
];

fn schema() -> AttributeSchema {
    AttributeSchema::new(
        SLOTS
            .iter()
            .map(|s| (*s, AttrKind::Categorical))
            .chain([(LABEL, AttrKind::Categorical)]),
    )
    .expect("static schema")
}

fn features(bits: [u8; 6]) -> Vec<(String, String)> {
    SLOTS
        .iter()
        .zip(bits)
        .map(|(s, b)| (s.to_string(), b.to_string()))
        .collect()
}

fn item_type(id: &str) -> String {
    if id.ends_with("proto") {
        "prototype".into()
    } else if id.contains("std") {
        "standard".into()
    } else {
        "exception".into()
    }
}

pub fn gen_smith_minda() -> StimulusSet {
    let mut train = Vec::new();
    let mut test = Vec::new();
    for (cat, items) in [("A", A_ITEMS), ("B", B_ITEMS)] {
        for (id, bits) in items {
            train.push(TrainingCard {
                item_id: id.to_string(),
                item_type: item_type(id),
                features: features(bits),
                label: LabelSpec::Fixed(cat.to_string()),
            });
            test.push(TestCard {
                item_id: id.to_string(),
                item_type: item_type(id),
                features: features(bits),
                reference: Reference::Label(cat.to_string()),
            });
        }
    }
    StimulusSet {
        name: "smith-minda",
        schema: schema(),
        label_attr: LABEL,
        label_values: vec!["A".to_string(), "B".to_string()],
        train,
        test,
    }
}

pub fn a_items() -> &'static [(&'static str, [u8; 6])] {
    &A_ITEMS
}

pub fn b_items() -> &'static [(&'static str, [u8; 6])] {
    &B_ITEMS
}
