//! The two geometric-forms tasks: four binary dimensions (form, size, color,
//! position), categories A and B. The first set is not linearly separable;
//! the second is. Item numbers follow the original stimulus tables.

use cobweb::{AttrKind, AttributeSchema};

use super::{LabelSpec, Reference, StimulusSet, TestCard, TrainingCard};

pub const DIMS: [&str; 4] = ["form", "size", "color", "position"];
pub const LABEL: &str = "category";

fn schema() -> AttributeSchema {
    AttributeSchema::new([
        ("form", AttrKind::Categorical),
        ("size", AttrKind::Categorical),
        ("color", AttrKind::Categorical),
        ("position", AttrKind::Categorical),
        (LABEL, AttrKind::Categorical),
    ])
    .expect("static schema")
}

fn features(bits: [u8; 4]) -> Vec<(String, String)> {
    DIMS.iter()
        .zip(bits)
        .map(|(d, b)| (d.to_string(), b.to_string()))
        .collect()
}

fn build(
    name: &'static str,
    train_a: &[(u8, [u8; 4])],
    train_b: &[(u8, [u8; 4])],
    novel_a: &[(u8, [u8; 4])],
    novel_b: &[(u8, [u8; 4])],
) -> StimulusSet {
    let mut train = Vec::new();
    let mut test = Vec::new();
    for (cat, items) in [("A", train_a), ("B", train_b)] {
        for &(id, bits) in items {
            train.push(TrainingCard {
                item_id: id.to_string(),
                item_type: format!("train-{}", cat.to_lowercase()),
                features: features(bits),
                label: LabelSpec::Fixed(cat.to_string()),
            });
            test.push(TestCard {
                item_id: id.to_string(),
                item_type: format!("train-{}", cat.to_lowercase()),
                features: features(bits),
                reference: Reference::Label(cat.to_string()),
            });
        }
    }
    for (cat, items) in [("A", novel_a), ("B", novel_b)] {
        for &(id, bits) in items {
            test.push(TestCard {
                item_id: id.to_string(),
                item_type: format!("novel-{}", cat.to_lowercase()),
                features: features(bits),
                reference: Reference::Label(cat.to_string()),
            });
        }
    }
    StimulusSet {
        name,
        schema: schema(),
        label_attr: LABEL,
        label_values: vec!["A".to_string(), "B".to_string()],
        train,
        test,
    }
}

/// The non-linearly separable set: 6 training items, 6 novel test items.
pub fn gen_medin_exp1() -> StimulusSet {
    build(
        "medin-1",
        &[(6, [1, 1, 1, 1]), (7, [1, 0, 1, 0]), (9, [0, 1, 0, 1])],
        &[(10, [0, 0, 0, 0]), (15, [1, 0, 1, 1]), (16, [0, 1, 0, 0])],
        &[(5, [0, 1, 1, 1]), (13, [1, 1, 0, 1]), (4, [1, 1, 1, 0])],
        &[(3, [1, 0, 0, 0]), (8, [0, 0, 1, 0]), (14, [0, 0, 0, 1])],
    )
}

/// The linearly separable set: 9 training items, 7 novel test items.
pub fn gen_medin_exp2() -> StimulusSet {
    build(
        "medin-2",
        &[
            (4, [1, 1, 1, 0]),
            (7, [1, 0, 1, 0]),
            (15, [1, 0, 1, 1]),
            (13, [1, 1, 0, 1]),
            (5, [0, 1, 1, 1]),
        ],
        &[
            (12, [1, 1, 0, 0]),
            (2, [0, 1, 1, 0]),
            (14, [0, 0, 0, 1]),
            (10, [0, 0, 0, 0]),
        ],
        &[
            (1, [1, 0, 0, 1]),
            (6, [1, 1, 1, 1]),
            (9, [0, 1, 0, 1]),
            (11, [0, 0, 1, 1]),
        ],
        &[(3, [1, 0, 0, 0]), (8, [0, 0, 1, 0]), (16, [0, 1, 0, 0])],
    )
}
