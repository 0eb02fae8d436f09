//! Structural audits of the stimulus generators.

use std::collections::BTreeSet;

use cobweb_sims::stimuli::hayes_roth_audit::{
    class_vector, prototype_of, shared_features, CLUB1, CLUB2, NEITHER,
};
use cobweb_sims::stimuli::smith_minda_audit::{a_items, b_items};
use cobweb_sims::stimuli::{
    gen_hayes_roth, gen_medin_exp1, gen_medin_exp2, gen_smith_minda, LabelSpec, Reference,
};

fn lastname(features: &[(String, String)]) -> &str {
    features
        .iter()
        .find(|(a, _)| a == "lastname")
        .map(|(_, v)| v.as_str())
        .expect("card has a last name")
}

#[test]
fn hayes_roth_deck_sizes() {
    let s = gen_hayes_roth(7);
    assert_eq!(s.train.len(), 132);
    assert_eq!(s.test.len(), 28);
    // 36 + 36 club cards, 30 either presentations, 30 neither cards
    let club: usize = s
        .train
        .iter()
        .filter(|c| matches!(&c.label, LabelSpec::Fixed(l) if l == CLUB1 || l == CLUB2))
        .count();
    let either: usize = s
        .train
        .iter()
        .filter(|c| matches!(&c.label, LabelSpec::Either(_)))
        .count();
    let neither: usize = s
        .train
        .iter()
        .filter(|c| matches!(&c.label, LabelSpec::Fixed(l) if l == NEITHER))
        .count();
    assert_eq!((club, either, neither), (72, 30, 30));
}

#[test]
fn hayes_roth_transform_distances() {
    let s = gen_hayes_roth(7);
    for card in &s.train {
        let v = class_vector(&card.features);
        match (card.item_type.as_str(), &card.label) {
            ("1t-f1" | "1t-f10", LabelSpec::Fixed(club)) => {
                assert_eq!(
                    shared_features(v, prototype_of(club)),
                    2,
                    "{}",
                    card.item_id
                );
            }
            ("2t-f1", LabelSpec::Fixed(club)) => {
                assert_eq!(
                    shared_features(v, prototype_of(club)),
                    1,
                    "{}",
                    card.item_id
                );
            }
            _ => {}
        }
    }
}

#[test]
fn hayes_roth_either_items_equally_close_to_both_clubs() {
    let s = gen_hayes_roth(7);
    let either_cards = s
        .train
        .iter()
        .map(|c| (c.item_id.clone(), c.features.clone(), c.item_type.clone()))
        .filter(|(_, _, t)| t.starts_with("either"))
        .chain(
            s.test
                .iter()
                .filter(|c| c.item_type.starts_with("either"))
                .map(|c| (c.item_id.clone(), c.features.clone(), c.item_type.clone())),
        );
    for (id, features, _) in either_cards {
        let v = class_vector(&features);
        let c1 = shared_features(v, prototype_of(CLUB1));
        let c2 = shared_features(v, prototype_of(CLUB2));
        assert_eq!(c1, c2, "{id} must sit equally close to both clubs");
        assert!(c1 <= 1, "{id} shares at most one feature with each club");
        if v != [3, 3, 3] {
            assert_eq!(c1, 1, "{id} shares exactly one feature with each club");
        }
    }
}

#[test]
fn hayes_roth_neither_rule() {
    let s = gen_hayes_roth(7);
    for card in &s.train {
        let v = class_vector(&card.features);
        let shares_neither = shared_features(v, prototype_of(NEITHER)) >= 1;
        match &card.label {
            LabelSpec::Fixed(l) if l == NEITHER => {
                assert!(
                    shares_neither,
                    "{} must show a neither feature",
                    card.item_id
                )
            }
            _ => assert!(
                !shares_neither,
                "{} is a club card and may not share features with the neither prototype",
                card.item_id
            ),
        }
    }
}

#[test]
fn hayes_roth_distractors_unique_and_frequencies() {
    let s = gen_hayes_roth(7);
    let mut names = BTreeSet::new();
    for features in s
        .train
        .iter()
        .map(|c| &c.features)
        .chain(s.test.iter().map(|c| &c.features))
    {
        assert!(
            names.insert(lastname(features).to_string()),
            "duplicate last name"
        );
    }
    assert_eq!(names.len(), 160);
    // every frequency-10 and either item appears exactly ten times
    for id in s.train_item_ids() {
        let n = s.train.iter().filter(|c| c.item_id == id).count();
        if id.contains("f10") || id.starts_with("either") {
            assert_eq!(n, 10, "{id}");
        } else {
            assert_eq!(n, 1, "{id}");
        }
    }
}

#[test]
fn hayes_roth_novel_test_items() {
    let s = gen_hayes_roth(7);
    let ids: Vec<&str> = s.test.iter().map(|c| c.item_id.as_str()).collect();
    for expected in [
        "proto-c1",
        "proto-c2",
        "proto-either",
        "proto-neither",
        "either-new-1",
        "either-new-2",
        "either-new-3",
    ] {
        assert!(ids.contains(&expected), "missing {expected}");
    }
    let trained: BTreeSet<&str> = s.train.iter().map(|c| c.item_id.as_str()).collect();
    let novel: usize = s
        .test
        .iter()
        .filter(|c| !trained.contains(c.item_id.as_str()))
        .count();
    assert_eq!(novel, 7);
}

#[test]
fn hayes_roth_is_pure_given_seed() {
    let a = gen_hayes_roth(99);
    let b = gen_hayes_roth(99);
    assert_eq!(format!("{a:?}"), format!("{b:?}"));
    let c = gen_hayes_roth(100);
    assert_ne!(format!("{a:?}"), format!("{c:?}"));
}

#[test]
fn medin_tables_verbatim() {
    let e1 = gen_medin_exp1();
    assert_eq!(e1.train.len(), 6);
    assert_eq!(e1.test.len(), 12);
    let bits = |cards: &[cobweb_sims::stimuli::TrainingCard], id: &str| -> Vec<String> {
        cards
            .iter()
            .find(|c| c.item_id == id)
            .unwrap()
            .features
            .iter()
            .map(|(_, v)| v.clone())
            .collect()
    };
    assert_eq!(bits(&e1.train, "6"), ["1", "1", "1", "1"]);
    assert_eq!(bits(&e1.train, "10"), ["0", "0", "0", "0"]);
    assert_eq!(bits(&e1.train, "15"), ["1", "0", "1", "1"]);

    let e2 = gen_medin_exp2();
    assert_eq!(e2.train.len(), 9);
    assert_eq!(e2.test.len(), 16);
    assert_eq!(bits(&e2.train, "7"), ["1", "0", "1", "0"]);
    assert_eq!(bits(&e2.train, "4"), ["1", "1", "1", "0"]);
    let novel6 = e2.test.iter().find(|c| c.item_id == "6").unwrap();
    assert_eq!(
        novel6
            .features
            .iter()
            .map(|(_, v)| v.as_str())
            .collect::<Vec<_>>(),
        ["1", "1", "1", "1"]
    );
    assert_eq!(novel6.reference, Reference::Label("A".into()));
}

#[test]
fn smith_minda_structure() {
    let s = gen_smith_minda();
    assert_eq!(s.train.len(), 14);
    assert_eq!(s.test.len(), 14);

    let hamming = |a: [u8; 6], b: [u8; 6]| a.iter().zip(b).filter(|(x, y)| **x != *y).count();
    let a_proto = [0u8; 6];
    let b_proto = [1u8; 6];
    let mut all: BTreeSet<[u8; 6]> = BTreeSet::new();
    for (id, bits) in a_items().iter().chain(b_items()) {
        assert!(
            all.insert(*bits),
            "{id}: items must be distinct across categories"
        );
    }
    for (id, bits) in a_items() {
        if id.contains("std") {
            assert_eq!(hamming(*bits, a_proto), 1, "{id}");
        } else if id.contains("exc") {
            assert_eq!(hamming(*bits, a_proto), 5, "{id}");
            // the exception shares exactly one slot with its own prototype,
            // which pins it against the opposing prototype and blocks any
            // weighted linear threshold from separating the categories
            assert_eq!(hamming(*bits, b_proto), 1, "{id}");
        }
    }
    for (id, bits) in b_items() {
        if id.contains("std") {
            assert_eq!(hamming(*bits, b_proto), 1, "{id}");
        } else if id.contains("exc") {
            assert_eq!(hamming(*bits, b_proto), 5, "{id}");
            assert_eq!(hamming(*bits, a_proto), 1, "{id}");
        }
    }
    // B standards are the complements of A standards wherever that does not
    // collide with the A exception
    let b_stds: BTreeSet<[u8; 6]> = b_items()
        .iter()
        .filter(|(id, _)| id.contains("std"))
        .map(|(_, b)| *b)
        .collect();
    for (_, bits) in a_items().iter().filter(|(id, _)| id.contains("std")) {
        let complement = bits.map(|b| 1 - b);
        let is_a_exception = a_items()
            .iter()
            .any(|(id, b)| id.contains("exc") && *b == complement);
        assert!(b_stds.contains(&complement) || is_a_exception);
    }
}
