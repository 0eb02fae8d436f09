//! The club-membership flashcard task.
//!
//! Cards describe fictional people by three class-relevant attributes (age,
//! education, marital status, four values each) plus two distractors: a last
//! name unique to every card and one of three hobbies. Club 1 members cluster
//! around the value-1 prototype, Club 2 around value 2, and anything showing
//! a value-4 feature belongs to Neither. "Either" cards sit equally close to
//! both club prototypes and accept either club label during training.
//!
//! The published stimulus table is not available, so the deck is rebuilt
//! from its stated structure: per club three one-transform cards shown once,
//! three two-transform cards shown once, and three one-transform cards shown
//! ten times (fresh distractors each time); three Either cards shown ten
//! times; thirty Neither cards. One-transform substitutions rotate the
//! changed position and alternate between the neutral value 3 and the other
//! club's value so the once-seen and ten-times-seen sets stay structurally
//! balanced.

use cobweb::{AttrKind, AttributeSchema};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use super::{LabelSpec, Reference, StimulusSet, TestCard, TrainingCard};

pub const CLASS_ATTRS: [&str; 3] = ["age", "education", "marital"];
pub const LABEL: &str = "club";
pub const CLUB1: &str = "club1";
pub const CLUB2: &str = "club2";
pub const NEITHER: &str = "neither";

const HOBBIES: [&str; 3] = ["h1", "h2", "h3"];

const C1_PROTO: [u8; 3] = [1, 1, 1];
const C2_PROTO: [u8; 3] = [2, 2, 2];
const NEITHER_PROTO: [u8; 3] = [4, 4, 4];
const EITHER_PROTO: [u8; 3] = [1, 2, 3];

// one-transform sets rotate the transformed position; the once-seen set
// substitutes the neutral value 3, the ten-times-seen set the other club's
// value (whose pull the extra practice offsets)
const C1_1T_F1: [[u8; 3]; 3] = [[3, 1, 1], [1, 3, 1], [1, 1, 3]];
const C1_1T_F10: [[u8; 3]; 3] = [[2, 1, 1], [1, 2, 1], [1, 1, 2]];
const C1_2T: [[u8; 3]; 3] = [[3, 3, 1], [3, 1, 3], [1, 3, 3]];
const C2_1T_F1: [[u8; 3]; 3] = [[3, 2, 2], [2, 3, 2], [2, 2, 3]];
const C2_1T_F10: [[u8; 3]; 3] = [[1, 2, 2], [2, 1, 2], [2, 2, 1]];
const C2_2T: [[u8; 3]; 3] = [[3, 3, 2], [3, 2, 3], [2, 3, 3]];

// all seven vectors equally close to both club prototypes: six sharing
// exactly one feature with each, plus the fully neutral card
const EITHER_TRAIN: [[u8; 3]; 3] = [[1, 3, 2], [3, 1, 2], [2, 3, 1]];
const EITHER_NEW: [[u8; 3]; 3] = [[2, 1, 3], [3, 2, 1], [3, 3, 3]];

pub fn schema() -> AttributeSchema {
    AttributeSchema::new([
        ("age", AttrKind::Categorical),
        ("education", AttrKind::Categorical),
        ("marital", AttrKind::Categorical),
        ("lastname", AttrKind::Categorical),
        ("hobby", AttrKind::Categorical),
        (LABEL, AttrKind::Categorical),
    ])
    .expect("static schema")
}

struct CardMaker {
    rng: ChaCha8Rng,
    next_name: u32,
}

impl CardMaker {
    fn features(&mut self, class: [u8; 3]) -> Vec<(String, String)> {
        self.next_name += 1;
        let hobby = HOBBIES[self.rng.random_range(0..HOBBIES.len())];
        let mut f: Vec<(String, String)> = CLASS_ATTRS
            .iter()
            .zip(class)
            .map(|(a, v)| (a.to_string(), v.to_string()))
            .collect();
        f.push(("lastname".into(), format!("n{:03}", self.next_name)));
        f.push(("hobby".into(), hobby.to_string()));
        f
    }
}

pub fn gen_hayes_roth(seed: u64) -> StimulusSet {
    let mut maker = CardMaker {
        rng: ChaCha8Rng::seed_from_u64(seed),
        next_name: 0,
    };

    let mut train: Vec<TrainingCard> = Vec::with_capacity(132);
    let push_club = |maker: &mut CardMaker,
                     train: &mut Vec<TrainingCard>,
                     club: &str,
                     kind: &str,
                     idx: usize,
                     class: [u8; 3],
                     reps: usize| {
        let prefix = if club == CLUB1 { "c1" } else { "c2" };
        for _ in 0..reps {
            train.push(TrainingCard {
                item_id: format!("{prefix}-{kind}-{}", idx + 1),
                item_type: kind.to_string(),
                features: maker.features(class),
                label: LabelSpec::Fixed(club.to_string()),
            });
        }
    };

    for (club, f1, f10, t2) in [
        (CLUB1, C1_1T_F1, C1_1T_F10, C1_2T),
        (CLUB2, C2_1T_F1, C2_1T_F10, C2_2T),
    ] {
        for (i, &class) in f1.iter().enumerate() {
            push_club(&mut maker, &mut train, club, "1t-f1", i, class, 1);
        }
        for (i, &class) in t2.iter().enumerate() {
            push_club(&mut maker, &mut train, club, "2t-f1", i, class, 1);
        }
        for (i, &class) in f10.iter().enumerate() {
            push_club(&mut maker, &mut train, club, "1t-f10", i, class, 10);
        }
    }

    for (i, &class) in EITHER_TRAIN.iter().enumerate() {
        for _ in 0..10 {
            train.push(TrainingCard {
                item_id: format!("either-{}", i + 1),
                item_type: "either-old".into(),
                features: maker.features(class),
                label: LabelSpec::Either(vec![CLUB1.to_string(), CLUB2.to_string()]),
            });
        }
    }

    // thirty Neither cards: vectors over {1..4} showing at least one 4,
    // excluding the prototype itself, sampled without replacement
    let mut neither_pool: Vec<[u8; 3]> = Vec::new();
    for a in 1..=4u8 {
        for b in 1..=4u8 {
            for c in 1..=4u8 {
                let v = [a, b, c];
                if v != NEITHER_PROTO && v.contains(&4) {
                    neither_pool.push(v);
                }
            }
        }
    }
    neither_pool.shuffle(&mut maker.rng);
    for (i, &class) in neither_pool.iter().take(30).enumerate() {
        train.push(TrainingCard {
            item_id: format!("neither-{}", i + 1),
            item_type: "neither".into(),
            features: maker.features(class),
            label: LabelSpec::Fixed(NEITHER.to_string()),
        });
    }

    // test deck: the club and Either training items with fresh distractors,
    // then seven novel cards
    let mut test: Vec<TestCard> = Vec::with_capacity(28);
    for (club, f1, f10, t2) in [
        (CLUB1, C1_1T_F1, C1_1T_F10, C1_2T),
        (CLUB2, C2_1T_F1, C2_1T_F10, C2_2T),
    ] {
        let prefix = if club == CLUB1 { "c1" } else { "c2" };
        for (kind, set) in [("1t-f1", f1), ("2t-f1", t2), ("1t-f10", f10)] {
            for (i, &class) in set.iter().enumerate() {
                test.push(TestCard {
                    item_id: format!("{prefix}-{kind}-{}", i + 1),
                    item_type: kind.to_string(),
                    features: maker.features(class),
                    reference: Reference::Label(club.to_string()),
                });
            }
        }
    }
    for (i, &class) in EITHER_TRAIN.iter().enumerate() {
        test.push(TestCard {
            item_id: format!("either-{}", i + 1),
            item_type: "either-old".into(),
            features: maker.features(class),
            reference: Reference::AnyOf(vec![CLUB1.to_string(), CLUB2.to_string()]),
        });
    }
    test.push(TestCard {
        item_id: "proto-c1".into(),
        item_type: "c-proto".into(),
        features: maker.features(C1_PROTO),
        reference: Reference::Label(CLUB1.to_string()),
    });
    test.push(TestCard {
        item_id: "proto-c2".into(),
        item_type: "c-proto".into(),
        features: maker.features(C2_PROTO),
        reference: Reference::Label(CLUB2.to_string()),
    });
    test.push(TestCard {
        item_id: "proto-either".into(),
        item_type: "either-proto".into(),
        features: maker.features(EITHER_PROTO),
        reference: Reference::AnyOf(vec![CLUB1.to_string(), CLUB2.to_string()]),
    });
    test.push(TestCard {
        item_id: "proto-neither".into(),
        item_type: "neither-proto".into(),
        features: maker.features(NEITHER_PROTO),
        reference: Reference::Label(NEITHER.to_string()),
    });
    for (i, &class) in EITHER_NEW.iter().enumerate() {
        test.push(TestCard {
            item_id: format!("either-new-{}", i + 1),
            item_type: "either-new".into(),
            features: maker.features(class),
            reference: Reference::AnyOf(vec![CLUB1.to_string(), CLUB2.to_string()]),
        });
    }

    StimulusSet {
        name: "hayes-roth",
        schema: schema(),
        label_attr: LABEL,
        label_values: vec![CLUB1.to_string(), CLUB2.to_string(), NEITHER.to_string()],
        train,
        test,
    }
}

/// How many class features two vectors share, position by position.
pub fn shared_features(a: [u8; 3], b: [u8; 3]) -> usize {
    a.iter().zip(b).filter(|(x, y)| **x == *y).count()
}

/// Class-feature vectors of a card, for the structural audit.
pub fn class_vector(features: &[(String, String)]) -> [u8; 3] {
    let mut v = [0u8; 3];
    for (i, attr) in CLASS_ATTRS.iter().enumerate() {
        let raw = features
            .iter()
            .find(|(a, _)| a == attr)
            .map(|(_, val)| val.as_str())
            .expect("class attribute present");
        v[i] = raw.parse().expect("class value is 1..4");
    }
    v
}

pub fn prototype_of(club: &str) -> [u8; 3] {
    match club {
        CLUB1 => C1_PROTO,
        CLUB2 => C2_PROTO,
        NEITHER => NEITHER_PROTO,
        _ => panic!("unknown club {club}"),
    }
}
