//! Desk-scale replications of three classic categorization experiments,
//! driven by the `cobweb` concept-formation library: the club-membership
//! flashcard task (classification and recognition of old and new cards), the
//! two geometric-forms tasks contrasting non-linearly and linearly separable
//! categories, and the six-letter nonsense-word task that shows the shift
//! from prototype-like to exemplar-like behavior.
//!
//! Each simulated participant owns a private tree seeded deterministically
//! from the master seed, so whole experiments replay bit-for-bit.

pub mod experiments;
pub mod protocol;
pub mod stats;
pub mod stimuli;

use thiserror::Error;

pub use experiments::{run_experiment, Experiment, ExperimentReport, Summary};
pub use protocol::{run_participant, EitherMode, ProtocolParams, StoppingRule, TrialRow};
pub use stats::{ci95, spearman, CiStat};
pub use stimuli::StimulusSet;

#[derive(Debug, Error)]
pub enum SimsError {
    #[error("need at least two samples, got {0}")]
    NotEnoughSamples(usize),

    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
}
