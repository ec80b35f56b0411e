//! Voting rules, sampled winner and margin-of-victory estimators, and
//! small-space streaming sketches over item and ranking streams.
//!
//! The crate is organised in three layers:
//!
//! * [`election`] holds profiles, pairwise margins, the voting rules and the
//!   exact (brute-force) margin-of-victory machinery.
//! * [`sampling`] predicts winners and margins from a uniform sample of votes.
//! * [`streams`] contains the one-pass sketches: heavy hitters, ε-maximum,
//!   ε-minimum, ε-Borda, ε-maximin and the unknown-length wrapper.

pub mod election;
mod error;
pub mod rng;
pub mod sampling;
pub mod streams;

pub use election::{
    evaluate_rule, pairwise_margins, condorcet_winner, Ballot, ElectionResult, MarginMatrix,
    Profile, Rule, RuleParams, RuleRegistry, Score, ScoreVector, TieBreak, VotingRule,
};
pub use error::{Error, ParseErrorKind, Result};
