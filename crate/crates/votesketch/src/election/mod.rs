//! Profiles, pairwise margins, voting rules and margin of victory.

pub mod mov;
mod profile;
mod rules;
mod tally;

pub use profile::{Ballot, Profile, TieBreak};
pub use rules::{
    evaluate_rule, score_to_f64, Bucklin, Copeland, ElectionResult, Maximin, Positional, Rule,
    RuleParams, RuleRegistry, Runoff, Score, ScoreVector, Stv, VotingRule,
};
pub use tally::{condorcet_winner, pairwise_margins, MarginMatrix, Tally, TallyKind};
