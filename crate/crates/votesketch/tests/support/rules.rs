//! The library's rules paired with their reference-evaluator descriptions.

#![allow(dead_code)]

use votesketch::{Rule, Score, ScoreVector};

use super::oracle::RefRule;

/// Reference description of `rule` over `m` candidates.
pub fn ref_rule(rule: &Rule, m: usize) -> RefRule {
    let ints = |v: &ScoreVector| v.values().iter().map(|a| a.to_integer()).collect();
    match rule {
        Rule::Maximin => RefRule::Maximin,
        Rule::Copeland { alpha } => RefRule::CopelandHalves((alpha * 2).to_integer()),
        Rule::Bucklin => RefRule::Bucklin,
        Rule::Runoff => RefRule::Runoff,
        Rule::Stv => RefRule::Stv,
        Rule::Plurality => RefRule::Scoring((0..m).map(|i| (i == 0) as i64).collect()),
        Rule::Veto => RefRule::Scoring((0..m).map(|i| -((i == m - 1) as i64)).collect()),
        Rule::KApproval { k } => RefRule::Scoring((0..m).map(|i| (i < *k) as i64).collect()),
        Rule::KVeto { k } => RefRule::Scoring((0..m).map(|i| -((i >= m - k) as i64)).collect()),
        Rule::Borda => RefRule::Scoring((0..m).rev().map(|i| i as i64).collect()),
        Rule::Scoring { alpha } => RefRule::Scoring(ints(alpha)),
    }
}

/// Every rule variant that makes sense for `m` candidates.
pub fn rules_for(m: usize) -> Vec<Rule> {
    let mut rules = vec![
        Rule::Maximin,
        Rule::copeland(),
        Rule::Copeland { alpha: Score::new(1, 2) },
        Rule::Copeland { alpha: Score::from_integer(1) },
        Rule::Bucklin,
        Rule::Runoff,
        Rule::Stv,
    ];
    if m >= 2 {
        rules.extend([Rule::Plurality, Rule::Veto, Rule::Borda]);
        rules.push(Rule::Scoring { alpha: ScoreVector::from_ints(&(0..m).map(|i| (3 * (m - i) * (m - i)) as i64).collect::<Vec<_>>()).unwrap() });
        for k in 1..m {
            rules.push(Rule::KApproval { k });
            rules.push(Rule::KVeto { k });
        }
    }
    rules
}
