use std::collections::BTreeMap;
use std::fmt;

use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use super::tally::{Tally, TallyKind};
use super::{Profile, TieBreak};
use crate::{Error, Result};

/// Exact rule score.
pub type Score = Ratio<i64>;

pub fn score_to_f64(s: &Score) -> f64 {
    s.to_f64().unwrap_or(f64::NAN)
}

fn ser_scores<S: Serializer>(scores: &[Score], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(scores.iter().map(|x| x.to_string()))
}

/// Positional score vector: nonincreasing with `alpha[0] > alpha[m-1]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScoreVector(#[serde(serialize_with = "ser_scores")] Vec<Score>);

impl ScoreVector {
    pub fn new(alpha: Vec<Score>) -> Result<Self> {
        if alpha.len() < 2 {
            return Err(Error::InvalidParameter("score vector needs at least two entries".into()));
        }
        if alpha.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidParameter("score vector must be nonincreasing".into()));
        }
        if alpha[0] == alpha[alpha.len() - 1] {
            return Err(Error::InvalidParameter("score vector must not be constant".into()));
        }
        Ok(ScoreVector(alpha))
    }

    pub fn from_ints(alpha: &[i64]) -> Result<Self> {
        ScoreVector::new(alpha.iter().map(|&a| Score::from_integer(a)).collect())
    }

    pub fn borda(m: usize) -> Self {
        ScoreVector((0..m).rev().map(|a| Score::from_integer(a as i64)).collect())
    }

    pub fn approval(m: usize, k: usize) -> Self {
        ScoreVector((0..m).map(|i| Score::from_integer((i < k) as i64)).collect())
    }

    pub fn veto(m: usize, k: usize) -> Self {
        ScoreVector((0..m).map(|i| Score::from_integer(-((i >= m - k) as i64))).collect())
    }

    pub fn values(&self) -> &[Score] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Shifted so the last entry is zero.
    pub fn normalized(&self) -> ScoreVector {
        let last = self.0[self.0.len() - 1];
        ScoreVector(self.0.iter().map(|a| a - last).collect())
    }
}

/// Typed rule configuration. Use [`Rule::strategy`] to obtain the evaluator.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "rule", rename_all = "kebab-case")]
pub enum Rule {
    Plurality,
    Veto,
    KApproval { k: usize },
    KVeto { k: usize },
    Scoring { alpha: ScoreVector },
    Borda,
    Maximin,
    Copeland {
        #[serde(serialize_with = "ser_score")]
        alpha: Score,
    },
    Bucklin,
    Runoff,
    Stv,
}

fn ser_score<S: Serializer>(a: &Score, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&a.to_string())
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rule::Plurality => write!(f, "plurality"),
            Rule::Veto => write!(f, "veto"),
            Rule::KApproval { k } => write!(f, "{k}-approval"),
            Rule::KVeto { k } => write!(f, "{k}-veto"),
            Rule::Scoring { alpha } => {
                let v: Vec<String> = alpha.values().iter().map(|a| a.to_string()).collect();
                write!(f, "scoring[{}]", v.join(","))
            }
            Rule::Borda => write!(f, "borda"),
            Rule::Maximin => write!(f, "maximin"),
            Rule::Copeland { alpha } => write!(f, "copeland[{alpha}]"),
            Rule::Bucklin => write!(f, "bucklin"),
            Rule::Runoff => write!(f, "runoff"),
            Rule::Stv => write!(f, "stv"),
        }
    }
}

impl Rule {
    pub fn copeland() -> Self {
        Rule::Copeland { alpha: Score::zero() }
    }

    /// Score vector for positional rules over `m` candidates.
    pub fn score_vector(&self, m: usize) -> Result<Option<ScoreVector>> {
        let check_k = |k: usize| {
            if k == 0 || k >= m {
                Err(Error::InvalidParameter(format!("k must lie in [1, {}], got {k}", m.saturating_sub(1))))
            } else {
                Ok(())
            }
        };
        if m < 2 && !matches!(self, Rule::Maximin | Rule::Copeland { .. } | Rule::Bucklin | Rule::Runoff | Rule::Stv) {
            return Err(Error::InvalidParameter("positional rules need at least two candidates".into()));
        }
        Ok(Some(match self {
            Rule::Plurality => ScoreVector::approval(m, 1),
            Rule::Veto => ScoreVector::veto(m, 1),
            Rule::KApproval { k } => {
                check_k(*k)?;
                ScoreVector::approval(m, *k)
            }
            Rule::KVeto { k } => {
                check_k(*k)?;
                ScoreVector::veto(m, *k)
            }
            Rule::Borda => ScoreVector::borda(m),
            Rule::Scoring { alpha } => {
                if alpha.len() != m {
                    return Err(Error::InvalidParameter(format!(
                        "score vector has {} entries for {m} candidates",
                        alpha.len()
                    )));
                }
                alpha.clone()
            }
            _ => return Ok(None),
        }))
    }

    /// Approval depth `k` for rules that are k-approval, including plurality.
    pub fn approval_k(&self) -> Option<usize> {
        match self {
            Rule::Plurality => Some(1),
            Rule::KApproval { k } => Some(*k),
            _ => None,
        }
    }

    /// Builds the evaluator for an election over `m` candidates.
    pub fn strategy(&self, m: usize) -> Result<Box<dyn VotingRule>> {
        if m == 0 {
            return Err(Error::InvalidParameter("no candidates".into()));
        }
        if let Some(alpha) = self.score_vector(m)? {
            return Ok(Box::new(Positional { label: self.to_string(), alpha }));
        }
        Ok(match self {
            Rule::Maximin => Box::new(Maximin),
            Rule::Copeland { alpha } => {
                if *alpha < Score::zero() || *alpha > Score::from_integer(1) {
                    return Err(Error::InvalidParameter(format!("Copeland alpha must lie in [0,1], got {alpha}")));
                }
                Box::new(Copeland { alpha: *alpha })
            }
            Rule::Bucklin => Box::new(Bucklin),
            Rule::Runoff => Box::new(Runoff),
            Rule::Stv => Box::new(Stv),
            _ => unreachable!("positional rules handled above"),
        })
    }
}

/// Outcome of a rule on a profile.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ElectionResult {
    /// Tie-broken winner.
    pub winner: usize,
    /// Every candidate tied for the win before tie-breaking, in tie-break order.
    /// Sequential-elimination rules report only the winner.
    pub co_winners: Vec<usize>,
    /// Per-candidate score: positional score, maximin or Copeland score,
    /// Bucklin count at the decisive depth, or first-round plurality score.
    #[serde(serialize_with = "ser_scores")]
    pub scores: Vec<Score>,
    /// Candidates in elimination order (sequential rules only).
    pub eliminated: Vec<usize>,
}

/// A voting rule evaluated through an additive tally.
pub trait VotingRule: Send + Sync + fmt::Debug {
    fn name(&self) -> String;

    fn tally_kind(&self) -> TallyKind;

    /// Outcome from a tally with positive total weight.
    fn decide(&self, tally: &Tally, tie: &TieBreak) -> ElectionResult;

    fn evaluate(&self, profile: &Profile) -> Result<ElectionResult> {
        if profile.num_votes() == 0 {
            return Err(Error::EmptyProfile);
        }
        Ok(self.decide(&Tally::from_profile(self.tally_kind(), profile), profile.tie_break()))
    }
}

pub fn evaluate_rule(profile: &Profile, rule: &Rule) -> Result<ElectionResult> {
    rule.strategy(profile.num_candidates())?.evaluate(profile)
}

fn argmax_result(scores: Vec<Score>, tie: &TieBreak) -> ElectionResult {
    let m = scores.len();
    let winner = tie.argmax_by(0..m, |c| scores[c]).expect("at least one candidate");
    let mut co_winners: Vec<usize> = (0..m).filter(|&c| scores[c] == scores[winner]).collect();
    co_winners.sort_by_key(|&c| tie.rank(c));
    ElectionResult { winner, co_winners, scores, eliminated: Vec::new() }
}

#[derive(Debug, Clone)]
pub struct Positional {
    label: String,
    alpha: ScoreVector,
}

impl Positional {
    pub fn alpha(&self) -> &ScoreVector {
        &self.alpha
    }
}

impl VotingRule for Positional {
    fn name(&self) -> String {
        self.label.clone()
    }

    fn tally_kind(&self) -> TallyKind {
        TallyKind::Positions
    }

    fn decide(&self, t: &Tally, tie: &TieBreak) -> ElectionResult {
        let m = t.num_candidates();
        let alpha = self.alpha.values();
        let scores = (0..m)
            .map(|c| (0..m).map(|j| alpha[j] * t.position_count(c, j)).sum())
            .collect();
        argmax_result(scores, tie)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Maximin;

impl VotingRule for Maximin {
    fn name(&self) -> String {
        "maximin".into()
    }

    fn tally_kind(&self) -> TallyKind {
        TallyKind::Pairwise
    }

    fn decide(&self, t: &Tally, tie: &TieBreak) -> ElectionResult {
        let m = t.num_candidates();
        let scores = (0..m)
            .map(|x| Score::from_integer((0..m).filter(|&y| y != x).map(|y| t.margin(x, y)).min().unwrap_or(0)))
            .collect();
        argmax_result(scores, tie)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Copeland {
    alpha: Score,
}

impl VotingRule for Copeland {
    fn name(&self) -> String {
        format!("copeland[{}]", self.alpha)
    }

    fn tally_kind(&self) -> TallyKind {
        TallyKind::Pairwise
    }

    fn decide(&self, t: &Tally, tie: &TieBreak) -> ElectionResult {
        let m = t.num_candidates();
        let scores = (0..m)
            .map(|x| {
                (0..m).filter(|&y| y != x).fold(Score::zero(), |acc, y| match t.margin(x, y) {
                    d if d > 0 => acc + 1,
                    0 => acc + self.alpha,
                    _ => acc,
                })
            })
            .collect();
        argmax_result(scores, tie)
    }
}

/// Simplified Bucklin: the first depth at which someone appears in the top
/// positions of a strict majority decides; all such candidates are co-winners.
#[derive(Debug, Clone, Copy)]
pub struct Bucklin;

impl Bucklin {
    /// Smallest depth at which some candidate exceeds half the total weight.
    pub fn decisive_depth(t: &Tally) -> usize {
        let m = t.num_candidates();
        (1..=m)
            .find(|&l| (0..m).any(|c| 2 * t.top_count(c, l) > t.total()))
            .unwrap_or(m)
    }
}

impl VotingRule for Bucklin {
    fn name(&self) -> String {
        "bucklin".into()
    }

    fn tally_kind(&self) -> TallyKind {
        TallyKind::Positions
    }

    fn decide(&self, t: &Tally, tie: &TieBreak) -> ElectionResult {
        let m = t.num_candidates();
        let depth = Bucklin::decisive_depth(t);
        let counts: Vec<i64> = (0..m).map(|c| t.top_count(c, depth)).collect();
        let mut co_winners: Vec<usize> = (0..m).filter(|&c| 2 * counts[c] > t.total()).collect();
        co_winners.sort_by_key(|&c| tie.rank(c));
        ElectionResult {
            winner: co_winners[0],
            co_winners,
            scores: counts.into_iter().map(Score::from_integer).collect(),
            eliminated: Vec::new(),
        }
    }
}

fn plurality_scores(t: &Tally) -> Vec<i64> {
    (0..t.num_candidates()).map(|c| t.position_count(c, 0)).collect()
}

#[derive(Debug, Clone, Copy)]
pub struct Runoff;

impl VotingRule for Runoff {
    fn name(&self) -> String {
        "runoff".into()
    }

    fn tally_kind(&self) -> TallyKind {
        TallyKind::PositionsAndPairwise
    }

    fn decide(&self, t: &Tally, tie: &TieBreak) -> ElectionResult {
        let m = t.num_candidates();
        let plural = plurality_scores(t);
        let mut order: Vec<usize> = (0..m).collect();
        order.sort_by(|&a, &b| plural[b].cmp(&plural[a]).then(tie.rank(a).cmp(&tie.rank(b))));
        let scores = plural.iter().map(|&s| Score::from_integer(s)).collect();
        if m == 1 {
            return ElectionResult { winner: 0, co_winners: vec![0], scores, eliminated: Vec::new() };
        }
        let (a, b) = (order[0], order[1]);
        let winner = match t.margin(a, b) {
            d if d > 0 => a,
            d if d < 0 => b,
            _ if tie.precedes(a, b) => a,
            _ => b,
        };
        let loser = if winner == a { b } else { a };
        let mut eliminated: Vec<usize> = order[2..].iter().rev().copied().collect();
        eliminated.push(loser);
        ElectionResult { winner, co_winners: vec![winner], scores, eliminated }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Stv;

impl Stv {
    fn run(ballots: &BTreeMap<Vec<usize>, i64>, m: usize, tie: &TieBreak) -> (usize, Vec<usize>) {
        let mut active = vec![true; m];
        let mut eliminated = Vec::with_capacity(m.saturating_sub(1));
        for _ in 1..m {
            let mut tallies = vec![0i64; m];
            for (ranking, &w) in ballots {
                if let Some(&top) = ranking.iter().find(|&&c| active[c]) {
                    tallies[top] += w;
                }
            }
            let out = tie
                .argmin_eliminate((0..m).filter(|&c| active[c]), |c| tallies[c])
                .expect("an active candidate remains");
            active[out] = false;
            eliminated.push(out);
        }
        let winner = (0..m).find(|&c| active[c]).expect("one survivor");
        (winner, eliminated)
    }
}

impl VotingRule for Stv {
    fn name(&self) -> String {
        "stv".into()
    }

    fn tally_kind(&self) -> TallyKind {
        TallyKind::Ballots
    }

    fn decide(&self, t: &Tally, tie: &TieBreak) -> ElectionResult {
        let m = t.num_candidates();
        let mut first = vec![0i64; m];
        for (r, &w) in t.ballots() {
            first[r[0]] += w;
        }
        let (winner, eliminated) = Stv::run(t.ballots(), m, tie);
        ElectionResult {
            winner,
            co_winners: vec![winner],
            scores: first.into_iter().map(Score::from_integer).collect(),
            eliminated,
        }
    }
}

/// Optional parameters a rule constructor may consume.
#[derive(Debug, Clone, Default)]
pub struct RuleParams {
    pub k: Option<usize>,
    pub alpha: Option<Score>,
    pub scores: Option<Vec<Score>>,
}

type RuleBuilder = fn(&RuleParams) -> Result<Rule>;

/// Name-keyed table of rule constructors, used to select rules at runtime.
#[derive(Clone)]
pub struct RuleRegistry {
    entries: BTreeMap<&'static str, RuleBuilder>,
}

fn need_k(p: &RuleParams, name: &str) -> Result<usize> {
    p.k.ok_or_else(|| Error::InvalidParameter(format!("rule `{name}` needs --k")))
}

impl RuleRegistry {
    pub fn empty() -> Self {
        RuleRegistry { entries: BTreeMap::new() }
    }

    pub fn register(&mut self, name: &'static str, build: RuleBuilder) {
        self.entries.insert(name, build);
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.entries.keys().copied()
    }

    pub fn build(&self, name: &str, params: &RuleParams) -> Result<Rule> {
        let build = self.entries.get(name).ok_or_else(|| Error::UnknownRule(name.into()))?;
        build(params)
    }
}

impl Default for RuleRegistry {
    fn default() -> Self {
        let mut r = RuleRegistry::empty();
        r.register("plurality", |_| Ok(Rule::Plurality));
        r.register("veto", |_| Ok(Rule::Veto));
        r.register("k-approval", |p| Ok(Rule::KApproval { k: need_k(p, "k-approval")? }));
        r.register("k-veto", |p| Ok(Rule::KVeto { k: need_k(p, "k-veto")? }));
        r.register("borda", |_| Ok(Rule::Borda));
        r.register("scoring", |p| {
            let alpha = p
                .scores
                .clone()
                .ok_or_else(|| Error::InvalidParameter("rule `scoring` needs a score vector".into()))?;
            Ok(Rule::Scoring { alpha: ScoreVector::new(alpha)? })
        });
        r.register("maximin", |_| Ok(Rule::Maximin));
        r.register("copeland", |p| Ok(Rule::Copeland { alpha: p.alpha.unwrap_or_else(Score::zero) }));
        r.register("bucklin", |_| Ok(Rule::Bucklin));
        r.register("runoff", |_| Ok(Rule::Runoff));
        r.register("stv", |_| Ok(Rule::Stv));
        r
    }
}
