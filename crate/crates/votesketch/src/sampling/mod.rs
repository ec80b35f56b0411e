//! Winner prediction and margin-of-victory estimation from a uniform sample
//! of votes drawn with replacement.
//!
//! Each rule family has a [`SampledEstimator`] carrying its sample-size bound
//! and its margin estimator; [`estimator_for`] selects it from a [`Rule`].

use rand::{Rng, RngCore};
use serde::Serialize;

use crate::election::mov::{bucklin_delta_from_counts, copeland_margins_from, top_two_gap};
use crate::election::{score_to_f64, ElectionResult, Profile, Rule, ScoreVector, Tally, TallyKind, TieBreak};
use crate::{Error, Result};

/// Anything votes can be drawn from uniformly at random.
pub trait VoteSource: Sync {
    fn num_candidates(&self) -> usize;
    /// Total number (weight) of votes `n`.
    fn num_votes(&self) -> u64;
    fn tie_break(&self) -> &TieBreak;
    /// One vote drawn uniformly, weighted ballots in proportion to their weight.
    fn draw(&self, rng: &mut dyn RngCore) -> &[usize];
}

/// A profile viewed as a sampling source.
#[derive(Debug, Clone)]
pub struct ProfileSource<'a> {
    profile: &'a Profile,
    cumulative: Vec<u64>,
}

impl<'a> ProfileSource<'a> {
    pub fn new(profile: &'a Profile) -> Self {
        let cumulative = profile
            .ballots()
            .iter()
            .scan(0u64, |acc, b| {
                *acc += b.weight;
                Some(*acc)
            })
            .collect();
        ProfileSource { profile, cumulative }
    }
}

impl VoteSource for ProfileSource<'_> {
    fn num_candidates(&self) -> usize {
        self.profile.num_candidates()
    }

    fn num_votes(&self) -> u64 {
        self.cumulative.last().copied().unwrap_or(0)
    }

    fn tie_break(&self) -> &TieBreak {
        self.profile.tie_break()
    }

    fn draw(&self, rng: &mut dyn RngCore) -> &[usize] {
        let u = rng.random_range(0..self.num_votes());
        let i = self.cumulative.partition_point(|&c| c <= u);
        &self.profile.ballots()[i].ranking
    }
}

/// Accuracy `ε` (as a fraction of `n`) and failure probability `δ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PredictionParams {
    pub eps: f64,
    pub delta: f64,
}

impl PredictionParams {
    pub fn new(eps: f64, delta: f64) -> Result<Self> {
        if !(eps > 0.0 && eps <= 1.0) {
            return Err(Error::InvalidParameter(format!("eps must lie in (0, 1], got {eps}")));
        }
        if !(delta > 0.0 && delta < 1.0) {
            return Err(Error::InvalidParameter(format!("delta must lie in (0, 1), got {delta}")));
        }
        Ok(PredictionParams { eps, delta })
    }
}

/// Everything an estimator may read off a sample.
#[derive(Debug)]
pub struct SampleSummary<'a> {
    pub tally: &'a Tally,
    pub result: &'a ElectionResult,
    /// `n / ℓ`, converting sample counts into estimates for the full election.
    pub scale: f64,
    pub n: f64,
    pub tie: &'a TieBreak,
}

/// Per-rule sample-size bounds and margin estimator.
pub trait SampledEstimator: Send + Sync {
    /// Unrounded number of samples sufficient to predict the winner when the
    /// margin of victory is at least `εn`.
    fn winner_sample_bound(&self, m: usize, p: &PredictionParams) -> f64;
    /// Unrounded number of samples for the margin estimator.
    fn mov_sample_bound(&self, m: usize, p: &PredictionParams) -> Result<f64>;
    /// Multiplicative slack `c` in `|M̄ - MOV| <= c·MOV + εn`.
    fn c_factor(&self, m: usize) -> Result<f64>;
    fn mov_from_sample(&self, s: &SampleSummary<'_>) -> Result<f64>;
}

fn hoeffding(coef: f64, p: &PredictionParams, width: f64) -> f64 {
    coef / (p.eps * p.eps) * (2.0 * width / p.delta).ln()
}

fn scaled_gap(s: &SampleSummary<'_>) -> f64 {
    let (_, _, gap) = top_two_gap(&s.result.scores, s.tie).expect("at least two candidates");
    s.scale * score_to_f64(&gap)
}

/// Scoring rules. `width` is `k` for k-approval and k-veto and `m` otherwise.
struct PositionalEstimator {
    width: usize,
    approval: bool,
    alpha: ScoreVector,
}

impl SampledEstimator for PositionalEstimator {
    fn winner_sample_bound(&self, _m: usize, p: &PredictionParams) -> f64 {
        hoeffding(4.5, p, self.width as f64)
    }

    fn mov_sample_bound(&self, m: usize, p: &PredictionParams) -> Result<f64> {
        let width = if self.approval { self.width } else { m };
        Ok(hoeffding(12.0, p, width as f64))
    }

    fn c_factor(&self, _m: usize) -> Result<f64> {
        Ok(if self.approval { 0.0 } else { 1.0 / 3.0 })
    }

    fn mov_from_sample(&self, s: &SampleSummary<'_>) -> Result<f64> {
        let gap = scaled_gap(s);
        if self.approval {
            return Ok(gap / 2.0);
        }
        let alpha1 = score_to_f64(&self.alpha.normalized().values()[0]);
        Ok(gap / (1.5 * alpha1))
    }
}

struct MaximinEstimator;

impl SampledEstimator for MaximinEstimator {
    fn winner_sample_bound(&self, m: usize, p: &PredictionParams) -> f64 {
        hoeffding(4.5, p, m as f64)
    }

    fn mov_sample_bound(&self, m: usize, p: &PredictionParams) -> Result<f64> {
        Ok(hoeffding(24.0, p, m as f64))
    }

    fn c_factor(&self, _m: usize) -> Result<f64> {
        Ok(1.0 / 3.0)
    }

    fn mov_from_sample(&self, s: &SampleSummary<'_>) -> Result<f64> {
        Ok(scaled_gap(s) / 3.0)
    }
}

struct BucklinEstimator;

impl SampledEstimator for BucklinEstimator {
    fn winner_sample_bound(&self, m: usize, p: &PredictionParams) -> f64 {
        hoeffding(4.5, p, m as f64)
    }

    fn mov_sample_bound(&self, m: usize, p: &PredictionParams) -> Result<f64> {
        Ok(hoeffding(12.0, p, m as f64))
    }

    fn c_factor(&self, _m: usize) -> Result<f64> {
        Ok(1.0 / 3.0)
    }

    fn mov_from_sample(&self, s: &SampleSummary<'_>) -> Result<f64> {
        let m = s.tally.num_candidates();
        let counts: Vec<Vec<f64>> = (0..m)
            .map(|c| (1..=m).map(|l| s.scale * s.tally.top_count(c, l) as f64).collect())
            .collect();
        let d = bucklin_delta_from_counts(&counts, s.n, s.result.winner)
            .ok_or_else(|| Error::Degenerate("no depth separates the sampled Bucklin winner".into()))?;
        Ok(d.delta / 1.5)
    }
}

struct CopelandEstimator {
    alpha: f64,
}

impl SampledEstimator for CopelandEstimator {
    fn winner_sample_bound(&self, m: usize, p: &PredictionParams) -> f64 {
        12.5 / (p.eps * p.eps) * (2.0 * m as f64 / p.delta).ln().powi(3)
    }

    fn mov_sample_bound(&self, m: usize, p: &PredictionParams) -> Result<f64> {
        Ok(hoeffding(96.0, p, m as f64))
    }

    fn c_factor(&self, m: usize) -> Result<f64> {
        let l = (m as f64).ln();
        Ok((2.0 * l + 1.0) / (2.0 * l + 3.0))
    }

    fn mov_from_sample(&self, s: &SampleSummary<'_>) -> Result<f64> {
        let m = s.tally.num_candidates();
        let d = |x: usize, y: usize| s.scale * s.tally.margin(x, y) as f64;
        let cm = copeland_margins_from(&d, m, self.alpha, s.n, s.result.winner, s.tie)
            .ok_or_else(|| Error::Degenerate("a single candidate always wins".into()))?;
        let l = (m as f64).ln();
        Ok(4.0 * (l + 1.0) / (2.0 * l + 3.0) * cm.gamma as f64)
    }
}

struct RunoffEstimator;

impl RunoffEstimator {
    fn unsupported(&self) -> Error {
        Error::Unsupported("no margin estimator for plurality with runoff".into())
    }
}

impl SampledEstimator for RunoffEstimator {
    fn winner_sample_bound(&self, _m: usize, p: &PredictionParams) -> f64 {
        27.0 / (p.eps * p.eps) * (4.0 / p.delta).ln()
    }

    fn mov_sample_bound(&self, _m: usize, _p: &PredictionParams) -> Result<f64> {
        Err(self.unsupported())
    }

    fn c_factor(&self, _m: usize) -> Result<f64> {
        Err(self.unsupported())
    }

    fn mov_from_sample(&self, _s: &SampleSummary<'_>) -> Result<f64> {
        Err(self.unsupported())
    }
}

struct StvEstimator;

impl StvEstimator {
    fn unsupported(&self) -> Error {
        Error::Unsupported("no margin estimator for STV".into())
    }
}

impl SampledEstimator for StvEstimator {
    fn winner_sample_bound(&self, m: usize, p: &PredictionParams) -> f64 {
        let m = m as f64;
        3.0 * m * m / (p.eps * p.eps) * (m * std::f64::consts::LN_2 + (2.0 * m / p.delta).ln())
    }

    fn mov_sample_bound(&self, _m: usize, _p: &PredictionParams) -> Result<f64> {
        Err(self.unsupported())
    }

    fn c_factor(&self, _m: usize) -> Result<f64> {
        Err(self.unsupported())
    }

    fn mov_from_sample(&self, _s: &SampleSummary<'_>) -> Result<f64> {
        Err(self.unsupported())
    }
}

/// The estimator strategy for `rule` over `m` candidates.
pub fn estimator_for(rule: &Rule, m: usize) -> Result<Box<dyn SampledEstimator>> {
    rule.strategy(m)?;
    Ok(match rule {
        Rule::Plurality | Rule::KApproval { .. } => {
            let k = rule.approval_k().expect("approval rule");
            Box::new(PositionalEstimator { width: k, approval: true, alpha: ScoreVector::approval(m, k) })
        }
        Rule::Veto | Rule::KVeto { .. } => {
            let k = if let Rule::KVeto { k } = rule { *k } else { 1 };
            Box::new(PositionalEstimator { width: k, approval: false, alpha: ScoreVector::veto(m, k) })
        }
        Rule::Borda | Rule::Scoring { .. } => {
            let alpha = rule.score_vector(m)?.expect("positional rule");
            Box::new(PositionalEstimator { width: m, approval: false, alpha })
        }
        Rule::Maximin => Box::new(MaximinEstimator),
        Rule::Copeland { alpha } => Box::new(CopelandEstimator { alpha: score_to_f64(alpha) }),
        Rule::Bucklin => Box::new(BucklinEstimator),
        Rule::Runoff => Box::new(RunoffEstimator),
        Rule::Stv => Box::new(StvEstimator),
    })
}

fn ceil_count(x: f64) -> u64 {
    x.ceil() as u64
}

/// Samples sufficient to predict the winner of an election with margin of victory at least `εn`.
pub fn winner_sample_size(rule: &Rule, m: usize, p: &PredictionParams) -> Result<u64> {
    Ok(ceil_count(estimator_for(rule, m)?.winner_sample_bound(m, p)))
}

/// Samples used by the margin estimator.
pub fn mov_sample_size(rule: &Rule, m: usize, p: &PredictionParams) -> Result<u64> {
    Ok(ceil_count(estimator_for(rule, m)?.mov_sample_bound(m, p)?))
}

/// Sample size sufficient for any homogeneous rule: it depends only on the
/// fraction of votes per ranking, of which there are `m!`.
pub fn homogeneous_sample_size(m: usize, p: &PredictionParams) -> u64 {
    let fact: f64 = (1..=m).map(|i| i as f64).product();
    ceil_count(4.5 * fact * fact / (p.eps * p.eps) * (2.0 * fact / p.delta).ln())
}

/// Tally of `ell` votes drawn with replacement.
pub fn sample_tally<S: VoteSource + ?Sized>(source: &S, kind: TallyKind, ell: u64, rng: &mut dyn RngCore) -> Tally {
    let mut t = Tally::new(kind, source.num_candidates());
    for _ in 0..ell {
        t.add(source.draw(rng), 1);
    }
    t
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Prediction {
    pub winner: usize,
    pub sample_size: u64,
    /// Scores of the sampled election scaled by `n/ℓ`.
    pub estimates: Vec<f64>,
}

/// Winner of a sample of `ell` votes under `rule`, with scaled score estimates.
pub fn predict_winner_with_size<S: VoteSource + ?Sized>(
    source: &S,
    rule: &Rule,
    ell: u64,
    rng: &mut dyn RngCore,
) -> Result<Prediction> {
    if source.num_votes() == 0 {
        return Err(Error::EmptyProfile);
    }
    if ell == 0 {
        return Err(Error::InsufficientSample);
    }
    let strategy = rule.strategy(source.num_candidates())?;
    let tally = sample_tally(source, strategy.tally_kind(), ell, rng);
    let result = strategy.decide(&tally, source.tie_break());
    let scale = source.num_votes() as f64 / ell as f64;
    Ok(Prediction {
        winner: result.winner,
        sample_size: ell,
        estimates: result.scores.iter().map(|s| scale * score_to_f64(s)).collect(),
    })
}

/// Predicts the winner from `winner_sample_size` samples.
pub fn predict_winner<S: VoteSource + ?Sized>(
    source: &S,
    rule: &Rule,
    p: &PredictionParams,
    rng: &mut dyn RngCore,
) -> Result<Prediction> {
    let ell = winner_sample_size(rule, source.num_candidates(), p)?;
    predict_winner_with_size(source, rule, ell, rng)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MovEstimate {
    /// Estimated margin of victory `M̄`.
    pub mov: f64,
    /// Guarantee `|M̄ - MOV| <= c_factor·MOV + eps_n` with probability `1 - δ`.
    pub c_factor: f64,
    pub eps_n: f64,
    pub sample_size: u64,
    pub predicted_winner: usize,
}

impl MovEstimate {
    /// Whether `truth` lies inside the guaranteed band around the estimate.
    pub fn within_guarantee(&self, truth: f64) -> bool {
        (self.mov - truth).abs() <= self.c_factor * truth + self.eps_n + 1e-9
    }
}

pub fn estimate_mov<S: VoteSource + ?Sized>(
    source: &S,
    rule: &Rule,
    p: &PredictionParams,
    rng: &mut dyn RngCore,
) -> Result<MovEstimate> {
    let m = source.num_candidates();
    if m < 2 {
        return Err(Error::Degenerate("a single candidate always wins".into()));
    }
    if source.num_votes() == 0 {
        return Err(Error::EmptyProfile);
    }
    let est = estimator_for(rule, m)?;
    let ell = ceil_count(est.mov_sample_bound(m, p)?);
    let strategy = rule.strategy(m)?;
    let tally = sample_tally(source, strategy.tally_kind(), ell, rng);
    let result = strategy.decide(&tally, source.tie_break());
    let n = source.num_votes() as f64;
    let summary = SampleSummary { tally: &tally, result: &result, scale: n / ell as f64, n, tie: source.tie_break() };
    Ok(MovEstimate {
        mov: est.mov_from_sample(&summary)?,
        c_factor: est.c_factor(m)?,
        eps_n: p.eps * n,
        sample_size: ell,
        predicted_winner: result.winner,
    })
}
