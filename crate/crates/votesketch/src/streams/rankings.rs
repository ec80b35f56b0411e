use rand::RngCore;
use serde::Serialize;

use super::select::PowerOfTwoCoin;
use super::{SketchFactory, StreamSketch};
use crate::rng::{fork, SketchRng};
use crate::{Error, Result};

fn validate(candidates: usize, eps: f64, delta: f64, stream_len: u64) -> Result<()> {
    if candidates < 2 {
        return Err(Error::InvalidParameter("need at least two candidates".into()));
    }
    if !(eps > 0.0 && eps < 1.0) || !(delta > 0.0 && delta < 1.0) {
        return Err(Error::InvalidParameter(format!("need 0 < eps, delta < 1, got {eps}, {delta}")));
    }
    if stream_len == 0 {
        return Err(Error::InvalidParameter("stream length must be positive".into()));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BordaReport {
    /// Estimated Borda score per candidate, within `εmn` of the truth.
    pub estimates: Vec<f64>,
    pub sampled: u64,
}

impl BordaReport {
    pub fn argmax(&self) -> usize {
        argmax(&self.estimates)
    }

    /// Candidates whose estimated score is at least `(φ - ε/2)·m·n`.
    pub fn list(&self, phi: f64, eps: f64, stream_len: u64) -> Vec<usize> {
        let n = self.estimates.len() as f64;
        let cut = (phi - eps / 2.0) * stream_len as f64 * n;
        (0..self.estimates.len()).filter(|&c| self.estimates[c] >= cut).collect()
    }
}

fn argmax(v: &[f64]) -> usize {
    (0..v.len()).fold(0, |best, c| if v[c] > v[best] { c } else { best })
}

/// ε-Borda over a stream of complete rankings of `n` candidates: samples at
/// rate `6ℓ/m` with `ℓ = 6 log2(6n/δ) / ε²` and keeps per-candidate Borda
/// counts of the sample.
#[derive(Debug, Clone)]
pub struct EpsBorda {
    coin: PowerOfTwoCoin,
    scores: Vec<u64>,
    sampled: u64,
    seen: u64,
    rng: SketchRng,
}

impl EpsBorda {
    pub fn new(candidates: usize, eps: f64, delta: f64, stream_len: u64, rng: SketchRng) -> Result<Self> {
        Self::with_budget_scale(candidates, eps, delta, stream_len, 1.0, rng)
    }

    pub fn with_budget_scale(
        candidates: usize,
        eps: f64,
        delta: f64,
        stream_len: u64,
        budget_scale: f64,
        rng: SketchRng,
    ) -> Result<Self> {
        validate(candidates, eps, delta, stream_len)?;
        let ell = 6.0 * (6.0 * candidates as f64 / delta).log2() / (eps * eps) * budget_scale;
        Ok(EpsBorda {
            coin: PowerOfTwoCoin::for_rate(6.0 * ell / stream_len as f64)?,
            scores: vec![0; candidates],
            sampled: 0,
            seen: 0,
            rng,
        })
    }

    pub fn sample_probability(&self) -> f64 {
        self.coin.probability()
    }
}

impl StreamSketch for EpsBorda {
    type Item = [usize];
    type Report = BordaReport;

    fn insert(&mut self, ranking: &[usize]) {
        self.seen += 1;
        if !self.coin.flip(&mut self.rng) {
            return;
        }
        self.sampled += 1;
        let n = ranking.len();
        for (pos, &c) in ranking.iter().enumerate() {
            self.scores[c] += (n - 1 - pos) as u64;
        }
    }

    fn report(&self) -> Result<BordaReport> {
        if self.sampled == 0 {
            return Err(Error::InsufficientSample);
        }
        let scale = self.seen as f64 / self.sampled as f64;
        Ok(BordaReport { estimates: self.scores.iter().map(|&s| s as f64 * scale).collect(), sampled: self.sampled })
    }

    fn sampled(&self) -> u64 {
        self.sampled
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MaximinReport {
    /// Estimated maximin score per candidate, within `εm` of the truth.
    pub estimates: Vec<f64>,
    pub sampled: u64,
}

impl MaximinReport {
    pub fn argmax(&self) -> usize {
        argmax(&self.estimates)
    }
}

/// ε-maximin: samples at rate `6ℓ/m` with `ℓ = (8/ε²) ln(6n/δ)` and keeps the
/// pairwise preference counts of the sample.
#[derive(Debug, Clone)]
pub struct EpsMaximin {
    n: usize,
    coin: PowerOfTwoCoin,
    prefer: Vec<u64>,
    sampled: u64,
    seen: u64,
    rng: SketchRng,
}

impl EpsMaximin {
    pub fn new(candidates: usize, eps: f64, delta: f64, stream_len: u64, rng: SketchRng) -> Result<Self> {
        Self::with_budget_scale(candidates, eps, delta, stream_len, 1.0, rng)
    }

    pub fn with_budget_scale(
        candidates: usize,
        eps: f64,
        delta: f64,
        stream_len: u64,
        budget_scale: f64,
        rng: SketchRng,
    ) -> Result<Self> {
        validate(candidates, eps, delta, stream_len)?;
        let ell = 8.0 / (eps * eps) * (6.0 * candidates as f64 / delta).ln() * budget_scale;
        Ok(EpsMaximin {
            n: candidates,
            coin: PowerOfTwoCoin::for_rate(6.0 * ell / stream_len as f64)?,
            prefer: vec![0; candidates * candidates],
            sampled: 0,
            seen: 0,
            rng,
        })
    }

    pub fn sample_probability(&self) -> f64 {
        self.coin.probability()
    }

    /// Estimated pairwise margin `D(x,y)` scaled to the whole stream.
    pub fn margin_estimate(&self, x: usize, y: usize) -> Option<f64> {
        (self.sampled > 0).then(|| {
            let d = self.prefer[x * self.n + y] as f64 - self.prefer[y * self.n + x] as f64;
            d * self.seen as f64 / self.sampled as f64
        })
    }
}

impl StreamSketch for EpsMaximin {
    type Item = [usize];
    type Report = MaximinReport;

    fn insert(&mut self, ranking: &[usize]) {
        self.seen += 1;
        if !self.coin.flip(&mut self.rng) {
            return;
        }
        self.sampled += 1;
        for (i, &x) in ranking.iter().enumerate() {
            let row = x * self.n;
            for &y in &ranking[i + 1..] {
                self.prefer[row + y] += 1;
            }
        }
    }

    fn report(&self) -> Result<MaximinReport> {
        if self.sampled == 0 {
            return Err(Error::InsufficientSample);
        }
        let estimates = (0..self.n)
            .map(|x| {
                (0..self.n)
                    .filter(|&y| y != x)
                    .map(|y| self.margin_estimate(x, y).unwrap())
                    .fold(f64::INFINITY, f64::min)
            })
            .collect();
        Ok(MaximinReport { estimates, sampled: self.sampled })
    }

    fn sampled(&self) -> u64 {
        self.sampled
    }
}

#[derive(Debug, Clone, Copy)]
pub struct EpsBordaFactory {
    pub candidates: usize,
    pub eps: f64,
    pub delta: f64,
}

impl SketchFactory for EpsBordaFactory {
    type Sketch = EpsBorda;

    fn build(&self, stream_len: u64, budget_scale: f64, rng: &mut dyn RngCore) -> Result<EpsBorda> {
        EpsBorda::with_budget_scale(self.candidates, self.eps, self.delta, stream_len, budget_scale, fork(rng))
    }
}

#[derive(Debug, Clone, Copy)]
pub struct EpsMaximinFactory {
    pub candidates: usize,
    pub eps: f64,
    pub delta: f64,
}

impl SketchFactory for EpsMaximinFactory {
    type Sketch = EpsMaximin;

    fn build(&self, stream_len: u64, budget_scale: f64, rng: &mut dyn RngCore) -> Result<EpsMaximin> {
        EpsMaximin::with_budget_scale(self.candidates, self.eps, self.delta, stream_len, budget_scale, fork(rng))
    }
}
