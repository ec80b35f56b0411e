use rand::RngCore;
use serde::Serialize;

use super::hash::{draw_universal_hash, UniversalHash};
use super::misra_gries::MisraGries;
use super::select::PowerOfTwoCoin;
use super::{SketchFactory, StreamSketch};
use crate::rng::{fork, SketchRng};
use crate::{Error, Result};

/// Accuracy `ε`, heaviness threshold `φ` and failure probability `δ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HeavyHitterParams {
    pub eps: f64,
    pub phi: f64,
    pub delta: f64,
}

impl HeavyHitterParams {
    pub fn new(eps: f64, phi: f64, delta: f64) -> Result<Self> {
        if !(eps > 0.0 && eps < 1.0) {
            return Err(Error::InvalidParameter(format!("eps must lie in (0, 1), got {eps}")));
        }
        if !(phi > 0.0 && phi <= 1.0) {
            return Err(Error::InvalidParameter(format!("phi must lie in (0, 1], got {phi}")));
        }
        if !(delta > 0.0 && delta < 1.0) {
            return Err(Error::InvalidParameter(format!("delta must lie in (0, 1), got {delta}")));
        }
        Ok(HeavyHitterParams { eps, phi, delta })
    }

    /// Expected number of samples `ℓ = 6 log2(6/δ) / ε²`.
    pub fn sample_budget(&self) -> f64 {
        6.0 * (6.0 / self.delta).log2() / (self.eps * self.eps)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HeavyHitter {
    pub item: u64,
    /// Estimated frequency in the whole stream.
    pub estimate: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HeavyHittersReport {
    pub items: Vec<HeavyHitter>,
    pub sampled: u64,
}

/// Sample-and-hash core shared by the list heavy hitters and ε-maximum
/// sketches: a power-of-two coin picks which items to look at, and a
/// Misra-Gries table over hashed identifiers counts them.
#[derive(Debug, Clone)]
struct HashedSampler {
    coin: PowerOfTwoCoin,
    hash: UniversalHash,
    table: MisraGries<u64>,
    sampled: u64,
    seen: u64,
    rng: SketchRng,
}

impl HashedSampler {
    fn new(p: &HeavyHitterParams, stream_len: u64, domain: u64, budget_scale: f64, mut rng: SketchRng) -> Result<Self> {
        if stream_len == 0 {
            return Err(Error::InvalidParameter("stream length must be positive".into()));
        }
        let ell = p.sample_budget() * budget_scale;
        let coin = PowerOfTwoCoin::for_rate(6.0 * ell / stream_len as f64)?;
        let range = (4.0 * ell * ell / p.delta).ceil().min(u64::MAX as f64 / 4.0) as u64;
        let hash = draw_universal_hash(domain, range, &mut rng)?;
        let slots = (1.0 / p.eps).ceil() as usize;
        Ok(HashedSampler { coin, hash, table: MisraGries::new(slots), sampled: 0, seen: 0, rng })
    }

    /// Hashed identifier of `item` when it is sampled.
    fn offer(&mut self, item: u64) -> Option<u64> {
        self.seen += 1;
        if !self.coin.flip(&mut self.rng) {
            return None;
        }
        self.sampled += 1;
        let key = self.hash.eval(item);
        self.table.update(key);
        Some(key)
    }

    fn scale(&self) -> f64 {
        self.seen as f64 / self.sampled as f64
    }
}

/// List heavy hitters: reports every item with frequency at least `φm` and
/// no item with frequency at most `(φ - ε)m`, each with an estimate within `εm`.
///
/// `T1` is the Misra-Gries table over hashed identifiers; `T2` keeps the true
/// identifiers of the `⌈1/φ⌉` highest `T1` keys, in `T1` order.
#[derive(Debug, Clone)]
pub struct SimpleHeavyHitters {
    params: HeavyHitterParams,
    core: HashedSampler,
    top_slots: usize,
    /// `(item, hashed item)` pairs.
    ids: Vec<(u64, u64)>,
}

impl SimpleHeavyHitters {
    /// Items must lie in `[0, domain)`; `stream_len` is the stream length `m`.
    pub fn new(params: HeavyHitterParams, stream_len: u64, domain: u64, rng: SketchRng) -> Result<Self> {
        Self::with_budget_scale(params, stream_len, domain, 1.0, rng)
    }

    /// As [`SimpleHeavyHitters::new`] with the sample budget multiplied by `budget_scale`.
    pub fn with_budget_scale(
        params: HeavyHitterParams,
        stream_len: u64,
        domain: u64,
        budget_scale: f64,
        rng: SketchRng,
    ) -> Result<Self> {
        let core = HashedSampler::new(&params, stream_len, domain, budget_scale, rng)?;
        let top_slots = (1.0 / params.phi).ceil() as usize;
        Ok(SimpleHeavyHitters { params, core, top_slots, ids: Vec::with_capacity(top_slots) })
    }

    pub fn sample_probability(&self) -> f64 {
        self.core.coin.probability()
    }

    pub fn hashed_table(&self) -> &MisraGries<u64> {
        &self.core.table
    }

    /// Identifiers currently held in `T2`, in `T1` order.
    pub fn tracked_ids(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.ids.iter().copied()
    }

    pub fn top_slots(&self) -> usize {
        self.top_slots
    }
}

impl StreamSketch for SimpleHeavyHitters {
    type Item = u64;
    type Report = HeavyHittersReport;

    fn insert(&mut self, item: &u64) {
        let Some(key) = self.core.offer(*item) else { return };
        let table = &self.core.table;
        let top = self.top_slots;
        let in_top = |k: u64| table.rank_of(&k).is_some_and(|r| r < top);
        self.ids.retain(|&(_, k)| in_top(k));
        if in_top(key) {
            match self.ids.iter_mut().find(|(_, k)| *k == key) {
                Some(slot) => slot.0 = *item,
                None => self.ids.push((*item, key)),
            }
        }
        self.ids.sort_by_key(|&(_, k)| table.rank_of(&k));
    }

    fn report(&self) -> Result<HeavyHittersReport> {
        if self.core.sampled == 0 {
            return Err(Error::InsufficientSample);
        }
        let s = self.core.sampled as f64;
        let cut = (self.params.phi - self.params.eps) * s;
        let items = self
            .ids
            .iter()
            .filter_map(|&(item, key)| {
                let c = self.core.table.get(&key) as f64;
                (c >= cut).then(|| HeavyHitter { item, estimate: c * self.core.scale() })
            })
            .collect();
        Ok(HeavyHittersReport { items, sampled: self.core.sampled })
    }

    fn sampled(&self) -> u64 {
        self.core.sampled
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MaximumReport {
    pub item: u64,
    pub estimate: f64,
}

/// ε-maximum: an item whose frequency is within `εm` of the most frequent one.
/// Same machinery as [`SimpleHeavyHitters`] but only the identifier of the top
/// `T1` key is remembered.
#[derive(Debug, Clone)]
pub struct EpsMaximum {
    core: HashedSampler,
    top: Option<(u64, u64)>,
}

impl EpsMaximum {
    /// Only `eps` and `delta` of `params` are used.
    pub fn new(params: HeavyHitterParams, stream_len: u64, domain: u64, rng: SketchRng) -> Result<Self> {
        Self::with_budget_scale(params, stream_len, domain, 1.0, rng)
    }

    pub fn with_budget_scale(
        params: HeavyHitterParams,
        stream_len: u64,
        domain: u64,
        budget_scale: f64,
        rng: SketchRng,
    ) -> Result<Self> {
        Ok(EpsMaximum { core: HashedSampler::new(&params, stream_len, domain, budget_scale, rng)?, top: None })
    }
}

impl StreamSketch for EpsMaximum {
    type Item = u64;
    type Report = MaximumReport;

    fn insert(&mut self, item: &u64) {
        if let Some(key) = self.core.offer(*item) {
            if self.core.table.entries().first().is_some_and(|e| e.0 == key) {
                self.top = Some((*item, key));
            }
        }
    }

    fn report(&self) -> Result<MaximumReport> {
        let (item, key) = self.top.ok_or(Error::InsufficientSample)?;
        Ok(MaximumReport { item, estimate: self.core.table.get(&key) as f64 * self.core.scale() })
    }

    fn sampled(&self) -> u64 {
        self.core.sampled
    }
}

/// Builds [`SimpleHeavyHitters`] instances for the unknown-length wrapper.
#[derive(Debug, Clone, Copy)]
pub struct SimpleHeavyHittersFactory {
    pub params: HeavyHitterParams,
    pub domain: u64,
}

impl SketchFactory for SimpleHeavyHittersFactory {
    type Sketch = SimpleHeavyHitters;

    fn build(&self, stream_len: u64, budget_scale: f64, rng: &mut dyn RngCore) -> Result<SimpleHeavyHitters> {
        SimpleHeavyHitters::with_budget_scale(self.params, stream_len, self.domain, budget_scale, fork(rng))
    }
}

#[derive(Debug, Clone, Copy)]
pub struct EpsMaximumFactory {
    pub params: HeavyHitterParams,
    pub domain: u64,
}

impl SketchFactory for EpsMaximumFactory {
    type Sketch = EpsMaximum;

    fn build(&self, stream_len: u64, budget_scale: f64, rng: &mut dyn RngCore) -> Result<EpsMaximum> {
        EpsMaximum::with_budget_scale(self.params, stream_len, self.domain, budget_scale, fork(rng))
    }
}
