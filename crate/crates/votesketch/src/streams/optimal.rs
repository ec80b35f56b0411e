use std::collections::HashMap;

use serde::Serialize;

use super::hash::{draw_universal_hash, UniversalHash};
use super::heavy_hitters::{HeavyHitter, HeavyHitterParams, HeavyHittersReport};
use super::misra_gries::MisraGries;
use super::select::{power_of_two_exponent, PowerOfTwoCoin};
use super::StreamSketch;
use crate::rng::SketchRng;
use crate::{Error, Result};

/// Constants of the accelerated-counter heavy hitters sketch.
///
/// The analysis constants ([`OptimalHhConstants::analysis`]) only make the
/// accelerated counters kick in for streams far beyond desktop scale;
/// [`OptimalHhConstants::reduced`] keeps the structure and shrinks them.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OptimalHhConstants {
    /// `ℓ = sample_scale / ε²` expected samples.
    pub sample_scale: f64,
    /// `J = ⌈repetition_scale · log2(12/φ)⌉` hash functions.
    pub repetition_scale: f64,
    /// Each hash function maps into `⌈row_scale / ε⌉` buckets.
    pub row_scale: f64,
    /// Epoch of a bucket is `⌊log2(epoch_scale · T2²)⌋`.
    pub epoch_scale: f64,
}

impl OptimalHhConstants {
    pub fn analysis() -> Self {
        OptimalHhConstants { sample_scale: 1e5, repetition_scale: 200.0, row_scale: 100.0, epoch_scale: 1e-6 }
    }

    pub fn reduced() -> Self {
        OptimalHhConstants { sample_scale: 12.5, repetition_scale: 1.0, row_scale: 100.0, epoch_scale: 1.0 }
    }
}

/// List heavy hitters with accelerated counters.
///
/// After sampling, `T1` is a Misra-Gries table over identifiers with `⌈2/φ⌉`
/// slots. For each of `J` hash functions, `T2[j][i]` counts an `ε`-subsample
/// of the items in bucket `i`, and `T3[j][i][t]` counts items in epoch `t`
/// of that bucket subsampled at rate `min(ε·2^t, 1)`. An item's frequency is
/// the median over `j` of the rescaled `T3` sums of its buckets.
#[derive(Debug, Clone)]
pub struct OptimalHeavyHitters {
    params: HeavyHitterParams,
    constants: OptimalHhConstants,
    coin: PowerOfTwoCoin,
    /// `ε` floored to a power of two, `2^-eps_exp`.
    eps_exp: u32,
    hashes: Vec<UniversalHash>,
    rows: usize,
    t1: MisraGries<u64>,
    t2: Vec<u32>,
    t3: HashMap<(u32, u32, u8), u32>,
    sampled: u64,
    seen: u64,
    rng: SketchRng,
}

impl OptimalHeavyHitters {
    pub fn new(
        params: HeavyHitterParams,
        constants: OptimalHhConstants,
        stream_len: u64,
        domain: u64,
        mut rng: SketchRng,
    ) -> Result<Self> {
        if stream_len == 0 {
            return Err(Error::InvalidParameter("stream length must be positive".into()));
        }
        let eps = params.eps;
        let ell = constants.sample_scale / (eps * eps);
        let coin = PowerOfTwoCoin::for_rate(ell / stream_len as f64)?;
        let eps_exp = power_of_two_exponent(eps)?;
        let reps = (constants.repetition_scale * (12.0 / params.phi).log2()).ceil().max(1.0) as usize;
        let rows = (constants.row_scale / eps).ceil() as usize;
        let hashes = (0..reps)
            .map(|_| draw_universal_hash(domain, rows as u64, &mut rng))
            .collect::<Result<Vec<_>>>()?;
        let slots = (2.0 / params.phi).ceil() as usize;
        Ok(OptimalHeavyHitters {
            params,
            constants,
            coin,
            eps_exp,
            hashes,
            rows,
            t1: MisraGries::new(slots),
            t2: vec![0; reps * rows],
            t3: HashMap::new(),
            sampled: 0,
            seen: 0,
            rng,
        })
    }

    pub fn repetitions(&self) -> usize {
        self.hashes.len()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn sample_probability(&self) -> f64 {
        self.coin.probability()
    }

    pub fn t1(&self) -> &MisraGries<u64> {
        &self.t1
    }

    pub fn t2_nonzero(&self) -> usize {
        self.t2.iter().filter(|&&v| v > 0).count()
    }

    pub fn t3_nonzero(&self) -> usize {
        self.t3.len()
    }

    /// Epoch of a bucket holding subsample count `v`, capped where the rate reaches one.
    fn epoch(&self, v: u32) -> Option<u8> {
        if v == 0 {
            return None;
        }
        let t = (self.constants.epoch_scale * (v as f64) * (v as f64)).log2().floor();
        (t >= 0.0).then(|| (t as u32).min(self.eps_exp) as u8)
    }

    /// `min(ε·2^t, 1)` as a coin exponent.
    fn epoch_exponent(&self, t: u8) -> u32 {
        self.eps_exp.saturating_sub(t as u32)
    }

    /// Estimated frequency of `item` among the sampled items.
    pub fn sampled_frequency(&self, item: u64) -> f64 {
        let mut per_rep: Vec<f64> = self
            .hashes
            .iter()
            .enumerate()
            .map(|(j, h)| {
                let i = (h.eval(item) - 1) as u32;
                (0..=self.eps_exp as u8)
                    .filter_map(|t| self.t3.get(&(j as u32, i, t)).map(|&c| (t, c)))
                    .map(|(t, c)| c as f64 * 2f64.powi(self.epoch_exponent(t) as i32))
                    .sum()
            })
            .collect();
        per_rep.sort_by(f64::total_cmp);
        let k = per_rep.len();
        if k % 2 == 1 {
            per_rep[k / 2]
        } else {
            (per_rep[k / 2 - 1] + per_rep[k / 2]) / 2.0
        }
    }
}

impl StreamSketch for OptimalHeavyHitters {
    type Item = u64;
    type Report = HeavyHittersReport;

    fn insert(&mut self, item: &u64) {
        self.seen += 1;
        if !self.coin.flip(&mut self.rng) {
            return;
        }
        self.sampled += 1;
        self.t1.update(*item);
        for j in 0..self.hashes.len() {
            let i = (self.hashes[j].eval(*item) - 1) as usize;
            let cell = j * self.rows + i;
            if PowerOfTwoCoin::new(self.eps_exp).flip(&mut self.rng) {
                self.t2[cell] += 1;
            }
            if let Some(t) = self.epoch(self.t2[cell]) {
                if PowerOfTwoCoin::new(self.epoch_exponent(t)).flip(&mut self.rng) {
                    *self.t3.entry((j as u32, i as u32, t)).or_insert(0) += 1;
                }
            }
        }
    }

    fn report(&self) -> Result<HeavyHittersReport> {
        if self.sampled == 0 {
            return Err(Error::InsufficientSample);
        }
        let s = self.sampled as f64;
        let cut = (self.params.phi - self.params.eps / 2.0) * s;
        let scale = self.seen as f64 / s;
        let items = self
            .t1
            .entries()
            .iter()
            .filter(|e| e.1 > 0)
            .filter_map(|&(item, _)| {
                let f = self.sampled_frequency(item);
                (f >= cut).then_some(HeavyHitter { item, estimate: f * scale })
            })
            .collect();
        Ok(HeavyHittersReport { items, sampled: self.sampled })
    }

    fn sampled(&self) -> u64 {
        self.sampled
    }
}
