//! One-pass sketches over item streams and ranking streams.
//!
//! Every sketch samples its input with a power-of-two coin, so a sampling
//! decision costs only a running OR over fresh random bits.

mod hash;
mod heavy_hitters;
mod minimum;
mod misra_gries;
mod morris;
mod optimal;
mod rankings;
mod select;
mod unknown;

use rand::RngCore;

pub use hash::{collision_free_range, draw_universal_hash, is_prime, next_prime, UniversalHash};
pub use heavy_hitters::{
    EpsMaximum, EpsMaximumFactory, HeavyHitter, HeavyHitterParams, HeavyHittersReport, MaximumReport,
    SimpleHeavyHitters, SimpleHeavyHittersFactory,
};
pub use minimum::{EpsMinimum, EpsMinimumFactory, MinimumReport, MinimumSource};
pub use misra_gries::MisraGries;
pub use morris::MorrisCounter;
pub use optimal::{OptimalHeavyHitters, OptimalHhConstants};
pub use rankings::{BordaReport, EpsBorda, EpsBordaFactory, EpsMaximin, EpsMaximinFactory, MaximinReport};
pub use select::{floor_prob_to_power_of_two, low_space_select, power_of_two_exponent, PowerOfTwoCoin};
pub use unknown::{morris_accuracy_bits, UnknownLength, UnknownLengthReport};

use crate::Result;

/// A one-pass sketch. `report` is read-only and may be called at any time.
pub trait StreamSketch {
    type Item: ?Sized;
    type Report;

    fn insert(&mut self, item: &Self::Item);
    fn report(&self) -> Result<Self::Report>;
    /// Number of stream elements the sketch has sampled.
    fn sampled(&self) -> u64;
}

/// Builds fresh sketch instances for a given assumed stream length.
pub trait SketchFactory {
    type Sketch: StreamSketch;

    /// `budget_scale` multiplies the sketch's sample budget.
    fn build(&self, stream_len: u64, budget_scale: f64, rng: &mut dyn RngCore) -> Result<Self::Sketch>;
}
