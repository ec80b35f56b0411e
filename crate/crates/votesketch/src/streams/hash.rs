use rand::{Rng, RngCore};

use crate::{Error, Result};

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, m);
        }
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for p in BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub fn next_prime(n: u64) -> Option<u64> {
    (n.max(2)..=u64::MAX).find(|&c| is_prime(c))
}

/// `h(x) = ((a·x + b) mod p) mod r + 1`, mapping `[0, domain)` into `[1, r]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UniversalHash {
    a: u64,
    b: u64,
    p: u64,
    range: u64,
}

impl UniversalHash {
    pub fn range(&self) -> u64 {
        self.range
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn eval(&self, x: u64) -> u64 {
        let v = (self.a as u128 * (x % self.p) as u128 + self.b as u128) % self.p as u128;
        (v as u64) % self.range + 1
    }
}

/// Draws `h` from the family with `p` the least prime at least `max(domain, range)`.
pub fn draw_universal_hash<R: RngCore + ?Sized>(domain: u64, range: u64, rng: &mut R) -> Result<UniversalHash> {
    if range == 0 {
        return Err(Error::InvalidParameter("hash range must be positive".into()));
    }
    let p = next_prime(domain.max(range).max(2))
        .ok_or_else(|| Error::InvalidParameter(format!("no 64-bit prime above {domain}")))?;
    Ok(UniversalHash { a: rng.random_range(1..p), b: rng.random_range(0..p), p, range })
}

/// Range `ceil(|S|^2 / δ)` keeping a set of `|S|` keys collision-free with probability `1 - δ`.
pub fn collision_free_range(set_size: f64, delta: f64) -> u64 {
    (set_size * set_size / delta).ceil().max(1.0) as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::seeded;

    #[test]
    fn primes() {
        let small: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert!(is_prime(1_000_000_007));
        assert!(!is_prime(3_215_031_751));
        assert!(is_prime(18_446_744_073_709_551_557));
        assert_eq!(next_prime(10_000), Some(10_007));
    }

    #[test]
    fn hash_values_lie_in_range() {
        let mut rng = seeded(1);
        let h = draw_universal_hash(1000, 17, &mut rng).unwrap();
        assert_eq!(h.prime(), 1009);
        assert!((0..1000).all(|x| (1..=17).contains(&h.eval(x))));
    }

    #[test]
    fn collision_rate_within_bound() {
        let mut rng = seeded(2);
        let (set, delta) = (30u64, 0.2);
        let r = collision_free_range(set as f64, delta);
        let trials = 2000;
        let collided = (0..trials)
            .filter(|_| {
                let h = draw_universal_hash(1 << 20, r, &mut rng).unwrap();
                let mut seen: Vec<u64> = (0..set).map(|x| h.eval(x * 7919)).collect();
                seen.sort_unstable();
                seen.windows(2).any(|w| w[0] == w[1])
            })
            .count();
        assert!((collided as f64) / (trials as f64) <= delta, "{collided}");
    }
}
