//! Seedable, splittable variate streams.
//!
//! A [`RngStream`] is identified by a 64-bit key. The root key comes from the
//! user seed; [`RngStream::derive`] hashes the parent key with a child index,
//! so a child's sequence depends only on its position in the derivation tree
//! and never on how far the parent has been consumed. Batch generation relies
//! on this to produce identical output for any degree of parallelism.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use std::fmt;

/// Source of uniform and standard normal variates consumed by the samplers.
pub trait VariateSource {
    /// Uniform on `[0, 1)`.
    fn uniform(&mut self) -> f64;
    /// Standard normal.
    fn gaussian(&mut self) -> f64;
}

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(GOLDEN);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub struct RngStream {
    seed: u64,
    key: u64,
    inner: ChaCha8Rng,
    spare: Option<f64>,
}

impl RngStream {
    pub fn new(seed: u64) -> Self {
        Self::from_key(seed, splitmix64(seed))
    }

    fn from_key(seed: u64, key: u64) -> Self {
        RngStream {
            seed,
            key,
            inner: ChaCha8Rng::seed_from_u64(key),
            spare: None,
        }
    }

    /// Root seed this stream descends from.
    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Independent child stream; does not advance `self`.
    pub fn derive(&self, child_index: u64) -> RngStream {
        let key = splitmix64(self.key ^ splitmix64(child_index.wrapping_add(GOLDEN)));
        Self::from_key(self.seed, key)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }
}

impl VariateSource for RngStream {
    fn uniform(&mut self) -> f64 {
        // 53 random mantissa bits
        (self.inner.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Marsaglia polar method; the second variate of each pair is cached.
    fn gaussian(&mut self) -> f64 {
        if let Some(z) = self.spare.take() {
            return z;
        }
        loop {
            let u = 2.0 * self.uniform() - 1.0;
            let v = 2.0 * self.uniform() - 1.0;
            let s = u * u + v * v;
            if s > 0.0 && s < 1.0 {
                let f = (-2.0 * s.ln() / s).sqrt();
                self.spare = Some(v * f);
                return u * f;
            }
        }
    }
}

impl fmt::Debug for RngStream {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RngStream")
            .field("seed", &self.seed)
            .field("key", &format_args!("{:#018x}", self.key))
            .finish_non_exhaustive()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn equal_seeds_equal_sequences() {
        let mut a = RngStream::new(42);
        let mut b = RngStream::new(42);
        for _ in 0..100 {
            assert_eq!(a.uniform().to_bits(), b.uniform().to_bits());
            assert_eq!(a.gaussian().to_bits(), b.gaussian().to_bits());
        }
        let mut c = RngStream::new(43);
        let mut a = RngStream::new(42);
        assert_ne!(a.next_u64(), c.next_u64());
    }

    #[test]
    fn derive_ignores_parent_position() {
        let fresh = RngStream::new(7);
        let mut used = RngStream::new(7);
        for _ in 0..17 {
            used.uniform();
        }
        let mut a = fresh.derive(3);
        let mut b = used.derive(3);
        assert_eq!(a.next_u64(), b.next_u64());
        let mut c = fresh.derive(4);
        let mut a = fresh.derive(3);
        assert_ne!(a.next_u64(), c.next_u64());
        // child streams differ from the parent itself
        let mut p = RngStream::new(7);
        let mut a = fresh.derive(0);
        assert_ne!(p.next_u64(), a.next_u64());
    }

    #[test]
    fn uniform_range_and_moments() {
        let mut rng = RngStream::new(1);
        let n = 100_000;
        let mut sum = 0.0;
        let mut sum2 = 0.0;
        for _ in 0..n {
            let u = rng.uniform();
            assert!((0.0..1.0).contains(&u));
            sum += u;
            sum2 += u * u;
        }
        let mean = sum / n as f64;
        let var = sum2 / n as f64 - mean * mean;
        // stderr of the mean is sqrt(1/12 / n) ~ 9.1e-4
        assert!((mean - 0.5).abs() < 3.0 * (1.0 / 12.0 / n as f64).sqrt());
        assert!((var - 1.0 / 12.0).abs() < 2e-3);
    }

    #[test]
    fn gaussian_moments() {
        let mut rng = RngStream::new(2);
        let n = 100_000;
        let xs: Vec<f64> = (0..n).map(|_| rng.gaussian()).collect();
        let mean = xs.iter().sum::<f64>() / n as f64;
        let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n as f64;
        assert!(mean.abs() < 3.0 / (n as f64).sqrt());
        // var of the sample variance for N(0,1) is 2/n
        assert!((var - 1.0).abs() < 3.0 * (2.0 / n as f64).sqrt());
    }
}
