//! Shared helpers for the integration suites.

use threshold_spectra::cotree::Cotree;

/// Deterministic 64-bit generator so the randomized corpora are frozen.
pub struct SplitMix64(pub u64);

impl SplitMix64 {
    pub fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E3779B97F4A7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        z ^ (z >> 31)
    }

    pub fn below(&mut self, bound: u64) -> u64 {
        self.next() % bound
    }

    pub fn range(&mut self, lo: i64, hi: i64) -> i64 {
        lo + self.below((hi - lo + 1) as u64) as i64
    }

    pub fn cotree(&mut self, max_depth: u64, max_part: u64) -> Cotree {
        let r = 1 + self.below(max_depth);
        let mut parts: Vec<u64> = (0..r - 1).map(|_| 1 + self.below(max_part)).collect();
        parts.push(2 + self.below(max_part - 1));
        Cotree::new(parts).unwrap()
    }
}
