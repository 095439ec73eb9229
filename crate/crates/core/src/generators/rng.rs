//! Reproducible pseudo-random stream.
//!
//! xorshift64* (Vigna 2014): state update `x ^= x >> 12; x ^= x << 25;
//! x ^= x >> 27`, output `x * 0x2545F4914F6CDD1D`. Seeds are scrambled with
//! one SplitMix64 step (`z += 0x9E3779B97F4A7C15; z = (z ^ (z >> 30)) *
//! 0xBF58476D1CE4E5B9; z = (z ^ (z >> 27)) * 0x94D049BB133111EB; z ^= z >> 31`)
//! so that nearby seeds give unrelated streams and the state is never zero.
//! All arithmetic is wrapping on u64, which makes the stream portable.

pub const XORSHIFT_MULTIPLIER: u64 = 0x2545_F491_4F6C_DD1D;
pub const SPLITMIX_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

pub fn splitmix64(seed: u64) -> u64 {
    let mut z = seed.wrapping_add(SPLITMIX_GAMMA);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Clone, Debug)]
pub struct XorShift64Star {
    state: u64,
}

impl XorShift64Star {
    pub fn new(seed: u64) -> Self {
        let s = splitmix64(seed);
        XorShift64Star { state: if s == 0 { SPLITMIX_GAMMA } else { s } }
    }

    /// Stream for item `index` of a seeded sequence.
    pub fn for_item(seed: u64, index: u64) -> Self {
        XorShift64Star::new(splitmix64(seed) ^ index.wrapping_mul(SPLITMIX_GAMMA))
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.state;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        self.state = x;
        x.wrapping_mul(XORSHIFT_MULTIPLIER)
    }

    /// Uniform in `0..n` by rejection; `n` must be positive.
    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0);
        let zone = u64::MAX - (u64::MAX % n);
        loop {
            let v = self.next_u64();
            if v < zone {
                return v % n;
            }
        }
    }

    /// Uniform in the inclusive range.
    pub fn range(&mut self, lo: i64, hi: i64) -> i64 {
        assert!(lo <= hi);
        lo + self.below((hi - lo) as u64 + 1) as i64
    }

    pub fn chance(&mut self, num: u64, den: u64) -> bool {
        self.below(den) < num
    }
}
