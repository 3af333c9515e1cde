//! Input generation and ingestion.

use std::io::Read;
use std::path::Path;

/// Deterministic 64-bit generator; fixed by algorithm so that generated
/// inputs (and therefore all counters) replay bit-exactly everywhere.
pub struct SplitMix64(u64);

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64(seed)
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }
}

/// Length of `adversary(m)` in closed form.
pub fn adversary_len(m: u64) -> u64 {
    m * m + m * (m + 1) / 2 + m + 2
}

/// The climbing-degeneration input: `a`, then `m*m` times `b`, then the
/// blocks `a b`, `a b b`, ... up to `a` followed by `m` times `b`, then a
/// final `a`.
pub fn adversary(m: u64) -> Vec<u8> {
    assert!(m >= 1);
    let mut out = Vec::with_capacity(adversary_len(m) as usize);
    out.push(b'a');
    out.resize(out.len() + (m * m) as usize, b'b');
    for j in 1..=m {
        out.push(b'a');
        out.resize(out.len() + j as usize, b'b');
    }
    out.push(b'a');
    debug_assert_eq!(out.len() as u64, adversary_len(m));
    out
}

/// `n` bytes uniform over the first `alphabet_size` byte values, drawn
/// from a splitmix64 stream.
pub fn random_string(n: usize, alphabet_size: u16, seed: u64) -> Vec<u8> {
    assert!((1..=256).contains(&alphabet_size));
    let mut rng = SplitMix64::new(seed);
    (0..n)
        .map(|_| (rng.next_u64() % alphabet_size as u64) as u8)
        .collect()
}

// Original filler prose used solely as a digram source for the
// english-like generator below.
const ENGLISH_SAMPLE: &[u8] = b"a long walk in the early morning often clears the head \
and settles the day ahead. small birds gather near the water and wait for the light \
to change, while the town behind them is still quiet. someone opens a bakery door \
and the smell of warm bread drifts across the square. by the time the first bus \
arrives, the streets have filled with people carrying bags, papers, and small plans \
for the hours to come. nothing about the scene is remarkable, and that is exactly \
why it works: the same corners, the same greetings, the same slow turn of an \
ordinary day that everyone knows by heart and no one writes down.";

/// Text with english-like digram statistics: an order-2 chain over a fixed
/// embedded sample, driven by a seeded splitmix64 stream.
pub fn markov_english(n: usize, seed: u64) -> Vec<u8> {
    let mut follow: std::collections::HashMap<(u8, u8), Vec<u8>> = std::collections::HashMap::new();
    for w in ENGLISH_SAMPLE.windows(3) {
        follow.entry((w[0], w[1])).or_default().push(w[2]);
    }
    let mut rng = SplitMix64::new(seed);
    let mut out = Vec::with_capacity(n);
    let mut state = (ENGLISH_SAMPLE[0], ENGLISH_SAMPLE[1]);
    while out.len() < n {
        let next = match follow.get(&state) {
            Some(choices) => choices[(rng.next_u64() % choices.len() as u64) as usize],
            None => ENGLISH_SAMPLE[(rng.next_u64() % ENGLISH_SAMPLE.len() as u64) as usize],
        };
        out.push(next);
        state = (state.1, next);
    }
    out
}

/// Raw bytes of a local file; no decoding, no terminator appended.
pub fn read_file(path: &Path) -> std::io::Result<Vec<u8>> {
    let mut buf = Vec::new();
    std::fs::File::open(path)?.read_to_end(&mut buf)?;
    Ok(buf)
}
