//! Operation counters, the synthetic memory-trace model and two small
//! software cache models.
//!
//! Counting conventions (fixed here so that counts are reproducible):
//!   1. every child lookup by (node, character) is one branch operation,
//!      successful or not;
//!   2. the move from the auxiliary top node down to the root counts as
//!      `move_down`;
//!   3. in a `notd` rescan the entry branch below the link target counts
//!      toward `rs`; edge-oriented schemes get the entry edge from the
//!      link itself, so only subsequent downward selections count, and the
//!      terminal sibling lookup of `eotd` counts as `sl`;
//!   4. `eov` rescan branches count as `rs`, upward steps as `climb`;
//!   5. a character match against a mid-edge position is `char_cmp`, not a
//!      branch.
//!
//! `rescan_moves` separately counts only the downward rescan selections
//! that consume their whole edge; that is the quantity bounded by the text
//! length for the top-down schemes, while `rs` (branch operations) is not.

/// Per-build operation counts. All fields are deterministic functions of
/// (text, scheme, strategy).
#[derive(Default, Clone, Debug, PartialEq, Eq)]
pub struct OpCounters {
    /// Rescan branch operations.
    pub rs: u64,
    /// Extra sibling-lookup branch operations (`eotd` only).
    pub sl: u64,
    /// Upward edge steps.
    pub climb: u64,
    /// Branch operations outside of rescan, including top-to-root moves.
    pub move_down: u64,
    /// Mid-edge character comparisons.
    pub char_cmp: u64,
    /// Downward rescan moves that consume a full edge label.
    pub rescan_moves: u64,
    /// Child replacements in the branching structure (one per split for
    /// every scheme except `eotd`).
    pub replaces: u64,
    /// Edge splits performed.
    pub splits: u64,
    /// Leaves created.
    pub leaves: u64,
    /// Linked-list cells inspected.
    pub list_scan_steps: u64,
    /// Hash slots inspected (excluding rehash traffic).
    pub hash_probes: u64,
    /// Hash operations issued (lookups, inserts and replaces).
    pub hash_ops: u64,
    /// Hash slots inspected while growing the table in online mode.
    pub rehash_probes: u64,
}

/// Memory regions of the synthetic address space.
#[derive(Clone, Copy, Debug)]
pub enum Region {
    /// Hash table slots, 16 bytes each.
    Hash,
    /// Linked-list cells, 16 bytes each.
    List,
}

const HASH_BASE: u64 = 1 << 40;
const LIST_BASE: u64 = 1 << 41;
const CELL_SIZE: u64 = 16;

/// Consumer of the memory probe stream emitted during construction.
pub trait MemModel {
    fn record(&mut self, id: u32);
    fn cell(&mut self, region: Region, index: u64);
}

/// Zero-cost sink for timed runs.
pub struct NoTrace;

impl MemModel for NoTrace {
    #[inline(always)]
    fn record(&mut self, _id: u32) {}
    #[inline(always)]
    fn cell(&mut self, _region: Region, _index: u64) {}
}

/// Parameters of the trace and cache models.
#[derive(Clone, Debug)]
pub struct CacheConfig {
    /// Synthetic size of one node record; record `r` lives at `r * record_size_bytes`.
    pub record_size_bytes: u64,
    /// Lines of the direct-mapped model (64 bytes each).
    pub direct_mapped_lines: usize,
}

impl Default for CacheConfig {
    fn default() -> Self {
        CacheConfig {
            record_size_bytes: 64,
            direct_mapped_lines: 8192,
        }
    }
}

/// Fully associative cache of ten 64-byte lines with least-recently-used
/// replacement.
pub struct LruCache {
    lines: [u64; Self::LINES],
    len: usize,
    pub hits: u64,
    pub misses: u64,
}

impl LruCache {
    pub const LINES: usize = 10;
    const LINE_BYTES: u64 = 64;

    pub fn new() -> Self {
        LruCache {
            lines: [0; Self::LINES],
            len: 0,
            hits: 0,
            misses: 0,
        }
    }

    /// Probe an address; returns true on hit.
    pub fn probe(&mut self, addr: u64) -> bool {
        let line = addr / Self::LINE_BYTES;
        // Most-recently-used line first.
        if let Some(pos) = self.lines[..self.len].iter().position(|&l| l == line) {
            self.lines[..=pos].rotate_right(1);
            self.hits += 1;
            return true;
        }
        self.misses += 1;
        if self.len < Self::LINES {
            self.len += 1;
        }
        self.lines[..self.len].rotate_right(1);
        self.lines[0] = line;
        false
    }
}

impl Default for LruCache {
    fn default() -> Self {
        Self::new()
    }
}

/// Direct-mapped cache without usage estimation: a probe maps to exactly
/// one line and a miss overwrites it.
pub struct DirectMappedCache {
    tags: Vec<u64>,
    valid: Vec<bool>,
    pub hits: u64,
    pub misses: u64,
}

impl DirectMappedCache {
    const LINE_BYTES: u64 = 64;

    pub fn new(num_lines: usize) -> Self {
        DirectMappedCache {
            tags: vec![0; num_lines],
            valid: vec![false; num_lines],
            hits: 0,
            misses: 0,
        }
    }

    pub fn probe(&mut self, addr: u64) -> bool {
        let line = addr / Self::LINE_BYTES;
        let idx = (line % self.tags.len() as u64) as usize;
        if self.valid[idx] && self.tags[idx] == line {
            self.hits += 1;
            return true;
        }
        self.valid[idx] = true;
        self.tags[idx] = line;
        self.misses += 1;
        false
    }
}

/// Trace sink that feeds both cache models and tallies total probes.
pub struct CacheTrace {
    cfg: CacheConfig,
    pub lru: LruCache,
    pub dm: DirectMappedCache,
    pub probes: u64,
}

impl CacheTrace {
    pub fn new(cfg: CacheConfig) -> Self {
        let dm = DirectMappedCache::new(cfg.direct_mapped_lines);
        CacheTrace {
            cfg,
            lru: LruCache::new(),
            dm,
            probes: 0,
        }
    }

    fn touch(&mut self, addr: u64) {
        self.probes += 1;
        self.lru.probe(addr);
        self.dm.probe(addr);
    }

    pub fn stats(&self) -> CacheStats {
        CacheStats {
            probes: self.probes,
            lru_hits: self.lru.hits,
            lru_misses: self.lru.misses,
            dm_hits: self.dm.hits,
            dm_misses: self.dm.misses,
        }
    }
}

impl MemModel for CacheTrace {
    #[inline]
    fn record(&mut self, id: u32) {
        self.touch(id as u64 * self.cfg.record_size_bytes);
    }

    #[inline]
    fn cell(&mut self, region: Region, index: u64) {
        let base = match region {
            Region::Hash => HASH_BASE,
            Region::List => LIST_BASE,
        };
        self.touch(base + index * CELL_SIZE);
    }
}

/// Cache tallies of one counting run.
#[derive(Default, Clone, Copy, Debug, PartialEq, Eq)]
pub struct CacheStats {
    pub probes: u64,
    pub lru_hits: u64,
    pub lru_misses: u64,
    pub dm_hits: u64,
    pub dm_misses: u64,
}

/// One emitted result row. Column order is fixed:
/// file, N, scheme, strategy, rs, sl, climb, move_down, char_cmp, probes,
/// lru_miss, dm_miss, wall_seconds.
#[derive(Clone, Debug, PartialEq)]
pub struct Row {
    pub file: String,
    pub n: u64,
    pub scheme: String,
    pub strategy: String,
    pub rs: u64,
    pub sl: u64,
    pub climb: u64,
    pub move_down: u64,
    pub char_cmp: u64,
    pub probes: u64,
    pub lru_miss: u64,
    pub dm_miss: u64,
    pub wall_seconds: f64,
}

pub const ROW_COLUMNS: [&str; 13] = [
    "file",
    "N",
    "scheme",
    "strategy",
    "rs",
    "sl",
    "climb",
    "move_down",
    "char_cmp",
    "probes",
    "lru_miss",
    "dm_miss",
    "wall_seconds",
];

impl Row {
    pub fn fields(&self) -> Vec<String> {
        vec![
            self.file.clone(),
            self.n.to_string(),
            self.scheme.clone(),
            self.strategy.clone(),
            self.rs.to_string(),
            self.sl.to_string(),
            self.climb.to_string(),
            self.move_down.to_string(),
            self.char_cmp.to_string(),
            self.probes.to_string(),
            self.lru_miss.to_string(),
            self.dm_miss.to_string(),
            format!("{:.2}", self.wall_seconds),
        ]
    }
}
