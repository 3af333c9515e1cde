//! Child-retrieval structures keyed by (node, first label character).
//!
//! Three interchangeable structures: a per-node linked list with front or
//! back insertion, and a single open-addressing hash table with linear
//! probing shared by all nodes. Independently of the structure, the first
//! two children ever attached to a node can be kept in inline slots that
//! are checked before the overflow structure and never evicted.
//!
//! Child sets are referenced through one level of indirection (a child-set
//! id) so that a whole set can be handed to another record in a single
//! assignment; the set also knows its current owner, which is how parent
//! references stay valid across such moves.

use crate::instrument::{MemModel, OpCounters, Region};

pub const NONE: u32 = u32::MAX;
const EMPTY_KEY: u64 = u64::MAX;

/// Which overflow structure backs child retrieval.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BranchKind {
    ListFront,
    ListBack,
    Hash,
}

/// Child-retrieval configuration for one build.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BranchStrategy {
    pub kind: BranchKind,
    pub inline: bool,
}

impl BranchStrategy {
    pub fn new(kind: BranchKind, inline: bool) -> Self {
        BranchStrategy { kind, inline }
    }

    pub fn list_front() -> Self {
        Self::new(BranchKind::ListFront, false)
    }

    pub fn list_back() -> Self {
        Self::new(BranchKind::ListBack, false)
    }

    pub fn hash() -> Self {
        Self::new(BranchKind::Hash, false)
    }

    pub fn with_inline(mut self) -> Self {
        self.inline = true;
        self
    }

    pub fn label(&self) -> String {
        let base = match self.kind {
            BranchKind::ListFront => "list-front",
            BranchKind::ListBack => "list-back",
            BranchKind::Hash => "hash",
        };
        if self.inline {
            format!("{base}+inl")
        } else {
            base.to_string()
        }
    }
}

struct Meta {
    owner: u32,
    head: u32,
    tail: u32,
    inline_chars: [u8; 2],
    inline_kids: [u32; 2],
}

struct Cell {
    ch: u8,
    child: u32,
    next: u32,
}

/// All child sets of one tree.
pub struct ChildTable {
    strategy: BranchStrategy,
    metas: Vec<Meta>,
    cells: Vec<Cell>,
    keys: Vec<u64>,
    vals: Vec<u32>,
    hash_len: usize,
    presized: bool,
}

#[inline]
fn mix(key: u64) -> u64 {
    // splitmix64 finalizer; deterministic and seed-free so probe counts
    // replay across runs and platforms.
    let mut z = key;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

#[inline]
fn key_of(cs: u32, c: u8) -> u64 {
    ((cs as u64) << 8) | c as u64
}

impl ChildTable {
    /// `presize_for`: expected text length; the hash table is sized to
    /// three times it up front. Without it the table grows geometrically.
    pub fn new(strategy: BranchStrategy, presize_for: Option<usize>) -> Self {
        let (cap, presized) = match (strategy.kind, presize_for) {
            (BranchKind::Hash, Some(n)) => ((3 * n).max(8), true),
            (BranchKind::Hash, None) => (64, false),
            _ => (0, false),
        };
        ChildTable {
            strategy,
            metas: Vec::new(),
            cells: Vec::new(),
            keys: vec![EMPTY_KEY; cap],
            vals: vec![NONE; cap],
            hash_len: 0,
            presized,
        }
    }

    pub fn strategy(&self) -> BranchStrategy {
        self.strategy
    }

    /// Allocate an empty child set owned by `owner`.
    pub fn new_set(&mut self, owner: u32) -> u32 {
        let id = self.metas.len() as u32;
        self.metas.push(Meta {
            owner,
            head: NONE,
            tail: NONE,
            inline_chars: [0; 2],
            inline_kids: [NONE; 2],
        });
        id
    }

    #[inline]
    pub fn owner(&self, cs: u32) -> u32 {
        self.metas[cs as usize].owner
    }

    /// Reassign a whole child set to a new record: the single-assignment move.
    pub fn set_owner(&mut self, cs: u32, owner: u32) {
        self.metas[cs as usize].owner = owner;
    }

    /// Find the child of set `cs` whose edge label starts with `c`.
    pub fn lookup<M: MemModel>(
        &self,
        cs: u32,
        c: u8,
        k: &mut OpCounters,
        m: &mut M,
    ) -> Option<u32> {
        let meta = &self.metas[cs as usize];
        if self.strategy.inline {
            if meta.inline_kids[0] != NONE && meta.inline_chars[0] == c {
                return Some(meta.inline_kids[0]);
            }
            if meta.inline_kids[1] != NONE && meta.inline_chars[1] == c {
                return Some(meta.inline_kids[1]);
            }
        }
        match self.strategy.kind {
            BranchKind::ListFront | BranchKind::ListBack => {
                let mut cell = meta.head;
                while cell != NONE {
                    k.list_scan_steps += 1;
                    m.cell(Region::List, cell as u64);
                    let c_ref = &self.cells[cell as usize];
                    if c_ref.ch == c {
                        return Some(c_ref.child);
                    }
                    cell = c_ref.next;
                }
                None
            }
            BranchKind::Hash => {
                k.hash_ops += 1;
                let key = key_of(cs, c);
                let cap = self.keys.len() as u64;
                let mut slot = (mix(key) % cap) as usize;
                loop {
                    k.hash_probes += 1;
                    m.cell(Region::Hash, slot as u64);
                    if self.keys[slot] == EMPTY_KEY {
                        return None;
                    }
                    if self.keys[slot] == key {
                        return Some(self.vals[slot]);
                    }
                    slot += 1;
                    if slot == self.keys.len() {
                        slot = 0;
                    }
                }
            }
        }
    }

    /// Attach `child` under set `cs`, keyed by `c`. No child of the set may
    /// already start with `c`; a duplicate signals a construction bug.
    pub fn insert<M: MemModel>(
        &mut self,
        cs: u32,
        c: u8,
        child: u32,
        k: &mut OpCounters,
        m: &mut M,
    ) {
        debug_assert!(
            self.find_uncounted(cs, c).is_none(),
            "duplicate first character {c:#04x} among siblings of set {cs}"
        );
        let meta = &mut self.metas[cs as usize];
        if self.strategy.inline {
            for slot in 0..2 {
                if meta.inline_kids[slot] == NONE {
                    meta.inline_chars[slot] = c;
                    meta.inline_kids[slot] = child;
                    return;
                }
            }
        }
        match self.strategy.kind {
            BranchKind::ListFront => {
                let idx = self.cells.len() as u32;
                let meta = &mut self.metas[cs as usize];
                self.cells.push(Cell {
                    ch: c,
                    child,
                    next: meta.head,
                });
                meta.head = idx;
                if meta.tail == NONE {
                    meta.tail = idx;
                }
                m.cell(Region::List, idx as u64);
            }
            BranchKind::ListBack => {
                let idx = self.cells.len() as u32;
                let meta = &mut self.metas[cs as usize];
                self.cells.push(Cell {
                    ch: c,
                    child,
                    next: NONE,
                });
                let old_tail = meta.tail;
                if old_tail == NONE {
                    meta.head = idx;
                } else {
                    self.cells[old_tail as usize].next = idx;
                    m.cell(Region::List, old_tail as u64);
                }
                self.metas[cs as usize].tail = idx;
                m.cell(Region::List, idx as u64);
            }
            BranchKind::Hash => {
                self.maybe_grow(k);
                k.hash_ops += 1;
                let key = key_of(cs, c);
                let cap = self.keys.len() as u64;
                let mut slot = (mix(key) % cap) as usize;
                loop {
                    k.hash_probes += 1;
                    m.cell(Region::Hash, slot as u64);
                    if self.keys[slot] == EMPTY_KEY {
                        self.keys[slot] = key;
                        self.vals[slot] = child;
                        self.hash_len += 1;
                        return;
                    }
                    slot += 1;
                    if slot == self.keys.len() {
                        slot = 0;
                    }
                }
            }
        }
    }

    /// Re-point the existing `c` child of set `cs` at `new_child`, in place.
    pub fn replace<M: MemModel>(
        &mut self,
        cs: u32,
        c: u8,
        new_child: u32,
        k: &mut OpCounters,
        m: &mut M,
    ) {
        k.replaces += 1;
        let meta = &mut self.metas[cs as usize];
        if self.strategy.inline {
            for slot in 0..2 {
                if meta.inline_kids[slot] != NONE && meta.inline_chars[slot] == c {
                    meta.inline_kids[slot] = new_child;
                    return;
                }
            }
        }
        match self.strategy.kind {
            BranchKind::ListFront | BranchKind::ListBack => {
                let mut cell = meta.head;
                while cell != NONE {
                    k.list_scan_steps += 1;
                    m.cell(Region::List, cell as u64);
                    let c_ref = &mut self.cells[cell as usize];
                    if c_ref.ch == c {
                        c_ref.child = new_child;
                        return;
                    }
                    cell = c_ref.next;
                }
                panic!("replace of missing child {c:#04x} in set {cs}: construction bug");
            }
            BranchKind::Hash => {
                k.hash_ops += 1;
                let key = key_of(cs, c);
                let cap = self.keys.len() as u64;
                let mut slot = (mix(key) % cap) as usize;
                loop {
                    k.hash_probes += 1;
                    m.cell(Region::Hash, slot as u64);
                    assert!(
                        self.keys[slot] != EMPTY_KEY,
                        "replace of missing child {c:#04x} in set {cs}: construction bug"
                    );
                    if self.keys[slot] == key {
                        self.vals[slot] = new_child;
                        return;
                    }
                    slot += 1;
                    if slot == self.keys.len() {
                        slot = 0;
                    }
                }
            }
        }
    }

    fn maybe_grow(&mut self, k: &mut OpCounters) {
        if self.presized || (self.hash_len + 1) * 3 <= self.keys.len() {
            return;
        }
        let new_cap = (self.keys.len() * 2).max(8);
        let old_keys = std::mem::replace(&mut self.keys, vec![EMPTY_KEY; new_cap]);
        let old_vals = std::mem::replace(&mut self.vals, vec![NONE; new_cap]);
        for (key, val) in old_keys.into_iter().zip(old_vals) {
            if key == EMPTY_KEY {
                continue;
            }
            let mut slot = (mix(key) % new_cap as u64) as usize;
            loop {
                k.rehash_probes += 1;
                if self.keys[slot] == EMPTY_KEY {
                    self.keys[slot] = key;
                    self.vals[slot] = val;
                    break;
                }
                slot += 1;
                if slot == new_cap {
                    slot = 0;
                }
            }
        }
    }

    /// Uncounted lookup for assertions and offline traversal.
    pub fn find_uncounted(&self, cs: u32, c: u8) -> Option<u32> {
        let meta = &self.metas[cs as usize];
        if self.strategy.inline {
            for slot in 0..2 {
                if meta.inline_kids[slot] != NONE && meta.inline_chars[slot] == c {
                    return Some(meta.inline_kids[slot]);
                }
            }
        }
        match self.strategy.kind {
            BranchKind::ListFront | BranchKind::ListBack => {
                let mut cell = meta.head;
                while cell != NONE {
                    let c_ref = &self.cells[cell as usize];
                    if c_ref.ch == c {
                        return Some(c_ref.child);
                    }
                    cell = c_ref.next;
                }
                None
            }
            BranchKind::Hash => {
                let key = key_of(cs, c);
                let cap = self.keys.len() as u64;
                let mut slot = (mix(key) % cap) as usize;
                loop {
                    if self.keys[slot] == EMPTY_KEY {
                        return None;
                    }
                    if self.keys[slot] == key {
                        return Some(self.vals[slot]);
                    }
                    slot += 1;
                    if slot == self.keys.len() {
                        slot = 0;
                    }
                }
            }
        }
    }

    /// Enumerate (first char, child) pairs of a set; offline use only.
    pub fn children_uncounted(&self, cs: u32) -> Vec<(u8, u32)> {
        let meta = &self.metas[cs as usize];
        let mut out = Vec::new();
        if self.strategy.inline {
            for slot in 0..2 {
                if meta.inline_kids[slot] != NONE {
                    out.push((meta.inline_chars[slot], meta.inline_kids[slot]));
                }
            }
        }
        match self.strategy.kind {
            BranchKind::ListFront | BranchKind::ListBack => {
                let mut cell = meta.head;
                while cell != NONE {
                    let c_ref = &self.cells[cell as usize];
                    out.push((c_ref.ch, c_ref.child));
                    cell = c_ref.next;
                }
            }
            BranchKind::Hash => {
                for c in 0..=255u8 {
                    if out.iter().any(|&(ch, _)| ch == c) {
                        continue;
                    }
                    if let Some(child) = self.find_uncounted(cs, c) {
                        out.push((c, child));
                    }
                }
            }
        }
        out
    }

    pub fn hash_len(&self) -> usize {
        self.hash_len
    }

    pub fn hash_capacity(&self) -> usize {
        self.keys.len()
    }
}
