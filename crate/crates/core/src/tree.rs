//! Arena-based suffix tree representation.
//!
//! One record holds a node together with its incoming edge. Records are
//! allocated in creation order and addressed by dense ids; record 0 is the
//! auxiliary top node above the root, record 1 is the root, and the edge
//! between them carries the empty label. Leaf edges end implicitly at the
//! current text length.
//!
//! Children are reached through a child-set id owned by the branching
//! module; a record stores the child-set id of its parent's set, so moving
//! a whole set to another record is a single assignment and parent lookups
//! stay correct across the move.

use crate::branching::{BranchStrategy, ChildTable, NONE};
use crate::instrument::{MemModel, OpCounters};
use crate::oracle::is_substring;
use crate::shape;
use crate::text::Text;

pub type NodeId = u32;

/// Auxiliary node above the root.
pub const TOP: NodeId = 0;
/// Root of the unaugmented tree.
pub const ROOT: NodeId = 1;
/// Sentinel for an absent suffix link.
pub const UNSET: u32 = u32::MAX;
/// Sentinel label end of leaf edges (the endpoint is the text length).
pub const OPEN: u32 = u32::MAX;

/// A node and its incoming edge, in one arena slot.
///
/// `depth_info` denormalizes string depth: for an internal record it is the
/// depth of the record's bottom endpoint (its end depth); for a leaf it is
/// the depth of the edge's top endpoint, since the bottom end grows.
pub(crate) struct Record {
    pub label_start: u32,
    pub label_end: u32,
    pub parent_cs: u32,
    pub link: u32,
    pub depth_info: u32,
    pub childset: u32,
}

/// The construction cursor: a position on an edge, at a node end, or on
/// the auxiliary top node.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ActivePoint {
    Top,
    Node(NodeId),
    /// Mid-edge: `offset` characters of the record's label lie above the
    /// point, `1 <= offset < label length`.
    Edge(NodeId, u32),
}

/// Which part of a split edge the pre-existing record keeps.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SplitRule {
    /// A new record takes the top part; the parent's child entry must be
    /// replaced. Used by `notd`, `nobu` and `eov`.
    TopIsNew,
    /// A new record takes the bottom part and inherits the children by a
    /// single child-set move; the parent's structure is untouched. Used by
    /// `eotd`.
    BottomIsNew,
}

pub struct Tree {
    pub(crate) recs: Vec<Record>,
    pub(crate) store: ChildTable,
    pub(crate) text: Text,
}

impl Tree {
    /// The two-record initial tree: top and root joined by the empty edge.
    pub fn new(strategy: BranchStrategy, presize_for: Option<usize>) -> Self {
        let mut store = ChildTable::new(strategy, presize_for);
        let mut recs = Vec::new();
        if let Some(n) = presize_for {
            recs.reserve(2 * n + 2);
        }
        recs.push(Record {
            label_start: 0,
            label_end: 0,
            parent_cs: NONE,
            link: UNSET,
            depth_info: 0,
            childset: NONE,
        });
        let root_cs = store.new_set(ROOT);
        recs.push(Record {
            label_start: 0,
            label_end: 0,
            parent_cs: NONE,
            link: UNSET,
            depth_info: 0,
            childset: root_cs,
        });
        Tree {
            recs,
            store,
            text: Text::new(),
        }
    }

    #[inline]
    pub fn text(&self) -> &Text {
        &self.text
    }

    pub fn store(&self) -> &ChildTable {
        &self.store
    }

    pub fn record_count(&self) -> usize {
        self.recs.len()
    }

    #[inline]
    pub fn is_leaf(&self, id: NodeId) -> bool {
        self.recs[id as usize].label_end == OPEN
    }

    #[inline]
    pub fn label_len(&self, id: NodeId) -> u32 {
        let r = &self.recs[id as usize];
        if r.label_end == OPEN {
            self.text.len() as u32 - r.label_start
        } else {
            r.label_end - r.label_start
        }
    }

    /// String depth of the record's bottom endpoint.
    #[inline]
    pub fn end_depth(&self, id: NodeId) -> u32 {
        let r = &self.recs[id as usize];
        if r.label_end == OPEN {
            r.depth_info + (self.text.len() as u32 - r.label_start)
        } else {
            r.depth_info
        }
    }

    /// String depth of the record's top endpoint (the parent node).
    #[inline]
    pub fn top_depth(&self, id: NodeId) -> u32 {
        let r = &self.recs[id as usize];
        if r.label_end == OPEN {
            r.depth_info
        } else {
            r.depth_info - (r.label_end - r.label_start)
        }
    }

    #[inline]
    pub fn parent(&self, id: NodeId) -> NodeId {
        if id == ROOT {
            return TOP;
        }
        self.store.owner(self.recs[id as usize].parent_cs)
    }

    #[inline]
    pub fn suffix_link(&self, id: NodeId) -> Option<NodeId> {
        match self.recs[id as usize].link {
            UNSET => None,
            l => Some(l),
        }
    }

    #[inline]
    pub fn first_char(&self, id: NodeId) -> u8 {
        self.text.at(self.recs[id as usize].label_start)
    }

    pub fn label_bytes(&self, id: NodeId) -> &[u8] {
        let r = &self.recs[id as usize];
        let end = if r.label_end == OPEN {
            self.text.len()
        } else {
            r.label_end as usize
        };
        &self.text.as_bytes()[r.label_start as usize..end]
    }

    /// Children of a node in no particular order; offline use.
    pub fn children(&self, id: NodeId) -> Vec<(u8, NodeId)> {
        let cs = self.recs[id as usize].childset;
        if cs == NONE {
            return Vec::new();
        }
        self.store.children_uncounted(cs)
    }

    /// The full string read from the root down to the record's node end.
    pub fn node_string(&self, id: NodeId) -> Vec<u8> {
        let mut parts = Vec::new();
        let mut cur = id;
        while cur != ROOT && cur != TOP {
            parts.push(cur);
            cur = self.parent(cur);
        }
        let mut out = Vec::new();
        for rec in parts.into_iter().rev() {
            out.extend_from_slice(self.label_bytes(rec));
        }
        out
    }

    /// Split the edge of `rec` at `offset` label characters below its top.
    /// Rejects a split at the node end; that signals a caller logic error.
    pub fn split_edge<M: MemModel>(
        &mut self,
        rec: NodeId,
        offset: u32,
        rule: SplitRule,
        k: &mut OpCounters,
        m: &mut M,
    ) -> NodeId {
        assert!(
            offset >= 1 && offset < self.label_len(rec),
            "split offset {offset} must lie strictly inside the label (len {})",
            self.label_len(rec)
        );
        k.splits += 1;
        let new_id = self.recs.len() as NodeId;
        let split_depth = self.top_depth(rec) + offset;
        match rule {
            SplitRule::TopIsNew => {
                let old = &self.recs[rec as usize];
                let top_start = old.label_start;
                let parent_cs = old.parent_cs;
                let was_leaf = old.label_end == OPEN;
                let new_cs = self.store.new_set(new_id);
                self.recs.push(Record {
                    label_start: top_start,
                    label_end: top_start + offset,
                    parent_cs,
                    link: UNSET,
                    depth_info: split_depth,
                    childset: new_cs,
                });
                let old = &mut self.recs[rec as usize];
                old.label_start = top_start + offset;
                old.parent_cs = new_cs;
                if was_leaf {
                    old.depth_info = split_depth;
                }
                let bottom_char = self.text.at(top_start + offset);
                self.store.insert(new_cs, bottom_char, rec, k, m);
                let top_char = self.text.at(top_start);
                self.store.replace(parent_cs, top_char, new_id, k, m);
            }
            SplitRule::BottomIsNew => {
                let old = &self.recs[rec as usize];
                let was_leaf = old.label_end == OPEN;
                let bottom_start = old.label_start + offset;
                let bottom_end = old.label_end;
                let bottom_depth_info = if was_leaf { split_depth } else { old.depth_info };
                let moved_cs = old.childset;
                self.recs.push(Record {
                    label_start: bottom_start,
                    label_end: bottom_end,
                    parent_cs: NONE, // patched below
                    link: UNSET,
                    depth_info: bottom_depth_info,
                    childset: moved_cs,
                });
                if moved_cs != NONE {
                    self.store.set_owner(moved_cs, new_id);
                }
                let new_cs = self.store.new_set(rec);
                let old = &mut self.recs[rec as usize];
                old.childset = new_cs;
                old.label_end = bottom_start;
                old.depth_info = split_depth;
                self.recs[new_id as usize].parent_cs = new_cs;
                let bottom_char = self.text.at(bottom_start);
                self.store.insert(new_cs, bottom_char, new_id, k, m);
            }
        }
        m.record(rec);
        m.record(new_id);
        new_id
    }

    /// Attach a new leaf under `node`, its label starting at text index
    /// `start` and ending implicitly.
    pub fn add_leaf<M: MemModel>(
        &mut self,
        node: NodeId,
        start: u32,
        k: &mut OpCounters,
        m: &mut M,
    ) -> NodeId {
        let cs = self.recs[node as usize].childset;
        assert!(cs != NONE, "cannot attach a leaf under leaf record {node}");
        let leaf = self.recs.len() as NodeId;
        let top = self.end_depth(node);
        self.recs.push(Record {
            label_start: start,
            label_end: OPEN,
            parent_cs: cs,
            link: UNSET,
            depth_info: top,
            childset: NONE,
        });
        self.store.insert(cs, self.text.at(start), leaf, k, m);
        k.leaves += 1;
        m.record(leaf);
        leaf
    }

    /// Deterministic serialization: depth-first, children ordered by first
    /// label character, leaf ends resolved to the current text length.
    /// Suffix links and record ids are excluded, so all disciplines
    /// serialize identically over the same text.
    pub fn canonical_shape(&self) -> String {
        let mut out = String::new();
        out.push_str(shape::ROOT_LINE);
        out.push('\n');
        let mut stack: Vec<(NodeId, usize)> = Vec::new();
        let mut kids = self.children(ROOT);
        kids.sort_by_key(|&(c, _)| c);
        for &(_, id) in kids.iter().rev() {
            stack.push((id, 1));
        }
        while let Some((id, depth)) = stack.pop() {
            shape::push_line(&mut out, depth, self.label_bytes(id));
            let mut kids = self.children(id);
            kids.sort_by_key(|&(c, _)| c);
            for &(_, child) in kids.iter().rev() {
                stack.push((child, depth + 1));
            }
        }
        out
    }

    /// Walk the tree from the root; true iff `pattern` labels a path.
    pub fn contains(&self, pattern: &[u8]) -> bool {
        let mut node = ROOT;
        let mut i = 0;
        while i < pattern.len() {
            let Some(child) = self
                .recs
                .get(node as usize)
                .and_then(|r| {
                    if r.childset == NONE {
                        None
                    } else {
                        self.store.find_uncounted(r.childset, pattern[i])
                    }
                })
            else {
                return false;
            };
            let label = self.label_bytes(child);
            let take = label.len().min(pattern.len() - i);
            if label[..take] != pattern[i..i + take] {
                return false;
            }
            i += take;
            node = child;
        }
        true
    }

    /// Structural verification; violations are returned, not thrown.
    pub fn check_invariants(&self) -> Vec<String> {
        let mut bad = Vec::new();
        let n = self.text.len();
        if n >= 1 && self.recs.len() > 2 * n + 1 {
            bad.push(format!(
                "record count {} exceeds 2N+1 = {}",
                self.recs.len(),
                2 * n + 1
            ));
        }
        // Top-down walk recomputing expected depths from labels alone.
        let mut stack: Vec<(NodeId, u32)> = vec![(ROOT, 0)];
        let mut seen = 2usize; // top and root
        while let Some((node, depth)) = stack.pop() {
            let kids = self.children(node);
            if node != ROOT && !self.is_leaf(node) && kids.len() < 2 {
                bad.push(format!("internal record {node} has degree {}", kids.len()));
            }
            for (c, child) in kids {
                seen += 1;
                if self.label_len(child) == 0 {
                    bad.push(format!("record {child} carries an empty label"));
                }
                if self.first_char(child) != c {
                    bad.push(format!("record {child} keyed by wrong character"));
                }
                if self.parent(child) != node {
                    bad.push(format!("record {child} parent resolves wrongly"));
                }
                let expect_end = depth + self.label_len(child);
                let stored = self.recs[child as usize].depth_info;
                let (expected, kind) = if self.is_leaf(child) {
                    (depth, "top depth")
                } else {
                    (expect_end, "end depth")
                };
                if stored != expected {
                    bad.push(format!(
                        "record {child} stores {kind} {stored}, expected {expected}"
                    ));
                }
                if !self.is_leaf(child) {
                    stack.push((child, expect_end));
                }
            }
        }
        if seen != self.recs.len() {
            bad.push(format!(
                "{} records reachable, {} allocated",
                seen,
                self.recs.len()
            ));
        }
        // Every suffix must be traceable from the root.
        let bytes = self.text.as_bytes();
        for p in 0..n {
            if !self.contains(&bytes[p..]) {
                bad.push(format!("suffix at {p} is not traceable"));
                break;
            }
        }
        // Every root-to-node string must be a substring of the text.
        for id in 2..self.recs.len() as NodeId {
            let s = self.node_string(id);
            if !is_substring(bytes, &s) {
                bad.push(format!("record {id} spells a string absent from the text"));
            }
        }
        bad
    }

    pub fn leaf_count(&self) -> usize {
        (2..self.recs.len()).filter(|&i| self.recs[i].label_end == OPEN).count()
    }

    #[cfg(test)]
    pub(crate) fn corrupt_depth_for_test(&mut self, id: NodeId, value: u32) {
        self.recs[id as usize].depth_info = value;
    }
}
