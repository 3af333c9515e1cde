//! The four online construction disciplines.
//!
//! One update loop drives them all; they differ in how the next active
//! point is located after an insertion, in which part of a split edge the
//! pre-existing record keeps, and in which records carry suffix links:
//!
//! * `notd` (node-oriented top-down): internal nodes link to nodes; after
//!   a split the parent's link is followed and the point is rescanned
//!   downward.
//! * `nobu` (node-oriented bottom-up): every record, leaves included,
//!   links to a node; the link of the record below the split point is
//!   followed and the point is reached by climbing parent references.
//!   Optional hybrids cap the climb or fall back to rescan outright.
//! * `eotd` (edge-oriented top-down): records link to edges one character
//!   past their shortest represented string; the entry branch of every
//!   rescan is avoided, at the price of one sibling lookup per update
//!   chain.
//! * `eov` (edge-oriented variable): links may point anywhere on the
//!   destination path; depth comparison picks climbing or rescanning, and
//!   a link that cost more than `k` climbs is moved `c - k` edges up.

use crate::branching::BranchStrategy;
use crate::instrument::{MemModel, NoTrace, OpCounters};
use crate::tree::{ActivePoint, NodeId, SplitRule, Tree, ROOT, TOP, UNSET};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scheme {
    Notd,
    Nobu,
    Eotd,
    Eov,
}

/// Degeneration guards for `nobu`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NobuHybrid {
    None,
    /// Abandon a climb after this many steps and rescan instead.
    MaxClimb(u32),
    /// Rescan outright when the label below the split point is longer
    /// than this.
    MaxRemaining(u32),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SchemeConfig {
    pub scheme: Scheme,
    pub nobu_hybrid: NobuHybrid,
    pub eov_k: u32,
}

pub const DEFAULT_EOV_K: u32 = 5;
pub const DEFAULT_HYBRID_LIMIT: u32 = 64;

impl SchemeConfig {
    pub fn notd() -> Self {
        SchemeConfig {
            scheme: Scheme::Notd,
            nobu_hybrid: NobuHybrid::None,
            eov_k: DEFAULT_EOV_K,
        }
    }

    pub fn nobu() -> Self {
        SchemeConfig {
            scheme: Scheme::Nobu,
            ..Self::notd()
        }
    }

    pub fn nobu_with(hybrid: NobuHybrid) -> Self {
        SchemeConfig {
            scheme: Scheme::Nobu,
            nobu_hybrid: hybrid,
            eov_k: DEFAULT_EOV_K,
        }
    }

    pub fn eotd() -> Self {
        SchemeConfig {
            scheme: Scheme::Eotd,
            ..Self::notd()
        }
    }

    pub fn eov(k: u32) -> Self {
        SchemeConfig {
            scheme: Scheme::Eov,
            nobu_hybrid: NobuHybrid::None,
            eov_k: k,
        }
    }

    pub fn label(&self) -> String {
        match self.scheme {
            Scheme::Notd => "notd".to_string(),
            Scheme::Eotd => "eotd".to_string(),
            Scheme::Eov => format!("eov(k={})", self.eov_k),
            Scheme::Nobu => match self.nobu_hybrid {
                NobuHybrid::None => "nobu".to_string(),
                NobuHybrid::MaxClimb(c) => format!("nobu(climb={c})"),
                NobuHybrid::MaxRemaining(c) => format!("nobu(rem={c})"),
            },
        }
    }
}

/// Cross-update construction state.
struct UpdateState {
    ap: ActivePoint,
    /// `notd`/`nobu`: split node awaiting its node link.
    pending_node: Option<NodeId>,
    /// `eotd`: newest bottom edge of the current update awaiting its link.
    pending_bottom: Option<NodeId>,
    /// `eotd`: newest leaf edge of the current update awaiting its link.
    pending_leaf: Option<NodeId>,
    /// `eov`: newest top edge awaiting its link.
    pending_top: Option<NodeId>,
    /// `nobu`/`eov`: newest leaf of the global suffix chain.
    last_leaf: Option<NodeId>,
}

pub struct Builder<M: MemModel> {
    tree: Tree,
    scheme: SchemeConfig,
    counters: OpCounters,
    trace: M,
    state: UpdateState,
    climb_path: Vec<NodeId>,
}

impl Builder<NoTrace> {
    pub fn new(scheme: SchemeConfig, strategy: BranchStrategy) -> Self {
        Self::with_trace(scheme, strategy, None, NoTrace)
    }
}

impl<M: MemModel> Builder<M> {
    pub fn with_trace(
        scheme: SchemeConfig,
        strategy: BranchStrategy,
        presize_for: Option<usize>,
        trace: M,
    ) -> Self {
        let mut tree = Tree::new(strategy, presize_for);
        if matches!(scheme.scheme, Scheme::Notd | Scheme::Nobu) {
            // The suffix link of the root leads to the top node.
            tree.recs[ROOT as usize].link = TOP;
        }
        Builder {
            tree,
            scheme,
            counters: OpCounters::default(),
            trace,
            state: UpdateState {
                ap: ActivePoint::Node(ROOT),
                pending_node: None,
                pending_bottom: None,
                pending_leaf: None,
                pending_top: None,
                last_leaf: None,
            },
            climb_path: Vec::new(),
        }
    }

    pub fn tree(&self) -> &Tree {
        &self.tree
    }

    pub fn counters(&self) -> &OpCounters {
        &self.counters
    }

    pub fn active_point(&self) -> ActivePoint {
        self.state.ap
    }

    /// The string the active point corresponds to; `None` at the top node.
    pub fn active_point_string(&self) -> Option<Vec<u8>> {
        match self.state.ap {
            ActivePoint::Top => None,
            ActivePoint::Node(x) => Some(self.tree.node_string(x)),
            ActivePoint::Edge(e, off) => {
                let mut s = self.tree.node_string(self.tree.parent(e));
                s.extend_from_slice(&self.tree.label_bytes(e)[..off as usize]);
                Some(s)
            }
        }
    }

    pub fn into_parts(self) -> (Tree, OpCounters, M) {
        (self.tree, self.counters, self.trace)
    }

    /// One online update: reshape the tree for the next text character.
    pub fn update(&mut self, c: u8) {
        assert!(
            self.tree.text.len() < (u32::MAX - 2) as usize,
            "texts are limited to u32 indices"
        );
        let i = self.tree.text.len() as u32;
        self.tree.text.push(c);
        loop {
            match self.state.ap {
                ActivePoint::Top => {
                    // Every character moves down from the top node to the
                    // root; counted as a branch operation.
                    self.counters.move_down += 1;
                    self.trace.record(ROOT);
                    self.state.ap = ActivePoint::Node(ROOT);
                    self.debug_check_quiescent();
                    return;
                }
                ActivePoint::Node(x) => {
                    self.counters.move_down += 1;
                    let cs = self.tree.recs[x as usize].childset;
                    let hit = self
                        .tree
                        .store
                        .lookup(cs, c, &mut self.counters, &mut self.trace);
                    if let Some(e) = hit {
                        if let Some(pl) = self.state.pending_leaf.take() {
                            // The entered edge is exactly the destination
                            // of the newest leaf edge's link.
                            self.tree.recs[pl as usize].link = e;
                        }
                        self.trace.record(e);
                        self.state.ap = self.point_at(e, 1);
                        self.debug_check_quiescent();
                        return;
                    }
                }
                ActivePoint::Edge(e, off) => {
                    self.counters.char_cmp += 1;
                    let d = self.tree.text.at(self.tree.recs[e as usize].label_start + off);
                    if d == c {
                        self.trace.record(e);
                        self.state.ap = self.point_at(e, off + 1);
                        self.debug_check_quiescent();
                        return;
                    }
                }
            }
            // The character is absent below the point: insert here.
            let (v, split_src) = match self.state.ap {
                ActivePoint::Edge(e, off) => {
                    let v = self.split_at(e, off);
                    (v, Some(e))
                }
                ActivePoint::Node(x) => (x, None),
                ActivePoint::Top => unreachable!(),
            };
            self.attach_leaf(v, i);
            if v == ROOT {
                // The shorter suffix is the empty string; next update
                // starts by dropping from the top node to the root.
                self.state.pending_leaf = None; // root leaves resolve lazily
                self.state.ap = ActivePoint::Top;
                continue;
            }
            self.relocate(v, split_src);
        }
    }

    /// Normalize a point `off` characters into the label of `e`.
    #[inline]
    fn point_at(&self, e: NodeId, off: u32) -> ActivePoint {
        if !self.tree.is_leaf(e) && off == self.tree.label_len(e) {
            ActivePoint::Node(e)
        } else {
            debug_assert!(off < self.tree.label_len(e));
            ActivePoint::Edge(e, off)
        }
    }

    fn split_at(&mut self, e: NodeId, off: u32) -> NodeId {
        let rule = if self.scheme.scheme == Scheme::Eotd {
            SplitRule::BottomIsNew
        } else {
            SplitRule::TopIsNew
        };
        let new_id = self
            .tree
            .split_edge(e, off, rule, &mut self.counters, &mut self.trace);
        let v = match rule {
            SplitRule::TopIsNew => new_id,
            SplitRule::BottomIsNew => e,
        };
        match self.scheme.scheme {
            Scheme::Notd | Scheme::Nobu => {
                if let Some(p) = self.state.pending_node.take() {
                    self.tree.recs[p as usize].link = v;
                }
                self.state.pending_node = Some(v);
            }
            Scheme::Eotd => {
                // Marks of consecutive bottom edges in one update differ by
                // exactly their first character; chain them.
                if let Some(pb) = self.state.pending_bottom.take() {
                    self.tree.recs[pb as usize].link = new_id;
                }
                self.state.pending_bottom = Some(new_id);
            }
            Scheme::Eov => {
                if let Some(pt) = self.state.pending_top.take() {
                    self.tree.recs[pt as usize].link = new_id;
                }
                self.state.pending_top = Some(new_id);
            }
        }
        v
    }

    fn attach_leaf(&mut self, v: NodeId, start: u32) {
        let leaf = self
            .tree
            .add_leaf(v, start, &mut self.counters, &mut self.trace);
        match self.scheme.scheme {
            Scheme::Nobu | Scheme::Eov => {
                // Leaves are created in suffix order; each one is the
                // link destination of its predecessor.
                if let Some(prev) = self.state.last_leaf {
                    self.tree.recs[prev as usize].link = leaf;
                }
                self.state.last_leaf = Some(leaf);
            }
            Scheme::Eotd => {
                if let Some(pl) = self.state.pending_leaf.take() {
                    self.tree.recs[pl as usize].link = leaf;
                }
                self.state.pending_leaf = Some(leaf);
            }
            Scheme::Notd => {}
        }
    }

    /// Move the active point to the string of `v` minus its first
    /// character, by the discipline's own route.
    fn relocate(&mut self, v: NodeId, split_src: Option<NodeId>) {
        let target = self.tree.end_depth(v) - 1;
        if target == 0 && self.scheme.scheme != Scheme::Notd {
            // The sought point is the root itself. For the climbing
            // schemes the follow still enters an edge (the root's empty
            // incoming edge), which costs one step like any other entry.
            if split_src.is_some() && matches!(self.scheme.scheme, Scheme::Eov | Scheme::Nobu) {
                self.counters.climb += 1;
            }
            self.land(ActivePoint::Node(ROOT));
            return;
        }
        match self.scheme.scheme {
            Scheme::Notd => match split_src {
                None => {
                    let l = self.tree.recs[v as usize].link;
                    debug_assert!(l != UNSET, "existing node {v} lacks a suffix link");
                    self.trace.record(l);
                    self.land(ActivePoint::Node(l));
                }
                Some(_) => {
                    let p = self.rescan_for(v);
                    self.land(p);
                }
            },
            Scheme::Nobu => match split_src {
                None => {
                    let l = self.tree.recs[v as usize].link;
                    debug_assert!(l != UNSET, "existing node {v} lacks a suffix link");
                    self.trace.record(l);
                    self.land(ActivePoint::Node(l));
                }
                Some(bottom) => {
                    let use_rescan = match self.scheme.nobu_hybrid {
                        NobuHybrid::MaxRemaining(limit) => self.tree.label_len(bottom) > limit,
                        _ => false,
                    };
                    if use_rescan {
                        let p = self.rescan_for(v);
                        self.land(p);
                        return;
                    }
                    let b2 = self.tree.recs[bottom as usize].link;
                    debug_assert!(b2 != UNSET, "record below split lacks a suffix link");
                    self.trace.record(b2);
                    let limit = match self.scheme.nobu_hybrid {
                        NobuHybrid::MaxClimb(c) => Some(c),
                        _ => None,
                    };
                    match self.climb_to(b2, target, limit) {
                        Some(p) => self.land(p),
                        None => {
                            // Abandoned after the cap; fall back to rescan.
                            let p = self.rescan_for(v);
                            self.land(p);
                        }
                    }
                }
            },
            Scheme::Eotd => {
                let p = self.follow_eotd(v, target);
                self.land(p);
            }
            Scheme::Eov => {
                let src = split_src.unwrap_or(v);
                let p = self.follow_eov(src, v, target);
                self.land(p);
            }
        }
    }

    /// Establish the relocated active point and resolve whatever pending
    /// link the landing determines.
    fn land(&mut self, p: ActivePoint) {
        match p {
            ActivePoint::Node(x) => {
                match self.scheme.scheme {
                    Scheme::Notd | Scheme::Nobu => {
                        if let Some(pn) = self.state.pending_node.take() {
                            self.tree.recs[pn as usize].link = x;
                        }
                    }
                    Scheme::Eotd => {
                        if let Some(pb) = self.state.pending_bottom.take() {
                            // Terminal sibling lookup: branch at the
                            // landing node for the bottom edge's own
                            // first character.
                            self.counters.sl += 1;
                            let c = self.tree.first_char(pb);
                            let cs = self.tree.recs[x as usize].childset;
                            let dest = self
                                .tree
                                .store
                                .lookup(cs, c, &mut self.counters, &mut self.trace)
                                .expect("sibling lookup found no destination edge");
                            self.tree.recs[pb as usize].link = dest;
                        }
                    }
                    Scheme::Eov => {
                        if let Some(pt) = self.state.pending_top.take() {
                            self.tree.recs[pt as usize].link = x;
                        }
                    }
                }
            }
            ActivePoint::Edge(f, _) => {
                if self.scheme.scheme == Scheme::Eov {
                    if let Some(pt) = self.state.pending_top.take() {
                        // Mid-edge destination: link to the containing edge.
                        self.tree.recs[pt as usize].link = f;
                    }
                }
            }
            ActivePoint::Top => unreachable!(),
        }
        self.state.ap = p;
    }

    /// The `notd` route: follow the parent's node link, then rescan the
    /// split node's own label downward.
    fn rescan_for(&mut self, v: NodeId) -> ActivePoint {
        let u = self.tree.parent(v);
        let u2 = self.tree.recs[u as usize].link;
        debug_assert!(u2 != UNSET, "parent {u} lacks a suffix link");
        self.trace.record(u2);
        let start = self.tree.recs[v as usize].label_start;
        let len = self.tree.label_len(v);
        let mut node = u2;
        let mut pos = start;
        let mut rem = len;
        if node == TOP {
            // The hop from the top node to the root consumes one character.
            self.counters.rs += 1;
            self.counters.rescan_moves += 1;
            self.trace.record(ROOT);
            node = ROOT;
            pos += 1;
            rem -= 1;
            if rem == 0 {
                return ActivePoint::Node(ROOT);
            }
        }
        self.descend(node, pos, rem)
    }

    /// Rescan downward from a node by comparing label lengths only. Each
    /// branch selection counts toward `rs`; selections that consume their
    /// whole edge count toward `rescan_moves`.
    fn descend(&mut self, node: NodeId, pos: u32, rem: u32) -> ActivePoint {
        debug_assert!(rem > 0);
        let mut node = node;
        let mut pos = pos;
        let mut rem = rem;
        loop {
            self.counters.rs += 1;
            let c = self.tree.text.at(pos);
            let cs = self.tree.recs[node as usize].childset;
            let child = self
                .tree
                .store
                .lookup(cs, c, &mut self.counters, &mut self.trace)
                .expect("rescan found no edge to descend");
            self.trace.record(child);
            let el = self.tree.label_len(child);
            if rem < el {
                return ActivePoint::Edge(child, rem);
            }
            self.counters.rescan_moves += 1;
            if rem == el {
                debug_assert!(!self.tree.is_leaf(child));
                return ActivePoint::Node(child);
            }
            rem -= el;
            pos += el;
            node = child;
        }
    }

    /// Climb parent references from `start` until the edge containing
    /// string depth `target` is reached. `None` when a step cap applies.
    /// Counted climbs are upward edge traversals: a final mid-edge landing
    /// charges its partially traversed edge; a landing exactly on a node
    /// does not.
    fn climb_to(&mut self, start: NodeId, target: u32, limit: Option<u32>) -> Option<ActivePoint> {
        let mut x = start;
        let mut steps = 0u32;
        loop {
            let xt = self.tree.top_depth(x);
            if target > xt {
                let p = self.point_at_depth(x, target - xt);
                if matches!(p, ActivePoint::Edge(..)) {
                    self.counters.climb += 1;
                }
                return Some(p);
            }
            if limit == Some(steps) {
                return None;
            }
            x = self.tree.parent(x);
            self.counters.climb += 1;
            steps += 1;
            self.trace.record(x);
        }
    }

    #[inline]
    fn point_at_depth(&self, e: NodeId, off: u32) -> ActivePoint {
        if off == self.tree.label_len(e) {
            debug_assert!(!self.tree.is_leaf(e));
            ActivePoint::Node(e)
        } else {
            debug_assert!(off < self.tree.label_len(e));
            ActivePoint::Edge(e, off)
        }
    }

    /// The `eotd` route: the link of the record at the point (which kept
    /// its identity through the split) provides the entry edge directly;
    /// only further downward selections cost branch operations.
    fn follow_eotd(&mut self, e: NodeId, target: u32) -> ActivePoint {
        let mut f = self.tree.recs[e as usize].link;
        if f == UNSET {
            // A root edge whose link was never needed before: resolve it
            // now, keyed by the second label character, and memoize it.
            // This happens at most once per root edge and is not part of
            // the branch-operation accounting.
            debug_assert_eq!(self.tree.parent(e), ROOT);
            let d = self.tree.text.at(self.tree.recs[e as usize].label_start + 1);
            let root_cs = self.tree.recs[ROOT as usize].childset;
            f = self
                .tree
                .store
                .lookup(root_cs, d, &mut self.counters, &mut self.trace)
                .expect("root has no edge for the mark's tail");
            self.tree.recs[e as usize].link = f;
        }
        self.trace.record(f);
        let entry_depth = self.tree.top_depth(e).max(1);
        let off = entry_depth - self.tree.top_depth(f);
        debug_assert!(off >= 1 && off <= self.tree.label_len(f));
        let rem = target - entry_depth;
        let space = self.tree.label_len(f) - off;
        if rem < space {
            return ActivePoint::Edge(f, off + rem);
        }
        if rem == space {
            return self.point_at_depth(f, off + rem);
        }
        debug_assert!(!self.tree.is_leaf(f));
        // Past the entry edge: rescan the tail of the sought string.
        let astart = self.tree.recs[e as usize].label_end - target;
        let fd = self.tree.end_depth(f);
        self.descend(f, astart + fd, target - fd)
    }

    /// The `eov` route: compare the link target's depth span with the
    /// sought depth, then climb or rescan as required; relocate the link
    /// upward when a climb overshoots the `k` budget.
    fn follow_eov(&mut self, src: NodeId, v: NodeId, target: u32) -> ActivePoint {
        let r = self.tree.recs[src as usize].link;
        debug_assert!(r != UNSET, "edge {src} lacks a suffix link");
        self.trace.record(r);
        let rend = self.tree.end_depth(r);
        if target > rend {
            debug_assert!(!self.tree.is_leaf(r));
            let astart = self.tree.recs[v as usize].label_end - target;
            return self.descend(r, astart + rend, target - rend);
        }
        let rtop = self.tree.top_depth(r);
        if target > rtop {
            // The point lies within the entered edge itself; the entry
            // still counts as one climb step.
            self.counters.climb += 1;
            return self.point_at_depth(r, target - rtop);
        }
        // The point lies above the entered edge: climb, remembering the
        // path so the link can be moved up afterwards. The counter tallies
        // parent steps; the relocation rule instead speaks of edges on the
        // destination path, which includes the entered edge, so its c is
        // one more than the steps taken.
        self.climb_path.clear();
        self.climb_path.push(r);
        let mut x = r;
        loop {
            x = self.tree.parent(x);
            self.counters.climb += 1;
            self.trace.record(x);
            self.climb_path.push(x);
            let xt = self.tree.top_depth(x);
            if target > xt {
                break;
            }
        }
        let path_edges = self.climb_path.len() as u32;
        if path_edges > self.scheme.eov_k {
            let up = (path_edges - self.scheme.eov_k).min(path_edges - 1);
            let moved = self.climb_path[up as usize];
            self.tree.recs[src as usize].link = moved;
        }
        self.point_at_depth(x, target - self.tree.top_depth(x))
    }

    #[cfg(debug_assertions)]
    fn debug_check_quiescent(&self) {
        debug_assert!(self.state.pending_node.is_none());
        debug_assert!(self.state.pending_bottom.is_none());
        debug_assert!(self.state.pending_top.is_none());
        // pending_leaf may only survive an update as a lazily linked root
        // leaf, which is cleared at the top transition.
        debug_assert!(self.state.pending_leaf.is_none());
    }

    #[cfg(not(debug_assertions))]
    fn debug_check_quiescent(&self) {}
}

/// Build a suffix tree over `text`, uninstrumented beyond the counters.
pub fn build(text: &[u8], scheme: SchemeConfig, strategy: BranchStrategy) -> (Tree, OpCounters) {
    let (tree, counters, _) = build_traced(text, scheme, strategy, NoTrace);
    (tree, counters)
}

/// Build with an explicit memory-trace sink.
pub fn build_traced<M: MemModel>(
    text: &[u8],
    scheme: SchemeConfig,
    strategy: BranchStrategy,
    trace: M,
) -> (Tree, OpCounters, M) {
    let mut b = Builder::with_trace(scheme, strategy, Some(text.len()), trace);
    for &c in text {
        b.update(c);
    }
    b.into_parts()
}

/// Post-build well-formedness of node-oriented suffix links.
pub fn verify_node_links(tree: &Tree, include_leaves: bool) -> Vec<String> {
    let mut bad = Vec::new();
    let mut unset_leaves = 0;
    for id in 2..tree.record_count() as NodeId {
        let leaf = tree.is_leaf(id);
        if leaf && !include_leaves {
            continue;
        }
        let Some(l) = tree.suffix_link(id) else {
            if leaf {
                unset_leaves += 1; // only the newest leaf may be pending
            } else {
                bad.push(format!("internal record {id} lacks a suffix link"));
            }
            continue;
        };
        let s = tree.node_string(id);
        let ls = tree.node_string(l);
        if ls != s[1..] {
            bad.push(format!("link of record {id} lands on the wrong node"));
        }
    }
    if unset_leaves > 1 {
        bad.push(format!("{unset_leaves} leaves lack suffix links"));
    }
    bad
}

/// Post-build well-formedness of `eotd` edge links, checked against a
/// brute-force mark computation. Root edges may stay unset (they resolve
/// lazily); root edges one character long have no defined destination.
pub fn verify_eotd_links(tree: &Tree) -> Vec<String> {
    let mut bad = Vec::new();
    for id in 2..tree.record_count() as NodeId {
        let parent = tree.parent(id);
        let is_root_edge = parent == ROOT;
        let link = tree.suffix_link(id);
        if is_root_edge && tree.label_len(id) == 1 {
            continue;
        }
        let expected = if is_root_edge {
            // The mark's own tail is empty; the destination is keyed by
            // the second label character instead.
            let d = tree.label_bytes(id)[1];
            tree.children(ROOT)
                .into_iter()
                .find(|&(c, _)| c == d)
                .map(|(_, e)| e)
        } else {
            let mut mark = tree.node_string(parent);
            mark.push(tree.first_char(id));
            locate_edge_at(tree, &mark[1..])
        };
        match (link, expected) {
            (None, _) if is_root_edge => {}
            (None, _) => bad.push(format!("edge {id} lacks a link")),
            (Some(l), Some(e)) if l == e => {}
            (Some(_), _) => bad.push(format!("edge {id} links to the wrong edge")),
        }
    }
    bad
}

/// Post-build sanity of `eov` links: every link target edge must intersect
/// the root path of the node-link image of the edge's bottom end. A link
/// may sit above the image (after relocation) or extend below it (when it
/// was resolved to a mid-edge containing edge).
pub fn verify_eov_links(tree: &Tree) -> Vec<String> {
    let mut bad = Vec::new();
    let mut unset_leaves = 0;
    for id in 2..tree.record_count() as NodeId {
        let Some(l) = tree.suffix_link(id) else {
            if tree.is_leaf(id) {
                unset_leaves += 1;
            } else {
                bad.push(format!("edge {id} lacks a link"));
            }
            continue;
        };
        let s = tree.node_string(id);
        let ls = tree.node_string(l);
        let on_path = ls.len() < s.len() && s[1..].starts_with(&ls[..])
            || ls.starts_with(&s[1..]);
        if !on_path {
            bad.push(format!("link of edge {id} is off the destination path"));
        }
    }
    if unset_leaves > 1 {
        bad.push(format!("{unset_leaves} leaves lack links"));
    }
    bad
}

/// Find the edge containing the point spelled by `s`, provided the point
/// sits exactly one character into its label.
fn locate_edge_at(tree: &Tree, s: &[u8]) -> Option<NodeId> {
    let mut node = ROOT;
    let mut i = 0;
    loop {
        let (_, child) = tree
            .children(node)
            .into_iter()
            .find(|&(c, _)| c == s[i])?;
        let label = tree.label_bytes(child);
        let take = label.len().min(s.len() - i);
        if label[..take] != s[i..i + take] {
            return None;
        }
        i += take;
        if i == s.len() {
            // The point must be the edge's mark.
            return if take == 1 { Some(child) } else { None };
        }
        node = child;
    }
}

pub fn all_schemes() -> [SchemeConfig; 4] {
    [
        SchemeConfig::notd(),
        SchemeConfig::nobu(),
        SchemeConfig::eotd(),
        SchemeConfig::eov(DEFAULT_EOV_K),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::branching::BranchKind;
    use crate::oracle;

    fn shapes_match_oracle(text: &[u8]) {
        let want = oracle::naive_build(text).unwrap().canonical_shape();
        for scheme in all_schemes() {
            let (tree, _) = build(text, scheme, BranchStrategy::list_front());
            assert_eq!(
                tree.canonical_shape(),
                want,
                "scheme {} over {:?}",
                scheme.label(),
                String::from_utf8_lossy(text)
            );
            assert_eq!(tree.check_invariants(), Vec::<String>::new());
        }
    }

    #[test]
    fn single_character_reaches_the_node_bound() {
        let (tree, _) = build(b"a", SchemeConfig::notd(), BranchStrategy::list_front());
        assert_eq!(tree.record_count(), 3); // equality at N = 1
    }

    #[test]
    fn run_of_equal_characters_never_splits() {
        let (tree, k) = build(b"aaaa", SchemeConfig::notd(), BranchStrategy::list_front());
        assert_eq!(k.splits, 0);
        assert_eq!(k.leaves, 1);
        assert_eq!(k.rs, 0);
        assert_eq!(k.move_down, 3);
        assert_eq!(k.char_cmp, 2);
        assert_eq!(tree.record_count(), 3);
    }

    #[test]
    fn alternating_text_only_moves_the_point() {
        let mut b = Builder::new(SchemeConfig::notd(), BranchStrategy::list_front());
        for &c in b"abab" {
            b.update(c);
        }
        assert_eq!(b.active_point_string().unwrap(), b"ab");
        assert_eq!(b.counters().leaves, 2);
        assert_eq!(b.counters().splits, 0);
        assert_eq!(b.counters().move_down, 5);
        assert_eq!(b.counters().char_cmp, 1);
    }

    #[test]
    fn active_point_after_three_of_abab_is_a() {
        let mut b = Builder::new(SchemeConfig::notd(), BranchStrategy::list_front());
        for &c in b"aba" {
            b.update(c);
        }
        assert_eq!(b.active_point_string().unwrap(), b"a");
    }

    #[test]
    fn aabaa_splits_once_with_a_single_rescan_hop() {
        let (tree, k) = build(b"aabaa", SchemeConfig::notd(), BranchStrategy::list_front());
        assert_eq!(k.splits, 1);
        assert_eq!(k.rs, 1);
        assert_eq!(k.rescan_moves, 1);
        assert_eq!(k.move_down, 7);
        assert_eq!(k.char_cmp, 1);
        assert_eq!(k.leaves, 3);
        assert_eq!(k.replaces, 1);
        assert_eq!(tree.record_count(), 6);
        // The split already happened while "aab" was being absorbed.
        let (_, k3) = build(b"aab", SchemeConfig::notd(), BranchStrategy::list_front());
        assert_eq!(k3.splits, 1);
    }

    #[test]
    fn abcabda_matches_the_hand_count() {
        let (tree, k) = build(b"abcabda", SchemeConfig::notd(), BranchStrategy::list_front());
        assert_eq!(k.splits, 2);
        assert_eq!(k.leaves, 6);
        assert_eq!(tree.record_count(), 10);
        shapes_match_oracle(b"abcabda");
    }

    #[test]
    fn eotd_replaces_nothing_and_links_ab_to_b() {
        let (tree, k) = build(b"abcabda", SchemeConfig::eotd(), BranchStrategy::list_front());
        assert_eq!(k.replaces, 0);
        let a_edge = tree
            .children(crate::tree::ROOT)
            .into_iter()
            .find(|&(c, _)| c == b'a')
            .unwrap()
            .1;
        let b_edge = tree
            .children(crate::tree::ROOT)
            .into_iter()
            .find(|&(c, _)| c == b'b')
            .unwrap()
            .1;
        assert_eq!(tree.label_bytes(a_edge), b"ab");
        assert_eq!(tree.suffix_link(a_edge), Some(b_edge));
        assert_eq!(verify_eotd_links(&tree), Vec::<String>::new());
    }

    #[test]
    fn replace_count_is_one_per_split_except_eotd() {
        for scheme in all_schemes() {
            let (_, k) = build(b"mississippi", scheme, BranchStrategy::list_front());
            let want = if scheme.scheme == Scheme::Eotd { 0 } else { k.splits };
            assert_eq!(k.replaces, want, "scheme {}", scheme.label());
        }
    }

    #[test]
    fn schemes_agree_with_the_oracle_on_small_texts() {
        for text in [
            &b"aabaa"[..],
            b"abcabda",
            b"mississippi",
            b"aaaa",
            b"abab",
            b"banana",
            b"abcabxabcd",
            b"aabbaabbaa",
        ] {
            shapes_match_oracle(text);
        }
    }

    #[test]
    fn scheme_independent_counters_agree() {
        // Branch operations outside rescan and mid-edge character
        // comparisons depend only on the text, never on the discipline.
        for text in [&b"mississippi"[..], b"abcabxabcd", b"aabbaabbaa"] {
            let runs: Vec<OpCounters> = all_schemes()
                .iter()
                .map(|&s| build(text, s, BranchStrategy::list_front()).1)
                .collect();
            for k in &runs[1..] {
                assert_eq!(k.move_down, runs[0].move_down);
                assert_eq!(k.char_cmp, runs[0].char_cmp);
                assert_eq!(k.splits, runs[0].splits);
                assert_eq!(k.leaves, runs[0].leaves);
            }
        }
    }

    #[test]
    fn online_prefixes_track_the_oracle() {
        let text = b"abaababaabaab";
        for scheme in all_schemes() {
            let mut b = Builder::new(scheme, BranchStrategy::list_front());
            for (i, &c) in text.iter().enumerate() {
                b.update(c);
                let want = oracle::naive_build(&text[..=i]).unwrap().canonical_shape();
                assert_eq!(b.tree().canonical_shape(), want, "prefix {}", i + 1);
            }
        }
    }

    #[test]
    fn node_links_are_well_formed() {
        for text in [&b"mississippi"[..], b"abcabxabcd", b"aabbaabbaa"] {
            let (t, _) = build(text, SchemeConfig::notd(), BranchStrategy::list_front());
            assert_eq!(verify_node_links(&t, false), Vec::<String>::new());
            let (t, _) = build(text, SchemeConfig::nobu(), BranchStrategy::list_front());
            assert_eq!(verify_node_links(&t, true), Vec::<String>::new());
            let (t, _) = build(text, SchemeConfig::eov(5), BranchStrategy::list_front());
            assert_eq!(verify_eov_links(&t), Vec::<String>::new());
            let (t, _) = build(text, SchemeConfig::eotd(), BranchStrategy::list_front());
            assert_eq!(verify_eotd_links(&t), Vec::<String>::new());
        }
    }

    #[test]
    fn nobu_hybrids_build_the_same_tree() {
        let text = b"abaababaabaababbabab";
        let want = oracle::naive_build(text).unwrap().canonical_shape();
        for hybrid in [
            NobuHybrid::MaxClimb(0),
            NobuHybrid::MaxClimb(1),
            NobuHybrid::MaxClimb(3),
            NobuHybrid::MaxRemaining(0),
            NobuHybrid::MaxRemaining(2),
        ] {
            let (t, _) = build(
                text,
                SchemeConfig::nobu_with(hybrid),
                BranchStrategy::list_front(),
            );
            assert_eq!(t.canonical_shape(), want, "hybrid {hybrid:?}");
        }
    }

    #[test]
    fn strategies_and_inlining_do_not_change_structure_counters() {
        let text = b"abaababaabaababbabab";
        let base = build(text, SchemeConfig::eotd(), BranchStrategy::list_front()).1;
        for kind in [BranchKind::ListFront, BranchKind::ListBack, BranchKind::Hash] {
            for inline in [false, true] {
                let (t, k) = build(
                    text,
                    SchemeConfig::eotd(),
                    BranchStrategy::new(kind, inline),
                );
                assert_eq!(k.rs, base.rs);
                assert_eq!(k.sl, base.sl);
                assert_eq!(k.move_down, base.move_down);
                assert_eq!(
                    t.canonical_shape(),
                    build(text, SchemeConfig::eotd(), BranchStrategy::list_front())
                        .0
                        .canonical_shape()
                );
            }
        }
    }
}
