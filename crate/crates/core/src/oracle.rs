//! Independent brute-force ground truth.
//!
//! A deliberately quadratic suffix tree builder that shares nothing with
//! the online construction except the canonical serialization format, plus
//! naive substring membership. Used by tests and by the CLI `--verify`
//! mode to cross-check every discipline.

use crate::shape;
use std::collections::BTreeMap;

/// Inputs longer than this are refused; the oracle is intentionally slow.
pub const ORACLE_BOUND: usize = 10_000;

#[derive(Debug, PartialEq, Eq)]
pub struct BoundExceeded {
    pub len: usize,
}

impl std::fmt::Display for BoundExceeded {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "oracle input of {} bytes exceeds bound {}",
            self.len, ORACLE_BOUND
        )
    }
}

impl std::error::Error for BoundExceeded {}

#[derive(Default)]
struct NaiveNode {
    children: BTreeMap<u8, NaiveEdge>,
}

struct NaiveEdge {
    label: Vec<u8>,
    below: NaiveNode,
}

/// Path-compressed trie over all suffixes of a text.
pub struct NaiveTree {
    root: NaiveNode,
}

/// Build the oracle tree by inserting every suffix into a compressed trie.
pub fn naive_build(text: &[u8]) -> Result<NaiveTree, BoundExceeded> {
    if text.len() > ORACLE_BOUND {
        return Err(BoundExceeded { len: text.len() });
    }
    let mut root = NaiveNode::default();
    for start in 0..text.len() {
        insert_suffix(&mut root, &text[start..]);
    }
    Ok(NaiveTree { root })
}

fn insert_suffix(root: &mut NaiveNode, suffix: &[u8]) {
    let mut node = root;
    let mut rest = suffix;
    loop {
        if rest.is_empty() {
            return; // the suffix ends exactly at a node
        }
        let c = rest[0];
        if let std::collections::btree_map::Entry::Vacant(e) = node.children.entry(c) {
            e.insert(NaiveEdge {
                    label: rest.to_vec(),
                    below: NaiveNode::default(),
                });
            return;
        }
        let edge = node.children.get_mut(&c).unwrap();
        let common = edge
            .label
            .iter()
            .zip(rest.iter())
            .take_while(|(a, b)| a == b)
            .count();
        if common == edge.label.len() {
            node = &mut node.children.get_mut(&c).unwrap().below;
            rest = &rest[common..];
            continue;
        }
        if common == rest.len() {
            return; // suffix ends inside the edge label; no node is needed
        }
        // Diverges inside the edge: split it and hang a new leaf.
        let tail = edge.label.split_off(common);
        let old_below = std::mem::take(&mut edge.below);
        let mut mid = NaiveNode::default();
        mid.children.insert(
            tail[0],
            NaiveEdge {
                label: tail,
                below: old_below,
            },
        );
        mid.children.insert(
            rest[common],
            NaiveEdge {
                label: rest[common..].to_vec(),
                below: NaiveNode::default(),
            },
        );
        edge.below = mid;
        return;
    }
}

impl NaiveTree {
    /// Canonical serialization, identical in format to `Tree::canonical_shape`.
    pub fn canonical_shape(&self) -> String {
        let mut out = String::new();
        out.push_str(shape::ROOT_LINE);
        out.push('\n');
        fn walk(node: &NaiveNode, depth: usize, out: &mut String) {
            for edge in node.children.values() {
                shape::push_line(out, depth, &edge.label);
                walk(&edge.below, depth + 1, out);
            }
        }
        walk(&self.root, 1, &mut out);
        out
    }

    pub fn leaf_count(&self) -> usize {
        fn walk(node: &NaiveNode) -> usize {
            if node.children.is_empty() {
                return 1;
            }
            node.children.values().map(|e| walk(&e.below)).sum()
        }
        match self.root.children.is_empty() {
            true => 0,
            false => walk(&self.root),
        }
    }

    /// Full strings of all internal (branching, non-root) nodes; test support.
    pub fn internal_strings(&self) -> Vec<Vec<u8>> {
        let mut acc = Vec::new();
        fn walk(node: &NaiveNode, prefix: &mut Vec<u8>, acc: &mut Vec<Vec<u8>>) {
            for edge in node.children.values() {
                prefix.extend_from_slice(&edge.label);
                if !edge.below.children.is_empty() {
                    acc.push(prefix.clone());
                }
                walk(&edge.below, prefix, acc);
                prefix.truncate(prefix.len() - edge.label.len());
            }
        }
        walk(&self.root, &mut Vec::new(), &mut acc);
        acc.sort();
        acc
    }
}

/// Naive scan for `pattern` inside `text`.
pub fn is_substring(text: &[u8], pattern: &[u8]) -> bool {
    if pattern.is_empty() {
        return true;
    }
    if pattern.len() > text.len() {
        return false;
    }
    text.windows(pattern.len()).any(|w| w == pattern)
}

/// Exact equality of two canonical serializations.
pub fn equivalent(tree_shape: &str, naive_shape: &str) -> bool {
    tree_shape == naive_shape
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_text_is_root_only() {
        let t = naive_build(b"").unwrap();
        assert_eq!(t.canonical_shape(), "(root)\n");
        assert_eq!(t.leaf_count(), 0);
    }

    #[test]
    fn abcabda_has_six_leaves_and_two_internal_nodes() {
        let t = naive_build(b"abcabda").unwrap();
        assert_eq!(t.leaf_count(), 6);
        assert_eq!(
            t.internal_strings(),
            vec![b"ab".to_vec(), b"b".to_vec()]
        );
    }

    #[test]
    fn all_nested_suffixes_collapse_to_one_leaf() {
        let t = naive_build(b"aaaa").unwrap();
        assert_eq!(t.leaf_count(), 1);
        assert_eq!(t.canonical_shape(), "(root)\n  aaaa\n");
    }

    #[test]
    fn aa_shape_has_single_edge() {
        let t = naive_build(b"aa").unwrap();
        assert_eq!(t.canonical_shape(), "(root)\n  aa\n");
    }

    #[test]
    fn substring_scan() {
        assert!(is_substring(b"abcabda", b"cab"));
        assert!(is_substring(b"abcabda", b""));
        assert!(!is_substring(b"abcabda", b"abdax"));
    }

    #[test]
    fn equivalence_is_string_equality() {
        let a = naive_build(b"ab").unwrap().canonical_shape();
        let b = naive_build(b"ab").unwrap().canonical_shape();
        let c = naive_build(b"abc").unwrap().canonical_shape();
        assert!(equivalent(&a, &b));
        assert!(!equivalent(&a, &c));
    }

    #[test]
    fn refuses_oversized_input() {
        let big = vec![b'a'; ORACLE_BOUND + 1];
        assert!(naive_build(&big).is_err());
    }
}
