//! Property tests against the brute-force oracle and across structures.

use proptest::prelude::*;
use suffix_lab::branching::{BranchKind, BranchStrategy, ChildTable};
use suffix_lab::instrument::{NoTrace, OpCounters};
use suffix_lab::oracle;
use suffix_lab::schemes::{
    self, build, Builder, NobuHybrid, SchemeConfig,
};
use suffix_lab::workloads;

fn text_strategy() -> impl Strategy<Value = Vec<u8>> {
    // Lengths 1..=64 over alphabets of 1..=4 symbols.
    (1usize..=4).prop_flat_map(|sigma| {
        proptest::collection::vec(0u8..sigma as u8, 1..=64)
    })
}

fn all_strategies() -> Vec<BranchStrategy> {
    let mut v = Vec::new();
    for kind in [BranchKind::ListFront, BranchKind::ListBack, BranchKind::Hash] {
        for inline in [false, true] {
            v.push(BranchStrategy::new(kind, inline));
        }
    }
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn every_scheme_and_structure_matches_the_oracle(text in text_strategy()) {
        let want = oracle::naive_build(&text).unwrap().canonical_shape();
        for scheme in schemes::all_schemes() {
            for strategy in all_strategies() {
                let (tree, _) = build(&text, scheme, strategy);
                prop_assert_eq!(tree.canonical_shape(), want.clone());
                prop_assert!(tree.check_invariants().is_empty());
                prop_assert!(tree.record_count() <= 2 * text.len() + 1);
            }
        }
    }

    #[test]
    fn prefixes_stay_equivalent_online(text in text_strategy()) {
        for scheme in schemes::all_schemes() {
            let mut b = Builder::new(scheme, BranchStrategy::list_front());
            for (i, &c) in text.iter().enumerate() {
                b.update(c);
                let want = oracle::naive_build(&text[..=i]).unwrap().canonical_shape();
                prop_assert_eq!(b.tree().canonical_shape(), want);
            }
        }
    }

    #[test]
    fn navigation_agrees_with_substring_scan(
        text in text_strategy(),
        pattern in proptest::collection::vec(0u8..4, 0..=12),
    ) {
        let (tree, _) = build(&text, SchemeConfig::notd(), BranchStrategy::hash());
        prop_assert_eq!(
            tree.contains(&pattern),
            oracle::is_substring(&text, &pattern)
        );
    }

    #[test]
    fn suffix_links_are_well_formed(text in text_strategy()) {
        let (t, _) = build(&text, SchemeConfig::notd(), BranchStrategy::list_front());
        prop_assert!(schemes::verify_node_links(&t, false).is_empty());
        let (t, _) = build(&text, SchemeConfig::nobu(), BranchStrategy::list_front());
        prop_assert!(schemes::verify_node_links(&t, true).is_empty());
        let (t, _) = build(&text, SchemeConfig::eotd(), BranchStrategy::list_front());
        prop_assert!(schemes::verify_eotd_links(&t).is_empty());
        let (t, _) = build(&text, SchemeConfig::eov(5), BranchStrategy::list_front());
        prop_assert!(schemes::verify_eov_links(&t).is_empty());
    }

    #[test]
    fn hybrids_and_k_values_build_the_same_tree(text in text_strategy(), k in 0u32..8) {
        let want = oracle::naive_build(&text).unwrap().canonical_shape();
        let (t, _) = build(&text, SchemeConfig::eov(k), BranchStrategy::list_front());
        prop_assert_eq!(t.canonical_shape(), want.clone());
        for hybrid in [NobuHybrid::MaxClimb(k), NobuHybrid::MaxRemaining(k)] {
            let (t, _) = build(
                &text,
                SchemeConfig::nobu_with(hybrid),
                BranchStrategy::list_front(),
            );
            prop_assert_eq!(t.canonical_shape(), want.clone());
        }
    }

    #[test]
    fn branch_structures_bind_like_a_map(
        ops in proptest::collection::vec((0u8..16, 0u32..1000), 1..=40),
    ) {
        // Distinct first characters per set; replace rebinds the key. All
        // structures must answer lookups identically.
        let mut reference: Vec<(u8, u32)> = Vec::new();
        let mut tables: Vec<ChildTable> = all_strategies()
            .into_iter()
            .map(|s| ChildTable::new(s, Some(64)))
            .collect();
        let sets: Vec<u32> = tables.iter_mut().map(|t| t.new_set(0)).collect();
        let mut k = OpCounters::default();
        for (c, val) in ops {
            let existing = reference.iter_mut().find(|(rc, _)| *rc == c);
            match existing {
                Some((_, slot)) => {
                    *slot = val;
                    for (t, &cs) in tables.iter_mut().zip(&sets) {
                        t.replace(cs, c, val, &mut k, &mut NoTrace);
                    }
                }
                None => {
                    reference.push((c, val));
                    for (t, &cs) in tables.iter_mut().zip(&sets) {
                        t.insert(cs, c, val, &mut k, &mut NoTrace);
                    }
                }
            }
        }
        for c in 0u8..17 {
            let want = reference.iter().find(|(rc, _)| *rc == c).map(|&(_, v)| v);
            for (t, &cs) in tables.iter().zip(&sets) {
                prop_assert_eq!(t.lookup(cs, c, &mut k, &mut NoTrace), want);
            }
        }
    }

    #[test]
    fn counters_are_deterministic(text in text_strategy()) {
        for scheme in schemes::all_schemes() {
            let (_, a) = build(&text, scheme, BranchStrategy::hash());
            let (_, b) = build(&text, scheme, BranchStrategy::hash());
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn leaves_count_the_unique_suffixes(text in text_strategy()) {
        let unique_suffixes = (0..text.len())
            .filter(|&p| {
                let s = &text[p..];
                text.windows(s.len()).filter(|w| *w == s).count() == 1
            })
            .count();
        let (tree, _) = build(&text, SchemeConfig::notd(), BranchStrategy::list_front());
        prop_assert_eq!(tree.leaf_count(), unique_suffixes);
    }

    #[test]
    fn top_down_rescan_moves_stay_linear(text in text_strategy()) {
        for scheme in [SchemeConfig::notd(), SchemeConfig::eotd()] {
            let (_, k) = build(&text, scheme, BranchStrategy::list_front());
            prop_assert!(k.rescan_moves <= text.len() as u64);
        }
    }
}

#[test]
fn cross_scheme_shapes_agree_on_a_fixed_long_string() {
    let text = workloads::random_string(500, 3, 42);
    let (a, _) = build(&text, SchemeConfig::notd(), BranchStrategy::list_front());
    let (b, _) = build(&text, SchemeConfig::eotd(), BranchStrategy::list_front());
    assert_eq!(a.canonical_shape(), b.canonical_shape());
}

#[test]
fn adversary_tree_is_structurally_sound() {
    let text = workloads::adversary(8);
    for scheme in schemes::all_schemes() {
        let (tree, _) = build(&text, scheme, BranchStrategy::list_back());
        assert_eq!(tree.check_invariants(), Vec::<String>::new());
    }
}

#[test]
fn presized_hash_load_stays_bounded() {
    // With inlining only the third and later children reach the table, so
    // the load factor stays within a third; without it, within two thirds.
    for (inline, bound) in [(true, 3.0f64), (false, 1.5f64)] {
        let text = workloads::random_string(20_000, 8, 9);
        let strategy = BranchStrategy::new(BranchKind::Hash, inline);
        let (tree, _) = build(&text, SchemeConfig::notd(), strategy);
        let (len, cap) = (tree.store().hash_len(), tree.store().hash_capacity());
        assert_eq!(cap, 3 * text.len());
        assert!(
            (len as f64) * bound <= cap as f64,
            "inline={inline}: {len} entries in {cap} slots"
        );
    }
}

#[test]
fn nobu_climb_cap_tames_the_adversary() {
    let text = workloads::adversary(48);
    let (_, pure) = build(&text, SchemeConfig::nobu(), BranchStrategy::list_front());
    let (_, capped) = build(
        &text,
        SchemeConfig::nobu_with(NobuHybrid::MaxClimb(5)),
        BranchStrategy::list_front(),
    );
    let (_, remaining) = build(
        &text,
        SchemeConfig::nobu_with(NobuHybrid::MaxRemaining(5)),
        BranchStrategy::list_front(),
    );
    assert!(capped.climb < pure.climb / 10);
    assert!(remaining.climb < pure.climb / 10);
    // Abandoned work surfaces as rescans instead.
    assert!(capped.rs > 0);
    assert!(remaining.rs > 0);
}

#[test]
fn eov_relocation_reduces_repeat_climbing() {
    let text = workloads::adversary(64);
    let (_, tight) = build(&text, SchemeConfig::eov(1), BranchStrategy::list_front());
    let (_, loose) = build(&text, SchemeConfig::eov(4000), BranchStrategy::list_front());
    // With a huge k the links never move and every block re-climbs the
    // whole chain; aggressive relocation avoids that.
    assert!(tight.climb < loose.climb);
}

#[test]
fn lru_misses_cover_all_distinct_lines() {
    use std::collections::HashSet;
    use suffix_lab::instrument::{CacheConfig, CacheTrace, MemModel, Region};

    // Wrap the real trace and record the distinct 64-byte lines touched;
    // a ten-line LRU must miss at least once per distinct line.
    struct Spy {
        inner: CacheTrace,
        lines: HashSet<u64>,
    }
    impl MemModel for Spy {
        fn record(&mut self, id: u32) {
            self.lines.insert(id as u64 * 64 / 64);
            self.inner.record(id);
        }
        fn cell(&mut self, region: Region, index: u64) {
            let base = match region {
                Region::Hash => 1u64 << 40,
                Region::List => 1u64 << 41,
            };
            self.lines.insert((base + index * 16) / 64);
            self.inner.cell(region, index);
        }
    }
    let text = workloads::random_string(4000, 6, 21);
    let spy = Spy {
        inner: CacheTrace::new(CacheConfig::default()),
        lines: HashSet::new(),
    };
    let (_, _, spy) = suffix_lab::schemes::build_traced(
        &text,
        SchemeConfig::notd(),
        BranchStrategy::hash(),
        spy,
    );
    let stats = spy.inner.stats();
    assert!(stats.lru_misses >= spy.lines.len() as u64);
    assert!(stats.dm_misses >= spy.lines.len() as u64 / 2);
    assert_eq!(stats.probes, stats.lru_hits + stats.lru_misses);
}
