//! An online suffix tree construction laboratory.
//!
//! The library builds suffix trees one character at a time under four
//! interchangeable suffix-link disciplines (`notd`, `nobu`, `eotd`, `eov`)
//! and three child-retrieval structures (linked list with front or back
//! insertion, or a single open-addressing hash table), optionally with the
//! first two children of every node inlined into the node record.
//!
//! Every build is instrumented: branch operations, rescan steps, climb
//! steps, sibling lookups and character comparisons are counted, and an
//! optional synthetic memory trace drives two small software cache models.
//! A quadratic brute-force oracle, workload generators (adversarial and
//! seeded random inputs) and a batch benchmark driver round out the kit.

pub mod bench;
pub mod branching;
pub mod instrument;
pub mod oracle;
pub mod schemes;
pub mod shape;
pub mod text;
pub mod tree;
pub mod workloads;

pub use branching::{BranchKind, BranchStrategy};
pub use instrument::{CacheConfig, CacheStats, MemModel, NoTrace, OpCounters};
pub use schemes::{build, Builder, NobuHybrid, Scheme, SchemeConfig};
pub use text::Text;
pub use tree::Tree;
