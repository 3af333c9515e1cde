//! Batch benchmark driver: runs the scheme-by-strategy matrix over a list
//! of inputs and emits one table row per combination.
//!
//! Counters and cache tallies come from a single fully instrumented run;
//! wall time is the median of separate uninstrumented repeats, so the
//! trace never distorts the timing.

use crate::branching::BranchStrategy;
use crate::instrument::{CacheConfig, CacheTrace, Row, ROW_COLUMNS};
use crate::oracle;
use crate::schemes::{build, build_traced, SchemeConfig};
use crate::workloads;
use std::path::PathBuf;
use std::time::Instant;

#[derive(Clone, Debug)]
pub enum InputSpec {
    File(PathBuf),
    Random { n: usize, sigma: u16, seed: u64 },
    Adversary { m: u64 },
}

impl InputSpec {
    pub fn label(&self) -> String {
        match self {
            InputSpec::File(p) => p.display().to_string(),
            InputSpec::Random { n, sigma, seed } => format!("random:{n}:{sigma}:{seed}"),
            InputSpec::Adversary { m } => format!("adversary:{m}"),
        }
    }

    pub fn load(&self) -> std::io::Result<Vec<u8>> {
        match self {
            InputSpec::File(p) => workloads::read_file(p),
            InputSpec::Random { n, sigma, seed } => Ok(workloads::random_string(*n, *sigma, *seed)),
            InputSpec::Adversary { m } => Ok(workloads::adversary(*m)),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Tsv,
    Csv,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub inputs: Vec<InputSpec>,
    pub schemes: Vec<SchemeConfig>,
    pub strategies: Vec<BranchStrategy>,
    /// Timed repetitions per row; counters never depend on it.
    pub repeat: usize,
    pub cache: CacheConfig,
    pub format: OutputFormat,
    /// Cross-check canonical shapes against the brute-force oracle for
    /// inputs within its bound.
    pub verify: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            inputs: Vec::new(),
            schemes: Vec::new(),
            strategies: Vec::new(),
            repeat: 10,
            cache: CacheConfig::default(),
            format: OutputFormat::Tsv,
            verify: false,
        }
    }
}

#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "usage error: {}", self.0)
    }
}

impl std::error::Error for UsageError {}

pub struct RunOutcome {
    pub rows: Vec<Row>,
    /// Per-input failures; remaining rows are still produced.
    pub errors: Vec<String>,
}

/// Run the whole matrix. Row order is deterministic: inputs in given
/// order, then schemes, then strategies in declaration order.
pub fn run(cfg: &RunConfig) -> Result<RunOutcome, UsageError> {
    if cfg.inputs.is_empty() {
        return Err(UsageError("no inputs given".into()));
    }
    if cfg.schemes.is_empty() {
        return Err(UsageError("no schemes given".into()));
    }
    if cfg.strategies.is_empty() {
        return Err(UsageError("no strategies given".into()));
    }
    let mut rows = Vec::new();
    let mut errors = Vec::new();
    for input in &cfg.inputs {
        let label = input.label();
        let text = match input.load() {
            Ok(t) => t,
            Err(e) => {
                errors.push(format!("{label}: {e}"));
                continue;
            }
        };
        let oracle_shape = if cfg.verify && text.len() <= oracle::ORACLE_BOUND {
            match oracle::naive_build(&text) {
                Ok(t) => Some(t.canonical_shape()),
                Err(e) => {
                    errors.push(format!("{label}: {e}"));
                    None
                }
            }
        } else {
            None
        };
        for scheme in &cfg.schemes {
            for strategy in &cfg.strategies {
                // Counting run: probes and cache simulation on.
                let (tree, counters, trace) =
                    build_traced(&text, *scheme, *strategy, CacheTrace::new(cfg.cache.clone()));
                let stats = trace.stats();
                if let Some(want) = &oracle_shape {
                    let got = tree.canonical_shape();
                    if &got != want {
                        errors.push(format!(
                            "{label}: {} over {} diverges from the oracle",
                            scheme.label(),
                            strategy.label()
                        ));
                    }
                }
                drop(tree);
                // Timed repeats: trace off so it cannot distort time.
                let mut secs: Vec<f64> = (0..cfg.repeat.max(1))
                    .map(|_| {
                        let t0 = Instant::now();
                        let (tree, _) = build(&text, *scheme, *strategy);
                        let dt = t0.elapsed().as_secs_f64();
                        drop(tree);
                        dt
                    })
                    .collect();
                secs.sort_by(|a, b| a.partial_cmp(b).unwrap());
                let wall = median_sorted(&secs);
                rows.push(Row {
                    file: label.clone(),
                    n: text.len() as u64,
                    scheme: scheme.label(),
                    strategy: strategy.label(),
                    rs: counters.rs,
                    sl: counters.sl,
                    climb: counters.climb,
                    move_down: counters.move_down,
                    char_cmp: counters.char_cmp,
                    probes: stats.probes,
                    lru_miss: stats.lru_misses,
                    dm_miss: stats.dm_misses,
                    wall_seconds: wall,
                });
            }
        }
    }
    Ok(RunOutcome { rows, errors })
}

fn median_sorted(sorted: &[f64]) -> f64 {
    let n = sorted.len();
    if n % 2 == 1 {
        sorted[n / 2]
    } else {
        (sorted[n / 2 - 1] + sorted[n / 2]) / 2.0
    }
}

/// Serialize rows: header then data. TSV uses no quoting; CSV quotes per
/// RFC 4180.
pub fn emit(rows: &[Row], format: OutputFormat) -> String {
    let mut out = String::new();
    match format {
        OutputFormat::Tsv => {
            out.push_str(&ROW_COLUMNS.join("\t"));
            out.push('\n');
            for row in rows {
                out.push_str(&row.fields().join("\t"));
                out.push('\n');
            }
        }
        OutputFormat::Csv => {
            let quote = |f: &str| -> String {
                if f.contains(',') || f.contains('"') || f.contains('\n') || f.contains('\r') {
                    format!("\"{}\"", f.replace('"', "\"\""))
                } else {
                    f.to_string()
                }
            };
            out.push_str(
                &ROW_COLUMNS
                    .iter()
                    .map(|c| quote(c))
                    .collect::<Vec<_>>()
                    .join(","),
            );
            out.push('\n');
            for row in rows {
                out.push_str(
                    &row.fields()
                        .iter()
                        .map(|f| quote(f))
                        .collect::<Vec<_>>()
                        .join(","),
                );
                out.push('\n');
            }
        }
    }
    out
}
