use clap::Parser;
use std::path::PathBuf;
use std::process::ExitCode;

use suffix_lab::bench::{emit, run, InputSpec, OutputFormat, RunConfig};
use suffix_lab::branching::{BranchKind, BranchStrategy};
use suffix_lab::instrument::CacheConfig;
use suffix_lab::schemes::{NobuHybrid, Scheme, SchemeConfig};

/// Batch driver for the suffix tree construction laboratory: builds every
/// requested input under every scheme and branching structure, and emits
/// one table row of operation counts, cache-model tallies and median wall
/// time per combination.
#[derive(Parser, Debug)]
#[command(name = "suffix-lab", version)]
struct Cli {
    /// Input file of raw bytes (repeatable).
    #[arg(long = "input", value_name = "PATH")]
    input: Vec<PathBuf>,

    /// Seeded random input as N:SIGMA:SEED (repeatable).
    #[arg(long = "random", value_name = "N:SIGMA:SEED")]
    random: Vec<String>,

    /// Adversarial input for the given m (repeatable).
    #[arg(long = "adversary", value_name = "M")]
    adversary: Vec<u64>,

    /// Suffix-link scheme: notd, nobu, eotd or eov (repeatable; all four
    /// when omitted).
    #[arg(long = "scheme", value_name = "NAME")]
    scheme: Vec<String>,

    /// Branching structure: list-front, list-back or hash (repeatable;
    /// all three when omitted).
    #[arg(long = "strategy", value_name = "NAME")]
    strategy: Vec<String>,

    /// Keep the first two children of every node inline in its record.
    #[arg(long)]
    inline: bool,

    /// k parameter of the eov scheme.
    #[arg(long, value_name = "INT", default_value_t = 5)]
    k: u32,

    /// nobu hybrid guard: none, climb:C or remaining:C.
    #[arg(long, value_name = "KIND", default_value = "none")]
    hybrid: String,

    /// Timed repetitions per row (the median is reported).
    #[arg(long, value_name = "INT", default_value_t = 10)]
    repeat: usize,

    /// Number of lines in the direct-mapped cache model.
    #[arg(long = "cache-lines", value_name = "INT", default_value_t = 8192)]
    cache_lines: usize,

    /// Output format: tsv or csv.
    #[arg(long, value_name = "FMT", default_value = "tsv")]
    format: String,

    /// Write the table here instead of stdout.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,

    /// Check every build's canonical shape against the brute-force oracle
    /// (inputs within the oracle bound only).
    #[arg(long)]
    verify: bool,
}

fn parse_random(spec: &str) -> Result<InputSpec, String> {
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 3 {
        return Err(format!("--random expects N:SIGMA:SEED, got {spec:?}"));
    }
    let n = parts[0].parse().map_err(|_| format!("bad N in {spec:?}"))?;
    let sigma: u16 = parts[1]
        .parse()
        .map_err(|_| format!("bad SIGMA in {spec:?}"))?;
    if !(1..=256).contains(&sigma) {
        return Err(format!("SIGMA must be 1..=256 in {spec:?}"));
    }
    let seed = parts[2]
        .parse()
        .map_err(|_| format!("bad SEED in {spec:?}"))?;
    Ok(InputSpec::Random { n, sigma, seed })
}

fn parse_hybrid(spec: &str) -> Result<NobuHybrid, String> {
    if spec == "none" {
        return Ok(NobuHybrid::None);
    }
    let (kind, value) = spec
        .split_once(':')
        .ok_or_else(|| format!("--hybrid expects none, climb:C or remaining:C, got {spec:?}"))?;
    let c: u32 = value
        .parse()
        .map_err(|_| format!("bad constant in {spec:?}"))?;
    match kind {
        "climb" => Ok(NobuHybrid::MaxClimb(c)),
        "remaining" => Ok(NobuHybrid::MaxRemaining(c)),
        _ => Err(format!("unknown hybrid kind {kind:?}")),
    }
}

fn parse_scheme(name: &str, hybrid: NobuHybrid, k: u32) -> Result<SchemeConfig, String> {
    let scheme = match name {
        "notd" => Scheme::Notd,
        "nobu" => Scheme::Nobu,
        "eotd" => Scheme::Eotd,
        "eov" => Scheme::Eov,
        _ => return Err(format!("unknown scheme {name:?}")),
    };
    Ok(SchemeConfig {
        scheme,
        nobu_hybrid: hybrid,
        eov_k: k,
    })
}

fn parse_strategy(name: &str, inline: bool) -> Result<BranchStrategy, String> {
    let kind = match name {
        "list-front" => BranchKind::ListFront,
        "list-back" => BranchKind::ListBack,
        "hash" => BranchKind::Hash,
        _ => return Err(format!("unknown strategy {name:?}")),
    };
    Ok(BranchStrategy::new(kind, inline))
}

fn build_config(cli: &Cli) -> Result<RunConfig, String> {
    let mut inputs = Vec::new();
    for p in &cli.input {
        inputs.push(InputSpec::File(p.clone()));
    }
    for r in &cli.random {
        inputs.push(parse_random(r)?);
    }
    for &m in &cli.adversary {
        if m == 0 {
            return Err("--adversary expects m >= 1".into());
        }
        inputs.push(InputSpec::Adversary { m });
    }
    let hybrid = parse_hybrid(&cli.hybrid)?;
    let scheme_names: Vec<String> = if cli.scheme.is_empty() {
        ["notd", "nobu", "eotd", "eov"]
            .iter()
            .map(|s| s.to_string())
            .collect()
    } else {
        cli.scheme.clone()
    };
    let schemes = scheme_names
        .iter()
        .map(|s| parse_scheme(s, hybrid, cli.k))
        .collect::<Result<Vec<_>, _>>()?;
    let strategy_names: Vec<String> = if cli.strategy.is_empty() {
        ["list-front", "list-back", "hash"]
            .iter()
            .map(|s| s.to_string())
            .collect()
    } else {
        cli.strategy.clone()
    };
    let strategies = strategy_names
        .iter()
        .map(|s| parse_strategy(s, cli.inline))
        .collect::<Result<Vec<_>, _>>()?;
    let format = match cli.format.as_str() {
        "tsv" => OutputFormat::Tsv,
        "csv" => OutputFormat::Csv,
        other => return Err(format!("unknown format {other:?}")),
    };
    Ok(RunConfig {
        inputs,
        schemes,
        strategies,
        repeat: cli.repeat,
        cache: CacheConfig {
            direct_mapped_lines: cli.cache_lines.max(1),
            ..CacheConfig::default()
        },
        format,
        verify: cli.verify,
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match build_config(&cli) {
        Ok(c) => c,
        Err(msg) => {
            eprintln!("suffix-lab: {msg}");
            return ExitCode::from(2);
        }
    };
    let outcome = match run(&cfg) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("suffix-lab: {e}");
            return ExitCode::from(2);
        }
    };
    let table = emit(&outcome.rows, cfg.format);
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &table) {
                eprintln!("suffix-lab: cannot write {}: {e}", path.display());
                return ExitCode::from(1);
            }
        }
        None => print!("{table}"),
    }
    for err in &outcome.errors {
        eprintln!("suffix-lab: {err}");
    }
    if outcome.errors.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
