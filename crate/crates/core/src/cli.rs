use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};

use kclique::ingest::{self, CSR_EXTENSION};
use kclique::schedule::available_workers;
use kclique::{
    brute_force_count, count_cliques, CountConfig, CountError, OrderingKind, PruneMode, RunStats,
    Schedule, Strategy, UndirectedGraph, MAX_K, ORACLE_MAX_VERTICES,
};

pub const EXIT_OK: u8 = 0;
pub const EXIT_MISMATCH: u8 = 1;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_OVERFLOW: u8 = 3;
pub const EXIT_ORACLE_GUARD: u8 = 4;

#[derive(Parser, Debug)]
#[command(name = "kclique", version, about = "Exact k-clique counting")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Count k-cliques, reporting per-trial and mean timings.
    Count(CountArgs),
    /// Check every ordering/strategy combination against the brute-force oracle.
    Validate(ValidateArgs),
    /// Sweep worker counts and report counting time and speedup.
    Bench(CountArgs),
    /// Convert a text edge list to the binary CSR cache.
    Convert(ConvertArgs),
}

#[derive(Args, Debug)]
struct CountArgs {
    #[arg(long)]
    graph: PathBuf,
    /// Clique size: `4`, a list `3,4,5` or an inclusive range `3..6`.
    #[arg(short = 'k', value_parser = parse_k_list)]
    k: KList,
    #[arg(long, default_value = "degree")]
    ordering: OrderingKind,
    #[arg(long, default_value = "citron")]
    strategy: Strategy,
    /// Worker threads; for `bench`, the largest count in the sweep.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    workers: Option<u32>,
    /// static, cyclic, dynamic or dynamic:N.
    #[arg(long, default_value = "dynamic:64")]
    schedule: Schedule,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    trials: u32,
    #[arg(long, default_value = "on")]
    prune: PruneMode,
    /// Count array accesses during first-level subgraph construction.
    #[arg(long)]
    instrument: bool,
    #[arg(long, value_enum, default_value_t = Output::Human)]
    output: Output,
}

#[derive(Args, Debug)]
struct ValidateArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(short = 'k', value_parser = parse_k_list, default_value = "3..6")]
    k: KList,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    workers: Option<u32>,
    #[arg(long, default_value = "on")]
    prune: PruneMode,
    /// Adds one to a single configuration's count to exercise the mismatch path.
    #[arg(long, hide = true)]
    inject_fault: bool,
}

#[derive(Args, Debug)]
struct ConvertArgs {
    #[arg(long)]
    graph: PathBuf,
    /// Defaults to the input path with a `.csrbin` extension.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Human,
    Records,
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct KList(Vec<usize>);

fn parse_k_list(s: &str) -> Result<KList, String> {
    let one = |t: &str| -> Result<usize, String> {
        let k: usize = t.trim().parse().map_err(|_| format!("invalid clique size {t:?}"))?;
        if !(3..=MAX_K).contains(&k) {
            return Err(format!("clique size must lie in [3, {MAX_K}], got {k}"));
        }
        Ok(k)
    };
    let ks = if let Some((a, b)) = s.split_once("..") {
        let (a, b) = (one(a)?, one(b)?);
        if a > b {
            return Err(format!("empty range {s:?}"));
        }
        (a..=b).collect()
    } else {
        s.split(',').map(one).collect::<Result<Vec<_>, _>>()?
    };
    Ok(KList(ks))
}

pub fn run(cli: Cli) -> ExitCode {
    let code = match cli.command {
        Command::Count(args) => cmd_count(&args),
        Command::Validate(args) => cmd_validate(&args),
        Command::Bench(args) => cmd_bench(&args),
        Command::Convert(args) => cmd_convert(&args),
    };
    ExitCode::from(code)
}

struct Loaded {
    graph: UndirectedGraph,
    name: String,
    load_time: Duration,
}

fn load(path: &Path) -> Result<Loaded, u8> {
    let start = Instant::now();
    match ingest::load_graph(path) {
        Ok(graph) => Ok(Loaded {
            graph,
            name: path.display().to_string(),
            load_time: start.elapsed(),
        }),
        Err(e) => {
            eprintln!("error: {}: {e}", path.display());
            Err(EXIT_INPUT)
        }
    }
}

fn count_error(e: &CountError) -> u8 {
    eprintln!("error: {e}");
    match e {
        CountError::Overflow { .. } => EXIT_OVERFLOW,
        CountError::InvalidConfig(_) => EXIT_INPUT,
    }
}

fn secs(d: Duration) -> String {
    format!("{:.6}", d.as_secs_f64())
}

fn config(args: &CountArgs, k: usize, workers: usize) -> CountConfig {
    CountConfig {
        k,
        ordering: args.ordering,
        strategy: args.strategy,
        workers,
        schedule: args.schedule,
        prune: args.prune,
        instrument: args.instrument,
    }
}

/// One run's summary, or the mean over several.
struct Row {
    ordering: Duration,
    counting: Duration,
    total: Duration,
    cliques: u64,
}

impl Row {
    fn of(count: u64, s: &RunStats) -> Self {
        Self {
            ordering: s.ordering_time,
            counting: s.counting_time,
            total: s.total_time,
            cliques: count,
        }
    }

    fn mean(rows: &[Row]) -> Self {
        let n = rows.len() as u32;
        Self {
            ordering: rows.iter().map(|r| r.ordering).sum::<Duration>() / n,
            counting: rows.iter().map(|r| r.counting).sum::<Duration>() / n,
            total: rows.iter().map(|r| r.total).sum::<Duration>() / n,
            cliques: rows[0].cliques,
        }
    }
}

fn record(g: &str, cfg: &CountConfig, trial: &str, row: &Row, stats: Option<&RunStats>) -> String {
    let mut line = format!(
        "graph={g} k={} ordering={} strategy={} workers={} trial={trial} ordering_s={} counting_s={} total_s={} cliques={}",
        cfg.k,
        cfg.ordering,
        cfg.strategy,
        cfg.workers,
        secs(row.ordering),
        secs(row.counting),
        secs(row.total),
        row.cliques
    );
    if let Some(s) = stats.filter(|_| cfg.instrument) {
        let opt = |v: Option<u64>| v.map_or_else(|| "overflow".to_string(), |v| v.to_string());
        let _ = write!(line, " array_accesses={} work_model={}", opt(s.array_accesses), opt(s.work_model));
    }
    line
}

fn cmd_count(args: &CountArgs) -> u8 {
    let loaded = match load(&args.graph) {
        Ok(l) => l,
        Err(code) => return code,
    };
    let g = &loaded.graph;
    let workers = args.workers.map_or_else(available_workers, |w| w as usize);
    if args.output == Output::Human {
        println!(
            "graph={} vertices={} edges={} load_s={}",
            loaded.name,
            g.num_vertices(),
            g.num_edges(),
            secs(loaded.load_time)
        );
    }
    for &k in &args.k.0 {
        let cfg = config(args, k, workers);
        let mut rows = Vec::new();
        let mut last = None;
        for trial in 1..=args.trials {
            let (count, stats) = match count_cliques(g, &cfg) {
                Ok(r) => r,
                Err(e) => return count_error(&e),
            };
            let row = Row::of(count.get(), &stats);
            match args.output {
                Output::Records => println!("{}", record(&loaded.name, &cfg, &trial.to_string(), &row, Some(&stats))),
                Output::Human => println!(
                    "k={k} trial={trial} ordering_s={} counting_s={} total_s={} cliques={}",
                    secs(row.ordering),
                    secs(row.counting),
                    secs(row.total),
                    row.cliques
                ),
            }
            if rows.first().is_some_and(|r: &Row| r.cliques != row.cliques) {
                eprintln!("error: count changed between trials");
                return EXIT_MISMATCH;
            }
            rows.push(row);
            last = Some(stats);
        }
        let mean = Row::mean(&rows);
        let stats = last.expect("at least one trial");
        match args.output {
            Output::Records => println!("{}", record(&loaded.name, &cfg, "mean", &mean, Some(&stats))),
            Output::Human => {
                println!(
                    "k={k} ordering={} strategy={} workers={workers} schedule={} prune={} trials={}",
                    cfg.ordering, cfg.strategy, cfg.schedule, cfg.prune, args.trials
                );
                println!(
                    "mean ordering_s={} counting_s={} total_s={}",
                    secs(mean.ordering),
                    secs(mean.counting),
                    secs(mean.total)
                );
                if args.instrument {
                    let opt = |v: Option<u64>| v.map_or_else(|| "overflow".to_string(), |v| v.to_string());
                    println!(
                        "array_accesses={} work_model={} max_out_degree={} max_subgraph_bytes={} load_imbalance={:.6}",
                        opt(stats.array_accesses),
                        opt(stats.work_model),
                        stats.max_out_degree,
                        stats.max_subgraph_bytes,
                        stats.load_imbalance()
                    );
                }
                println!("cliques={}", mean.cliques);
            }
        }
    }
    EXIT_OK
}

const COMBOS: [(OrderingKind, Strategy); 4] = [
    (OrderingKind::Core, Strategy::Baseline),
    (OrderingKind::Core, Strategy::Citron),
    (OrderingKind::Degree, Strategy::Baseline),
    (OrderingKind::Degree, Strategy::Citron),
];

fn cmd_validate(args: &ValidateArgs) -> u8 {
    let loaded = match load(&args.graph) {
        Ok(l) => l,
        Err(code) => return code,
    };
    let g = &loaded.graph;
    if g.num_vertices() > ORACLE_MAX_VERTICES {
        eprintln!(
            "error: {} has {} vertices; the brute-force oracle is limited to {ORACLE_MAX_VERTICES}",
            loaded.name,
            g.num_vertices()
        );
        return EXIT_ORACLE_GUARD;
    }
    let workers = args.workers.map_or_else(available_workers, |w| w as usize);
    println!(
        "{:>4} {:>14} {:>14} {:>14} {:>14} {:>14}",
        "k", "oracle", "core/baseline", "core/citron", "degree/baseline", "degree/citron"
    );
    let mut mismatches = 0usize;
    for &k in &args.k.0 {
        let expected = match brute_force_count(g, k) {
            Ok(c) => c.get(),
            Err(e) => {
                eprintln!("error: oracle: {e}");
                return EXIT_ORACLE_GUARD;
            }
        };
        let mut line = format!("{k:>4} {expected:>14}");
        for (i, &(ordering, strategy)) in COMBOS.iter().enumerate() {
            let cfg = CountConfig {
                k,
                ordering,
                strategy,
                workers,
                prune: args.prune,
                ..CountConfig::default()
            };
            let mut got = match count_cliques(g, &cfg) {
                Ok((c, _)) => c.get(),
                Err(e) => return count_error(&e),
            };
            if args.inject_fault && i == COMBOS.len() - 1 {
                got = got.wrapping_add(1);
            }
            if got == expected {
                let _ = write!(line, " {got:>14}");
            } else {
                mismatches += 1;
                let _ = write!(line, " {:>14}", format!("{got}!"));
            }
        }
        println!("{line}");
    }
    if mismatches > 0 {
        println!("MISMATCH: {mismatches} configuration(s) disagree with the oracle (marked !)");
        EXIT_MISMATCH
    } else {
        println!("all configurations agree with the oracle");
        EXIT_OK
    }
}

/// `1, 2, 4, ...` up to and including `max`.
fn worker_sweep(max: usize) -> Vec<usize> {
    let mut sweep: Vec<usize> = std::iter::successors(Some(1usize), |w| w.checked_mul(2))
        .take_while(|&w| w < max)
        .collect();
    sweep.push(max);
    sweep
}

fn cmd_bench(args: &CountArgs) -> u8 {
    let loaded = match load(&args.graph) {
        Ok(l) => l,
        Err(code) => return code,
    };
    let g = &loaded.graph;
    let max = args.workers.map_or_else(available_workers, |w| w as usize);
    if args.output == Output::Human {
        println!(
            "graph={} vertices={} edges={} load_s={}",
            loaded.name,
            g.num_vertices(),
            g.num_edges(),
            secs(loaded.load_time)
        );
    }
    for &k in &args.k.0 {
        let mut base: Option<Duration> = None;
        let mut column: Option<u64> = None;
        for workers in worker_sweep(max) {
            let cfg = config(args, k, workers);
            let mut rows = Vec::new();
            let mut last = None;
            for _ in 0..args.trials {
                match count_cliques(g, &cfg) {
                    Ok((c, s)) => {
                        rows.push(Row::of(c.get(), &s));
                        last = Some(s);
                    }
                    Err(e) => return count_error(&e),
                }
            }
            let mean = Row::mean(&rows);
            if rows.iter().any(|r| r.cliques != mean.cliques) || column.is_some_and(|c| c != mean.cliques) {
                eprintln!("error: count for k={k} changed with workers={workers}");
                return EXIT_MISMATCH;
            }
            column = Some(mean.cliques);
            let base = *base.get_or_insert(mean.counting);
            let speedup = base.as_secs_f64() / mean.counting.as_secs_f64().max(f64::MIN_POSITIVE);
            match args.output {
                Output::Records => println!(
                    "{} speedup={speedup:.3}",
                    record(&loaded.name, &cfg, "mean", &mean, last.as_ref())
                ),
                Output::Human => println!(
                    "k={k} workers={workers} counting_s={} speedup={speedup:.3} cliques={}",
                    secs(mean.counting),
                    mean.cliques
                ),
            }
        }
    }
    EXIT_OK
}

fn cmd_convert(args: &ConvertArgs) -> u8 {
    let out = args
        .out
        .clone()
        .unwrap_or_else(|| args.graph.with_extension(CSR_EXTENSION));
    let g = match ingest::read_edge_list_file(&args.graph) {
        Ok(e) => ingest::build_undirected(&e),
        Err(e) => {
            eprintln!("error: {}: {e}", args.graph.display());
            return EXIT_INPUT;
        }
    };
    if let Err(e) = ingest::save_csr(&g, &out) {
        eprintln!("error: {}: {e}", out.display());
        return EXIT_INPUT;
    }
    println!(
        "vertices={} edges={} max_degree={} output={}",
        g.num_vertices(),
        g.num_edges(),
        g.max_degree(),
        out.display()
    );
    EXIT_OK
}
