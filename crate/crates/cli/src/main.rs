//! Command-line front door: generate instances, run attacks, score
//! inversions, print the parameter-recommendation table, run benchmark
//! sweeps, and expose the exact oracle for small files.
//!
//! Exit codes: 0 success (for `attack`: some attack inverted), 2 usage or
//! parameter error, 3 attacks ran but none inverted.

use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};

use cliquelab_core::advisor::{advise, storage_estimate, AdvisorConfig, SecurityLevel};
use cliquelab_core::harness::{
    run_all, run_distinguishing_experiment, run_experiment, AttackReport, AttackSpec,
};
use cliquelab_core::instance::{
    owf_evaluate, read_instance, write_instance, PlantParams, PlantedInstance,
};
use cliquelab_core::oracle::max_clique_exact;
use cliquelab_core::{dimacs, Graph, RngState};

#[derive(Parser)]
#[command(name = "cliquelab", version, about = "planted-clique workbench")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a planted-clique instance file
    Gen(GenArgs),
    /// Run attacks against an instance and score pseudo-inversion
    Attack(AttackArgs),
    /// Print secure-parameter recommendations for a security level
    Advise(AdviseArgs),
    /// Run a multi-trial experiment and summarize per-attack success
    Bench(BenchArgs),
    /// Exact maximum clique of a small instance or DIMACS file
    Oracle(OracleArgs),
}

#[derive(Args)]
struct GenArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0.5)]
    p: f64,
    #[arg(long)]
    k: usize,
    #[arg(long, env = "WORKBENCH_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct AttackArgs {
    #[arg(long = "in")]
    input: PathBuf,
    /// Attack to run (repeatable): greedy|metropolis|spectral|dekel|feige|brute|all
    #[arg(long = "alg", required = true)]
    algs: Vec<String>,
    #[arg(long, env = "WORKBENCH_SEED", default_value_t = 0)]
    seed: u64,
    /// Wall-clock budget per attack, in seconds
    #[arg(long, default_value_t = 60)]
    budget_secs: u64,
    /// Emit line-delimited JSON records instead of the table
    #[arg(long)]
    json: bool,
    /// Zero out timing fields so identical seeds give byte-identical output
    #[arg(long)]
    canonical: bool,
    /// Worker threads (parallel builds only; 0 = all cores)
    #[arg(long, default_value_t = 0)]
    threads: usize,
}

#[derive(Args)]
struct AdviseArgs {
    #[arg(long)]
    lambda: u32,
    #[arg(long, default_value_t = 0.5)]
    p: f64,
    #[arg(long, default_value_t = 0.6)]
    q: f64,
    #[arg(long = "r-eps", default_value_t = 1.0)]
    r_epsilon: f64,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0.5)]
    p: f64,
    #[arg(long)]
    k: usize,
    #[arg(long, default_value_t = 10)]
    trials: usize,
    #[arg(long = "alg", required = true)]
    algs: Vec<String>,
    #[arg(long, env = "WORKBENCH_SEED", default_value_t = 0)]
    seed: u64,
    /// Write per-trial records to this CSV file
    #[arg(long)]
    csv: Option<PathBuf>,
    #[arg(long)]
    json: bool,
    /// Run the coin-flip distinguishing game instead of plain inversion
    #[arg(long)]
    distinguish: bool,
    #[arg(long, default_value_t = 60)]
    budget_secs: u64,
    #[arg(long, default_value_t = 0)]
    threads: usize,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    json: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Gen(args) => cmd_gen(args),
        Command::Attack(args) => cmd_attack(args),
        Command::Advise(args) => cmd_advise(args),
        Command::Bench(args) => cmd_bench(args),
        Command::Oracle(args) => cmd_oracle(args),
    };
    match result {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

type CmdResult = Result<ExitCode, String>;

fn cmd_gen(args: GenArgs) -> CmdResult {
    let params = PlantParams::new(args.n, args.p, args.k).map_err(|e| e.to_string())?;
    if args.k == 0 {
        eprintln!("warning: k = 0 generates an unplanted sample");
    }
    if args.k > 0 && !params.in_standard_range() {
        eprintln!(
            "note: k = {} lies outside [log_1/p n, 2 log_1/p n]; reports will label it nonstandard",
            args.k
        );
    }
    let instance = owf_evaluate(&params, &RngState::new(args.seed)).map_err(|e| e.to_string())?;
    let file = File::create(&args.out).map_err(|e| format!("{}: {e}", args.out.display()))?;
    write_instance(std::io::BufWriter::new(file), &instance).map_err(|e| e.to_string())?;
    let epsilon = params
        .epsilon()
        .map(|e| format!("{e:.4}"))
        .unwrap_or_else(|| "undefined".into());
    println!(
        "wrote {} (n = {}, p = {}, k = {}, epsilon = {}, seed = {})",
        args.out.display(),
        args.n,
        args.p,
        args.k,
        epsilon,
        args.seed
    );
    Ok(ExitCode::SUCCESS)
}

fn parse_registry(algs: &[String]) -> Result<Vec<AttackSpec>, String> {
    let mut registry = Vec::new();
    for alg in algs {
        if alg == "all" {
            registry.extend(AttackSpec::default_registry());
        } else {
            registry.push(
                AttackSpec::with_defaults(alg)
                    .ok_or_else(|| format!("unknown attack {alg:?} (try --alg all)"))?,
            );
        }
    }
    Ok(registry)
}

fn configure_threads(threads: usize) {
    #[cfg(feature = "parallel")]
    if threads > 0 {
        // ignore the error if a pool already exists
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
    #[cfg(not(feature = "parallel"))]
    if threads > 0 {
        eprintln!("note: sequential build, --threads ignored");
    }
}

fn load_instance(path: &PathBuf) -> Result<PlantedInstance, String> {
    let file = File::open(path).map_err(|e| format!("{}: {e}", path.display()))?;
    read_instance(BufReader::new(file)).map_err(|e| format!("{}: {e}", path.display()))
}

fn report_json(report: &AttackReport, canonical: bool) -> String {
    let mut value = serde_json::to_value(report).expect("report serializes");
    value["schema"] = serde_json::json!("cliquelab.report.v1");
    if canonical {
        value["wall_ms"] = serde_json::json!(0.0);
    }
    value.to_string()
}

fn cmd_attack(args: AttackArgs) -> CmdResult {
    configure_threads(args.threads);
    let registry = parse_registry(&args.algs)?;
    let instance = load_instance(&args.input)?;
    let timeout = Some(Duration::from_secs(args.budget_secs));
    let (best, reports) = run_all(&instance, &registry, &RngState::new(args.seed), timeout)
        .map_err(|e| e.to_string())?;

    if args.json {
        for report in &reports {
            println!("{}", report_json(report, args.canonical));
        }
        println!(
            "{}",
            serde_json::json!({
                "schema": "cliquelab.best.v1",
                "best_size": best.len(),
                "best": best,
                "inverted": reports.iter().any(|r| r.inverted),
            })
        );
    } else {
        println!(
            "{:<12} {:>6} {:>6} {:>9} {:>8} {:>12} {:>10}",
            "attack", "size", "valid", "inverted", "matched", "steps", "ms"
        );
        for r in &reports {
            println!(
                "{:<12} {:>6} {:>6} {:>9} {:>8} {:>12} {:>10.1}",
                r.attack,
                r.size,
                r.is_valid_clique,
                r.inverted,
                r.matched_hidden,
                r.steps,
                if args.canonical { 0.0 } else { r.wall_ms }
            );
        }
        println!(
            "best clique size: {} (k = {})",
            best.len(),
            instance.params.k
        );
    }
    if reports.iter().any(|r| r.inverted) {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(3))
    }
}

fn cmd_advise(args: AdviseArgs) -> CmdResult {
    let level = SecurityLevel::new(args.lambda).map_err(|e| e.to_string())?;
    let cfg = AdvisorConfig {
        q: args.q,
        r_epsilon: args.r_epsilon,
    };
    let rows = advise(level, args.p, &cfg).map_err(|e| e.to_string())?;

    if args.json {
        for row in &rows {
            let mut value = serde_json::to_value(row).expect("row serializes");
            value["schema"] = serde_json::json!("cliquelab.recommendation.v1");
            value["lambda"] = serde_json::json!(args.lambda);
            println!("{value}");
        }
    } else {
        println!(
            "secure parameter recommendations for lambda = {}",
            args.lambda
        );
        println!(
            "{:<24} {:<22} {:<42} Choice of k",
            "Adversary", "Value of n", "Value of p"
        );
        for row in &rows {
            let n = row
                .min_n
                .as_ref()
                .map(|n| n.to_string())
                .unwrap_or_else(|| "-".into());
            println!(
                "{:<24} {:<22} {:<42} {}",
                row.adversary, n, row.p_constraint, row.k_constraint
            );
        }
        println!();
        for row in &rows {
            println!("  {}: {}", row.adversary, row.formula);
        }
        if let Some(n) = rows.last().and_then(|r| r.min_n.clone()) {
            if let Ok(n_u64) = u64::try_from(&n) {
                println!(
                    "\nbit-matrix storage at the combined n: {} bytes",
                    storage_estimate(n_u64)
                );
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_bench(args: BenchArgs) -> CmdResult {
    configure_threads(args.threads);
    let registry = parse_registry(&args.algs)?;
    let params = PlantParams::new(args.n, args.p, args.k).map_err(|e| e.to_string())?;
    let rng = RngState::new(args.seed);
    let timeout = Some(Duration::from_secs(args.budget_secs));

    if args.distinguish {
        let summary = run_distinguishing_experiment(&params, args.trials, &registry, &rng, timeout)
            .map_err(|e| e.to_string())?;
        if args.json {
            let mut value = serde_json::to_value(&summary).expect("summary serializes");
            value["schema"] = serde_json::json!("cliquelab.distinguish.v1");
            println!("{value}");
        } else {
            println!(
                "distinguishing game over {} trials ({} planted / {} unplanted)",
                summary.trials, summary.planted_trials, summary.unplanted_trials
            );
            println!(
                "guess-planted rate: {:.3} on planted, {:.3} on unplanted; advantage {:.3}",
                summary.true_positive_rate, summary.false_positive_rate, summary.advantage
            );
        }
        return Ok(ExitCode::SUCCESS);
    }

    let (summary, trials) = run_experiment(&params, args.trials, &registry, &rng, timeout)
        .map_err(|e| e.to_string())?;

    if let Some(path) = &args.csv {
        let mut f = File::create(path).map_err(|e| format!("{}: {e}", path.display()))?;
        writeln!(
            f,
            "trial,attack,size,valid,inverted,matched_hidden,steps,wall_ms,seed"
        )
        .map_err(|e| e.to_string())?;
        for (t, reports) in trials.iter().enumerate() {
            for r in reports {
                writeln!(
                    f,
                    "{t},{},{},{},{},{},{},{:.3},{}",
                    r.attack,
                    r.size,
                    r.is_valid_clique,
                    r.inverted,
                    r.matched_hidden,
                    r.steps,
                    r.wall_ms,
                    r.seed
                )
                .map_err(|e| e.to_string())?;
            }
        }
        eprintln!(
            "wrote {} per-trial records to {}",
            args.trials,
            path.display()
        );
    }

    if args.json {
        let mut value = serde_json::to_value(&summary).expect("summary serializes");
        value["schema"] = serde_json::json!("cliquelab.summary.v1");
        println!("{value}");
    } else {
        println!(
            "experiment: n = {}, p = {}, k = {}, trials = {} (epsilon {})",
            args.n,
            args.p,
            args.k,
            args.trials,
            summary
                .epsilon
                .map(|e| format!("{e:.3}"))
                .unwrap_or_else(|| "undefined".into())
        );
        println!(
            "{:<12} {:>9} {:>9} {:>10} {:>9} {:>9}",
            "attack", "success", "matched", "mean size", "min", "max"
        );
        for a in &summary.attacks {
            println!(
                "{:<12} {:>9.3} {:>9.3} {:>10.2} {:>9} {:>9}",
                a.attack, a.success_rate, a.matched_rate, a.mean_size, a.min_size, a.max_size
            );
        }
        println!("best attack: {}", summary.best_attack);
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_oracle(args: OracleArgs) -> CmdResult {
    let file = File::open(&args.input).map_err(|e| format!("{}: {e}", args.input.display()))?;
    let mut reader = BufReader::new(file);
    let mut first = String::new();
    reader.read_line(&mut first).map_err(|e| e.to_string())?;
    let rest = reader;

    let graph: Graph = if first.starts_with("planted-clique-instance") {
        let file = File::open(&args.input).map_err(|e| e.to_string())?;
        read_instance(BufReader::new(file))
            .map_err(|e| e.to_string())?
            .public_graph
    } else {
        // plain DIMACS: re-parse from the top
        let file = File::open(&args.input).map_err(|e| e.to_string())?;
        drop(rest);
        dimacs::read_dimacs(BufReader::new(file)).map_err(|e| e.to_string())?
    };

    let best = max_clique_exact(&graph);
    let one_based: Vec<usize> = best.iter().map(|v| v + 1).collect();
    if args.json {
        println!(
            "{}",
            serde_json::json!({
                "schema": "cliquelab.oracle.v1",
                "n": graph.n(),
                "max_clique_size": best.len(),
                "members_1based": one_based,
            })
        );
    } else {
        println!("n = {}, maximum clique size = {}", graph.n(), best.len());
        println!(
            "members (1-based): {}",
            one_based
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        );
    }
    Ok(ExitCode::SUCCESS)
}
