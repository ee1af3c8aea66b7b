//! `specrepair` command-line tool.
//!
//! Exit codes: 0 success, 1 negative result (unsatisfiable, unrealizable, no
//! repair found), 2 usage or input error, 3 backend or resource failure.

use std::fmt::Display;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::atomic::{AtomicBool, Ordering};

use clap::{Args, Parser, Subcommand};
use specrepair::analysis::{check_realizability, is_sat, RealizabilityVerdict};
use specrepair::automata::det_to_hoa;
use specrepair::counting::{approx_automaton, build_transfer_matrix, count_lassos_exact, count_prefixes, CountingError};
use specrepair::harness::{compare_repair_sets, load_spec_file, run_ranking_study, RankingStudyConfig};
use specrepair::ltl::{parse_formula, Spec};
use specrepair::repair::{run_ga, run_random_baseline};
use specrepair::{Alphabet, BackendConfig, Formula, GaConfig, Limits, RepairReport};

static CANCEL: AtomicBool = AtomicBool::new(false);

#[derive(Parser)]
#[command(name = "specrepair", version, about = "Model counting, realizability checking and repair of LTL specifications")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Print progress and extra detail on stderr
    #[arg(long, global = true)]
    verbose: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Count the bounded models of a formula
    Count(CountArgs),
    /// Check satisfiability of a formula or realizability of a spec file
    Check(CheckArgs),
    /// Search for realizable repairs of an unrealizable spec
    Repair(RepairArgs),
    /// Mutation-only baseline with the same budget and report format
    RandomBaseline(RepairArgs),
    /// Compare approximate and exact model-count rankings on random formulas
    RankingStudy(StudyArgs),
    /// Classify repairs against reference repairs
    Compare(CompareArgs),
}

#[derive(Args)]
struct CountArgs {
    #[arg(long)]
    formula: String,
    /// Comma-separated propositions; defaults to the atoms of the formula
    #[arg(long)]
    alphabet: Option<String>,
    #[arg(long, default_value_t = 20)]
    bound: u32,
    /// Count lasso words exactly instead of approximating by prefixes
    #[arg(long)]
    exact: bool,
    /// Write the minimized automaton in HOA format
    #[arg(long)]
    dump_hoa: Option<PathBuf>,
}

#[derive(Args)]
struct CheckArgs {
    #[arg(long, conflicts_with = "formula", required_unless_present = "formula")]
    spec: Option<PathBuf>,
    #[arg(long)]
    formula: Option<String>,
    #[arg(long, default_value = "builtin:6")]
    backend: BackendConfig,
}

#[derive(Args)]
struct RepairArgs {
    #[arg(long)]
    spec: PathBuf,
    /// Bound k for model counting in the semantic similarity
    #[arg(long, default_value_t = 20)]
    bound: u32,
    #[arg(long, default_value_t = 0.7)]
    alpha: f64,
    #[arg(long, default_value_t = 0.1)]
    beta: f64,
    #[arg(long, default_value_t = 0.2)]
    gamma: f64,
    #[arg(long, default_value_t = 100)]
    population: usize,
    #[arg(long, default_value_t = 1000)]
    max_individuals: usize,
    #[arg(long, default_value_t = 7200)]
    budget_seconds: u64,
    /// Random seed; a fresh one is drawn and printed when omitted
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value = "builtin:6")]
    backend: BackendConfig,
    /// Write the JSON report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads; defaults to the available parallelism
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Args)]
struct StudyArgs {
    /// Comma-separated propositions of the random formulas
    #[arg(long, default_value = "p,q")]
    alphabet: String,
    /// Largest bound k
    #[arg(long, default_value_t = 8)]
    bound: u32,
    /// Smallest bound k
    #[arg(long, default_value_t = 6)]
    min_bound: u32,
    #[arg(long, default_value_t = 5)]
    sets: usize,
    #[arg(long, default_value_t = 20)]
    formulas: usize,
    #[arg(long, default_value_t = 3)]
    depth: usize,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Args)]
struct CompareArgs {
    /// Spec files holding our repairs
    #[arg(long)]
    ours: Vec<PathBuf>,
    /// Repair report whose repairs are compared
    #[arg(long)]
    report: Option<PathBuf>,
    /// Spec files holding reference repairs
    #[arg(long, required = true)]
    reference: Vec<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

enum Failure {
    Negative(String),
    Usage(String),
    Backend(String),
}

impl Failure {
    fn usage(e: impl Display) -> Self {
        Failure::Usage(e.to_string())
    }

    fn backend(e: impl Display) -> Self {
        Failure::Backend(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn parse_alphabet(csv: &str) -> Result<Alphabet, Failure> {
    let names: Vec<&str> = csv.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
    Alphabet::new(names).map_err(Failure::usage)
}

fn load_spec(path: &Path) -> Result<Spec, Failure> {
    load_spec_file(path).map(|f| f.spec).map_err(Failure::usage)
}

fn write_output(out: Option<&Path>, text: &str) -> Outcome {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn seed_or_fresh(seed: Option<u64>) -> u64 {
    seed.unwrap_or_else(|| {
        let seed = rand::random::<u32>() as u64;
        eprintln!("seed: {seed}");
        seed
    })
}

fn counting_failure(e: CountingError) -> Failure {
    match e {
        CountingError::Ltl(_) | CountingError::ZeroBound => Failure::usage(e),
        _ => Failure::backend(e),
    }
}

fn count(args: CountArgs) -> Outcome {
    let formula = parse_formula(&args.formula).map_err(Failure::usage)?;
    let alphabet = match &args.alphabet {
        Some(csv) => parse_alphabet(csv)?,
        None => Alphabet::from_formulas([&formula]),
    };
    if let Some(atom) = formula.atoms().into_iter().find(|a| alphabet.index_of(a).is_none()) {
        return Err(Failure::Usage(format!("atom `{atom}` is not in the alphabet")));
    }
    if args.bound == 0 {
        return Err(Failure::Usage("bound must be at least 1".into()));
    }
    if let Some(path) = &args.dump_hoa {
        let dfa = approx_automaton(&formula, &alphabet, &Limits::default()).map_err(counting_failure)?;
        std::fs::write(path, det_to_hoa(&dfa)).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))?;
    }
    let n = if args.exact {
        count_lassos_exact(&formula, &alphabet, args.bound as usize).map_err(counting_failure)?
    } else {
        let dfa = approx_automaton(&formula, &alphabet, &Limits::default()).map_err(counting_failure)?;
        count_prefixes(&build_transfer_matrix(&dfa), args.bound)
    };
    println!("{n}");
    Ok(())
}

fn check(args: CheckArgs, verbose: bool) -> Outcome {
    if let Some(text) = args.formula {
        let formula = parse_formula(&text).map_err(Failure::usage)?;
        let sat = is_sat(&formula).map_err(Failure::backend)?;
        println!("{}", if sat { "satisfiable" } else { "unsatisfiable" });
        return if sat { Ok(()) } else { Err(Failure::Negative(String::new())) };
    }
    let spec = load_spec(args.spec.as_deref().expect("clap requires --spec or --formula"))?;
    let sat = is_sat(&spec.conjunction()).map_err(Failure::backend)?;
    if verbose {
        eprintln!("assumptions and guarantees are {}", if sat { "satisfiable" } else { "unsatisfiable" });
    }
    let verdict = check_realizability(&spec, &args.backend);
    println!("{verdict}");
    match verdict {
        RealizabilityVerdict::Realizable => Ok(()),
        RealizabilityVerdict::Unrealizable => Err(Failure::Negative(String::new())),
        RealizabilityVerdict::Unknown(reason) => Err(Failure::Backend(format!("no verdict: {reason}"))),
    }
}

fn repair(args: RepairArgs, baseline: bool, verbose: bool) -> Outcome {
    let spec = load_spec(&args.spec)?;
    let cfg = GaConfig {
        population_size: args.population,
        max_individuals: args.max_individuals,
        budget_seconds: args.budget_seconds,
        bound: args.bound,
        alpha: args.alpha,
        beta: args.beta,
        gamma: args.gamma,
        seed: seed_or_fresh(args.seed),
        backend: args.backend,
        jobs: args.jobs.unwrap_or(0),
        ..GaConfig::default()
    };
    cfg.validate().map_err(Failure::usage)?;
    // a second Ctrl-C falls through to the default behaviour
    let _ = ctrlc::set_handler(|| {
        if CANCEL.swap(true, Ordering::SeqCst) {
            std::process::exit(130);
        }
    });
    let run = if baseline { run_random_baseline } else { run_ga };
    let report = run(&spec, &cfg, Some(&CANCEL)).map_err(Failure::usage)?;
    summarize(&report, verbose);
    let json = serde_json::to_string_pretty(&report).expect("report serializes");
    write_output(args.out.as_deref(), &json)?;
    if report.repairs.is_empty() {
        Err(Failure::Negative("no repair found".into()))
    } else {
        Ok(())
    }
}

fn summarize(report: &RepairReport, verbose: bool) {
    for w in &report.warnings {
        eprintln!("warning: {w}");
    }
    eprintln!(
        "{} verified repairs from {} individuals in {:.1}s ({} backend calls){}",
        report.repairs.len(),
        report.stats.individuals_evaluated,
        report.stats.wall_clock_seconds,
        report.stats.backend_calls,
        if report.incomplete { ", incomplete" } else { "" }
    );
    if verbose {
        for r in report.repairs.iter().take(5) {
            eprintln!("#{} fitness {:.4}: assume [{}] guarantee [{}]", r.rank, r.combined, r.assumptions.join("; "), r.guarantees.join("; "));
        }
    }
}

fn ranking_study(args: StudyArgs, verbose: bool) -> Outcome {
    if args.min_bound == 0 || args.min_bound > args.bound {
        return Err(Failure::Usage("bounds must satisfy 1 <= --min-bound <= --bound".into()));
    }
    let alphabet = parse_alphabet(&args.alphabet)?;
    if let Some(jobs) = args.jobs {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global();
    }
    let cfg = RankingStudyConfig {
        sets: args.sets,
        formulas_per_set: args.formulas,
        atoms: alphabet.names().to_vec(),
        k_min: args.min_bound,
        k_max: args.bound,
        depth: args.depth,
        seed: seed_or_fresh(args.seed),
    };
    let report = run_ranking_study(&cfg, &Limits::default()).map_err(counting_failure)?;
    println!("set  k  differing  misplaced  spearman  skipped");
    for set in &report.sets {
        for b in &set.bounds {
            println!("{:>3} {:>2} {:>10} {:>10} {:>9.3} {:>8}", set.index, b.k, b.discrepancy, b.misplaced, b.spearman, b.skipped.len());
        }
        if verbose {
            for (i, f) in set.formulas.iter().enumerate() {
                eprintln!("  set {} formula {i}: {f}", set.index);
            }
        }
    }
    if let Some(path) = &args.out {
        write_output(Some(path), &serde_json::to_string_pretty(&report).expect("report serializes"))?;
    }
    Ok(())
}

fn specs_from_report(path: &Path) -> Result<Vec<Spec>, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    let report: RepairReport = serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let parse = |v: &[String]| v.iter().map(|t| parse_formula(t)).collect::<Result<Vec<Formula>, _>>();
    let o = &report.original_spec;
    let original = Spec::new(
        o.inputs.clone(),
        o.outputs.clone(),
        parse(&o.assumptions).map_err(Failure::usage)?,
        parse(&o.guarantees).map_err(Failure::usage)?,
    )
    .map_err(Failure::usage)?;
    Ok(report.repaired_specs(&original))
}

fn compare(args: CompareArgs) -> Outcome {
    let mut ours = args.ours.iter().map(|p| load_spec(p)).collect::<Result<Vec<_>, _>>()?;
    if let Some(path) = &args.report {
        ours.extend(specs_from_report(path)?);
    }
    if ours.is_empty() {
        return Err(Failure::Usage("give repairs with --ours or --report".into()));
    }
    let reference = args.reference.iter().map(|p| load_spec(p)).collect::<Result<Vec<_>, _>>()?;
    let summary = compare_repair_sets(&ours, &reference, &Limits::default()).map_err(Failure::backend)?;
    eprintln!(
        "{} repairs: {} equivalent, {} unique ({} weaker, {} stronger, {} unrelated)",
        ours.len(),
        summary.equivalent,
        summary.unique,
        summary.weaker,
        summary.stronger,
        summary.unrelated
    );
    write_output(args.out.as_deref(), &serde_json::to_string_pretty(&summary).expect("summary serializes"))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let verbose = cli.verbose;
    let result = match cli.command {
        Command::Count(args) => count(args),
        Command::Check(args) => check(args, verbose),
        Command::Repair(args) => repair(args, false, verbose),
        Command::RandomBaseline(args) => repair(args, true, verbose),
        Command::RankingStudy(args) => ranking_study(args, verbose),
        Command::Compare(args) => compare(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Negative(msg)) => {
            if !msg.is_empty() {
                eprintln!("{msg}");
            }
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Backend(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
