use std::f64::consts::SQRT_2;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use pierce_core::enclosing::{BRUTEFORCE_LIMIT, DEFAULT_SEC_SEED};
use pierce_core::fingerhut::{
    lower_bound_search, max_ratio, max_weight_matching_bruteforce, ratio_report, SearchOptions,
    SolverOptions,
};
use pierce_core::io::{instance_to_json, load_instance, parse_edge_list, save_instance, to_json};
use pierce_core::piercing::{diametral_disks, helly_triples, piercing_report, PiercingReport};
use pierce_core::spanning::ENUMERATION_LIMIT;
use pierce_core::svg::{write_svg, SvgOptions};
use pierce_core::{
    enumerate_best_tree_weight, generate_trial, in_diametral_disk, max_spanning_tree, sec_bruteforce,
    smallest_enclosing_circle, Edge, Error, Generator, Instance, RunConfig, Tolerance, Tree,
};

/// Helly triples are cubic in the tree size; larger instances skip them.
const HELLY_MAX_POINTS: usize = 32;

#[derive(Parser)]
#[command(name = "pierce", version, about = "Diametral disk piercing checks for maximum spanning trees")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check that the enclosing-circle center pierces every tree disk.
    Verify(VerifyArgs),
    /// Edge ratios of the maximum spanning tree.
    Ratio {
        #[arg(long)]
        file: PathBuf,
        /// Also solve for the min-max point.
        #[arg(long)]
        optimal: bool,
    },
    /// Maximum-weight perfect matching and its ratios (at most 12 points).
    Matching {
        #[arg(long)]
        file: PathBuf,
    },
    /// Anneal four-point configurations for a large forced ratio.
    SearchLowerBound {
        #[arg(long, env = "PIERCE_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 32)]
        restarts: usize,
        #[arg(long, default_value_t = 100_000)]
        budget: usize,
        /// Write the best configuration as an instance file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Draw an instance as SVG.
    Render {
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        disks: bool,
        /// Draw tree-edge ellipses at this ratio.
        #[arg(long, value_name = "ALPHA")]
        ellipses: Option<f64>,
    },
    /// Cross-check the tree and circle against brute force.
    Oracle {
        #[arg(long)]
        file: PathBuf,
    },
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, conflicts_with = "gen")]
    file: Option<PathBuf>,
    /// Check this tree (a JSON list of index pairs) instead of the maximum one.
    #[arg(long, requires = "file")]
    tree: Option<PathBuf>,
    #[arg(long, value_parser = parse_generator)]
    gen: Option<Generator>,
    #[arg(long, default_value_t = 2)]
    n_min: usize,
    #[arg(long, default_value_t = 64)]
    n_max: usize,
    #[arg(long, default_value_t = 1)]
    trials: usize,
    #[arg(long, env = "PIERCE_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = Tolerance::default().eps_rel)]
    eps_rel: f64,
    #[arg(long, default_value_t = Tolerance::default().eps_abs)]
    eps_abs: f64,
    /// Write the full per-trial reports as a JSON array.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_generator(s: &str) -> Result<Generator, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Input problems (exit 2) versus found violations (exit 1).
enum Failure {
    Input(String),
    Violation,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

fn load(path: &Path) -> Result<Instance, Failure> {
    load_instance(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

/// Prints a line to stdout; a closed pipe is not an error worth reporting.
fn emit(text: &str) {
    use std::io::Write;
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Verify(args) => verify(args),
        Command::Ratio { file, optimal } => ratio(&file, optimal),
        Command::Matching { file } => matching(&file),
        Command::SearchLowerBound { seed, restarts, budget, out } => search(seed, restarts, budget, out.as_deref()),
        Command::Render { file, out, disks, ellipses } => render(&file, &out, disks, ellipses),
        Command::Oracle { file } => oracle(&file),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Violation) => ExitCode::from(1),
        Err(Failure::Input(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

#[derive(Serialize)]
struct TrialSummary<'a> {
    trial: usize,
    id: Option<&'a str>,
    n: usize,
    verdict: bool,
    min_angle: f64,
    center_ratio: f64,
    helly: Option<bool>,
    ok: bool,
}

struct Trial {
    instance: Instance,
    report: PiercingReport,
    center_ratio: f64,
    helly: Option<bool>,
}

impl Trial {
    fn ok(&self) -> bool {
        self.report.verdict && self.center_ratio <= SQRT_2 + 1e-9 && self.helly != Some(false)
    }
}

fn check(instance: Instance, tree: Option<Tree>, tol: &Tolerance, seed: u64) -> Trial {
    let enclosing = smallest_enclosing_circle(&instance, seed);
    let report = match tree {
        Some(t) => piercing_report(&instance, t, &enclosing, tol),
        None => piercing_report(&instance, max_spanning_tree(&instance), &enclosing, tol),
    };
    let center_ratio = max_ratio(enclosing.circle.center, instance.points(), &report.tree.edges);
    let helly =
        (instance.len() <= HELLY_MAX_POINTS).then(|| helly_triples(&diametral_disks(&instance, &report.tree), tol));
    Trial { instance, report, center_ratio, helly }
}

fn verify(args: VerifyArgs) -> Result<(), Failure> {
    let tol = Tolerance::new(args.eps_rel, args.eps_abs)?;
    let trials: Vec<Trial> = match (&args.file, args.gen) {
        (Some(file), _) => {
            let inst = load(file)?;
            let tree = match &args.tree {
                Some(path) => {
                    let text = std::fs::read_to_string(path)
                        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
                    let pairs = parse_edge_list(&text)?;
                    if let Some(&(a, b)) = pairs.iter().find(|&&(a, b)| a.max(b) >= inst.len()) {
                        return Err(Error::NotASpanningTree(format!("edge ({a}, {b}) is out of range")).into());
                    }
                    let edges: Vec<Edge> = pairs.into_iter().map(|(a, b)| inst.edge(a, b)).collect();
                    Some(Tree::from_edges(inst.len(), edges)?)
                }
                None => None,
            };
            vec![check(inst, tree, &tol, args.seed)]
        }
        (None, Some(generator)) => {
            let mut config = RunConfig::new(args.seed, args.trials, (args.n_min, args.n_max), generator)?;
            config.tolerance = tol;
            (0..config.trials)
                .into_par_iter()
                .map(|k| check(generate_trial(&config, k), None, &tol, args.seed))
                .collect()
        }
        (None, None) => {
            return Err(Error::PreconditionViolated("verify needs --file or --gen".into()).into());
        }
    };

    let mut failures = 0;
    for (k, t) in trials.iter().enumerate() {
        let summary = TrialSummary {
            trial: k,
            id: t.instance.id(),
            n: t.instance.len(),
            verdict: t.report.verdict,
            min_angle: t.report.min_angle,
            center_ratio: t.center_ratio,
            helly: t.helly,
            ok: t.ok(),
        };
        emit(&serde_json::to_string(&summary).expect("summaries serialize"));
        if !t.ok() {
            failures += 1;
            emit(&instance_to_json(&t.instance));
        }
    }
    if let Some(out) = &args.out {
        let reports: Vec<&PiercingReport> = trials.iter().map(|t| &t.report).collect();
        std::fs::write(out, to_json(&reports) + "\n").map_err(Error::from)?;
    }
    eprintln!("{} of {} trials passed", trials.len() - failures, trials.len());
    if failures > 0 {
        Err(Failure::Violation)
    } else {
        Ok(())
    }
}

fn ratio(file: &Path, optimal: bool) -> Result<(), Failure> {
    let inst = load(file)?;
    let tree = max_spanning_tree(&inst);
    let solver = SolverOptions::default();
    let report = ratio_report(&inst, &tree.edges, DEFAULT_SEC_SEED, optimal.then_some(&solver))?;
    emit(&to_json(&report));
    Ok(())
}

fn matching(file: &Path) -> Result<(), Failure> {
    let inst = load(file)?;
    let m = max_weight_matching_bruteforce(&inst)?;
    let report = ratio_report(&inst, &m.pairs, DEFAULT_SEC_SEED, Some(&SolverOptions::default()))?;
    let c = report.center;
    let tol = Tolerance::default();
    let mut pierced = Vec::with_capacity(m.pairs.len());
    for e in &m.pairs {
        let (p, q) = e.endpoints(inst.points());
        pierced.push(in_diametral_disk(p, q, c, &tol).unwrap_or(true));
    }
    let out = json!({
        "matching": m,
        "center_pierces": pierced,
        "ratio": report,
    });
    emit(&to_json(&out));
    Ok(())
}

fn search(seed: u64, restarts: usize, budget: usize, out: Option<&Path>) -> Result<(), Failure> {
    let opts = SearchOptions { seed, restarts, budget, ..SearchOptions::default() };
    let best = lower_bound_search(&opts);
    if let Some(path) = out {
        save_instance(&best.instance, path)?;
    }
    emit(&to_json(&best));
    Ok(())
}

fn render(file: &Path, out: &Path, disks: bool, ellipses: Option<f64>) -> Result<(), Failure> {
    let inst = load(file)?;
    write_svg(&inst, &SvgOptions { disks, ellipses, sec_seed: DEFAULT_SEC_SEED }, out)?;
    Ok(())
}

fn oracle(file: &Path) -> Result<(), Failure> {
    let inst = load(file)?;
    let tree = max_spanning_tree(&inst);
    let sec = smallest_enclosing_circle(&inst, DEFAULT_SEC_SEED).circle;

    let spanning = (inst.len() <= ENUMERATION_LIMIT).then(|| enumerate_best_tree_weight(&inst)).transpose()?;
    let spanning_ok = spanning.map(|w| close(tree.total_weight, w));
    let brute = (inst.len() <= BRUTEFORCE_LIMIT).then(|| sec_bruteforce(&inst)).transpose()?;
    let sec_ok = brute.map(|b| close(sec.radius, b.radius));

    let out = json!({
        "id": inst.id(),
        "n": inst.len(),
        "tree_weight": tree.total_weight,
        "enumerated_weight": spanning,
        "spanning_ok": spanning_ok,
        "sec_radius": sec.radius,
        "bruteforce_radius": brute.map(|b| b.radius),
        "sec_ok": sec_ok,
    });
    emit(&to_json(&out));
    if spanning_ok == Some(false) || sec_ok == Some(false) {
        return Err(Failure::Violation);
    }
    Ok(())
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-9 * a.abs().max(b.abs()).max(1.0)
}
