//! `rangepb`: solve ranged-approval budgeting instances, check budgeting
//! axioms, generate test instances, and build reduction images from
//! approval-ballot instances.
//!
//! Exit codes: 0 on success, 1 when a solver refuses (caps, undefined
//! scalings), 2 on bad input.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use rangepb_core::axioms::{
    check_axiom, search_counterexamples, AxiomId, AxiomReport, SearchConfig,
};
use rangepb_core::gen::{generate_instance, GeneratorConfig};
use rangepb_core::io::{ApprovalDocument, InstanceDocument};
use rangepb_core::reduce::{reduce_from_approval_cost, reduce_from_approval_distance};
use rangepb_core::{
    brute_force, solve_approx, solve_exact, solve_scaled, Epsilon, Instance, Rule, SolveResult,
};

const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser)]
#[command(
    name = "rangepb",
    version,
    about = "Participatory budgeting with per-project cost menus and ranged approval ballots"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve an instance under one of the four rules.
    Solve(SolveArgs),
    /// Check budgeting axioms on an instance, or search random instances
    /// for counterexamples.
    Axioms(AxiomsArgs),
    /// Generate a seeded random instance.
    Gen(GenArgs),
    /// Transform an approval-ballot instance into a ranged instance.
    Reduce(ReduceArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum RuleArg {
    Cardinal,
    Cost,
    Capped,
    Distance,
}

impl From<RuleArg> for Rule {
    fn from(arg: RuleArg) -> Rule {
        match arg {
            RuleArg::Cardinal => Rule::Cardinal,
            RuleArg::Cost => Rule::Cost,
            RuleArg::Capped => Rule::CostCapped,
            RuleArg::Distance => Rule::Distance,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgoArg {
    /// Exact score-table dynamic program.
    Dp,
    /// Exhaustive enumeration of all valid allocations.
    Bruteforce,
    /// Rounding-based approximation (requires --epsilon).
    Fptas,
    /// Exact DP on the scaled-down instance.
    FptScaled,
}

impl AlgoArg {
    fn name(self) -> &'static str {
        match self {
            AlgoArg::Dp => "dp",
            AlgoArg::Bruteforce => "bruteforce",
            AlgoArg::Fptas => "fptas",
            AlgoArg::FptScaled => "fpt-scaled",
        }
    }
}

#[derive(Args)]
struct SolveArgs {
    /// Selection rule to optimize.
    #[arg(long, value_enum)]
    rule: RuleArg,
    /// Algorithm to run.
    #[arg(long, value_enum, default_value = "dp")]
    algo: AlgoArg,
    /// Approximation parameter as an exact fraction, e.g. 1/2.
    #[arg(long)]
    epsilon: Option<String>,
    /// Instance document to solve.
    #[arg(long)]
    input: PathBuf,
    /// Emit a machine-readable JSON report.
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum AxiomArg {
    All,
    ShrinkResistant,
    RangeAbiding,
    RangeConverging,
    RangeUnanimous,
    DegreeEfficient,
    LowerBoundSensitive,
    UpperBoundSensitive,
    DiscountProof,
}

impl AxiomArg {
    fn ids(self) -> Vec<AxiomId> {
        match self {
            AxiomArg::All => AxiomId::ALL.to_vec(),
            AxiomArg::ShrinkResistant => vec![AxiomId::ShrinkResistant],
            AxiomArg::RangeAbiding => vec![AxiomId::RangeAbiding],
            AxiomArg::RangeConverging => vec![AxiomId::RangeConverging],
            AxiomArg::RangeUnanimous => vec![AxiomId::RangeUnanimous],
            AxiomArg::DegreeEfficient => vec![AxiomId::DegreeEfficient],
            AxiomArg::LowerBoundSensitive => vec![AxiomId::LowerBoundSensitive],
            AxiomArg::UpperBoundSensitive => vec![AxiomId::UpperBoundSensitive],
            AxiomArg::DiscountProof => vec![AxiomId::DiscountProof],
        }
    }
}

#[derive(Args)]
struct ConfigArgs {
    /// Most projects a random instance may have.
    #[arg(long, default_value_t = 4)]
    max_projects: usize,
    /// Most positive degrees per project.
    #[arg(long, default_value_t = 3)]
    max_degrees: usize,
    /// Most voters a random instance may have.
    #[arg(long, default_value_t = 4)]
    max_voters: usize,
    /// Largest permissible cost.
    #[arg(long, default_value_t = 8)]
    max_cost: u64,
    /// Smallest budget to draw.
    #[arg(long, default_value_t = 0)]
    budget_min: u64,
    /// Largest budget to draw.
    #[arg(long, default_value_t = 12)]
    budget_max: u64,
}

impl ConfigArgs {
    fn search_config(&self) -> SearchConfig {
        SearchConfig {
            max_projects: self.max_projects,
            max_degrees: self.max_degrees,
            max_voters: self.max_voters,
            max_cost: self.max_cost,
            budget_range: (self.budget_min, self.budget_max),
        }
    }
}

#[derive(Args)]
struct AxiomsArgs {
    /// Selection rule the axioms are checked against.
    #[arg(long, value_enum)]
    rule: RuleArg,
    /// Axiom to check, or `all`.
    #[arg(long, value_enum, default_value = "all")]
    axiom: AxiomArg,
    /// Check this instance document.
    #[arg(long, conflicts_with = "trials")]
    input: Option<PathBuf>,
    /// Search this many seeded random instances for a counterexample.
    #[arg(long)]
    trials: Option<u64>,
    /// Seed for the random search.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    config: ConfigArgs,
    /// Emit a machine-readable JSON report.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct GenArgs {
    /// Where to write the instance document (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Generator seed.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of projects.
    #[arg(long, default_value_t = 3)]
    projects: usize,
    /// Most positive degrees per project.
    #[arg(long, default_value_t = 3)]
    max_degrees: usize,
    /// Number of voters.
    #[arg(long, default_value_t = 3)]
    voters: usize,
    /// Largest permissible cost.
    #[arg(long, default_value_t = 8)]
    max_cost: u64,
    /// Smallest budget to draw.
    #[arg(long, default_value_t = 1)]
    budget_min: u64,
    /// Largest budget to draw.
    #[arg(long, default_value_t = 12)]
    budget_max: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum FromArg {
    Approval,
}

#[derive(Clone, Copy, ValueEnum)]
enum ObjectiveArg {
    Cost,
    Distance,
}

#[derive(Args)]
struct ReduceArgs {
    /// Source ballot model.
    #[arg(long, value_enum, default_value = "approval")]
    from: FromArg,
    /// Which rule the image is built for.
    #[arg(long, value_enum)]
    objective: ObjectiveArg,
    /// Approval instance document.
    #[arg(long)]
    input: PathBuf,
    /// Where to write the reduced instance (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Emit a machine-readable JSON report.
    #[arg(long)]
    json: bool,
}

/// Errors mapped onto the exit-code contract.
enum CliError {
    /// Unreadable or invalid input: exit code 2.
    Input(String),
    /// A solver refused to run: exit code 1.
    Solver(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(msg) => write!(f, "input error: {msg}"),
            CliError::Solver(msg) => write!(f, "solver error: {msg}"),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Solve(args) => run_solve(args),
        Command::Axioms(args) => run_axioms(args),
        Command::Gen(args) => run_gen(args),
        Command::Reduce(args) => run_reduce(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("{err}");
            match err {
                CliError::Solver(_) => ExitCode::from(1),
                CliError::Input(_) => ExitCode::from(2),
            }
        }
    }
}

fn read_file(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))
}

fn load_instance(path: &Path) -> Result<(Instance, Vec<String>), CliError> {
    let json = read_file(path)?;
    InstanceDocument::from_json(&json)
        .and_then(InstanceDocument::into_instance)
        .map_err(|e| CliError::Input(e.to_string()))
}

fn write_or_print(out: Option<&Path>, content: &str) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, content)
            .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn report<T: Serialize>(
    command: &str,
    inputs: serde_json::Value,
    body_key: &str,
    body: &T,
) -> String {
    let value = json!({
        "command": command,
        "inputs": inputs,
        body_key: body,
        "version": VERSION,
    });
    format!("{value}\n")
}

/// Chosen cost per project name, in document order of names.
fn allocation_costs(
    result: &SolveResult,
    instance: &Instance,
    names: &[String],
) -> BTreeMap<String, u64> {
    names
        .iter()
        .enumerate()
        .map(|(j, name)| (name.clone(), result.allocation.chosen_cost(instance, j)))
        .collect()
}

fn run_solve(args: SolveArgs) -> Result<(), CliError> {
    let rule: Rule = args.rule.into();
    let (instance, names) = load_instance(&args.input)?;

    let epsilon = match (&args.epsilon, args.algo) {
        (Some(text), AlgoArg::Fptas) => Some(
            text.parse::<Epsilon>()
                .map_err(|e| CliError::Input(e.to_string()))?,
        ),
        (Some(_), _) => {
            return Err(CliError::Input(
                "--epsilon only applies to --algo fptas".into(),
            ))
        }
        (None, AlgoArg::Fptas) => {
            return Err(CliError::Input(
                "--algo fptas requires --epsilon P/Q".into(),
            ))
        }
        (None, _) => None,
    };

    let result = match args.algo {
        AlgoArg::Dp => solve_exact(rule, &instance),
        AlgoArg::Bruteforce => brute_force(rule, &instance).map(|(result, _)| result),
        AlgoArg::FptScaled => solve_scaled(rule, &instance),
        AlgoArg::Fptas => {
            if rule == Rule::Cardinal {
                return Err(CliError::Input(
                    "no approximation scheme for the cardinal rule; use --algo dp".into(),
                ));
            }
            solve_approx(rule, &instance, epsilon.unwrap())
        }
    }
    .map_err(|e| CliError::Solver(e.to_string()))?;

    let allocation = allocation_costs(&result, &instance, &names);
    if args.json {
        let inputs = json!({
            "rule": rule.name(),
            "algo": args.algo.name(),
            "epsilon": args.epsilon,
            "input": args.input.display().to_string(),
        });
        let body = json!({
            "optimal_value": result.optimal_value,
            "allocation": allocation,
            "algorithm": result.algorithm,
            "table_stats": result.table_stats,
            "note": result.note,
        });
        print!("{}", report("solve", inputs, "result", &body));
    } else {
        println!("rule: {rule}");
        println!("algorithm: {}", result.algorithm);
        println!(
            "optimal {}: {}",
            if rule == Rule::Distance {
                "disutility"
            } else {
                "utility"
            },
            result.optimal_value
        );
        let funded: Vec<String> = allocation
            .iter()
            .map(|(name, cost)| format!("{name}={cost}"))
            .collect();
        println!("allocation: {}", funded.join(" "));
        println!(
            "table: {} rows x {} columns ({} cells)",
            result.table_stats.rows, result.table_stats.columns, result.table_stats.cells_touched
        );
        if let Some(note) = result.note {
            println!("note: {note:?}");
        }
    }
    Ok(())
}

fn print_axiom_report_text(report: &AxiomReport) {
    println!(
        "{}: {}",
        report.axiom,
        if report.is_violated() {
            "VIOLATED"
        } else {
            "satisfied"
        }
    );
    if let Some(trials) = report.trials {
        println!("  trials: {trials}");
    }
    if let Some(witness) = &report.witness {
        println!(
            "  witness: {}",
            serde_json::to_string(witness).expect("witness serializes")
        );
    }
    for skipped in &report.skipped {
        println!("  skipped: {skipped:?}");
    }
}

fn run_axioms(args: AxiomsArgs) -> Result<(), CliError> {
    let rule: Rule = args.rule.into();
    let axioms = args.axiom.ids();

    let reports: Vec<AxiomReport> = match (&args.input, args.trials) {
        (Some(path), None) => {
            let (instance, _) = load_instance(path)?;
            axioms
                .iter()
                .map(|&axiom| check_axiom(axiom, &rule, &instance))
                .collect::<Result<_, _>>()
                .map_err(|e| CliError::Solver(e.to_string()))?
        }
        (None, Some(trials)) => {
            let config = args.config.search_config();
            axioms
                .iter()
                .map(|&axiom| search_counterexamples(&rule, axiom, &config, trials, args.seed))
                .collect::<Result<_, _>>()
                .map_err(|e| CliError::Solver(e.to_string()))?
        }
        (None, None) => {
            return Err(CliError::Input(
                "pass --input FILE to check an instance or --trials N to search".into(),
            ))
        }
        (Some(_), Some(_)) => unreachable!("clap rejects the combination"),
    };

    if args.json {
        let inputs = json!({
            "rule": rule.name(),
            "axiom": axioms.iter().map(|a| a.name()).collect::<Vec<_>>(),
            "input": args.input.as_ref().map(|p| p.display().to_string()),
            "trials": args.trials,
            "seed": args.trials.map(|_| args.seed),
        });
        if reports.len() == 1 {
            print!("{}", report("axioms", inputs, "report", &reports[0]));
        } else {
            print!("{}", report("axioms", inputs, "reports", &reports));
        }
    } else {
        for r in &reports {
            print_axiom_report_text(r);
        }
    }
    Ok(())
}

fn run_gen(args: GenArgs) -> Result<(), CliError> {
    let config = GeneratorConfig {
        num_projects: args.projects,
        max_degrees: args.max_degrees,
        num_voters: args.voters,
        max_cost: args.max_cost,
        budget_range: (args.budget_min, args.budget_max),
    };
    let instance =
        generate_instance(&config, args.seed).map_err(|e| CliError::Input(e.to_string()))?;
    let doc = InstanceDocument::from_instance(&instance, None);
    write_or_print(args.out.as_deref(), &doc.to_json_pretty())?;
    if let Some(out) = &args.out {
        println!(
            "wrote {} projects, {} voters, budget {} to {}",
            instance.num_projects(),
            instance.num_voters(),
            instance.budget(),
            out.display()
        );
    }
    Ok(())
}

fn run_reduce(args: ReduceArgs) -> Result<(), CliError> {
    let FromArg::Approval = args.from;
    let json_text = read_file(&args.input)?;
    let (approval, names) = ApprovalDocument::from_json(&json_text)
        .and_then(ApprovalDocument::into_approval_instance)
        .map_err(|e| CliError::Input(e.to_string()))?;

    let (instance, z) = match args.objective {
        ObjectiveArg::Cost => (reduce_from_approval_cost(&approval), None),
        ObjectiveArg::Distance => {
            let (instance, z) = reduce_from_approval_distance(&approval);
            (instance, Some(z))
        }
    };
    let doc = InstanceDocument::from_instance(&instance, Some(&names));

    if args.json {
        let inputs = json!({
            "from": "approval",
            "objective": match args.objective {
                ObjectiveArg::Cost => "cost",
                ObjectiveArg::Distance => "distance",
            },
            "input": args.input.display().to_string(),
        });
        let body = json!({ "instance": doc, "z": z });
        print!("{}", report("reduce", inputs, "result", &body));
        if let Some(path) = &args.out {
            fs::write(path, doc.to_json_pretty())
                .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))?;
        }
    } else {
        write_or_print(args.out.as_deref(), &doc.to_json_pretty())?;
        if let Some(z) = z {
            eprintln!("z = {z}");
        }
    }
    Ok(())
}
